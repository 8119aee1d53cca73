//! Range invariants of the simulation and its per-cycle measures.

use msfs_decision::{c_syn_cd, consensus_time, cycle_measures, simulate, CdConfig, CdStrategy, InfoGrid};
use msfs_kernel::rng_stream;
use proptest::prelude::*;

fn strategy() -> impl proptest::strategy::Strategy<Value = CdStrategy> {
    prop::sample::select(CdStrategy::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measures_stay_in_range(n in 1usize..=12, r in 1usize..=12, s in strategy(), seed: u64) {
        let mut cfg = CdConfig::new(n, r, s);
        cfg.horizon = 1500;
        let run = simulate(&cfg, &mut rng_stream(seed, 0)).unwrap();
        prop_assert!(run.t_end <= cfg.horizon);
        let c = c_syn_cd(n, r, s).unwrap().cycle;
        for cy in &run.cycles {
            prop_assert!((0.0..=1.0).contains(&cy.o_coll) && (0.0..=1.0).contains(&cy.w_a));
            prop_assert!(cy.t_cn >= 1 && cy.end - cy.start == cy.t_cn);
        }
        for m in cycle_measures(&run, c, false).unwrap() {
            prop_assert!((0.0..=1.0).contains(&m.delta_th) && (0.0..=1.0).contains(&m.delta_gl));
            for d in [m.delta_sm, m.delta_pr].into_iter().flatten() {
                prop_assert!((0.0..=1.0).contains(&d));
            }
            for v in [m.v_sm_th, m.v_pr_gl].into_iter().flatten() {
                prop_assert!((-1.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn runs_are_reproducible(seed: u64, s in strategy()) {
        let mut cfg = CdConfig::new(4, 4, s);
        cfg.horizon = 800;
        let a = simulate(&cfg, &mut rng_stream(seed, 3)).unwrap();
        let b = simulate(&cfg, &mut rng_stream(seed, 3)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn grid_count_tracks_weight(ws in prop::collection::vec(0.0..=1.0f64, 1..20), seed: u64) {
        let mut rng = rng_stream(seed, 0);
        let mut g = InfoGrid::new(0.6, &mut rng);
        for w in ws {
            g.set_weight(w, &mut rng);
            prop_assert_eq!(g.a_count(), InfoGrid::target(w));
        }
    }

    #[test]
    fn equal_opinions_need_one_step(o in 0.0..=1.0f64, n in 1usize..30) {
        prop_assert_eq!(consensus_time(2.0, &vec![o; n]), 1);
    }
}
