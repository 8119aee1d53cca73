//! Prints cycle-weighted averages over the reduced (N, R) grid for every strategy.

use msfs_decision::{run_point, CdConfig, CdStrategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let axis = [1, 5, 10, 15, 25];
    println!("strategy N R t_avg d_th d_sm d_pr v_sm v_pr");
    for s in CdStrategy::ALL {
        for n in axis {
            for r in axis {
                let p = run_point(&CdConfig::new(n, r, s), 7, 40)?;
                let f = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.6}"));
                println!(
                    "{s} {n} {r} {:.1} {} {} {} {} {}",
                    p.t_avg,
                    f(p.delta_th),
                    f(p.delta_sm),
                    f(p.delta_pr),
                    f(p.v_sm_th),
                    f(p.v_pr_gl)
                );
            }
        }
    }
    Ok(())
}
