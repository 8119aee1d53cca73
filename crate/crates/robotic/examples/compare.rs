//! Prints late-run averages of the main measures for every strategy.

use msfs_robotic::{mean_series, run_repetitions, RcConfig, RcStrategy};

fn tail_mean(s: &[Option<f64>], from: usize) -> f64 {
    let v: Vec<f64> = s[from..].iter().flatten().copied().collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reps = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    println!("strategy dgl_tail dth_counts dth_full dth_partial dsm_tail e500_tail v500_tail dgl@100 dgl@500");
    for s in RcStrategy::ALL {
        let runs = run_repetitions(&RcConfig::new(s), 42, reps)?;
        let gl = mean_series(&runs, |m| Some(m.delta_gl));
        let from = gl.len() - 1000;
        println!(
            "{s} {:.5} {:.4} {:.4} {:.4} {:.5} {:.3e} {:.3e} {:.4} {:.4}",
            tail_mean(&gl, from),
            tail_mean(&mean_series(&runs, |m| Some(m.delta_th.counts)), from),
            tail_mean(&mean_series(&runs, |m| Some(m.delta_th.full)), from),
            tail_mean(&mean_series(&runs, |m| Some(m.delta_th.partial)), from),
            tail_mean(&mean_series(&runs, |m| Some(m.delta_sm)), from),
            tail_mean(&mean_series(&runs, |m| m.e_pr_gl[2]), from),
            tail_mean(&mean_series(&runs, |m| m.v_pr_gl[2]), from),
            gl[99].unwrap(),
            gl[499].unwrap(),
        );
    }
    Ok(())
}
