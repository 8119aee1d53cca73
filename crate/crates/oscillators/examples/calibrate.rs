//! Sweeps uniform (F, τ) pairs and prints the sync times of both hierarchies.

use msfs_oscillators::{calibrate, OscConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs: Vec<f64> = (3..=50).map(|i| i as f64 / 10.0).collect();
    let taus: Vec<f64> = (2..=10).map(f64::from).collect();
    let (points, best) = calibrate(&fs, &taus, &OscConfig::calibrated(2))?;
    for p in &points {
        println!("{:.1} {:>4} {:?} {:?}", p.f, p.tau, p.sync_two, p.sync_three);
    }
    match best {
        Some(i) => println!("best: F = {}, tau = {}", points[i].f, points[i].tau),
        None => println!("no admissible pair"),
    }
    Ok(())
}
