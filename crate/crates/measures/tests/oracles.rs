//! Independent oracles for the density and entropy primitives.

use msfs_measures::*;

/// Bates density by direct numerical convolution of uniform densities.
fn bates_by_convolution(n: usize, x: f64) -> f64 {
    // density of the sum S_n of n uniforms, evaluated on a fine lattice
    let m = 2000usize;
    let h = 1.0 / m as f64;
    let mut f = vec![1.0; m + 1];
    for _ in 1..n {
        let len = f.len() + m;
        let mut g = vec![0.0; len];
        for (i, gi) in g.iter_mut().enumerate() {
            let lo = i.saturating_sub(m);
            let hi = i.min(f.len() - 1);
            let mut s = 0.0;
            for j in lo..=hi {
                let w = if j == lo || j == hi { 0.5 } else { 1.0 };
                s += w * f[j];
            }
            *gi = s * h;
        }
        f = g;
    }
    let s = x * n as f64;
    let idx = s / h;
    let i0 = idx.floor() as usize;
    let frac = idx - i0 as f64;
    let v0 = f.get(i0).copied().unwrap_or(0.0);
    let v1 = f.get(i0 + 1).copied().unwrap_or(0.0);
    n as f64 * (v0 * (1.0 - frac) + v1 * frac)
}

#[test]
fn bates_matches_convolution() {
    for n in 2..=4 {
        for &x in &[0.1, 0.3, 0.5, 0.77] {
            let a = bates_pdf(n, x).unwrap();
            let b = bates_by_convolution(n, x);
            assert!((a - b).abs() < 5e-3, "n={n} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn bates_normalised() {
    let g = Grid::closed(10_000).unwrap();
    for n in 1..=8 {
        let d = Density::bates(&g, n).unwrap();
        let area = trapezoid(d.xs(), d.ys()).unwrap();
        assert!((area - 1.0).abs() < 1e-6, "n={n}: {area}");
    }
}

/// KL(U || Bates(2)) in closed form: the triangle density is 4x on [0, 1/2]
/// and 4(1-x) on [1/2, 1], so the integral of -ln(4x) over [0, 1/2] doubled
/// gives -ln 2 + 1.
#[test]
fn kl_uniform_vs_triangle_closed_form() {
    let exact = 1.0 - 2f64.ln();
    // drop the endpoints where the triangle vanishes
    let n = 100_000;
    let xs: Vec<f64> = (1..n).map(|k| k as f64 / n as f64).collect();
    let g = Grid::new(xs).unwrap();
    let u = Density::uniform(&g);
    let t = Density::bates(&g, 2).unwrap();
    let kl = kl_divergence(&u, &t).unwrap();
    assert!((kl - exact).abs() < 1e-3, "{kl} vs {exact}");
}

/// KL(Bates(2) || U): the integrand t ln t is bounded, so the closed grid
/// converges quickly. Exact value ln 2 - 1/2.
#[test]
fn kl_triangle_vs_uniform_refines() {
    let run = |n: usize| {
        let g = Grid::closed(n).unwrap();
        kl_divergence(&Density::bates(&g, 2).unwrap(), &Density::uniform(&g)).unwrap()
    };
    let (coarse, fine) = (run(10_000), run(100_000));
    assert!((coarse - fine).abs() < 1e-4);
    assert!((fine - (2f64.ln() - 0.5)).abs() < 1e-6, "{fine}");
}

#[test]
fn js_identical_and_disjoint() {
    let g = Grid::closed(10_001).unwrap();
    let u = Density::uniform(&g);
    assert!(js_divergence(&u, &u).unwrap().abs() < 1e-15);
    let left = g.sample(|x| if x <= 0.5 { 2.0 } else { 0.0 });
    let right = g.sample(|x| if x > 0.5 { 2.0 } else { 0.0 });
    let d = js_divergence(&left, &right).unwrap();
    assert!((d - 2f64.ln()).abs() < 1e-3, "{d}");
}

/// Binomial(n, 1/2) entropy from log-factorials, independent of the
/// distribution type.
fn binomial_half_entropy(n: u32) -> f64 {
    let lf = |k: u32| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    (0..=n)
        .map(|k| {
            let p = (lf(n) - lf(k) - lf(n - k) - n as f64 * 2f64.ln()).exp();
            -p * p.log2()
        })
        .sum()
}

#[test]
fn entropy_matches_binomial_oracle() {
    for n in 1..12u32 {
        let mut w = vec![1.0f64];
        for _ in 0..n {
            let mut nw = vec![0.0; w.len() + 1];
            for (i, v) in w.iter().enumerate() {
                nw[i] += v;
                nw[i + 1] += v;
            }
            w = nw;
        }
        let d = DiscreteDistribution::from_weights(&w).unwrap();
        assert!((shannon_entropy(&d) - binomial_half_entropy(n)).abs() < 1e-9);
    }
}
