//! Sampled densities on `[0, 1]` and the integrals built on them.

use crate::{MeasureError, Result};

/// Sample points on `[0, 1]`, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    xs: Vec<f64>,
}

impl Grid {
    pub fn new(xs: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(MeasureError::Grid(format!("{} point(s)", xs.len())));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(MeasureError::Grid("points not strictly increasing".into()));
        }
        Ok(Self { xs })
    }

    /// `n` evenly spaced points including both endpoints.
    pub fn closed(n: usize) -> Result<Self> {
        let d = n.saturating_sub(1).max(1) as f64;
        Self::new((0..n).map(|k| k as f64 / d).collect())
    }

    /// `n` points `k/n`, `k = 0..n`: the right endpoint is left out.
    pub fn half_open(n: usize) -> Result<Self> {
        Self::new((0..n).map(|k| k as f64 / n as f64).collect())
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Sample `f` at every grid point.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Density {
        Density { xs: self.xs.clone(), ys: self.xs.iter().map(|&x| f(x)).collect() }
    }
}

/// A density sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Density {
    pub fn new(grid: &Grid, ys: Vec<f64>) -> Result<Self> {
        if ys.len() != grid.len() {
            return Err(MeasureError::GridMismatch(format!("{} values for {} grid points", ys.len(), grid.len())));
        }
        Ok(Self { xs: grid.xs.clone(), ys })
    }

    pub fn uniform(grid: &Grid) -> Self {
        grid.sample(|_| 1.0)
    }

    pub fn bates(grid: &Grid, n: usize) -> Result<Self> {
        let ys = grid.xs.iter().map(|&x| bates_pdf(n, x)).collect::<Result<Vec<_>>>()?;
        Ok(Self { xs: grid.xs.clone(), ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    fn check_same_grid(&self, other: &Density) -> Result<()> {
        if self.xs != other.xs {
            return Err(MeasureError::GridMismatch("densities sampled on different grids".into()));
        }
        Ok(())
    }
}

/// Trapezoid rule over a strictly increasing grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(MeasureError::GridMismatch(format!("{} abscissae, {} ordinates", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(MeasureError::Grid(format!("{} point(s)", xs.len())));
    }
    let mut sum = 0.0;
    for i in 1..xs.len() {
        let dx = xs[i] - xs[i - 1];
        if !(dx > 0.0) {
            return Err(MeasureError::Grid("points not strictly increasing".into()));
        }
        sum += 0.5 * dx * (ys[i] + ys[i - 1]);
    }
    Ok(sum)
}

/// Density of the mean of `n` independent uniform `[0, 1]` variables.
/// Zero outside `[0, 1]`.
pub fn bates_pdf(n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(MeasureError::BatesOrder(n));
    }
    if !(0.0..=1.0).contains(&x) {
        return Ok(0.0);
    }
    if n == 1 {
        return Ok(1.0);
    }
    // Irwin–Hall density of the sum, rescaled to the mean.
    let nf = n as f64;
    let s = nf * x;
    let mut fact = 1.0;
    for k in 2..n {
        fact *= k as f64;
    }
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        let u = s - k as f64;
        let term = binom * u.powi(n as i32 - 1) * u.signum();
        acc += if k % 2 == 0 { term } else { -term };
        binom = binom * (nf - k as f64) / (k as f64 + 1.0);
    }
    // signum(0) is 1.0 in Rust, but 0^(n-1) = 0 for n >= 2, so it is harmless.
    Ok((nf / (2.0 * fact) * acc).max(0.0))
}

/// Kullback–Leibler divergence `D(p || q)` in nats, integrated with the
/// trapezoid rule. Points where `p = 0` contribute nothing.
pub fn kl_divergence(p: &Density, q: &Density) -> Result<f64> {
    p.check_same_grid(q)?;
    let mut integrand = Vec::with_capacity(p.ys.len());
    for ((&x, &pi), &qi) in p.xs.iter().zip(&p.ys).zip(&q.ys) {
        if pi <= 0.0 {
            integrand.push(0.0);
        } else if qi <= 0.0 {
            return Err(MeasureError::Support { x });
        } else {
            integrand.push(pi * (pi / qi).ln());
        }
    }
    trapezoid(&p.xs, &integrand)
}

/// Jensen–Shannon divergence in nats; bounded by `ln 2` for normalised
/// densities.
pub fn js_divergence(f1: &Density, f2: &Density) -> Result<f64> {
    f1.check_same_grid(f2)?;
    let mid = Density { xs: f1.xs.clone(), ys: f1.ys.iter().zip(&f2.ys).map(|(a, b)| 0.5 * (a + b)).collect() };
    let d = 0.5 * kl_divergence(f1, &mid)? + 0.5 * kl_divergence(f2, &mid)?;
    Ok(d.max(0.0))
}
