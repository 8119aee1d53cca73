//! Class-level chains over `z`, the number of workers on task `k_1`.

use crate::{Strategy, TaskError, WORKERS};

const N: usize = WORKERS + 1;

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(pub [[f64; N]; N]);

fn binomial_pmf(n: usize, k: usize, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}

impl TransitionMatrix {
    pub fn identity() -> Self {
        let mut m = [[0.0; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self(m)
    }

    pub fn validate(&self) -> Result<(), TaskError> {
        for (i, row) in self.0.iter().enumerate() {
            if row.iter().any(|p| *p < 0.0) {
                return Err(TaskError::Matrix(format!("negative entry in row {i}")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return Err(TaskError::Matrix(format!("row {i} sums to {s}")));
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0.0; N]; N];
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..N {
                    m[i][j] += a * other.0[k][j];
                }
            }
        }
        Self(m)
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Distribution after one step from `dist`.
    pub fn apply(&self, dist: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for i in 0..N {
            for j in 0..N {
                out[j] += dist[i] * self.0[i][j];
            }
        }
        out
    }
}

/// One-step class transitions toward the all-`k_1` goal.
///
/// With `error_inject`, worker 0 always reports `k_1`, so managers see
/// `min(z + 1, 4)` and stop issuing control once that reads as the goal.
pub fn build_transition_matrix(strategy: Strategy, error_inject: bool) -> TransitionMatrix {
    let mut m = [[0.0; N]; N];
    let seen = |z: usize| if error_inject { (z + 1).min(WORKERS) } else { z };
    for (z, row) in m.iter_mut().enumerate() {
        match strategy {
            Strategy::Bb => {
                if seen(z) == WORKERS {
                    row[z] = 1.0;
                } else {
                    let n = WORKERS - z;
                    for k in 0..=n {
                        row[z + k] = binomial_pmf(n, k, strategy.p_ch());
                    }
                }
            }
            Strategy::Md => {
                // managers command exactly the switches they believe missing
                let target = (z + WORKERS - seen(z)).min(WORKERS);
                row[target] = 1.0;
            }
            Strategy::Rs | Strategy::Rb => {
                let p = strategy.p_ch();
                for up in 0..=WORKERS - z {
                    for down in 0..=z {
                        row[z + up - down] += binomial_pmf(WORKERS - z, up, p) * binomial_pmf(z, down, p);
                    }
                }
            }
            Strategy::St => row[z] = 1.0,
        }
    }
    TransitionMatrix(m)
}
