use serde::{Deserialize, Serialize};

use crate::{OscError, Topology};

/// Fixed internal delay of the Y feedback and the Y Hill term (seconds).
pub const Y_LAG: f64 = 2.0;

const HILL_K: f64 = 0.5;
const DECAY: f64 = 0.5;
const BASAL: f64 = 0.1;
const BOTTOM_INIT: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscConfig {
    pub scales: usize,
    /// Coupling strength per scale (bottom first); a single value applies to all.
    pub f: Vec<f64>,
    /// Communication delay per scale in seconds; a single value applies to all.
    pub tau: Vec<f64>,
    #[serde(default = "default_w")]
    pub w: f64,
    /// Positive-positive coupling instead of the default negative-negative.
    #[serde(default)]
    pub pp: bool,
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    /// Use `+dΔ_gl/dt` for the pragmatic goal value instead of its negative.
    #[serde(default)]
    pub literal_goal_sign: bool,
    /// Points of the half-open grid used for the syntactic-content integrals.
    #[serde(default = "default_grid")]
    pub csyn_grid: usize,
}

fn default_w() -> f64 {
    0.5
}
fn default_h() -> f64 {
    0.01
}
fn default_t_end() -> f64 {
    300.0
}
fn default_grid() -> usize {
    crate::DEFAULT_CSYN_GRID
}

/// Calibrated NN coupling pair shared by all scales (see `calibrate`).
pub const CALIBRATED_F: f64 = 5.0;
pub const CALIBRATED_TAU: f64 = 2.0;

impl OscConfig {
    pub fn calibrated(scales: usize) -> Self {
        Self::uniform(scales, CALIBRATED_F, CALIBRATED_TAU)
    }

    pub fn uniform(scales: usize, f: f64, tau: f64) -> Self {
        Self {
            scales,
            f: vec![f],
            tau: vec![tau],
            w: default_w(),
            pp: false,
            h: default_h(),
            t_end: default_t_end(),
            literal_goal_sign: false,
            csyn_grid: default_grid(),
        }
    }

    pub fn topology(&self) -> Result<Topology, OscError> {
        Topology::with_scales(self.scales)
    }

    fn per_scale(v: &[f64], m: usize, name: &str, scales: usize) -> Result<f64, OscError> {
        match v.len() {
            1 => Ok(v[0]),
            n if n == scales => Ok(v[m]),
            n => Err(OscError::Config(format!("{name}: expected 1 or {scales} values, got {n}"))),
        }
    }

    pub fn f_at(&self, m: usize) -> Result<f64, OscError> {
        Self::per_scale(&self.f, m, "f", self.scales)
    }

    pub fn tau_at(&self, m: usize) -> Result<f64, OscError> {
        Self::per_scale(&self.tau, m, "tau", self.scales)
    }

    /// Whole steps in `d` seconds, or an error if `h` does not divide `d`.
    pub fn steps_in(&self, d: f64) -> Result<usize, OscError> {
        let k = (d / self.h).round();
        if k < 1.0 || (k * self.h - d).abs() > 1e-9 * d.max(1.0) {
            return Err(OscError::Config(format!(
                "step {} does not divide delay {d} into a whole number of steps",
                self.h
            )));
        }
        Ok(k as usize)
    }

    pub fn validate(&self) -> Result<(), OscError> {
        self.topology()?;
        if !(self.h > 0.0) || !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(OscError::Config("h and t_end must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.w) {
            return Err(OscError::Config(format!("w = {} outside [0, 1]", self.w)));
        }
        for m in 0..self.scales {
            let f = self.f_at(m)?;
            if !f.is_finite() || f < 0.0 {
                return Err(OscError::Config(format!("f[{m}] = {f} must be non-negative")));
            }
            self.steps_in(self.tau_at(m)?)?;
        }
        self.steps_in(Y_LAG)?;
        self.steps_in(self.t_end)?;
        if self.csyn_grid < 2 {
            return Err(OscError::Config("csyn_grid needs at least 2 points".into()));
        }
        Ok(())
    }
}

/// X and Y histories on a uniform grid, including the constant pre-history.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub topology: Topology,
    pub h: f64,
    /// Number of stored samples before t = 0.
    pub pre: usize,
    /// Integration steps after t = 0.
    pub steps: usize,
    n: usize,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Trajectory {
    /// X of flat oscillator `j` at output index `k` (t = k·h); `k` may be
    /// negative down to `-pre`.
    pub fn x(&self, k: isize, j: usize) -> f64 {
        self.x[(k + self.pre as isize) as usize * self.n + j]
    }

    pub fn y(&self, k: isize, j: usize) -> f64 {
        self.y[(k + self.pre as isize) as usize * self.n + j]
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    /// Linear interpolation of X at an arbitrary time inside the history.
    pub fn x_at(&self, t: f64, j: usize) -> Option<f64> {
        let u = t / self.h;
        let lo = u.floor();
        if lo < -(self.pre as f64) || lo > self.steps as f64 {
            return None;
        }
        let k = lo as isize;
        let frac = u - lo;
        if frac == 0.0 || k == self.steps as isize {
            return Some(self.x(k, j));
        }
        Some((1.0 - frac) * self.x(k, j) + frac * self.x(k + 1, j))
    }

    pub fn oscillators(&self) -> usize {
        self.n
    }

    /// Bottom-scale X values at output index `k`.
    pub fn bottom(&self, k: isize) -> Vec<f64> {
        (0..self.topology.sizes[0]).map(|j| self.x(k, j)).collect()
    }
}

/// Right-hand side of one oscillator given its lagged drive and own lagged pair.
pub fn derivatives(gamma: f64, f: f64, pp: bool, x: f64, y: f64, x_lag: f64, y_lag: f64) -> (f64, f64) {
    let g3 = (f * gamma).powi(3);
    let num = 1.0 + if pp { g3 } else { 0.0 };
    let dx = num / (1.0 + g3 + (y_lag / HILL_K).powi(3)) - DECAY * x + BASAL;
    let hx = (x_lag / HILL_K).powi(3);
    let dy = hx / (1.0 + hx) - DECAY * y + BASAL;
    (dx, dy)
}

/// Initial X per flat oscillator: fixed bottom values, parents average children.
pub fn initial_state(topo: &Topology) -> Result<Vec<f64>, OscError> {
    if topo.sizes[0] != BOTTOM_INIT.len() {
        return Err(OscError::Config(format!("bottom scale must hold {} oscillators", BOTTOM_INIT.len())));
    }
    let mut x = vec![0.0; topo.total()];
    x[..4].copy_from_slice(&BOTTOM_INIT);
    for m in 1..topo.scales() {
        for i in 0..topo.sizes[m] {
            let ch = topo.children(m, i);
            let mean = ch.iter().map(|&c| x[topo.flat(m - 1, c)]).sum::<f64>() / ch.len() as f64;
            x[topo.flat(m, i)] = mean;
        }
    }
    Ok(x)
}

struct Links {
    scale: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

fn links(topo: &Topology) -> Links {
    let nodes = topo.nodes();
    let top = topo.scales() - 1;
    Links {
        scale: nodes.iter().map(|&(m, _)| m).collect(),
        parent: nodes.iter().map(|&(m, i)| (m < top).then(|| topo.flat(m + 1, topo.parent[m][i]))).collect(),
        children: nodes
            .iter()
            .map(|&(m, i)| topo.children(m, i).into_iter().map(|c| topo.flat(m - 1, c)).collect())
            .collect(),
    }
}

/// Blended drive: parent term at the bottom, children mean at the top,
/// `w·parent + (1 − w)·children mean` in between.
pub fn gamma(w: f64, parent: Option<f64>, children_mean: Option<f64>) -> f64 {
    match (parent, children_mean) {
        (Some(p), Some(c)) => w * p + (1.0 - w) * c,
        (Some(p), None) => p,
        (None, Some(c)) => c,
        (None, None) => 0.0,
    }
}

/// Integrates the hierarchy with the explicit trapezoid (Heun) scheme. Every
/// delay is a whole number of steps, so lagged reads are exact grid values and
/// always lie strictly in the past of the stage being evaluated.
pub fn integrate(cfg: &OscConfig) -> Result<Trajectory, OscError> {
    cfg.validate()?;
    let topo = cfg.topology()?;
    let n = topo.total();
    let l = links(&topo);
    let lag: Vec<usize> = (0..cfg.scales).map(|m| cfg.steps_in(cfg.tau_at(m)?)).collect::<Result<_, _>>()?;
    let f: Vec<f64> = (0..cfg.scales).map(|m| cfg.f_at(m)).collect::<Result<_, _>>()?;
    let lag_y = cfg.steps_in(Y_LAG)?;
    let steps = cfg.steps_in(cfg.t_end)?;
    // One extra sample so centred differences of lagged signals stay in range.
    let pre = lag.iter().copied().max().unwrap_or(0).max(lag_y) + 1;

    let init = initial_state(&topo)?;
    let rows = pre + steps + 1;
    let mut x = Vec::with_capacity(rows * n);
    let mut y = Vec::with_capacity(rows * n);
    for _ in 0..=pre {
        x.extend_from_slice(&init);
        y.extend_from_slice(&init);
    }
    x.resize(rows * n, 0.0);
    y.resize(rows * n, 0.0);

    let rhs = |x: &[f64], y: &[f64], k: usize, cur_x: &[f64], cur_y: &[f64], dx: &mut [f64], dy: &mut [f64]| {
        for j in 0..n {
            let m = l.scale[j];
            let base = (k - lag[m]) * n;
            let parent = l.parent[j].map(|p| x[base + p]);
            let ch = &l.children[j];
            let cm = (!ch.is_empty()).then(|| ch.iter().map(|&c| x[base + c]).sum::<f64>() / ch.len() as f64);
            let g = gamma(cfg.w, parent, cm);
            let by = (k - lag_y) * n;
            (dx[j], dy[j]) = derivatives(g, f[m], cfg.pp, cur_x[j], cur_y[j], x[by + j], y[by + j]);
        }
    };

    let (mut k1x, mut k1y, mut k2x, mut k2y) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let (mut px, mut py) = (vec![0.0; n], vec![0.0; n]);
    let h = cfg.h;
    for k in pre..pre + steps {
        let (cx, cy) = (x[k * n..(k + 1) * n].to_vec(), y[k * n..(k + 1) * n].to_vec());
        rhs(&x, &y, k, &cx, &cy, &mut k1x, &mut k1y);
        for j in 0..n {
            px[j] = cx[j] + h * k1x[j];
            py[j] = cy[j] + h * k1y[j];
        }
        rhs(&x, &y, k + 1, &px, &py, &mut k2x, &mut k2y);
        for j in 0..n {
            x[(k + 1) * n + j] = cx[j] + 0.5 * h * (k1x[j] + k2x[j]);
            y[(k + 1) * n + j] = cy[j] + 0.5 * h * (k1y[j] + k2y[j]);
        }
    }
    Ok(Trajectory { topology: topo, h, pre, steps, n, x, y })
}
