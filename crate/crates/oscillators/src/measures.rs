use msfs_measures::{efficiency, js_divergence, Density, Grid};

use crate::{OscError, Topology, Trajectory};

/// Default number of points on the half-open `[0, 1)` grid for C_syn.
pub const DEFAULT_CSYN_GRID: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct CSynHo {
    /// Per oscillator in flat order (bottom scale first).
    pub per_oscillator: Vec<f64>,
    pub total: f64,
}

/// Syntactic content of every oscillator: bottom oscillators carry a uniform
/// density on `[0, 1]`, a higher oscillator the Bates density of the mean of
/// its bottom-scale descendants. Content is `1 − JS(f‖U)/ln 2`.
pub fn c_syn_ho(topo: &Topology, grid_points: usize) -> Result<CSynHo, OscError> {
    let grid = Grid::half_open(grid_points)?;
    let u = Density::uniform(&grid);
    let per_oscillator = topo
        .nodes()
        .into_iter()
        .map(|(m, i)| {
            let f = Density::bates(&grid, topo.descendants(m, i))?;
            Ok(1.0 - js_divergence(&f, &u)? / std::f64::consts::LN_2)
        })
        .collect::<Result<Vec<_>, OscError>>()?;
    let total = per_oscillator.iter().sum();
    Ok(CSynHo { per_oscillator, total })
}

/// Time series of the semantic and pragmatic measures on the output grid.
/// Entries needing a sample beyond `t_end` are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoMeasures {
    pub t: Vec<f64>,
    /// Mean rate of change of the lagged parent X seen by each bottom oscillator.
    pub delta_sm: Vec<Option<f64>>,
    pub v_sm_th: Vec<Option<f64>>,
    pub e_sm_th: Vec<Option<f64>>,
    /// Mean second derivative of bottom-scale X.
    pub delta_pr: Vec<Option<f64>>,
    /// Population variance of bottom-scale X.
    pub delta_gl: Vec<Option<f64>>,
    pub v_pr_gl: Vec<Option<f64>>,
    pub e_pr_gl: Vec<Option<f64>>,
}

fn population_variance(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n
}

/// Derivative-based measures (central differences with the integration step).
/// `c_syn_total` normalises the efficiencies; `literal_goal_sign` flips the
/// pragmatic goal value to `+dΔ_gl/dt`.
pub fn measures_ho(
    tr: &Trajectory,
    lag0: usize,
    c_syn_total: f64,
    literal_goal_sign: bool,
) -> Result<HoMeasures, OscError> {
    let topo = &tr.topology;
    if lag0 == 0 || lag0 + 1 > tr.pre {
        return Err(OscError::Config(format!("bottom delay of {lag0} steps not covered by the history")));
    }
    let h = tr.h;
    let n0 = topo.sizes[0];
    let parents: Vec<usize> = (0..n0).map(|i| topo.flat(1, topo.parent[0][i])).collect();
    let last = tr.steps as isize;
    let lag = lag0 as isize;

    let x_th = |k: isize| tr.bottom(k).iter().sum::<f64>() / n0 as f64;
    let gap = |k: isize| {
        let th = x_th(k);
        parents.iter().map(|&p| (th - tr.x(k - lag, p)).abs()).sum::<f64>() / n0 as f64
    };
    let var = |k: isize| population_variance(&tr.bottom(k));
    let sign = if literal_goal_sign { 1.0 } else { -1.0 };

    let len = tr.steps + 1;
    let mut m = HoMeasures {
        t: (0..len).map(|k| tr.time(k)).collect(),
        delta_sm: Vec::with_capacity(len),
        v_sm_th: Vec::with_capacity(len),
        e_sm_th: Vec::with_capacity(len),
        delta_pr: Vec::with_capacity(len),
        delta_gl: Vec::with_capacity(len),
        v_pr_gl: Vec::with_capacity(len),
        e_pr_gl: Vec::with_capacity(len),
    };
    for k in 0..=last {
        let d_sm =
            parents.iter().map(|&p| (tr.x(k - lag + 1, p) - tr.x(k - lag - 1, p)) / (2.0 * h)).sum::<f64>() / n0 as f64;
        m.delta_sm.push(Some(d_sm));
        m.delta_gl.push(Some(var(k)));
        if k == last {
            for s in [&mut m.v_sm_th, &mut m.e_sm_th, &mut m.delta_pr, &mut m.v_pr_gl, &mut m.e_pr_gl] {
                s.push(None);
            }
            continue;
        }
        let v_th = -(gap(k + 1) - gap(k - 1)) / (2.0 * h);
        m.v_sm_th.push(Some(v_th));
        m.e_sm_th.push(Some(efficiency(v_th, c_syn_total)?));
        let d_pr =
            (0..n0).map(|j| (tr.x(k + 1, j) - 2.0 * tr.x(k, j) + tr.x(k - 1, j)) / (h * h)).sum::<f64>() / n0 as f64;
        m.delta_pr.push(Some(d_pr));
        let v_gl = sign * (var(k + 1) - var(k - 1)) / (2.0 * h);
        m.v_pr_gl.push(Some(v_gl));
        m.e_pr_gl.push(Some(efficiency(v_gl, c_syn_total)?));
    }
    Ok(m)
}
