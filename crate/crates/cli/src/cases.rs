//! Adapters from a generic [`ExperimentConfig`] to each case study: accepted
//! parameters, default horizons and runners that turn one repetition into a
//! [`RunTrace`].

use std::fmt::Display;

use msfs_decision::{c_syn_cd, cycle_measures, summarize, CdConfig, CdError, CdStrategy};
use msfs_kernel::{rng_stream, stream_id, ExperimentConfig, KernelError, Registry, RunTrace};
use msfs_oscillators::{c_syn_ho, integrate, measures_ho, OscConfig, OscError, CALIBRATED_F, CALIBRATED_TAU};
use msfs_robotic::{simulate, RcConfig, RcError, RcStrategy, ROOMS};
use msfs_taskdist::{goal_curve, scenario_rows, Strategy as TdStrategy, TaskError};

use crate::CliError;

pub const ROBOTIC: &str = "robotic-collective";
pub const DECISION: &str = "collective-decision";
pub const TASKS: &str = "task-distribution";
pub const OSCILLATORS: &str = "hierarchical-oscillators";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    /// Non-negative integer.
    Count,
    /// 0 or 1.
    Flag,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
}

const fn real(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: Kind::Real }
}
const fn count(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: Kind::Count }
}
const fn flag(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: Kind::Flag }
}

const RC_PARAMS: &[ParamSpec] = &[
    count("sensing_horizon"),
    real("p_move"),
    real("ema_rate"),
    count("partners"),
    count("travel_steps"),
    real("detect_rate"),
];
const CD_PARAMS: &[ParamSpec] = &[
    count("n"),
    count("r"),
    real("alpha"),
    real("kappa"),
    real("delta_env"),
    real("w_a_start"),
    real("collapse_low"),
    real("collapse_high"),
    flag("literal_goal_sign"),
];
const TD_PARAMS: &[ParamSpec] = &[flag("scenario"), flag("error_inject")];
const HO_PARAMS: &[ParamSpec] = &[
    count("scales"),
    real("f"),
    real("f_0"),
    real("f_1"),
    real("f_2"),
    real("tau"),
    real("tau_0"),
    real("tau_1"),
    real("tau_2"),
    real("w"),
    real("h"),
    count("csyn_grid"),
    count("record_every"),
    flag("literal_goal_sign"),
];

/// Static description of one registered case study.
pub struct CaseInfo {
    pub id: &'static str,
    pub strategies: Vec<&'static str>,
    /// Used when a config gives no horizon (steps, or seconds for the
    /// oscillators).
    pub default_horizon: f64,
    pub params: &'static [ParamSpec],
    validate: fn(&ExperimentConfig) -> Result<(), KernelError>,
}

/// Every case study known to the runner, in a stable order.
pub struct Catalog {
    registry: Registry,
    cases: Vec<CaseInfo>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::new()
    }
}

impl Catalog {
    pub fn new() -> Self {
        let mut registry = Registry::new();
        let cases = vec![
            CaseInfo {
                id: ROBOTIC,
                strategies: RcStrategy::ALL.iter().map(|s| s.name()).collect(),
                default_horizon: 2000.0,
                params: RC_PARAMS,
                validate: |c| rc_config(c).map(drop),
            },
            CaseInfo {
                id: DECISION,
                strategies: CdStrategy::ALL.iter().map(|s| s.name()).collect(),
                default_horizon: 5000.0,
                params: CD_PARAMS,
                validate: |c| cd_config(c).map(drop),
            },
            CaseInfo {
                id: TASKS,
                strategies: TdStrategy::ALL.iter().map(|s| s.name()).collect(),
                default_horizon: 50.0,
                params: TD_PARAMS,
                validate: |c| td_config(c).map(drop),
            },
            CaseInfo {
                id: OSCILLATORS,
                strategies: vec!["nn", "pp"],
                default_horizon: 300.0,
                params: HO_PARAMS,
                validate: |c| ho_config(c).map(drop),
            },
        ];
        registry.register(ROBOTIC, &cases[0].strategies, Box::new(run_robotic));
        registry.register(DECISION, &cases[1].strategies, Box::new(run_decision));
        registry.register(TASKS, &cases[2].strategies, Box::new(run_tasks));
        registry.register(OSCILLATORS, &cases[3].strategies, Box::new(run_oscillators));
        Self { registry, cases }
    }

    pub fn cases(&self) -> &[CaseInfo] {
        &self.cases
    }

    pub fn get(&self, id: &str) -> Option<&CaseInfo> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Field-level validation of one experiment, without running it.
    pub fn check(&self, cfg: &ExperimentConfig) -> Result<(), CliError> {
        self.registry.check(cfg)?;
        let case = self.get(&cfg.case).ok_or_else(|| CliError::Schema(format!("unknown case study `{}`", cfg.case)))?;
        check_params(case, cfg)?;
        (case.validate)(cfg)?;
        Ok(())
    }

    /// Runs every repetition of one experiment.
    pub fn run(&self, cfg: &ExperimentConfig) -> Result<Vec<RunTrace>, CliError> {
        self.check(cfg)?;
        Ok(self.registry.run_batch(cfg)?)
    }
}

fn check_params(case: &CaseInfo, cfg: &ExperimentConfig) -> Result<(), CliError> {
    for (name, &v) in &cfg.params {
        let Some(spec) = case.params.iter().find(|p| p.name == name) else {
            let known: Vec<&str> = case.params.iter().map(|p| p.name).collect();
            return Err(CliError::Schema(format!(
                "params.{name}: unknown parameter for `{}` (expected one of {})",
                case.id,
                known.join(", ")
            )));
        };
        let ok = match spec.kind {
            Kind::Real => v.is_finite(),
            Kind::Count => v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64,
            Kind::Flag => v == 0.0 || v == 1.0,
        };
        if !ok {
            let what = match spec.kind {
                Kind::Real => "a finite number",
                Kind::Count => "a non-negative integer",
                Kind::Flag => "0 or 1",
            };
            return Err(CliError::Schema(format!("params.{name}: expected {what}, got {v}")));
        }
    }
    Ok(())
}

fn config_err(e: impl Display) -> KernelError {
    KernelError::Config(e.to_string())
}

fn count_param(cfg: &ExperimentConfig, name: &str) -> Option<usize> {
    cfg.params.get(name).map(|&v| v as usize)
}

fn flag_param(cfg: &ExperimentConfig, name: &str) -> bool {
    cfg.params.get(name).is_some_and(|&v| v == 1.0)
}

fn horizon_steps(cfg: &ExperimentConfig) -> Result<usize, KernelError> {
    if cfg.horizon.fract() != 0.0 {
        return Err(config_err(format!("horizon: expected a whole number of steps, got {}", cfg.horizon)));
    }
    Ok(cfg.horizon as usize)
}

fn rc_error(e: RcError) -> KernelError {
    match e {
        RcError::Config(_) | RcError::UnknownStrategy(_) => config_err(e),
        other => KernelError::Model(other.to_string()),
    }
}

fn cd_error(e: CdError) -> KernelError {
    match e {
        CdError::Config(_) | CdError::UnknownStrategy(_) => config_err(e),
        other => KernelError::Model(other.to_string()),
    }
}

fn td_error(e: TaskError) -> KernelError {
    match e {
        TaskError::UnknownStrategy(_) => config_err(e),
        other => KernelError::Model(other.to_string()),
    }
}

fn ho_error(e: OscError) -> KernelError {
    match e {
        OscError::Config(_) => config_err(e),
        other => KernelError::Model(other.to_string()),
    }
}

pub fn rc_config(cfg: &ExperimentConfig) -> Result<RcConfig, KernelError> {
    let strategy: RcStrategy = cfg.strategy.parse().map_err(rc_error)?;
    let mut c = RcConfig::new(strategy);
    if let Some(m) = count_param(cfg, "sensing_horizon") {
        c.sensing_horizon = Some(m);
    }
    c.p_move = cfg.param("p_move", c.p_move);
    c.ema_rate = cfg.param("ema_rate", c.ema_rate);
    c.partners = count_param(cfg, "partners").unwrap_or(c.partners);
    c.travel_steps = count_param(cfg, "travel_steps").unwrap_or(c.travel_steps);
    c.detect_rate = cfg.param("detect_rate", c.detect_rate);
    c.steps = horizon_steps(cfg)?;
    c.validate().map_err(rc_error)?;
    Ok(c)
}

const RC_COLUMNS: &[&str] = &[
    "t",
    "delta_sm",
    "delta_th_counts",
    "delta_th_full",
    "delta_th_partial",
    "v_sm_th_counts",
    "v_sm_th_full",
    "v_sm_th_partial",
    "e_sm_th_counts",
    "e_sm_th_full",
    "e_sm_th_partial",
    "delta_gl",
    "v_pr_gl_10",
    "v_pr_gl_100",
    "v_pr_gl_500",
    "e_pr_gl_10",
    "e_pr_gl_100",
    "e_pr_gl_500",
    "robots_0",
    "robots_1",
    "robots_2",
    "robots_3",
];

fn run_robotic(cfg: &ExperimentConfig, rep: u64) -> Result<RunTrace, KernelError> {
    let c = rc_config(cfg)?;
    let run = simulate(&c, &mut rng_stream(cfg.seed, stream_id(rep, 0))).map_err(rc_error)?;
    let mut trace = RunTrace::new(RC_COLUMNS);
    for m in &run.steps {
        let mut row = vec![Some(m.t as f64), Some(m.delta_sm)];
        row.extend(m.delta_th.as_array().map(Some));
        row.extend(m.v_sm_th);
        row.extend(m.e_sm_th);
        row.push(Some(m.delta_gl));
        row.extend(m.v_pr_gl);
        row.extend(m.e_pr_gl);
        row.extend((0..ROOMS).map(|k| Some(m.robots[k] as f64)));
        trace.push(row);
    }
    if cfg.full_trace {
        trace.snapshots = run
            .robots
            .iter()
            .enumerate()
            .map(|(i, r)| format!("robot={i} room={} goal={} estimate={:?}", r.room, r.goal, r.estimate))
            .collect();
    }
    Ok(trace)
}

pub fn cd_config(cfg: &ExperimentConfig) -> Result<CdConfig, KernelError> {
    let strategy: CdStrategy = cfg.strategy.parse().map_err(cd_error)?;
    let n = count_param(cfg, "n").ok_or_else(|| config_err("params.n: required"))?;
    let r = count_param(cfg, "r").ok_or_else(|| config_err("params.r: required"))?;
    let mut c = CdConfig::new(n, r, strategy);
    c.alpha = cfg.param("alpha", c.alpha);
    c.kappa = cfg.param("kappa", c.kappa);
    c.delta_env = cfg.param("delta_env", c.delta_env);
    c.w_a_start = cfg.param("w_a_start", c.w_a_start);
    c.collapse_low = cfg.param("collapse_low", c.collapse_low);
    c.collapse_high = cfg.param("collapse_high", c.collapse_high);
    c.literal_goal_sign = flag_param(cfg, "literal_goal_sign");
    c.horizon = horizon_steps(cfg)?;
    c.full_trace = cfg.full_trace;
    c.validate().map_err(cd_error)?;
    Ok(c)
}

const CD_COLUMNS: &[&str] = &[
    "n",
    "r",
    "t_collapse",
    "collapsed",
    "cycles",
    "delta_sm_avg",
    "delta_pr_avg",
    "delta_th_avg",
    "v_sm_th_avg",
    "v_pr_gl_avg",
    "c_syn_cycle",
    "e_sm_th_avg",
    "e_pr_gl_avg",
];

/// One summary row per simulation; the per-cycle measures go to the
/// snapshots of a full trace.
fn run_decision(cfg: &ExperimentConfig, rep: u64) -> Result<RunTrace, KernelError> {
    let c = cd_config(cfg)?;
    let c_syn = c_syn_cd(c.n, c.r, c.strategy).map_err(cd_error)?.cycle;
    let run = msfs_decision::simulate(&c, &mut rng_stream(cfg.seed, stream_id(rep, 0))).map_err(cd_error)?;
    let cycles = cycle_measures(&run, c_syn, c.literal_goal_sign).map_err(cd_error)?;
    let s = summarize(&run, &cycles, c_syn);
    let mut trace = RunTrace::new(CD_COLUMNS);
    trace.push(vec![
        Some(c.n as f64),
        Some(c.r as f64),
        Some(s.t_collapse as f64),
        Some(if s.collapsed { 1.0 } else { 0.0 }),
        Some(s.cycles as f64),
        s.delta_sm_avg,
        s.delta_pr_avg,
        s.delta_th_avg,
        s.v_sm_th_avg,
        s.v_pr_gl_avg,
        Some(s.c_syn_cycle),
        s.e_sm_th_avg,
        s.e_pr_gl_avg,
    ]);
    if cfg.full_trace {
        trace.snapshots = cycles
            .iter()
            .map(|m| serde_json::to_string(m).map_err(|e| KernelError::Model(e.to_string())))
            .collect::<Result<_, _>>()?;
    }
    Ok(trace)
}

struct TdConfig {
    strategy: TdStrategy,
    scenario: bool,
    error_inject: bool,
    m_max: usize,
}

fn td_config(cfg: &ExperimentConfig) -> Result<TdConfig, KernelError> {
    let c = TdConfig {
        strategy: cfg.strategy.parse().map_err(td_error)?,
        scenario: flag_param(cfg, "scenario"),
        error_inject: flag_param(cfg, "error_inject"),
        m_max: horizon_steps(cfg)?,
    };
    if c.scenario && c.error_inject {
        return Err(config_err("params.error_inject: the scenario replay has no faulty worker"));
    }
    Ok(c)
}

const TD_CURVE_COLUMNS: &[&str] = &["m", "p_goal", "v_adapt", "v_adapt_goal", "p_goal_keep", "v_goal", "e_goal"];
const TD_SCENARIO_COLUMNS: &[&str] = &[
    "t",
    "on_goal_task",
    "semantic_delta",
    "delta_truth",
    "sv_truth",
    "v_truth",
    "e_truth",
    "scope_delta",
    "adapt_delta",
];

/// Exact goal-value curve over `m = 0..=horizon`, or the scripted scenario
/// replay when `scenario = 1` (the horizon is then unused).
fn run_tasks(cfg: &ExperimentConfig, _rep: u64) -> Result<RunTrace, KernelError> {
    let c = td_config(cfg)?;
    if c.scenario {
        let mut trace = RunTrace::new(TD_SCENARIO_COLUMNS);
        for r in scenario_rows(c.strategy).map_err(td_error)? {
            trace.push(vec![
                Some(r.t as f64),
                Some(r.on_goal_task as f64),
                Some(r.semantic_delta as f64),
                Some(r.delta_truth as f64),
                Some(r.sv_truth),
                r.v_truth,
                r.e_truth,
                Some(r.scope_delta as f64),
                r.adapt_delta.map(f64::from),
            ]);
        }
        return Ok(trace);
    }
    let mut trace = RunTrace::new(TD_CURVE_COLUMNS);
    for p in goal_curve(c.strategy, c.error_inject, c.m_max).map_err(td_error)? {
        trace.push(vec![
            Some(p.m as f64),
            Some(p.p_goal),
            Some(p.v_adapt),
            Some(p.v_adapt_goal),
            Some(p.p_goal_keep),
            Some(p.v_goal),
            p.e_goal,
        ]);
    }
    Ok(trace)
}

fn per_scale(cfg: &ExperimentConfig, name: &str, scales: usize, default: f64) -> Vec<f64> {
    let shared = cfg.param(name, default);
    let per: Vec<Option<f64>> = (0..scales).map(|m| cfg.params.get(&format!("{name}_{m}")).copied()).collect();
    if per.iter().all(Option::is_none) {
        vec![shared]
    } else {
        per.into_iter().map(|v| v.unwrap_or(shared)).collect()
    }
}

pub fn ho_config(cfg: &ExperimentConfig) -> Result<OscConfig, KernelError> {
    let scales = count_param(cfg, "scales").unwrap_or(2);
    let mut c = OscConfig::uniform(scales, CALIBRATED_F, CALIBRATED_TAU);
    c.f = per_scale(cfg, "f", scales, CALIBRATED_F);
    c.tau = per_scale(cfg, "tau", scales, CALIBRATED_TAU);
    c.w = cfg.param("w", c.w);
    c.h = cfg.param("h", c.h);
    c.pp = match cfg.strategy.as_str() {
        "nn" => false,
        "pp" => true,
        other => return Err(config_err(format!("unknown strategy `{other}`"))),
    };
    c.t_end = cfg.horizon;
    c.csyn_grid = count_param(cfg, "csyn_grid").unwrap_or(c.csyn_grid);
    c.literal_goal_sign = flag_param(cfg, "literal_goal_sign");
    c.validate().map_err(ho_error)?;
    if count_param(cfg, "record_every") == Some(0) {
        return Err(config_err("params.record_every: must be at least 1"));
    }
    Ok(c)
}

/// Sampled every `record_every` integration steps (default 10, every step
/// for a full trace); the last step is always included.
fn run_oscillators(cfg: &ExperimentConfig, _rep: u64) -> Result<RunTrace, KernelError> {
    let c = ho_config(cfg)?;
    let every = if cfg.full_trace { 1 } else { count_param(cfg, "record_every").unwrap_or(10) };
    let tr = integrate(&c).map_err(ho_error)?;
    let content = c_syn_ho(&tr.topology, c.csyn_grid).map_err(ho_error)?;
    let lag0 = c.steps_in(c.tau_at(0).map_err(ho_error)?).map_err(ho_error)?;
    let m = measures_ho(&tr, lag0, content.total, c.literal_goal_sign).map_err(ho_error)?;

    let n = tr.oscillators();
    let mut names: Vec<String> = vec!["t".into()];
    names.extend((0..n).map(|j| format!("x_{j}")));
    names.extend(["delta_sm", "v_sm_th", "e_sm_th", "delta_pr", "delta_gl", "v_pr_gl", "e_pr_gl"].map(String::from));
    let cols: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut trace = RunTrace::new(&cols);
    for k in (0..=tr.steps).filter(|&k| k % every == 0 || k == tr.steps) {
        let mut row = vec![Some(m.t[k])];
        row.extend((0..n).map(|j| Some(tr.x(k as isize, j))));
        row.extend([
            m.delta_sm[k],
            m.v_sm_th[k],
            m.e_sm_th[k],
            m.delta_pr[k],
            m.delta_gl[k],
            m.v_pr_gl[k],
            m.e_pr_gl[k],
        ]);
        trace.push(row);
    }
    Ok(trace)
}
