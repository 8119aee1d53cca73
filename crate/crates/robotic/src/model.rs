use msfs_measures::efficiency;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::measures::{delta_truth, semantic_delta, window_value, DeltaTruth, StepMeasures, WINDOWS};
use crate::{
    actual_vector, delta_gl, estimate_demand, locomote, normalize_half, relevant_rooms, RcError, RcStrategy, Robot,
    World, OBJECTS, ROBOTS, ROOMS,
};

/// Default crossing time between rooms.
pub const TRAVEL_STEPS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcConfig {
    pub strategy: RcStrategy,
    /// Sensing horizon; defaults to the strategy's own (100 or 10).
    #[serde(default)]
    pub sensing_horizon: Option<usize>,
    #[serde(default = "d_p_move")]
    pub p_move: f64,
    /// Smoothing factor of the communication averages.
    #[serde(default = "d_ema")]
    pub ema_rate: f64,
    /// Robots in the relevant rooms each robot hears from per step.
    #[serde(default = "d_partners")]
    pub partners: usize,
    /// Steps a departing robot needs to cross into the next room; it is
    /// still counted in (and senses) its origin until it arrives.
    #[serde(default = "d_travel")]
    pub travel_steps: usize,
    /// Detection probability per object (or other robot) in the room.
    #[serde(default = "d_detect")]
    pub detect_rate: f64,
    #[serde(default = "d_steps")]
    pub steps: usize,
}

fn d_p_move() -> f64 {
    0.1
}
fn d_ema() -> f64 {
    0.1
}
fn d_partners() -> usize {
    2
}
fn d_travel() -> usize {
    TRAVEL_STEPS
}
fn d_detect() -> f64 {
    0.01
}
fn d_steps() -> usize {
    2000
}

impl RcConfig {
    pub fn new(strategy: RcStrategy) -> Self {
        Self {
            strategy,
            sensing_horizon: None,
            p_move: d_p_move(),
            ema_rate: d_ema(),
            partners: d_partners(),
            travel_steps: d_travel(),
            detect_rate: d_detect(),
            steps: d_steps(),
        }
    }

    pub fn horizon(&self) -> Option<usize> {
        self.sensing_horizon.or(self.strategy.horizon())
    }

    pub fn c_syn(&self) -> f64 {
        self.strategy.c_syn(self.sensing_horizon)
    }

    pub fn validate(&self) -> Result<(), RcError> {
        let bad = |m: String| Err(RcError::Config(m));
        if !(0.0..=1.0).contains(&self.p_move) {
            return bad(format!("p_move = {} outside [0, 1]", self.p_move));
        }
        if !(self.ema_rate > 0.0 && self.ema_rate <= 1.0) {
            return bad(format!("ema_rate = {} outside (0, 1]", self.ema_rate));
        }
        if !(self.detect_rate > 0.0) || self.detect_rate * ROBOTS as f64 > 1.0 {
            return bad(format!("detect_rate = {} must keep probabilities ≤ 1", self.detect_rate));
        }
        if self.horizon() == Some(0) {
            return bad("sensing_horizon must be at least 1".into());
        }
        if self.steps == 0 {
            return bad("steps must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RcRun {
    /// Goal distance of the initial (uniform) distribution.
    pub delta_gl0: f64,
    /// One record per step `t = 1..=steps`.
    pub steps: Vec<StepMeasures>,
    /// Robot states after the last step.
    pub robots: Vec<Robot>,
}

/// Runs one repetition. Each step: robots sense their room, hear from up to
/// `partners` robots located in their relevant rooms (quantities of the
/// previous step), update estimates and goals synchronously, are measured
/// against the current counts, and finally move. A robot outside its goal
/// room departs with probability `p_move` and, once departed, completes the
/// crossing after `travel_steps` steps whatever its later goals. The goal
/// distance is taken after moving.
pub fn simulate<R: Rng + ?Sized>(cfg: &RcConfig, rng: &mut R) -> Result<RcRun, RcError> {
    cfg.validate()?;
    let mut world = World::uniform();
    let mut robots: Vec<Robot> = (0..ROBOTS).map(|i| Robot::new(i % ROOMS)).collect();
    let c_syn = cfg.c_syn();
    let mut gl = vec![delta_gl(&world.robots)];
    let mut prev_th: Option<[f64; 3]> = None;
    let mut out = Vec::with_capacity(cfg.steps);

    for t in 1..=cfg.steps {
        let counts = world.robots;
        let previous: Vec<[f64; 6]> = robots.iter().map(|r| r.estimate).collect();
        match cfg.strategy {
            RcStrategy::Main | RcStrategy::MainShort => {
                let horizon = cfg.horizon().unwrap_or(1);
                let heard: Vec<_> = robots.iter().map(Robot::quantities).collect();
                for r in robots.iter_mut() {
                    let o = rng.random_bool(cfg.detect_rate * OBJECTS[r.room] as f64);
                    let b = rng.random_bool(cfg.detect_rate * (counts[r.room] - 1) as f64);
                    r.sense(o, b, horizon);
                }
                let mut members: [Vec<usize>; ROOMS] = Default::default();
                for (i, r) in robots.iter().enumerate() {
                    members[r.room].push(i);
                }
                let mut pool = Vec::with_capacity(ROBOTS);
                for i in 0..robots.len() {
                    let rel = relevant_rooms(robots[i].room);
                    pool.clear();
                    pool.extend(rel.iter().flat_map(|&k| members[k].iter().copied()).filter(|&m| m != i));
                    let take = cfg.partners.min(pool.len());
                    for pick in sample(rng, pool.len(), take) {
                        let p = pool[pick];
                        for &k in &rel {
                            for slot in [k, ROOMS + k] {
                                if let Some(v) = heard[p][slot] {
                                    robots[i].receive(slot, v, cfg.ema_rate);
                                }
                            }
                        }
                    }
                }
                for r in robots.iter_mut() {
                    r.estimate = r.estimate_from(&r.quantities());
                }
            }
            RcStrategy::GroundTruth => {
                for r in robots.iter_mut() {
                    r.estimate = actual_vector(&counts, r.room);
                }
            }
            RcStrategy::Random => {
                for r in robots.iter_mut() {
                    let mut v = [0.0; 6];
                    v.iter_mut().for_each(|x| *x = rng.random::<f64>());
                    normalize_half(&mut v);
                    r.estimate = v;
                }
            }
        }
        for r in robots.iter_mut() {
            // Without any evidence yet the previous goal is kept.
            if let Ok((_, j)) = estimate_demand(&r.estimate) {
                r.goal = relevant_rooms(r.room)[j];
            }
        }

        let now: Vec<[f64; 6]> = robots.iter().map(|r| r.estimate).collect();
        let delta_sm = semantic_delta(&previous, &now)?;
        let th = delta_truth(&counts, &robots)?.as_array();
        let mut v_sm_th = [None; 3];
        let mut e_sm_th = [None; 3];
        if let Some(p) = prev_th {
            for j in 0..3 {
                let v = p[j] - th[j];
                v_sm_th[j] = Some(v);
                e_sm_th[j] = Some(efficiency(v, c_syn)?);
            }
        }
        prev_th = Some(th);

        for r in robots.iter_mut() {
            let arrive = match r.transit {
                Some((dest, left)) if left <= 1 => Some(dest),
                Some((dest, left)) => {
                    r.transit = Some((dest, left - 1));
                    None
                }
                None => {
                    let to = locomote(r.room, r.goal, cfg.p_move, rng);
                    match (to != r.room, cfg.travel_steps) {
                        (false, _) => None,
                        (true, 0) => Some(to),
                        (true, d) => {
                            r.transit = Some((to, d));
                            None
                        }
                    }
                }
            };
            if let Some(to) = arrive {
                world.move_robot(r.room, to);
                r.room = to;
                r.transit = None;
                // A goal picked mid-crossing may lie beyond the new room's
                // neighbourhood; it is re-evaluated on the next step.
                if !relevant_rooms(to).contains(&r.goal) {
                    r.goal = to;
                }
            }
        }
        gl.push(delta_gl(&world.robots));

        let mut v_pr_gl = [None; 3];
        let mut e_pr_gl = [None; 3];
        for (w, &theta) in WINDOWS.iter().enumerate() {
            if let Some(v) = window_value(&gl, t, theta) {
                v_pr_gl[w] = Some(v);
                e_pr_gl[w] = Some(efficiency(v, c_syn)?);
            }
        }
        out.push(StepMeasures {
            t,
            delta_sm,
            delta_th: DeltaTruth { counts: th[0], full: th[1], partial: th[2] },
            v_sm_th,
            e_sm_th,
            delta_gl: gl[t],
            v_pr_gl,
            e_pr_gl,
            robots: world.robots,
        });
    }
    Ok(RcRun { delta_gl0: gl[0], steps: out, robots })
}
