//! Step model of the hierarchy. One call to [`TaskHierarchy::step`] moves
//! state information one step up and control one step down:
//!
//! * workers act on the error their mid-manager issued on the previous step;
//! * managers abstract the worker states reported on the previous step, the
//!   top-manager compares them with the goal and the mid-managers take their
//!   share of the error.
//!
//! Errors use the "state minus goal" sign: negative means more workers are
//! needed on task `k_1`.

use rand::Rng;

use crate::{Strategy, GOAL, WORKERS};

/// Parent mid-manager of each worker.
const PARENT: [usize; WORKERS] = [0, 0, 1, 1];

/// Halves an error for the two mid-managers, rounding the magnitude up:
/// both -4 and -3 become -2.
pub fn split_error(e: i32) -> i32 {
    e.signum() * ((e.abs() + 1) / 2)
}

/// Source of switching decisions.
pub trait Draws {
    /// Whether `worker` switches at step `t`, given switching probability `p`.
    fn switch(&mut self, t: usize, worker: usize, p: f64) -> bool;
}

pub struct RandomDraws<R: Rng>(pub R);

impl<R: Rng> Draws for RandomDraws<R> {
    fn switch(&mut self, _t: usize, _worker: usize, p: f64) -> bool {
        self.0.random::<f64>() < p
    }
}

/// Replays a fixed list of `(step, worker)` switches.
pub struct ScriptedDraws {
    pub switches: Vec<(usize, usize)>,
}

impl Draws for ScriptedDraws {
    fn switch(&mut self, t: usize, worker: usize, _p: f64) -> bool {
        self.switches.contains(&(t, worker))
    }
}

/// Snapshot of every agent variable at one step. `None` is "no knowledge yet".
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub t: usize,
    pub workers: [u8; WORKERS],
    pub worker_err: [Option<i32>; WORKERS],
    pub mid_abs: [Option<i32>; 2],
    pub mid_err: [Option<i32>; 2],
    pub top_abs: Option<i32>,
    pub top_err: Option<i32>,
    /// Workers that had a live switch opportunity because of control.
    pub scope: i32,
    /// Workers that actually switched on this step.
    pub switched: i32,
}

impl StepRecord {
    /// Workers on task `k_1`.
    pub fn on_goal_task(&self) -> i32 {
        self.workers.iter().map(|&w| w as i32).sum()
    }

    /// All agent variables in a fixed order, NA as `None`.
    pub fn variables(&self) -> Vec<Option<i32>> {
        let mut v: Vec<Option<i32>> = self.workers.iter().map(|&w| Some(w as i32)).collect();
        v.extend(self.worker_err);
        v.extend(self.mid_abs);
        v.extend(self.mid_err);
        v.push(self.top_abs);
        v.push(self.top_err);
        v
    }

    /// Summed mid-manager error (the mid scale's estimate of the total error).
    pub fn mid_estimate(&self) -> Option<i32> {
        Some(self.mid_err[0]? + self.mid_err[1]?)
    }
}

#[derive(Debug, Clone)]
pub struct TaskHierarchy {
    pub strategy: Strategy,
    pub goal: i32,
    /// Worker 0 always reports task `k_1`, whatever it does.
    pub error_inject: bool,
    current: StepRecord,
    /// Md only: switches commanded per mid-manager and not yet visible above.
    pending: [i32; 2],
}

impl TaskHierarchy {
    pub fn new(strategy: Strategy, workers: [u8; WORKERS]) -> Self {
        Self {
            strategy,
            goal: GOAL,
            error_inject: false,
            current: StepRecord {
                t: 0,
                workers,
                worker_err: [None; WORKERS],
                mid_abs: [None; 2],
                mid_err: [None; 2],
                top_abs: None,
                top_err: None,
                scope: 0,
                switched: 0,
            },
            pending: [0; 2],
        }
    }

    pub fn with_error_injection(mut self, on: bool) -> Self {
        self.error_inject = on;
        self
    }

    pub fn state(&self) -> &StepRecord {
        &self.current
    }

    fn reported(&self) -> [u8; WORKERS] {
        let mut r = self.current.workers;
        if self.error_inject {
            r[0] = 1;
        }
        r
    }

    /// Advances one step and returns the new snapshot.
    pub fn step(&mut self, draws: &mut impl Draws) -> &StepRecord {
        let prev = self.current.clone();
        let reported = self.reported();
        let t = prev.t + 1;

        // Reification reaches the workers.
        let worker_err: [Option<i32>; WORKERS] = std::array::from_fn(|w| prev.mid_err[PARENT[w]]);

        // Adaptation.
        let mut workers = prev.workers;
        let mut scope = 0;
        let mut switched = 0;
        match self.strategy {
            Strategy::Bb | Strategy::Md => {
                for mid in 0..2 {
                    let Some(e) = prev.mid_err[mid] else { continue };
                    if e == 0 {
                        continue;
                    }
                    // negative error: recruit workers from k_0, positive: release from k_1
                    let from = if e < 0 { 0 } else { 1 };
                    // Md managers address workers by their reported task;
                    // BB workers self-select from their actual task.
                    let candidates: Vec<usize> = (0..WORKERS)
                        .filter(|&w| PARENT[w] == mid && workers[w] == from)
                        .filter(|&w| self.strategy != Strategy::Md || reported[w] == from)
                        .collect();
                    let cap = e.unsigned_abs() as usize;
                    scope += cap.min(candidates.len()) as i32;
                    let mut done = 0;
                    for &w in &candidates {
                        if done == cap {
                            break;
                        }
                        let go = match self.strategy {
                            Strategy::Md => true,
                            _ => draws.switch(t, w, self.strategy.p_ch()),
                        };
                        if go {
                            workers[w] = 1 - from;
                            done += 1;
                        }
                    }
                    switched += done as i32;
                }
            }
            Strategy::Rs | Strategy::Rb => {
                for (w, s) in workers.iter_mut().enumerate() {
                    if draws.switch(t, w, self.strategy.p_ch()) {
                        *s = 1 - *s;
                        switched += 1;
                    }
                }
            }
            Strategy::St => {}
        }

        // Abstraction of the states reported on the previous step.
        let mid_abs = [(reported[0] + reported[1]) as i32, (reported[2] + reported[3]) as i32];
        let top_abs = mid_abs[0] + mid_abs[1];

        // Processing.
        let (top_err, mid_err) = if self.strategy == Strategy::Md {
            // Managers count the switches they already commanded.
            let believed = [mid_abs[0] + self.pending[0], mid_abs[1] + self.pending[1]];
            let top_err = believed[0] + believed[1] - self.goal;
            let mut need = -top_err;
            let mut mid_err = [0; 2];
            for mid in 0..2 {
                let room = if need > 0 { 2 - believed[mid] } else { believed[mid] };
                let take = need.abs().min(room.max(0));
                mid_err[mid] = -need.signum() * take;
                need -= need.signum() * take;
            }
            self.pending = [-mid_err[0], -mid_err[1]];
            (top_err, mid_err)
        } else {
            let e = top_abs - self.goal;
            (e, [split_error(e); 2])
        };

        self.current = StepRecord {
            t,
            workers,
            worker_err,
            mid_abs: mid_abs.map(Some),
            mid_err: mid_err.map(Some),
            top_abs: Some(top_abs),
            top_err: Some(top_err),
            scope,
            switched,
        };
        &self.current
    }

    /// Initial snapshot followed by `steps` further snapshots.
    pub fn run(mut self, steps: usize, draws: &mut impl Draws) -> Vec<StepRecord> {
        let mut out = vec![self.current.clone()];
        for _ in 0..steps {
            out.push(self.step(draws).clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_rounds_magnitude_up() {
        assert_eq!(split_error(-4), -2);
        assert_eq!(split_error(-3), -2);
        assert_eq!(split_error(-2), -1);
        assert_eq!(split_error(-1), -1);
        assert_eq!(split_error(0), 0);
        assert_eq!(split_error(3), 2);
    }

    #[test]
    fn goal_is_absorbing() {
        let mut d = ScriptedDraws { switches: (0..20).flat_map(|t| (0..4).map(move |w| (t, w))).collect() };
        for s in [Strategy::Bb, Strategy::Md] {
            let recs = TaskHierarchy::new(s, [1; 4]).run(10, &mut d);
            assert!(recs.iter().all(|r| r.workers == [1; 4] && r.switched == 0));
            assert!(recs[1..].iter().all(|r| r.top_err == Some(0)));
        }
    }

    #[test]
    fn static_never_moves() {
        let mut d = ScriptedDraws { switches: vec![(1, 0), (2, 1)] };
        let recs = TaskHierarchy::new(Strategy::St, [0, 1, 0, 1]).run(6, &mut d);
        assert!(recs.iter().all(|r| r.workers == [0, 1, 0, 1]));
    }

    #[test]
    fn md_commands_everyone_at_once() {
        let mut d = ScriptedDraws { switches: vec![] };
        let recs = TaskHierarchy::new(Strategy::Md, [0; 4]).run(5, &mut d);
        let on: Vec<i32> = recs.iter().map(|r| r.on_goal_task()).collect();
        assert_eq!(on, vec![0, 0, 4, 4, 4, 4]);
    }

    #[test]
    fn injected_report_stalls_md_one_short() {
        let mut d = ScriptedDraws { switches: vec![] };
        let h = TaskHierarchy::new(Strategy::Md, [0; 4]).with_error_injection(true);
        let recs = h.run(8, &mut d);
        assert_eq!(recs.last().unwrap().on_goal_task(), 3);
    }
}
