use std::collections::VecDeque;

use crate::{relevant_rooms, ROOMS};

/// Scales each half (objects, robots) of an estimate vector to sum to one;
/// an all-zero half stays zero.
pub fn normalize_half(v: &mut [f64; 6]) {
    for half in v.chunks_mut(3) {
        let s: f64 = half.iter().sum();
        if s > 0.0 {
            half.iter_mut().for_each(|x| *x /= s);
        }
    }
}

/// The last `M` detection samples taken in one room.
#[derive(Debug, Clone, Default, PartialEq)]
struct Window {
    samples: VecDeque<bool>,
    hits: usize,
}

impl Window {
    fn push(&mut self, hit: bool, horizon: usize) {
        self.samples.push_back(hit);
        self.hits += hit as usize;
        while self.samples.len() > horizon {
            let old = self.samples.pop_front().unwrap_or(false);
            self.hits -= old as usize;
        }
    }

    fn mean(&self) -> Option<f64> {
        (!self.samples.is_empty()).then(|| self.hits as f64 / self.samples.len() as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Robot {
    pub room: usize,
    pub goal: usize,
    /// Normalised estimates over the relevant rooms of `room`.
    pub estimate: [f64; 6],
    /// Committed crossing: destination and steps left before arrival.
    pub transit: Option<(usize, usize)>,
    sense_objects: [Window; ROOMS],
    sense_robots: [Window; ROOMS],
    /// Exponential moving averages of received quantities per absolute room:
    /// objects first, robots after.
    comm: [Option<f64>; 2 * ROOMS],
}

impl Robot {
    pub fn new(room: usize) -> Self {
        Self {
            room,
            goal: room,
            estimate: [0.0; 6],
            transit: None,
            sense_objects: Default::default(),
            sense_robots: Default::default(),
            comm: [None; 2 * ROOMS],
        }
    }

    /// Records this step's detections in the current room. Buffers of rooms
    /// the robot has left keep their last samples.
    pub fn sense(&mut self, object_hit: bool, robot_hit: bool, horizon: usize) {
        self.sense_objects[self.room].push(object_hit, horizon);
        self.sense_robots[self.room].push(robot_hit, horizon);
    }

    /// Folds a quantity received for absolute slot `slot` into its average.
    pub fn receive(&mut self, slot: usize, value: f64, rate: f64) {
        self.comm[slot] = Some(match self.comm[slot] {
            Some(old) => (1.0 - rate) * old + rate * value,
            None => value,
        });
    }

    /// Per absolute slot, the mean of the sense-based and comm-based
    /// quantities that exist (objects in `0..ROOMS`, robots after).
    pub fn quantities(&self) -> [Option<f64>; 2 * ROOMS] {
        let mut q = [None; 2 * ROOMS];
        for k in 0..ROOMS {
            for (slot, sensed) in [(k, self.sense_objects[k].mean()), (ROOMS + k, self.sense_robots[k].mean())] {
                q[slot] = match (sensed, self.comm[slot]) {
                    (Some(s), Some(c)) => Some(0.5 * (s + c)),
                    (s, c) => s.or(c),
                };
            }
        }
        q
    }

    /// Quantities for the relevant rooms, normalised per half.
    pub fn estimate_from(&self, q: &[Option<f64>; 2 * ROOMS]) -> [f64; 6] {
        let mut v = [0.0; 6];
        for (j, &room) in relevant_rooms(self.room).iter().enumerate() {
            v[j] = q[room].unwrap_or(0.0);
            v[j + 3] = q[ROOMS + room].unwrap_or(0.0);
        }
        normalize_half(&mut v);
        v
    }
}
