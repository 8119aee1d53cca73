use rand::Rng;

pub const ROOMS: usize = 4;
pub const OBJECTS: [usize; ROOMS] = [70, 70, 30, 30];
pub const ROBOTS: usize = 100;

/// Relevant rooms of a robot in room `k`: the room itself, then its two ring
/// neighbours in ascending index. This is also the tie-break order.
pub fn relevant_rooms(k: usize) -> [usize; 3] {
    let (a, b) = ((k + 1) % ROOMS, (k + ROOMS - 1) % ROOMS);
    [k, a.min(b), a.max(b)]
}

/// Object shares, the distribution the robots should reach.
pub fn desired_distribution() -> [f64; ROOMS] {
    let total: usize = OBJECTS.iter().sum();
    OBJECTS.map(|o| o as f64 / total as f64)
}

/// Mean absolute distance between robot shares and object shares.
pub fn delta_gl(robots: &[usize; ROOMS]) -> f64 {
    let n: usize = robots.iter().sum();
    let o = desired_distribution();
    (0..ROOMS).map(|k| (o[k] - robots[k] as f64 / n as f64).abs()).sum::<f64>() / ROOMS as f64
}

/// Actual counts over the relevant rooms of room `k`, each half normalised:
/// three object shares followed by three robot shares.
pub fn actual_vector(robots: &[usize; ROOMS], k: usize) -> [f64; 6] {
    let rel = relevant_rooms(k);
    let mut v = [0.0; 6];
    for (j, &room) in rel.iter().enumerate() {
        v[j] = OBJECTS[room] as f64;
        v[j + 3] = robots[room] as f64;
    }
    crate::normalize_half(&mut v);
    v
}

/// Room counts of the swarm; robots are tracked by the model.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    pub robots: [usize; ROOMS],
}

impl World {
    /// Robots spread evenly over the rooms.
    pub fn uniform() -> Self {
        Self { robots: [ROBOTS / ROOMS; ROOMS] }
    }

    pub fn move_robot(&mut self, from: usize, to: usize) {
        self.robots[from] -= 1;
        self.robots[to] += 1;
    }
}

/// One locomotion step: a robot in its goal room stays; otherwise it steps,
/// with probability `p_move`, to the neighbour on the shorter arc towards the
/// goal (the lower-indexed neighbour when both arcs are equal).
pub fn locomote<R: Rng + ?Sized>(current: usize, goal: usize, p_move: f64, rng: &mut R) -> usize {
    if current == goal || !rng.random_bool(p_move) {
        return current;
    }
    let fwd = (goal + ROOMS - current) % ROOMS;
    let (up, down) = ((current + 1) % ROOMS, (current + ROOMS - 1) % ROOMS);
    match fwd.cmp(&(ROOMS - fwd)) {
        std::cmp::Ordering::Less => up,
        std::cmp::Ordering::Greater => down,
        std::cmp::Ordering::Equal => up.min(down),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_structure() {
        assert_eq!(relevant_rooms(0), [0, 1, 3]);
        assert_eq!(relevant_rooms(3), [3, 0, 2]);
        for k in 0..ROOMS {
            let r = relevant_rooms(k);
            assert!(!r[1..].contains(&k) && r[1] != r[2]);
        }
    }

    #[test]
    fn goal_distance_from_uniform_start() {
        assert!((delta_gl(&World::uniform().robots) - 0.1).abs() < 1e-12);
        assert!(delta_gl(&[35, 35, 15, 15]).abs() < 1e-12);
    }

    #[test]
    fn actual_vector_halves_sum_to_one() {
        let v = actual_vector(&[40, 20, 20, 20], 0);
        assert!((v[..3].iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((v[3..].iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((v[0] - 70.0 / 170.0).abs() < 1e-12);
        assert!((v[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn locomotion_rules() {
        let mut rng = msfs_kernel::rng_stream(1, 0);
        for _ in 0..100 {
            assert_eq!(locomote(2, 2, 1.0, &mut rng), 2);
            assert_eq!(locomote(2, 3, 0.0, &mut rng), 2);
        }
        assert_eq!(locomote(0, 1, 1.0, &mut rng), 1);
        assert_eq!(locomote(0, 3, 1.0, &mut rng), 3);
        assert_eq!(locomote(0, 2, 1.0, &mut rng), 1);
    }
}
