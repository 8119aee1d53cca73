use rand::seq::index::sample;
use rand::Rng;

pub const GRID_SIDE: usize = 58;
pub const INNER_SIDE: usize = 50;
pub const GRID_CELLS: usize = GRID_SIDE * GRID_SIDE;

/// Square grid of information sources showing task A (`true`) or B.
#[derive(Debug, Clone)]
pub struct InfoGrid {
    cells: Vec<bool>,
    a_cells: Vec<usize>,
    b_cells: Vec<usize>,
    /// Position of each cell inside whichever of the two lists holds it.
    slot: Vec<usize>,
}

impl InfoGrid {
    /// Random arrangement with `round(w_a · cells)` A-cells.
    pub fn new<R: Rng + ?Sized>(w_a: f64, rng: &mut R) -> Self {
        let target = Self::target(w_a);
        let mut cells = vec![false; GRID_CELLS];
        for i in sample(rng, GRID_CELLS, target) {
            cells[i] = true;
        }
        let mut g = Self { cells, a_cells: Vec::new(), b_cells: Vec::new(), slot: vec![0; GRID_CELLS] };
        for i in 0..GRID_CELLS {
            let list = if g.cells[i] { &mut g.a_cells } else { &mut g.b_cells };
            g.slot[i] = list.len();
            list.push(i);
        }
        g
    }

    pub fn target(w_a: f64) -> usize {
        (w_a.clamp(0.0, 1.0) * GRID_CELLS as f64).round() as usize
    }

    pub fn a_count(&self) -> usize {
        self.a_cells.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * GRID_SIDE + col]
    }

    /// Flips the minimal number of uniformly chosen cells so the A-count
    /// matches `w_a`.
    pub fn set_weight<R: Rng + ?Sized>(&mut self, w_a: f64, rng: &mut R) {
        let target = Self::target(w_a);
        while self.a_cells.len() < target {
            let k = rng.random_range(0..self.b_cells.len());
            self.flip(self.b_cells[k]);
        }
        while self.a_cells.len() > target {
            let k = rng.random_range(0..self.a_cells.len());
            self.flip(self.a_cells[k]);
        }
    }

    fn flip(&mut self, cell: usize) {
        let (from, to) = if self.cells[cell] {
            (&mut self.a_cells, &mut self.b_cells)
        } else {
            (&mut self.b_cells, &mut self.a_cells)
        };
        let s = self.slot[cell];
        from.swap_remove(s);
        if s < from.len() {
            self.slot[from[s]] = s;
        }
        self.slot[cell] = to.len();
        to.push(cell);
        self.cells[cell] = !self.cells[cell];
    }

    /// Mean of the `r` cells nearest to `(row, col)` in scan order.
    pub fn scan(&self, row: usize, col: usize, offsets: &[(isize, isize)]) -> f64 {
        let hits = offsets
            .iter()
            .filter(|&&(dr, dc)| self.get((row as isize + dr) as usize, (col as isize + dc) as usize))
            .count();
        hits as f64 / offsets.len() as f64
    }
}

/// The `r` offsets nearest to the origin by Chebyshev distance; ties are
/// broken by angle, counter-clockwise from east (rows grow downwards, so
/// "north" is a negative row offset).
pub fn scan_offsets(r: usize) -> Vec<(isize, isize)> {
    let reach = ((r as f64).sqrt().ceil() as isize) / 2 + 1;
    let mut all: Vec<(isize, isize)> =
        (-reach..=reach).flat_map(|dr| (-reach..=reach).map(move |dc| (dr, dc))).collect();
    let key = |&(dr, dc): &(isize, isize)| {
        let ring = dr.abs().max(dc.abs());
        let mut ang = (-(dr as f64)).atan2(dc as f64);
        if ang < 0.0 {
            ang += std::f64::consts::TAU;
        }
        (ring, ang)
    };
    all.sort_by(|a, b| {
        let (ra, aa) = key(a);
        let (rb, ab) = key(b);
        ra.cmp(&rb).then(aa.total_cmp(&ab))
    });
    all.truncate(r);
    all
}
