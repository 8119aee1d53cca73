use crate::OscError;

/// Tree of oscillators: scale 0 is the bottom, the last scale has one root.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    /// Oscillators per scale.
    pub sizes: Vec<usize>,
    /// `parent[m][i]`: index at scale `m + 1`; empty for the top scale.
    pub parent: Vec<Vec<usize>>,
}

impl Topology {
    pub fn new(sizes: Vec<usize>, parent: Vec<Vec<usize>>) -> Result<Self, OscError> {
        let t = Self { sizes, parent };
        t.validate()?;
        Ok(t)
    }

    /// Four bottom oscillators feeding a single root.
    pub fn two_scale() -> Self {
        Self { sizes: vec![4, 1], parent: vec![vec![0; 4], vec![]] }
    }

    /// Four bottom oscillators, two middle, one root; pairwise averaging.
    pub fn three_scale() -> Self {
        Self { sizes: vec![4, 2, 1], parent: vec![vec![0, 0, 1, 1], vec![0, 0], vec![]] }
    }

    pub fn with_scales(scales: usize) -> Result<Self, OscError> {
        match scales {
            2 => Ok(Self::two_scale()),
            3 => Ok(Self::three_scale()),
            n => Err(OscError::Config(format!("supported hierarchies have 2 or 3 scales, got {n}"))),
        }
    }

    pub fn validate(&self) -> Result<(), OscError> {
        let m = self.sizes.len();
        if m < 2 || self.parent.len() != m {
            return Err(OscError::Config("need at least two scales and one parent list per scale".into()));
        }
        if self.sizes[m - 1] != 1 || !self.parent[m - 1].is_empty() {
            return Err(OscError::Config("top scale must hold exactly one oscillator".into()));
        }
        for s in 0..m - 1 {
            if self.parent[s].len() != self.sizes[s] {
                return Err(OscError::Config(format!("scale {s}: parent list length mismatch")));
            }
            if self.parent[s].iter().any(|&p| p >= self.sizes[s + 1]) {
                return Err(OscError::Config(format!("scale {s}: parent index out of range")));
            }
            for p in 0..self.sizes[s + 1] {
                if !self.parent[s].contains(&p) {
                    return Err(OscError::Config(format!("scale {}: oscillator {p} has no children", s + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn scales(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Flat index of oscillator `i` at scale `m`.
    pub fn flat(&self, m: usize, i: usize) -> usize {
        self.sizes[..m].iter().sum::<usize>() + i
    }

    /// `(scale, index)` of every oscillator in flat order.
    pub fn nodes(&self) -> Vec<(usize, usize)> {
        (0..self.scales()).flat_map(|m| (0..self.sizes[m]).map(move |i| (m, i))).collect()
    }

    pub fn children(&self, m: usize, i: usize) -> Vec<usize> {
        if m == 0 {
            return Vec::new();
        }
        (0..self.sizes[m - 1]).filter(|&c| self.parent[m - 1][c] == i).collect()
    }

    /// Number of bottom-scale oscillators below (or equal to) a node.
    pub fn descendants(&self, m: usize, i: usize) -> usize {
        if m == 0 {
            1
        } else {
            self.children(m, i).iter().map(|&c| self.descendants(m - 1, c)).sum()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let t = Topology::three_scale();
        t.validate().unwrap();
        assert_eq!(t.total(), 7);
        assert_eq!(t.children(1, 1), vec![2, 3]);
        assert_eq!(t.descendants(2, 0), 4);
        assert_eq!(t.descendants(1, 0), 2);
        assert_eq!(Topology::two_scale().descendants(1, 0), 4);
        assert!(Topology::with_scales(4).is_err());
        assert!(Topology::new(vec![2, 2], vec![vec![0, 1], vec![]]).is_err());
    }
}
