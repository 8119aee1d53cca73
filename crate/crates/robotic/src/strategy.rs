use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::RcError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RcStrategy {
    /// Estimation pipeline with a sensing horizon of 100 steps.
    Main,
    /// Estimation pipeline with a sensing horizon of 10 steps.
    MainShort,
    /// Estimates copied from the actual normalised counts.
    GroundTruth,
    /// Estimates drawn uniformly at random, then normalised.
    Random,
}

impl RcStrategy {
    pub const ALL: [RcStrategy; 4] = [Self::Main, Self::MainShort, Self::GroundTruth, Self::Random];

    pub fn name(self) -> &'static str {
        match self {
            Self::Main => "main",
            Self::MainShort => "main_short",
            Self::GroundTruth => "ground_truth",
            Self::Random => "random",
        }
    }

    /// Default sensing horizon of the pipeline strategies.
    pub fn horizon(self) -> Option<usize> {
        match self {
            Self::Main => Some(100),
            Self::MainShort => Some(10),
            Self::GroundTruth | Self::Random => None,
        }
    }

    /// Memory units per robot: sensing buffers, estimates and demand for the
    /// pipeline strategies (`6M + 38`); only estimates and demand otherwise.
    pub fn c_syn(self, m: Option<usize>) -> f64 {
        match m.or(self.horizon()) {
            Some(m) if self.horizon().is_some() => (6 * m + 38) as f64,
            _ => 10.0,
        }
    }
}

impl fmt::Display for RcStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RcStrategy {
    type Err = RcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| RcError::UnknownStrategy(s.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memory_units() {
        assert_eq!(RcStrategy::Main.c_syn(None), 638.0);
        assert_eq!(RcStrategy::MainShort.c_syn(None), 98.0);
        assert_eq!(RcStrategy::GroundTruth.c_syn(None), 10.0);
        assert_eq!(RcStrategy::Random.c_syn(Some(100)), 10.0);
        assert_eq!(RcStrategy::Main.c_syn(Some(20)), 158.0);
    }

    #[test]
    fn names_round_trip() {
        for s in RcStrategy::ALL {
            assert_eq!(s.name().parse::<RcStrategy>().unwrap(), s);
        }
        assert!("greedy".parse::<RcStrategy>().is_err());
    }
}
