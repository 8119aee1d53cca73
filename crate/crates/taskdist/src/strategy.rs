use std::fmt;
use std::str::FromStr;

use crate::TaskError;

/// How workers react to (or ignore) control information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Workers on the wrong task switch with probability `p_ch` when told to.
    Bb,
    /// Managers pick exactly which workers switch; switching is certain.
    Md,
    /// Every worker flips task with probability 0.15, ignoring control.
    Rs,
    /// Every worker flips task with probability 0.5, ignoring control.
    Rb,
    /// Nobody ever switches.
    St,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [Strategy::Bb, Strategy::Md, Strategy::Rs, Strategy::Rb, Strategy::St];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Bb => "BB",
            Strategy::Md => "Md",
            Strategy::Rs => "RS",
            Strategy::Rb => "RB",
            Strategy::St => "St",
        }
    }

    /// Switching probability per worker and step.
    pub fn p_ch(self) -> f64 {
        match self {
            Strategy::Bb | Strategy::Rs => 0.15,
            Strategy::Rb => 0.5,
            Strategy::Md => 1.0,
            Strategy::St => 0.0,
        }
    }

    /// Whether workers act on control information from the hierarchy.
    pub fn uses_feedback(self) -> bool {
        matches!(self, Strategy::Bb | Strategy::Md)
    }

    /// Steps before the first adaptation can change the class distribution in
    /// the class-level analysis: Md acts after its single command step, BB
    /// only after a full ascent/descent through the hierarchy.
    pub fn pipeline_lag(self) -> usize {
        match self {
            Strategy::Bb => 2,
            Strategy::Md => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = TaskError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| TaskError::UnknownStrategy(s.into()))
    }
}
