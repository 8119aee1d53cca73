use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CdStrategy {
    /// Opinions from scanned cells, collective opinion by consensus.
    #[serde(rename = "consensus")]
    Consensus,
    /// Random opinions, collective opinion by consensus.
    #[serde(rename = "random_OP")]
    RandomOp,
    /// Opinions from scanned cells, one opinion picked at random.
    #[serde(rename = "random_CN")]
    RandomCn,
    /// Random collective opinion.
    #[serde(rename = "random_TOT")]
    RandomTot,
}

impl CdStrategy {
    pub const ALL: [CdStrategy; 4] = [Self::Consensus, Self::RandomOp, Self::RandomCn, Self::RandomTot];

    pub fn name(self) -> &'static str {
        match self {
            Self::Consensus => "consensus",
            Self::RandomOp => "random_OP",
            Self::RandomCn => "random_CN",
            Self::RandomTot => "random_TOT",
        }
    }

    /// Whether agents read the grid to form opinions.
    pub fn scans(self) -> bool {
        matches!(self, Self::Consensus | Self::RandomCn)
    }
}

impl fmt::Display for CdStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CdStrategy {
    type Err = CdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CdError::UnknownStrategy(s.into()))
    }
}
