//! Compact open bisections of the groupoids `𝒱₂`, `𝒱₂ × G` and
//! `S𝒱₂ ⋊ G`, and the translations between full bisections and tables.

mod clopen;
mod format;
mod plain;
mod twisted;

pub use clopen::{Block, ClopenSet};
pub use format::{
    format_brick_set, format_word_set, parse_brick_set, parse_word_set, BisectionJson, PartJson, TwistedBisectionJson,
    TwistedPartJson,
};
pub use plain::{Bisection, JChoice, StdPart};
pub use twisted::{TwistedBisection, TwistedPart};

/// Which groupoid a bisection lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    V2,
    V2xG(String),
    Twisted(String),
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::V2 => f.write_str("v2"),
            Flavor::V2xG(g) => write!(f, "v2xg:{g}"),
            Flavor::Twisted(a) => write!(f, "twisted:{a}"),
        }
    }
}
