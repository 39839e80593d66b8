use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Logarithm base for entropies: bits (`Two`) or nats (`E`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// `-Σ p log p` with `0·log 0 := 0`.
    pub fn shannon<I: IntoIterator<Item = f64>>(self, probs: I) -> f64 {
        let h: f64 = probs.into_iter().filter(|&p| p > 0.0).map(|p| -p * self.log(p)).sum();
        // -0.0 and sub-ulp negatives from a single p = 1 term
        h.max(0.0)
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" | "E" => Ok(LogBase::E),
            other => Err(Error::Parse(format!("unknown log base {other:?}, expected 2 or e"))),
        }
    }
}
