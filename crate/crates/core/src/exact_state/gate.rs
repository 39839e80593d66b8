use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Elementary gates. Qubit indices are zero-based; `Display` prints them
/// one-based (`H1`, `C12`, `X3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    P(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// `Cnot(control, target)`.
    Cnot(usize, usize),
}

impl Gate {
    /// Self-inverse up to global phase. Only `P` is not.
    pub fn is_self_inverse(&self) -> bool {
        !matches!(self, Gate::P(_))
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cnot(c, t) => vec![c, t],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
        }
        if let Gate::Cnot(c, t) = *self {
            if c == t {
                return Err(Error::SameControlTarget(c));
            }
        }
        Ok(())
    }

    /// Relabel qubits through `map` (`map[q]` is the new index of `q`).
    pub fn remap(&self, map: &[usize]) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map[q]),
            Gate::P(q) => Gate::P(map[q]),
            Gate::X(q) => Gate::X(map[q]),
            Gate::Y(q) => Gate::Y(map[q]),
            Gate::Z(q) => Gate::Z(map[q]),
            Gate::Cnot(c, t) => Gate::Cnot(map[c], map[t]),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H{}", q + 1),
            Gate::P(q) => write!(f, "P{}", q + 1),
            Gate::X(q) => write!(f, "X{}", q + 1),
            Gate::Y(q) => write!(f, "Y{}", q + 1),
            Gate::Z(q) => write!(f, "Z{}", q + 1),
            Gate::Cnot(c, t) if c < 9 && t < 9 => write!(f, "C{}{}", c + 1, t + 1),
            Gate::Cnot(c, t) => write!(f, "C{},{}", c + 1, t + 1),
        }
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gate> {
        let bad = || Error::Parse(format!("bad gate label {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest: &str = chars.as_str();
        let one_based = |t: &str| -> Result<usize> {
            let v: usize = t.parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(bad)
        };
        match head {
            'H' => Ok(Gate::H(one_based(rest)?)),
            'P' => Ok(Gate::P(one_based(rest)?)),
            'X' => Ok(Gate::X(one_based(rest)?)),
            'Y' => Ok(Gate::Y(one_based(rest)?)),
            'Z' => Ok(Gate::Z(one_based(rest)?)),
            'C' => {
                if let Some((c, t)) = rest.split_once(',') {
                    Ok(Gate::Cnot(one_based(c)?, one_based(t)?))
                } else if rest.len() == 2 {
                    Ok(Gate::Cnot(one_based(&rest[..1])?, one_based(&rest[1..])?))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}
