//! Pauli strings, Clifford words and matrices, group closure and
//! stabilizer subgroups.

mod clifford;
mod pauli;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

pub use clifford::{
    clifford_stabilizers, enumerate_group, words_closed, CliffordElement, CliffordGroup, CliffordMatrix, CliffordWord,
    DEFAULT_GROUP_CAP,
};
pub use pauli::{is_closed, pauli_group_closure, pauli_stabilizers, PauliString, PAULI_SCAN_CAP};

use crate::error::{Error, Result};
use crate::exact_state::Gate;

/// Elements fixing a state, with the order of the group they were drawn from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizerSubgroup<T> {
    pub elements: Vec<T>,
    pub order: usize,
    pub host_order: BigInt,
}

impl<T: fmt::Display> StabilizerSubgroup<T> {
    /// Host order divisible by the subgroup order.
    pub fn lagrange_holds(&self) -> bool {
        self.order > 0 && self.host_order.is_multiple_of(&BigInt::from(self.order))
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_string()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "order": self.order,
            "host_order": self.host_order.to_string(),
            "elements": self.labels(),
        }))
        .expect("subgroup serializes")
    }
}

impl<T: fmt::Display> fmt::Display for StabilizerSubgroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

/// Generator sets for orbits and group enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// `X_q, Y_q, Z_q` on every qubit.
    Pauli,
    /// `⟨H, P⟩` on one qubit.
    C1,
    /// `⟨H₁, H₂, C₁₂, C₂₁⟩`.
    Hc12,
    /// `⟨H₁, H₂, P₁, P₂, C₁₂, C₂₁⟩`.
    C2,
}

impl GroupKind {
    /// Qubits the local generators act on; `None` for the Pauli group.
    pub fn local_qubits(self) -> Option<usize> {
        match self {
            GroupKind::Pauli => None,
            GroupKind::C1 => Some(1),
            GroupKind::Hc12 | GroupKind::C2 => Some(2),
        }
    }

    /// Generators on local qubits `0..t`.
    pub fn local_generators(self) -> Vec<Gate> {
        match self {
            GroupKind::Pauli => Vec::new(),
            GroupKind::C1 => c1_generators(),
            GroupKind::Hc12 => hc12_generators(),
            GroupKind::C2 => c2_generators(),
        }
    }

    /// Generators on an `n`-qubit register, local ones lifted onto `targets`.
    pub fn generators(self, n: usize, targets: &[usize]) -> Result<Vec<Gate>> {
        match self.local_qubits() {
            None => Ok((0..n).flat_map(|q| [Gate::X(q), Gate::Y(q), Gate::Z(q)]).collect()),
            Some(t) => {
                if targets.len() != t {
                    return Err(Error::Precondition(format!("group {self} needs {t} target qubits, got {}", targets.len())));
                }
                let gens: Vec<Gate> = self.local_generators().iter().map(|g| g.remap(targets)).collect();
                for g in &gens {
                    g.validate(n)?;
                }
                Ok(gens)
            }
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Pauli => "pauli",
            GroupKind::C1 => "c1",
            GroupKind::Hc12 => "hc12",
            GroupKind::C2 => "c2",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pauli" => Ok(GroupKind::Pauli),
            "c1" => Ok(GroupKind::C1),
            "hc12" | "hc" => Ok(GroupKind::Hc12),
            "c2" => Ok(GroupKind::C2),
            _ => Err(Error::Parse(format!("unknown group {s:?}, expected pauli, c1, hc12 or c2"))),
        }
    }
}

pub fn c1_generators() -> Vec<Gate> {
    vec![Gate::H(0), Gate::P(0)]
}

pub fn hc12_generators() -> Vec<Gate> {
    vec![Gate::H(0), Gate::H(1), Gate::Cnot(0, 1), Gate::Cnot(1, 0)]
}

pub fn c2_generators() -> Vec<Gate> {
    vec![Gate::H(0), Gate::H(1), Gate::P(0), Gate::P(1), Gate::Cnot(0, 1), Gate::Cnot(1, 0)]
}

/// `2^n Π_{k=0}^{n−1} (2^{n−k} + 1)`.
pub fn stabilizer_state_count(n: usize) -> BigInt {
    let one = BigInt::from(1u8);
    (0..n).fold(&one << n, |acc, k| acc * ((&one << (n - k)) + &one))
}
