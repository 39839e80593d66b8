use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::StabilizerSubgroup;
use crate::error::{Error, Result};
use crate::exact_state::{Gate, PhaseProbe, PureState};
use crate::ring::RingAmplitude;

/// Default element cap for [`enumerate_group`].
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A word in the generators, read as an operator product: `H2.C12.H2` is
/// the matrix `H₂·C₁₂·H₂`, so the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliffordWord(pub Vec<Gate>);

impl CliffordWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters in application order (rightmost first).
    pub fn application_order(&self) -> impl Iterator<Item = &Gate> {
        self.0.iter().rev()
    }

    pub fn remap(&self, map: &[usize]) -> CliffordWord {
        CliffordWord(self.0.iter().map(|g| g.remap(map)).collect())
    }
}

impl fmt::Display for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(Gate::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for CliffordWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(CliffordWord::default());
        }
        s.split('.').map(str::parse).collect::<Result<Vec<Gate>>>().map(CliffordWord)
    }
}

/// `entries / √2^denom_exp` on `t` qubits, row-major with the first qubit
/// most significant, kept reduced and phase-normalized so equal projective
/// elements compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordMatrix {
    pub t: usize,
    pub entries: Vec<RingAmplitude>,
    pub denom_exp: u32,
}

impl CliffordMatrix {
    pub fn identity(t: usize) -> Self {
        let dim = 1 << t;
        let entries = (0..dim * dim).map(|i| if i / dim == i % dim { RingAmplitude::one() } else { RingAmplitude::zero() }).collect();
        let mut m = CliffordMatrix { t, entries, denom_exp: 0 };
        m.normalize();
        m
    }

    pub fn dim(&self) -> usize {
        1 << self.t
    }

    /// Matrix of a single gate on a `t`-qubit register.
    pub fn from_gate(g: Gate, t: usize) -> Result<Self> {
        g.validate(t)?;
        let dim = 1usize << t;
        let cols: Vec<PureState> = (0..dim).map(|c| PureState::basis(t, c)?.apply_gate(g)).collect::<Result<_>>()?;
        let d = cols.iter().map(PureState::denom_exp).max().unwrap_or(0);
        let mut entries = vec![RingAmplitude::zero(); dim * dim];
        for (c, col) in cols.iter().enumerate() {
            if *col.norm_square() != BigInt::from(1u8) {
                return Err(Error::Precondition(format!("gate {g} has a non-dyadic column")));
            }
            for (r, a) in col.amps().iter().enumerate() {
                let mut x = a.clone();
                for _ in col.denom_exp()..d {
                    x = x.mul_sqrt2();
                }
                entries[r * dim + c] = x;
            }
        }
        let mut m = CliffordMatrix { t, entries, denom_exp: d };
        m.normalize();
        Ok(m)
    }

    /// Product `g₁·g₂·…` of a word.
    pub fn from_word(word: &CliffordWord, t: usize) -> Result<Self> {
        let mut m = CliffordMatrix::identity(t);
        for g in word.0.iter().rev() {
            m = CliffordMatrix::from_gate(*g, t)?.mul(&m);
        }
        Ok(m)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &CliffordMatrix) -> CliffordMatrix {
        let dim = self.dim();
        let mut entries = vec![RingAmplitude::zero(); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = &self.entries[r * dim + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let b = &rhs.entries[k * dim + c];
                    if !b.is_zero() {
                        entries[r * dim + c] += &(a * b);
                    }
                }
            }
        }
        let mut m = CliffordMatrix { t: self.t, entries, denom_exp: self.denom_exp + rhs.denom_exp };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        while self.denom_exp > 0 && self.entries.iter().all(RingAmplitude::divisible_by_sqrt2) {
            for e in self.entries.iter_mut() {
                if !e.is_zero() {
                    *e = e.div_sqrt2();
                }
            }
            self.denom_exp -= 1;
        }
        if let Some(first) = self.entries.iter().find(|e| !e.is_zero()) {
            let k = (0..8u32).min_by_key(|&k| first.mul_omega(k).encoded()).unwrap_or(0);
            if k != 0 {
                for e in self.entries.iter_mut() {
                    if !e.is_zero() {
                        *e = e.mul_omega(k);
                    }
                }
            }
        }
    }

    /// Serialization of the normalized matrix; identifies projective elements.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.entries.len() * 8);
        out.push(self.t as u8);
        out.extend_from_slice(&self.denom_exp.to_be_bytes());
        for e in &self.entries {
            e.write_bytes(&mut out);
        }
        out
    }

    /// Acts on `state` through the listed qubits (first target most significant).
    pub fn apply(&self, state: &PureState, targets: &[usize]) -> Result<PureState> {
        self.check_targets(targets)?;
        state.apply_local_matrix(targets, &self.entries, self.denom_exp)
    }

    /// `Some(m)` when the lifted matrix fixes `state` up to `ω^m`.
    pub fn fixing_phase(&self, probe: &PhaseProbe<'_>, targets: &[usize]) -> Result<Option<u32>> {
        self.check_targets(targets)?;
        probe.fixing_phase(targets, &self.entries, self.denom_exp)
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        if targets.len() != self.t {
            return Err(Error::Precondition(format!("{}-qubit element lifted onto {} targets", self.t, targets.len())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CliffordElement {
    pub word: CliffordWord,
    pub matrix: CliffordMatrix,
}

/// Projective group generated by a gate set on `t` qubits, in BFS order
/// from the identity (so every word is a shortest one).
#[derive(Clone, Debug)]
pub struct CliffordGroup {
    pub t: usize,
    pub generators: Vec<Gate>,
    pub elements: Vec<CliffordElement>,
    index: HashMap<Vec<u8>, usize>,
}

impl CliffordGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn lookup(&self, m: &CliffordMatrix) -> Option<&CliffordElement> {
        self.index.get(&m.key()).map(|&i| &self.elements[i])
    }

    pub fn contains_word(&self, w: &CliffordWord) -> Result<bool> {
        Ok(self.lookup(&CliffordMatrix::from_word(w, self.t)?).is_some())
    }
}

/// Breadth-first closure: each new element is `g·m` for a generator `g`
/// and a known element `m`, with word `g` followed by the word of `m`.
pub fn enumerate_group(generators: &[Gate], t: usize, cap: usize) -> Result<CliffordGroup> {
    let gens: Vec<(Gate, CliffordMatrix)> =
        generators.iter().map(|&g| Ok((g, CliffordMatrix::from_gate(g, t)?))).collect::<Result<_>>()?;
    let id = CliffordMatrix::identity(t);
    let mut index = HashMap::new();
    index.insert(id.key(), 0);
    let mut elements = vec![CliffordElement { word: CliffordWord::default(), matrix: id }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gm) in &gens {
            let m = gm.mul(&elements[i].matrix);
            let key = m.key();
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            let mut word = vec![*g];
            word.extend_from_slice(&elements[i].word.0);
            index.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(CliffordElement { word: CliffordWord(word), matrix: m });
        }
    }
    Ok(CliffordGroup { t, generators: generators.to_vec(), elements, index })
}

/// Group elements that, lifted onto `targets`, fix the state up to `ω^m`.
pub fn clifford_stabilizers(state: &PureState, group: &CliffordGroup, targets: &[usize]) -> Result<StabilizerSubgroup<CliffordWord>> {
    if state.num_qubits() < group.t {
        return Err(Error::Precondition(format!("{}-qubit group on {}-qubit state", group.t, state.num_qubits())));
    }
    let probe = PhaseProbe::new(state);
    let mut elements = Vec::new();
    for e in &group.elements {
        if e.matrix.fixing_phase(&probe, targets)?.is_some() {
            elements.push(e.word.clone());
        }
    }
    let order = elements.len();
    Ok(StabilizerSubgroup { elements, order, host_order: BigInt::from(group.order()) })
}

/// Closure check of a set of words modulo global phase.
pub fn words_closed(words: &[CliffordWord], t: usize) -> Result<bool> {
    let mats: Vec<CliffordMatrix> = words.iter().map(|w| CliffordMatrix::from_word(w, t)).collect::<Result<_>>()?;
    let keys: std::collections::HashSet<Vec<u8>> = mats.iter().map(CliffordMatrix::key).collect();
    Ok(mats.iter().all(|a| mats.iter().all(|b| keys.contains(&a.mul(b).key()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{c1_generators, hc12_generators};

    #[test]
    fn word_display_and_parse() {
        let w: CliffordWord = "H2.C12.H2".parse().unwrap();
        assert_eq!(w.0, vec![Gate::H(1), Gate::Cnot(0, 1), Gate::H(1)]);
        assert_eq!(w.to_string(), "H2.C12.H2");
        assert_eq!(CliffordWord::default().to_string(), "1");
        assert!("H2.Q1".parse::<CliffordWord>().is_err());
    }

    #[test]
    fn hp_cubed_is_a_phase() {
        let w: CliffordWord = "H1.P1.H1.P1.H1.P1".parse().unwrap();
        assert_eq!(CliffordMatrix::from_word(&w, 1).unwrap(), CliffordMatrix::identity(1));
        let p4: CliffordWord = "P1.P1.P1.P1".parse().unwrap();
        assert_eq!(CliffordMatrix::from_word(&p4, 1).unwrap(), CliffordMatrix::identity(1));
    }

    #[test]
    fn matrix_action_agrees_with_word() {
        let w: CliffordWord = "H2.C12.P1.H1.C21".parse().unwrap();
        let m = CliffordMatrix::from_word(&w, 2).unwrap();
        let s = PureState::basis(3, 0b011).unwrap().apply_gate(Gate::H(2)).unwrap();
        for targets in [[0usize, 1], [1, 2], [2, 0]] {
            let lifted = w.remap(&targets);
            let by_gates = s.apply_gates(&lifted.application_order().copied().collect::<Vec<_>>()).unwrap();
            let by_matrix = m.apply(&s, &targets).unwrap();
            assert_eq!(by_gates.canonical_key(), by_matrix.canonical_key());
        }
    }

    #[test]
    fn single_qubit_clifford_order() {
        let g = enumerate_group(&c1_generators(), 1, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.contains_word(&"H1.P1.P1.H1".parse().unwrap()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_group(&hc12_generators(), 2, 100).unwrap_err(), Error::CapExceeded(100));
    }

    #[test]
    fn swap_fixes_symmetric_state() {
        let s = PureState::basis(2, 0b01).unwrap().apply_gate(Gate::H(0)).unwrap();
        let g = enumerate_group(&hc12_generators(), 2, DEFAULT_GROUP_CAP).unwrap();
        let swap = CliffordMatrix::from_word(&"C12.C21.C12".parse().unwrap(), 2).unwrap();
        let probe = PhaseProbe::new(&s);
        let image = swap.apply(&s, &[0, 1]).unwrap();
        assert_eq!(swap.fixing_phase(&probe, &[0, 1]).unwrap().is_some(), image.canonical_key() == s.canonical_key());
        assert!(g.lookup(&swap).is_some());
    }
}
