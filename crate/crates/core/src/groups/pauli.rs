use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::StabilizerSubgroup;
use crate::error::{Error, Result};
use crate::exact_state::{Gate, PureState};

/// Largest register scanned exhaustively by [`pauli_stabilizers`].
pub const PAULI_SCAN_CAP: usize = 8;

/// `i^phase · ⊗_q σ(x_q, z_q)`; bit `q` of `x`/`z` refers to qubit `q`.
/// `(1,0)` is X, `(0,1)` is Z, `(1,1)` is Y and `(0,0)` the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliString {
    pub n: usize,
    pub x: u64,
    pub z: u64,
    /// Exponent of `i`, in `0..4`.
    pub phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { n, x: 0, z: 0, phase: 0 }
    }

    pub fn new(n: usize, x: u64, z: u64, phase: u8) -> Self {
        PauliString { n, x, z, phase: phase % 4 }
    }

    /// Single-qubit letter `'X' | 'Y' | 'Z'` on qubit `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        let b = 1u64 << q;
        match letter {
            'X' => Ok(PauliString::new(n, b, 0, 0)),
            'Y' => Ok(PauliString::new(n, b, b, 0)),
            'Z' => Ok(PauliString::new(n, 0, b, 0)),
            _ => Err(Error::Parse(format!("unknown Pauli letter {letter:?}"))),
        }
    }

    /// Letter-wise string, e.g. `"ZZI"`, with a phase.
    pub fn from_letters(letters: &str, phase: u8) -> Result<Self> {
        let n = letters.chars().count();
        let mut p = PauliString::new(n, 0, 0, phase);
        for (q, c) in letters.chars().enumerate() {
            let b = 1u64 << q;
            match c {
                'I' => {}
                'X' => p.x |= b,
                'Y' => {
                    p.x |= b;
                    p.z |= b
                }
                'Z' => p.z |= b,
                _ => return Err(Error::Parse(format!("unknown Pauli letter {c:?}"))),
            }
        }
        Ok(p)
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x >> q & 1, self.z >> q & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn is_identity_class(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Same projective class (phase ignored).
    pub fn same_class(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Gates realizing the string up to its phase.
    pub fn to_gates(&self) -> Vec<Gate> {
        (0..self.n)
            .filter_map(|q| match self.letter(q) {
                'X' => Some(Gate::X(q)),
                'Y' => Some(Gate::Y(q)),
                'Z' => Some(Gate::Z(q)),
                _ => None,
            })
            .collect()
    }

    /// Masks translated to basis-index bit positions (qubit 0 is the MSB).
    fn basis_masks(&self) -> (usize, usize) {
        let n = self.n;
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x >> q & 1 == 1 {
                xm |= bit;
            }
            if self.z >> q & 1 == 1 {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// `P|b⟩ = i^(phase + |x∧z|) (−1)^|z∧b| |b ⊕ x⟩`.
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if state.num_qubits() != self.n {
            return Err(Error::Precondition(format!("{}-qubit Pauli on {}-qubit state", self.n, state.num_qubits())));
        }
        let (xm, zm) = self.basis_masks();
        let base = (self.phase as u32 + (self.x & self.z).count_ones()) % 4;
        let src = state.amps();
        let mut amps = vec![Default::default(); src.len()];
        for (b, a) in src.iter().enumerate() {
            if a.is_zero() {
                amps[b ^ xm] = a.clone();
                continue;
            }
            let m = (base + 2 * (zm & b).count_ones()) % 4;
            amps[b ^ xm] = a.mul_omega(2 * m);
        }
        Ok(PureState::from_unchecked(state.num_qubits(), amps, state.denom_exp(), state.norm_square().clone()))
    }

    /// `Some(m)` when `P|ψ⟩ = i^m |ψ⟩`.
    pub fn eigenphase(&self, state: &PureState) -> Option<u8> {
        let (xm, zm) = self.basis_masks();
        let base = (self.phase as u32 + (self.x & self.z).count_ones()) % 4;
        let amps = state.amps();
        let mut found: Option<u32> = None;
        for (b, a) in amps.iter().enumerate() {
            let target = &amps[b ^ xm];
            if a.is_zero() != target.is_zero() {
                return None;
            }
            if a.is_zero() {
                continue;
            }
            // image amplitude at b ^ xm is i^m_b · a
            let m_b = (base + 2 * (zm & b).count_ones()) % 4;
            let image = a.mul_omega(2 * m_b);
            match found {
                None => found = Some((0..4u32).find(|&m| target.mul_omega(2 * m) == image)?),
                Some(m) => {
                    if target.mul_omega(2 * m) != image {
                        return None;
                    }
                }
            }
        }
        found.map(|m| m as u8)
    }
}

impl Mul for PauliString {
    type Output = PauliString;

    /// Exact product: `i^{p1+p2+|x1z1|+|x2z2|+2|z1x2|−|x3z3|}` on `(x1⊕x2, z1⊕z2)`.
    fn mul(self, rhs: PauliString) -> PauliString {
        assert_eq!(self.n, rhs.n, "Pauli strings on different registers");
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        let e = self.phase as i64
            + rhs.phase as i64
            + (self.x & self.z).count_ones() as i64
            + (rhs.x & rhs.z).count_ones() as i64
            + 2 * (self.z & rhs.x).count_ones() as i64
            - (x & z).count_ones() as i64;
        PauliString::new(self.n, x, z, e.rem_euclid(4) as u8)
    }
}

/// `"-Z1 Z2 Z3"`, `"iX2"`, `"1"` for the identity.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["", "i", "-", "-i"][self.phase as usize % 4];
        if self.is_identity_class() {
            return write!(f, "{sign}1");
        }
        let body: Vec<String> = (0..self.n)
            .filter(|&q| self.letter(q) != 'I')
            .map(|q| format!("{}{}", self.letter(q), q + 1))
            .collect();
        write!(f, "{sign}{}", body.join(" "))
    }
}

/// Parses the display form given the register size: `"-Z1 Z2 Z3"`.
impl PauliString {
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        let mut p = PauliString::new(n, 0, 0, phase);
        if rest.trim() == "1" {
            return Ok(p);
        }
        for tok in rest.split_whitespace() {
            let mut chars = tok.chars();
            let letter = chars.next().ok_or_else(|| Error::Parse(format!("empty token in {s:?}")))?;
            let q: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad qubit in {tok:?}")))?;
            let single = PauliString::single(n, q.checked_sub(1).ok_or_else(|| Error::Parse(format!("bad qubit in {tok:?}")))?, letter)?;
            p = p * single;
        }
        // reading letters left to right never picks up a phase
        p.phase = phase;
        Ok(p)
    }
}

impl FromStr for PauliString {
    type Err = Error;
    /// Letter form with optional sign: `"-ZZZ"`, `"iXIY"`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        PauliString::from_letters(rest, phase)
    }
}

/// Projective Pauli classes reached from the identity by multiplying with
/// every `X_q` and `Z_q`.
pub fn pauli_group_closure(n: usize) -> Vec<PauliString> {
    let gens: Vec<PauliString> = (0..n)
        .flat_map(|q| [PauliString::new(n, 1 << q, 0, 0), PauliString::new(n, 0, 1 << q, 0)])
        .collect();
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([PauliString::identity(n)]);
    seen.insert((0, 0));
    while let Some(p) = queue.pop_front() {
        out.push(p);
        for g in &gens {
            let q = *g * p;
            if seen.insert((q.x, q.z)) {
                queue.push_back(q);
            }
        }
    }
    out
}

/// Every projective Pauli class fixing the state up to a phase, each with
/// the representative phase that fixes it exactly.
pub fn pauli_stabilizers(state: &PureState) -> Result<StabilizerSubgroup<PauliString>> {
    let n = state.num_qubits();
    if n > PAULI_SCAN_CAP {
        return Err(Error::ScanCapExceeded { n, cap: PAULI_SCAN_CAP });
    }
    let mut elements = Vec::new();
    for x in 0..1u64 << n {
        for z in 0..1u64 << n {
            let p = PauliString::new(n, x, z, 0);
            if let Some(m) = p.eigenphase(state) {
                // i^{-m} P fixes ψ
                elements.push(PauliString::new(n, x, z, (4 - m) % 4));
            }
        }
    }
    let order = elements.len();
    Ok(StabilizerSubgroup { elements, order, host_order: BigInt::from(1u8) << (2 * n) })
}

/// Exact closure of a set of Pauli operators: every product is present
/// with its phase.
pub fn is_closed(elements: &[PauliString]) -> bool {
    let set: HashSet<&PauliString> = elements.iter().collect();
    elements.iter().all(|a| elements.iter().all(|b| set.contains(&(*a * *b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingAmplitude;

    fn dicke(n: usize, k: usize) -> PureState {
        let amps = (0..1usize << n)
            .map(|b| if b.count_ones() as usize == k { RingAmplitude::one() } else { RingAmplitude::zero() })
            .collect();
        let m: u64 = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
        PureState::from_parts(n, amps, 0, BigInt::from(m)).unwrap()
    }

    #[test]
    fn single_letters_match_gates() {
        let s = dicke(3, 1).apply_gates(&[Gate::H(0), Gate::P(1), Gate::Cnot(1, 2)]).unwrap();
        for q in 0..3 {
            for (c, g) in [('X', Gate::X(q)), ('Y', Gate::Y(q)), ('Z', Gate::Z(q))] {
                let p = PauliString::single(3, q, c).unwrap();
                assert_eq!(p.apply(&s).unwrap(), s.apply_gate(g).unwrap(), "{c}{q}");
            }
        }
    }

    #[test]
    fn product_phases() {
        let x = PauliString::from_letters("X", 0).unwrap();
        let y = PauliString::from_letters("Y", 0).unwrap();
        let z = PauliString::from_letters("Z", 0).unwrap();
        assert_eq!(x * y, PauliString::from_letters("Z", 1).unwrap());
        assert_eq!(y * x, PauliString::from_letters("Z", 3).unwrap());
        assert_eq!(z * x, PauliString::from_letters("Y", 1).unwrap());
        assert_eq!(x * x, PauliString::identity(1));
        assert_eq!(y * y, PauliString::identity(1));
    }

    #[test]
    fn product_matches_sequential_action() {
        let s = dicke(3, 1).apply_gates(&[Gate::H(0), Gate::P(0), Gate::Cnot(0, 2)]).unwrap();
        let all = pauli_group_closure(3);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let a = PauliString { phase: 1, ..*a };
                let lhs = (a * *b).apply(&s).unwrap();
                let rhs = a.apply(&b.apply(&s).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn class_count() {
        for n in 1..=5 {
            assert_eq!(pauli_group_closure(n).len(), 1 << (2 * n));
        }
    }

    #[test]
    fn display_and_parse() {
        let p = PauliString::from_letters("ZZZ", 2).unwrap();
        assert_eq!(p.to_string(), "-Z1 Z2 Z3");
        assert_eq!(PauliString::parse(3, "-Z1 Z2 Z3").unwrap(), p);
        assert_eq!(PauliString::identity(2).to_string(), "1");
        assert_eq!("-iXIY".parse::<PauliString>().unwrap().to_string(), "-iX1 Y3");
    }

    #[test]
    fn w3_stabilizer() {
        let st = pauli_stabilizers(&dicke(3, 1)).unwrap();
        let names: Vec<String> = st.elements.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["1", "-Z1 Z2 Z3"]);
        assert!(is_closed(&st.elements));
    }

    #[test]
    fn scan_cap() {
        let s = PureState::basis(9, 0).unwrap();
        assert_eq!(pauli_stabilizers(&s).unwrap_err(), Error::ScanCapExceeded { n: 9, cap: 8 });
    }
}
