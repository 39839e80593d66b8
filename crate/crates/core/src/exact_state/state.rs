use std::cell::RefCell;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::gate::Gate;
use crate::error::{Error, Result};
use crate::ring::RingAmplitude;

/// Largest register the dense exact representation accepts.
pub const MAX_QUBITS: usize = 20;

/// An N-qubit pure state `Σ_b amps[b] / sqrt(2^d · M) |b⟩`.
///
/// Basis index `b` is read with qubit 0 as the most significant bit, so
/// `|100⟩` (qubit 0 excited) is index 4. States are kept reduced: the
/// amplitudes are never jointly divisible by √2 while the denominator is
/// still even, and carry no odd integer content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureState {
    n: usize,
    amps: Vec<RingAmplitude>,
    denom_exp: u32,
    norm_square: BigInt,
}

/// Phase-minimised serialisation identifying a state modulo `ω^k`.
///
/// Layout: `n` (u32 BE), `v` (u32 BE), odd part `m` of the total
/// denominator `2^d·M = 2^v·m` (u16 BE length + signed BE bytes), then every
/// amplitude of the chosen phase representative in basis order, each as four
/// length-prefixed signed BE coefficients. The representative is the one of
/// the eight `ω^k` multiples whose encoding is lexicographically smallest;
/// the encoding is prefix-free, so the first non-zero amplitude decides.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalStateKey(#[serde(with = "hex_bytes")] pub Vec<u8>);

impl CanonicalStateKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for CanonicalStateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.to_hex();
        if h.len() > 24 {
            write!(f, "Key({}…{})", &h[..12], &h[h.len() - 8..])
        } else {
            write!(f, "Key({h})")
        }
    }
}

mod hex_bytes {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let s = String::deserialize(d)?;
        hex::decode(s).map_err(serde::de::Error::custom)
    }
}

fn bit_of(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

impl PureState {
    /// Builds a state and checks `Σ|amps|² = 2^d·M` exactly, then reduces it.
    pub fn from_parts(n: usize, amps: Vec<RingAmplitude>, denom_exp: u32, norm_square: BigInt) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidQubitCount(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::Precondition(format!("expected {} amplitudes, got {}", 1usize << n, amps.len())));
        }
        if !norm_square.is_positive() {
            return Err(Error::Precondition("norm square must be positive".into()));
        }
        let mut s = PureState { n, amps, denom_exp, norm_square };
        if !s.is_normalized() {
            return Err(Error::Precondition("amplitudes do not satisfy Σ|a|² = 2^d·M".into()));
        }
        s.reduce();
        Ok(s)
    }

    /// Computational basis state `|bits⟩` (`bits` indexed with qubit 0 as MSB).
    pub fn basis(n: usize, bits: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidQubitCount(n));
        }
        if bits >= 1 << n {
            return Err(Error::Precondition(format!("basis index {bits} out of range")));
        }
        let mut amps = vec![RingAmplitude::zero(); 1 << n];
        amps[bits] = RingAmplitude::one();
        Ok(PureState { n, amps, denom_exp: 0, norm_square: BigInt::one() })
    }

    pub(crate) fn from_unchecked(n: usize, amps: Vec<RingAmplitude>, denom_exp: u32, norm_square: BigInt) -> Self {
        PureState { n, amps, denom_exp, norm_square }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[RingAmplitude] {
        &self.amps
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn norm_square(&self) -> &BigInt {
        &self.norm_square
    }

    /// `2^d · M`.
    pub fn total_denominator(&self) -> BigInt {
        &self.norm_square << self.denom_exp as usize
    }

    pub fn is_normalized(&self) -> bool {
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        for x in &self.amps {
            if x.is_zero() {
                continue;
            }
            let ns = x.norm_sq();
            a += ns.a;
            b += ns.b;
        }
        b.is_zero() && a == self.total_denominator()
    }

    /// Restores the reduced form: strip common √2 factors while the
    /// denominator is even, then any odd integer content.
    fn reduce(&mut self) {
        loop {
            let all_zero = self.amps.iter().all(RingAmplitude::is_zero);
            if all_zero || !self.amps.iter().all(RingAmplitude::divisible_by_sqrt2) {
                break;
            }
            if self.denom_exp > 0 {
                self.denom_exp -= 1;
            } else if self.norm_square.is_even() {
                self.norm_square >>= 1;
            } else {
                break;
            }
            for a in self.amps.iter_mut() {
                if !a.is_zero() {
                    *a = a.div_sqrt2();
                }
            }
        }
        let g = self.amps.iter().fold(BigInt::zero(), |g, a| g.gcd(&a.content()));
        if g > BigInt::one() {
            let g2 = &g * &g;
            if (&self.norm_square % &g2).is_zero() {
                self.norm_square /= &g2;
                for a in self.amps.iter_mut() {
                    *a = a.div_exact(&g);
                }
            }
        }
    }

    pub fn apply_gate(&self, gate: Gate) -> Result<PureState> {
        gate.validate(self.n)?;
        let n = self.n;
        let mut amps = self.amps.clone();
        let mut denom_exp = self.denom_exp;
        match gate {
            Gate::H(q) => {
                let m = bit_of(n, q);
                for b in 0..amps.len() {
                    if b & m == 0 {
                        let (a0, a1) = (&self.amps[b], &self.amps[b | m]);
                        amps[b] = a0 + a1;
                        amps[b | m] = a0 - a1;
                    }
                }
                denom_exp += 1;
            }
            Gate::P(q) => {
                let m = bit_of(n, q);
                for (b, a) in amps.iter_mut().enumerate() {
                    if b & m != 0 {
                        *a = a.mul_omega(2);
                    }
                }
            }
            Gate::X(q) => {
                let m = bit_of(n, q);
                for b in 0..amps.len() {
                    if b & m == 0 {
                        amps.swap(b, b | m);
                    }
                }
            }
            Gate::Y(q) => {
                // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                let m = bit_of(n, q);
                for b in 0..amps.len() {
                    if b & m == 0 {
                        amps[b | m] = self.amps[b].mul_omega(2);
                        amps[b] = self.amps[b | m].mul_omega(6);
                    }
                }
            }
            Gate::Z(q) => {
                let m = bit_of(n, q);
                for (b, a) in amps.iter_mut().enumerate() {
                    if b & m != 0 {
                        *a = -&*a;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (bit_of(n, c), bit_of(n, t));
                for b in 0..amps.len() {
                    if b & mc != 0 && b & mt == 0 {
                        amps.swap(b, b | mt);
                    }
                }
            }
        }
        let mut out = PureState { n, amps, denom_exp, norm_square: self.norm_square.clone() };
        out.reduce();
        Ok(out)
    }

    /// Applies gates left to right (the first gate acts first).
    pub fn apply_gates(&self, gates: &[Gate]) -> Result<PureState> {
        let mut s = self.clone();
        for &g in gates {
            s = s.apply_gate(g)?;
        }
        Ok(s)
    }

    /// Applies a `2^t × 2^t` matrix `entries / √2^denom_exp` (row-major, first
    /// target most significant) to the listed qubits.
    pub fn apply_local_matrix(&self, targets: &[usize], entries: &[RingAmplitude], denom_exp: u32) -> Result<PureState> {
        let t = targets.len();
        let dim = 1usize << t;
        if entries.len() != dim * dim {
            return Err(Error::Precondition("matrix size does not match targets".into()));
        }
        validate_targets(self.n, targets)?;
        let masks: Vec<usize> = targets.iter().map(|&q| bit_of(self.n, q)).collect();
        let all: usize = masks.iter().sum();
        let mut amps = vec![RingAmplitude::zero(); self.amps.len()];
        let mut local = vec![RingAmplitude::zero(); dim];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            let idx: Vec<usize> = (0..dim).map(|x| base | spread(x, &masks)).collect();
            for (x, &i) in idx.iter().enumerate() {
                local[x] = self.amps[i].clone();
            }
            for (r, &i) in idx.iter().enumerate() {
                let mut acc = RingAmplitude::zero();
                for (c, v) in local.iter().enumerate() {
                    let m = &entries[r * dim + c];
                    if !m.is_zero() && !v.is_zero() {
                        acc += &(m * v);
                    }
                }
                amps[i] = acc;
            }
        }
        let mut out = PureState { n: self.n, amps, denom_exp: self.denom_exp + denom_exp, norm_square: self.norm_square.clone() };
        out.reduce();
        Ok(out)
    }

    pub fn mul_omega(&self, k: u32) -> PureState {
        PureState {
            n: self.n,
            amps: self.amps.iter().map(|a| a.mul_omega(k)).collect(),
            denom_exp: self.denom_exp,
            norm_square: self.norm_square.clone(),
        }
    }

    fn phase_choice(&self) -> u32 {
        let Some(first) = self.amps.iter().find(|a| !a.is_zero()) else {
            return 0;
        };
        (0..8u32).min_by_key(|&k| first.mul_omega(k).encoded()).unwrap_or(0)
    }

    fn header_bytes(&self) -> Vec<u8> {
        let total = self.total_denominator();
        let v = total.trailing_zeros().unwrap_or(0);
        let odd = &total >> v as usize;
        let mut out = Vec::with_capacity(16 + self.amps.len() * 12);
        out.extend_from_slice(&(self.n as u32).to_be_bytes());
        out.extend_from_slice(&(v as u32).to_be_bytes());
        let ob = odd.to_signed_bytes_be();
        out.extend_from_slice(&(ob.len() as u16).to_be_bytes());
        out.extend_from_slice(&ob);
        out
    }

    pub(crate) fn serialize_with_phase(&self, k: u32) -> Vec<u8> {
        let mut out = self.header_bytes();
        for a in &self.amps {
            if k == 0 || a.is_zero() {
                a.write_bytes(&mut out);
            } else {
                a.mul_omega(k).write_bytes(&mut out);
            }
        }
        out
    }

    pub fn canonical_key(&self) -> CanonicalStateKey {
        CanonicalStateKey(self.serialize_with_phase(self.phase_choice()))
    }

    /// `Some(k)` when `self = ω^k · other` exactly.
    pub fn phase_relative_to(&self, other: &PureState) -> Option<u32> {
        if self.n != other.n || self.total_denominator() != other.total_denominator() {
            return None;
        }
        let i = other.amps.iter().position(|a| !a.is_zero())?;
        let k = (0..8u32).find(|&k| other.amps[i].mul_omega(k) == self.amps[i])?;
        self.amps.iter().zip(&other.amps).all(|(a, b)| *a == b.mul_omega(k)).then_some(k)
    }

    pub fn to_json(&self) -> Value {
        let amps: Vec<Value> = self
            .amps
            .iter()
            .map(|a| Value::Array(a.c.iter().map(bigint_to_json).collect()))
            .collect();
        json!({
            "n": self.n,
            "d": self.denom_exp,
            "M": bigint_to_json(&self.norm_square),
            "amps": amps,
        })
    }

    pub fn from_json(v: &Value) -> Result<PureState> {
        let bad = |what: &str| Error::Parse(format!("state json: {what}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as usize;
        let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("d"))? as u32;
        let m = json_to_bigint(v.get("M").ok_or_else(|| bad("M"))?)?;
        let amps = v
            .get("amps")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("amps"))?
            .iter()
            .map(|a| {
                let c = a.as_array().filter(|c| c.len() == 4).ok_or_else(|| bad("amplitude"))?;
                Ok(RingAmplitude::from_coeffs([
                    json_to_bigint(&c[0])?,
                    json_to_bigint(&c[1])?,
                    json_to_bigint(&c[2])?,
                    json_to_bigint(&c[3])?,
                ]))
            })
            .collect::<Result<Vec<_>>>()?;
        PureState::from_parts(n, amps, d, m)
    }

    /// Amplitudes as complex floats, already divided by the denominator.
    pub fn to_complex_amplitudes(&self) -> Vec<num_complex::Complex64> {
        let scale = self.total_denominator().to_f64().unwrap_or(f64::INFINITY).sqrt();
        self.amps.iter().map(|a| a.to_complex() / scale).collect()
    }
}

pub(crate) fn validate_targets(n: usize, targets: &[usize]) -> Result<()> {
    for (i, &q) in targets.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        if targets[..i].contains(&q) {
            return Err(Error::SameControlTarget(q));
        }
    }
    Ok(())
}

/// Places the bits of `x` (MSB first) onto `masks`.
fn spread(x: usize, masks: &[usize]) -> usize {
    let t = masks.len();
    masks.iter().enumerate().filter(|(j, _)| x >> (t - 1 - j) & 1 == 1).map(|(_, m)| m).sum()
}

fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn json_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("non-integer {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        _ => Err(Error::Parse("expected integer".into())),
    }
}

/// Tests whether a local matrix fixes a state up to an `ω^m` phase without
/// building the full image. Scaled copies `amps · √2^e` of the probed state
/// are cached per exponent.
pub struct PhaseProbe<'a> {
    state: &'a PureState,
    key: CanonicalStateKey,
    scaled: RefCell<Vec<Option<Vec<RingAmplitude>>>>,
}

impl<'a> PhaseProbe<'a> {
    pub fn new(state: &'a PureState) -> Self {
        PhaseProbe { state, key: state.canonical_key(), scaled: RefCell::new(Vec::new()) }
    }

    pub fn state(&self) -> &PureState {
        self.state
    }

    fn scaled(&self, e: u32) -> std::cell::Ref<'_, Vec<RingAmplitude>> {
        {
            let mut cache = self.scaled.borrow_mut();
            let e = e as usize;
            if cache.len() <= e {
                cache.resize(e + 1, None);
            }
            if cache[e].is_none() {
                let v = self
                    .state
                    .amps
                    .iter()
                    .map(|a| {
                        let mut x = a.clone();
                        for _ in 0..e {
                            x = x.mul_sqrt2();
                        }
                        x
                    })
                    .collect();
                cache[e] = Some(v);
            }
        }
        std::cell::Ref::map(self.scaled.borrow(), |c| c[e as usize].as_ref().unwrap())
    }

    /// `Some(m)` when `U|ψ⟩ = ω^m |ψ⟩` for the local matrix `entries / √2^denom_exp`.
    ///
    /// Assumes `U` unitary, so a nonzero image entry can be matched against
    /// `ψ · √2^denom_exp` directly.
    pub fn fixing_phase(&self, targets: &[usize], entries: &[RingAmplitude], denom_exp: u32) -> Result<Option<u32>> {
        let st = self.state;
        validate_targets(st.n, targets)?;
        let t = targets.len();
        let dim = 1usize << t;
        let masks: Vec<usize> = targets.iter().map(|&q| bit_of(st.n, q)).collect();
        let all: usize = masks.iter().sum();
        let scaled = self.scaled(denom_exp);
        let mut phase: Option<u32> = None;
        for base in 0..st.amps.len() {
            if base & all != 0 {
                continue;
            }
            let idx: Vec<usize> = (0..dim).map(|x| base | spread(x, &masks)).collect();
            if idx.iter().all(|&i| st.amps[i].is_zero()) {
                continue;
            }
            for (r, &i) in idx.iter().enumerate() {
                let mut acc = RingAmplitude::zero();
                for (c, &j) in idx.iter().enumerate() {
                    let m = &entries[r * dim + c];
                    if !m.is_zero() && !st.amps[j].is_zero() {
                        acc += &(m * &st.amps[j]);
                    }
                }
                let target = &scaled[i];
                match phase {
                    None => {
                        if acc.is_zero() != target.is_zero() {
                            return Ok(None);
                        }
                        if !acc.is_zero() {
                            match (0..8u32).find(|&k| target.mul_omega(k) == acc) {
                                Some(k) => phase = Some(k),
                                None => return Ok(None),
                            }
                        }
                    }
                    Some(k) => {
                        if acc != target.mul_omega(k) {
                            return Ok(None);
                        }
                    }
                }
            }
        }
        Ok(phase)
    }

    /// Key-based check, for any gate.
    pub fn fixed_by_gate(&self, gate: Gate) -> Result<bool> {
        Ok(self.state.apply_gate(gate)?.canonical_key() == self.key)
    }
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (b, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({a})|{:0width$b}⟩", b, width = self.n)?;
        }
        write!(f, ") / sqrt(2^{} * {})", self.denom_exp, self.norm_square)
    }
}
