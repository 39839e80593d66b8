//! Dicke states `|D^N_k⟩` and their closed-form entanglement entropies.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::base::LogBase;
use crate::error::{Error, Result};
use crate::exact_state::{subsystem_entropy, PureState, MAX_QUBITS};
use crate::ring::RingAmplitude;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DickeSpec {
    pub n: usize,
    pub k: usize,
}

impl DickeSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidDicke { n, k });
        }
        Ok(DickeSpec { n, k })
    }

    fn check_l(&self, l: usize) -> Result<()> {
        if l > self.n {
            return Err(Error::SubsystemSizeOutOfRange { l, n: self.n });
        }
        Ok(())
    }
}

impl fmt::Display for DickeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}_{}", self.n, self.k)
    }
}

/// Parses `"dicke:N:K"` or `"N:K"`.
impl FromStr for DickeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("dicke:").unwrap_or(s);
        let (n, k) = body.split_once(':').ok_or_else(|| Error::Parse(format!("expected dicke:N:K, got {s:?}")))?;
        let p = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")));
        DickeSpec::new(p(n)?, p(k)?)
    }
}

/// Exact binomial coefficient, `None` on u128 overflow.
pub fn binom(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(r)
}

fn binom_or_overflow(n: usize, k: usize) -> Result<u128> {
    binom(n, k).ok_or(Error::Overflow)
}

pub fn make_dicke(spec: DickeSpec) -> Result<PureState> {
    let DickeSpec { n, k } = DickeSpec::new(spec.n, spec.k)?;
    if n > MAX_QUBITS {
        return Err(Error::Precondition(format!("{n} qubits exceeds the dense limit {MAX_QUBITS}")));
    }
    let amps = (0..1usize << n)
        .map(|b| if b.count_ones() as usize == k { RingAmplitude::one() } else { RingAmplitude::zero() })
        .collect();
    PureState::from_parts(n, amps, 0, BigInt::from(binom_or_overflow(n, k)?))
}

/// Hypergeometric weights `binom(ℓ,i)·binom(N−ℓ,k−i)` for `i = 0..=min(ℓ,k)`.
fn weights(spec: DickeSpec, l: usize) -> Result<Vec<u128>> {
    (0..=l.min(spec.k))
        .map(|i| Ok(binom_or_overflow(l, i)? * binom_or_overflow(spec.n - l, spec.k - i)?))
        .collect()
}

/// `S_ℓ(|D^N_k⟩)`; zero-weight terms are skipped.
pub fn dicke_entropy(spec: DickeSpec, l: usize, base: LogBase) -> Result<f64> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    spec.check_l(l)?;
    let total = binom_or_overflow(spec.n, spec.k)? as f64;
    let w = weights(spec, l)?;
    Ok(base.shannon(w.into_iter().filter(|&c| c > 0).map(|c| c as f64 / total)))
}

fn ln_binom(n: usize, k: usize) -> Result<f64> {
    Ok((binom_or_overflow(n, k)? as f64).ln())
}

/// `ln binom(N,k) − binom(N,k)^{-1} Σ_{i ≤ top} c_i ln c_i`, with the logarithm
/// of every product split into its two binomial factors.
fn decoupled(spec: DickeSpec, l: usize, top: usize, base: LogBase) -> Result<f64> {
    let (n, k) = (spec.n, spec.k);
    let total = binom_or_overflow(n, k)? as f64;
    let mut acc = 0.0;
    for i in 0..=top {
        if i > l || i > k || k - i > n - l {
            continue;
        }
        let c = (binom_or_overflow(l, i)? * binom_or_overflow(n - l, k - i)?) as f64;
        acc += c * (ln_binom(l, i)? + ln_binom(n - l, k - i)?);
    }
    let nats = total.ln() - acc / total;
    Ok(match base {
        LogBase::E => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    })
}

/// Decoupled evaluator valid for `ℓ ≥ k`.
pub fn dicke_entropy_reduced_lgek(spec: DickeSpec, l: usize, base: LogBase) -> Result<f64> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    spec.check_l(l)?;
    if l < spec.k {
        return Err(Error::Precondition(format!("l = {l} < k = {}", spec.k)));
    }
    decoupled(spec, l, spec.k, base)
}

/// Decoupled evaluator valid for `ℓ < k`. The prefactor of `ln binom(N,k)` is
/// `binom(N,k)^{-1} Σ_i binom(ℓ,i) binom(N−ℓ,k−i) = 1`.
pub fn dicke_entropy_reduced_lltk(spec: DickeSpec, l: usize, base: LogBase) -> Result<f64> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    spec.check_l(l)?;
    if l >= spec.k {
        return Err(Error::Precondition(format!("l = {l} >= k = {}", spec.k)));
    }
    decoupled(spec, l, l, base)
}

/// `(ℓ/N) log(N/ℓ) + ((N−ℓ)/N) log(N/(N−ℓ))`.
pub fn wstate_entropy(n: usize, l: usize, base: LogBase) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDicke { n, k: 1 });
    }
    if l > n {
        return Err(Error::SubsystemSizeOutOfRange { l, n });
    }
    let nf = n as f64;
    let term = |m: usize| if m == 0 { 0.0 } else { (m as f64 / nf) * base.log(nf / m as f64) };
    Ok(term(l) + term(n - l))
}

/// `S̃_ℓ = binom(N,ℓ)^{-1} [binom(N−1,ℓ) S_ℓ + binom(N−1,N−ℓ) S_{N−ℓ}]`.
pub fn symmetrized_entropy(spec: DickeSpec, l: usize, base: LogBase) -> Result<f64> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    if l == 0 || l > spec.n {
        return Err(Error::SubsystemSizeOutOfRange { l, n: spec.n });
    }
    let n = spec.n;
    let c = binom_or_overflow(n, l)? as f64;
    let a = binom_or_overflow(n - 1, l)? as f64;
    let b = binom_or_overflow(n - 1, n - l)? as f64;
    Ok((a * dicke_entropy(spec, l, base)? + b * dicke_entropy(spec, n - l, base)?) / c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyForm {
    Full,
    Reduced,
    Symmetrized,
}

impl fmt::Display for EntropyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyForm::Full => "full",
            EntropyForm::Reduced => "reduced",
            EntropyForm::Symmetrized => "symmetrized",
        })
    }
}

impl FromStr for EntropyForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(EntropyForm::Full),
            "reduced" => Ok(EntropyForm::Reduced),
            "symmetrized" | "sym" => Ok(EntropyForm::Symmetrized),
            _ => Err(Error::Parse(format!("unknown entropy form {s:?}"))),
        }
    }
}

/// All non-empty subsystems (including the whole system), by size then
/// lexicographically on sorted zero-based qubit indices.
pub fn full_subsystems(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|size| (0..n).combinations(size)).collect()
}

/// The `2^(N−1) − 1` subsystems of the reduced form. Every subsystem of size
/// below `N/2` appears; for even `N` the size-`N/2` subsystems are those not
/// containing the purifier (the highest-index qubit). For three qubits this
/// is `(S_1, S_2, S_3)`, for four `(S_1, S_2, S_3, S_4; S_12, S_13, S_23)`.
pub fn reduced_subsystems(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..=(n.saturating_sub(1)) / 2).flat_map(|size| (0..n).combinations(size)).collect();
    if n.is_multiple_of(2) && n > 0 {
        out.extend((0..n - 1).combinations(n / 2));
    }
    out
}

pub fn subsystems_for(n: usize, form: EntropyForm) -> Vec<Vec<usize>> {
    match form {
        EntropyForm::Full => full_subsystems(n),
        EntropyForm::Reduced => reduced_subsystems(n),
        EntropyForm::Symmetrized => (1..=n).map(|l| (0..l).collect()).collect(),
    }
}

/// One-based label: `"13"`, or `"1,10"` once an index needs two digits.
pub fn subsystem_label(sub: &[usize]) -> String {
    if sub.iter().all(|&q| q < 9) {
        sub.iter().map(|q| (q + 1).to_string()).collect()
    } else {
        sub.iter().map(|q| (q + 1).to_string()).join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyVector {
    pub n: usize,
    pub base: LogBase,
    pub form: EntropyForm,
    pub entries: Vec<f64>,
}

impl EntropyVector {
    pub fn labels(&self) -> Vec<String> {
        match self.form {
            EntropyForm::Symmetrized => (1..=self.n).map(|l| format!("l{l}")).collect(),
            f => subsystems_for(self.n, f).iter().map(|s| format!("S{}", subsystem_label(s))).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("entropy vector serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Header line plus one data row: `n,base,form,<labels…>`.
    pub fn to_csv(&self) -> String {
        let head = ["n", "base", "form"].iter().map(|s| s.to_string()).chain(self.labels()).join(",");
        let row = [self.n.to_string(), self.base.to_string(), self.form.to_string()]
            .into_iter()
            .chain(self.entries.iter().map(|e| format_sig(*e, 10)))
            .join(",");
        format!("{head}\n{row}\n")
    }

    /// Per-entry comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &EntropyVector, tol: f64) -> bool {
        self.n == other.n
            && self.form == other.form
            && self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Formats with `sig` significant digits, trimming trailing zeros.
/// Magnitudes below `1e-5` or from `1e15` up switch to exponent notation.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&mag) {
        let s = format!("{:.*e}", sig.saturating_sub(1), x);
        let (m, e) = s.split_once('e').expect("exponent form");
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        return format!("{m}e{e}");
    }
    let decimals = (sig as i32 - 1 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Entropy vector of a Dicke state from the closed form.
pub fn dicke_entropy_vector(spec: DickeSpec, form: EntropyForm, base: LogBase) -> Result<EntropyVector> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    let n = spec.n;
    let per_size: Vec<f64> = (0..=n).map(|l| dicke_entropy(spec, l, base)).collect::<Result<_>>()?;
    let entries = match form {
        EntropyForm::Symmetrized => (1..=n).map(|l| symmetrized_entropy(spec, l, base)).collect::<Result<_>>()?,
        f => subsystems_for(n, f).iter().map(|s| per_size[s.len()]).collect(),
    };
    Ok(EntropyVector { n, base, form, entries })
}

/// Entropy vector of an arbitrary state via exact partial traces. Subsystems
/// equal to the whole register contribute 0.
pub fn state_entropy_vector(state: &PureState, form: EntropyForm, base: LogBase) -> Result<EntropyVector> {
    let n = state.num_qubits();
    let entropy = |s: &[usize]| if s.len() == n { Ok(0.0) } else { subsystem_entropy(state, s, base) };
    let entries = match form {
        EntropyForm::Symmetrized => (1..=n)
            .map(|l| {
                let subs: Vec<Vec<usize>> = (0..n).combinations(l).collect();
                let total: f64 = subs.iter().map(|s| entropy(s)).sum::<Result<f64>>()?;
                Ok(total / subs.len() as f64)
            })
            .collect::<Result<_>>()?,
        f => subsystems_for(n, f).iter().map(|s| entropy(s)).collect::<Result<_>>()?,
    };
    Ok(EntropyVector { n, base, form, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, k: usize) -> DickeSpec {
        DickeSpec::new(n, k).unwrap()
    }

    #[test]
    fn spec_validation_and_parse() {
        assert!(DickeSpec::new(3, 4).is_err());
        assert!(DickeSpec::new(0, 0).is_err());
        assert_eq!("dicke:4:2".parse::<DickeSpec>().unwrap(), d(4, 2));
        assert_eq!("5:1".parse::<DickeSpec>().unwrap(), d(5, 1));
        assert!("dicke:4".parse::<DickeSpec>().is_err());
    }

    #[test]
    fn constructor_amplitudes() {
        let s = make_dicke(d(3, 1)).unwrap();
        let ones: Vec<usize> = (0..8).filter(|&b| !s.amps()[b].is_zero()).collect();
        assert_eq!(ones, vec![1, 2, 4]);
        assert_eq!(*s.norm_square(), BigInt::from(3));
        assert_eq!(s.denom_exp(), 0);
        assert_eq!(*make_dicke(d(4, 2)).unwrap().norm_square(), BigInt::from(6));
        let all = make_dicke(d(4, 4)).unwrap();
        assert_eq!(all, PureState::basis(4, 0b1111).unwrap());
    }

    #[test]
    fn closed_form_values() {
        let w3 = dicke_entropy(d(3, 1), 1, LogBase::E).unwrap();
        assert!((w3 - ((3f64).ln() / 3.0 + 2.0 / 3.0 * 1.5f64.ln())).abs() < 1e-15);
        assert!((w3 - 0.63651).abs() < 1e-5);
        let d52 = dicke_entropy(d(5, 2), 1, LogBase::E).unwrap();
        assert!((d52 - 0.67301).abs() < 1e-5);
        assert_eq!(dicke_entropy(d(5, 2), 5, LogBase::E).unwrap(), 0.0);
        assert_eq!(dicke_entropy(d(5, 2), 0, LogBase::E).unwrap(), 0.0);
        assert!(dicke_entropy(d(5, 2), 6, LogBase::E).is_err());
    }

    #[test]
    fn reduced_evaluators() {
        let a = dicke_entropy_reduced_lgek(d(4, 1), 2, LogBase::E).unwrap();
        assert!((a - 2f64.ln()).abs() < 1e-15);
        let b = dicke_entropy_reduced_lltk(d(5, 3), 2, LogBase::E).unwrap();
        let main = dicke_entropy(d(5, 3), 2, LogBase::E).unwrap();
        assert!((b - main).abs() <= 1e-12 * main);
        assert_eq!(dicke_entropy_reduced_lltk(d(6, 6), 3, LogBase::E).unwrap(), 0.0);
        assert!(dicke_entropy_reduced_lgek(d(5, 3), 2, LogBase::E).is_err());
        assert!(dicke_entropy_reduced_lltk(d(5, 3), 3, LogBase::E).is_err());
    }

    #[test]
    fn w_state_closed_form() {
        assert!((wstate_entropy(3, 1, LogBase::Two).unwrap() - 0.9182958).abs() < 1e-7);
        assert!((wstate_entropy(6, 3, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(wstate_entropy(5, 5, LogBase::E).unwrap(), 0.0);
    }

    #[test]
    fn symmetrized_matches_plain_for_dicke() {
        for n in 1..=8 {
            for k in 0..=n {
                for l in 1..=n {
                    let s = symmetrized_entropy(d(n, k), l, LogBase::E).unwrap();
                    let p = dicke_entropy(d(n, k), l, LogBase::E).unwrap();
                    assert!((s - p).abs() < 1e-13);
                }
            }
        }
        assert_eq!(symmetrized_entropy(d(5, 2), 5, LogBase::E).unwrap(), 0.0);
    }

    #[test]
    fn subsystem_orders() {
        let labels = |v: Vec<Vec<usize>>| v.iter().map(|s| subsystem_label(s)).collect::<Vec<_>>();
        assert_eq!(labels(reduced_subsystems(3)), ["1", "2", "3"]);
        assert_eq!(labels(reduced_subsystems(4)), ["1", "2", "3", "4", "12", "13", "23"]);
        for n in 1..=10 {
            assert_eq!(reduced_subsystems(n).len(), (1 << (n - 1)) - 1);
            assert_eq!(full_subsystems(n).len(), (1 << n) - 1);
        }
        assert_eq!(labels(full_subsystems(3)), ["1", "2", "3", "12", "13", "23", "123"]);
        assert_eq!(subsystem_label(&[0, 9]), "1,10");
    }

    #[test]
    fn vectors_from_closed_form() {
        let v = dicke_entropy_vector(d(3, 3), EntropyForm::Full, LogBase::Two).unwrap();
        assert_eq!(v.entries, vec![0.0; 7]);
        let v = dicke_entropy_vector(d(3, 1), EntropyForm::Reduced, LogBase::Two).unwrap();
        assert!(v.entries.iter().all(|e| (e - 0.9182958).abs() < 1e-7));
        let v = dicke_entropy_vector(d(4, 2), EntropyForm::Reduced, LogBase::Two).unwrap();
        let s2 = (2.0 / 3.0) * 1.5f64.log2() + 6f64.log2() / 3.0;
        for (i, e) in v.entries.iter().enumerate() {
            let want = if i < 4 { 1.0 } else { s2 };
            assert!((e - want).abs() < 1e-12);
        }
        assert!((s2 - 1.2516).abs() < 1e-4);
    }

    #[test]
    fn state_vector_agrees_with_closed_form() {
        for (n, k) in [(3, 1), (4, 2), (5, 2)] {
            let s = make_dicke(d(n, k)).unwrap();
            for form in [EntropyForm::Full, EntropyForm::Reduced, EntropyForm::Symmetrized] {
                let a = state_entropy_vector(&s, form, LogBase::Two).unwrap();
                let b = dicke_entropy_vector(d(n, k), form, LogBase::Two).unwrap();
                assert!(a.approx_eq(&b, 1e-10), "{n} {k} {form}");
            }
        }
    }

    #[test]
    fn serialization() {
        let v = dicke_entropy_vector(d(3, 1), EntropyForm::Reduced, LogBase::Two).unwrap();
        let back = EntropyVector::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert!(v.to_json().contains("\"form\":\"reduced\""));
        assert!(v.to_json().contains("\"base\":\"2\""));
        let csv = v.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "n,base,form,S1,S2,S3");
        assert_eq!(csv.lines().nth(1).unwrap(), "3,2,reduced,0.9182958341,0.9182958341,0.9182958341");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.91829583405449, 10), "0.9182958341");
        assert_eq!(format_sig(1.0, 10), "1");
        assert_eq!(format_sig(-0.5945348918918356, 10), "-0.5945348919");
        assert_eq!(format_sig(12.26, 3), "12.3");
        assert_eq!(format_sig(1.1102230246251565e-16, 10), "1.110223025e-16");
        assert_eq!(format_sig(2.5e-7, 10), "2.5e-7");
        assert_eq!(format_sig(0.00012, 10), "0.00012");
    }
}
