//! Partial traces carried out in Z[ω] and entropies of the result.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::jacobi::{hermitian_eigenvalues, DenseMatrix};
use super::state::PureState;
use crate::base::LogBase;
use crate::error::{Error, Result};
use crate::ring::{RingAmplitude, SmallRing};

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as round-off zeros.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Exact `ρ_I` numerators: `ρ_I = entries / (2^d·M)` restricted to the rows
/// with non-zero diagonal (the remaining rows and columns vanish for a PSD
/// matrix).
struct ExactReduced {
    dim: usize,
    support: Vec<usize>,
    entries: Vec<Complex64>,
}

fn check_subsystem(n: usize, subsystem: &[usize]) -> Result<Vec<usize>> {
    let mut sub = subsystem.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if sub.len() != subsystem.len() || sub.is_empty() || sub.len() >= n {
        return Err(Error::InvalidSubsystem);
    }
    if let Some(&q) = sub.iter().find(|&&q| q >= n) {
        return Err(Error::QubitOutOfRange { index: q, n });
    }
    Ok(sub)
}

/// Splits every basis index into (subsystem bits, complement bits).
fn split_nonzero(state: &PureState, sub: &[usize]) -> Vec<(usize, usize, usize)> {
    let n = state.num_qubits();
    let masks: Vec<usize> = sub.iter().map(|&q| 1 << (n - 1 - q)).collect();
    let all: usize = masks.iter().sum();
    let t = masks.len();
    let mut out: Vec<(usize, usize, usize)> = state
        .amps()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(b, _)| {
            let x = masks.iter().enumerate().filter(|(_, &m)| b & m != 0).map(|(j, _)| 1 << (t - 1 - j)).sum();
            (b & !all, x, b)
        })
        .collect();
    out.sort_unstable();
    out
}

fn groups(items: &[(usize, usize, usize)]) -> impl Iterator<Item = &[(usize, usize, usize)]> {
    items.chunk_by(|a, b| a.0 == b.0)
}

fn exact_reduced(state: &PureState, sub: &[usize]) -> ExactReduced {
    let dim = 1usize << sub.len();
    let items = split_nonzero(state, sub);
    let amps = state.amps();
    let small: Option<Vec<SmallRing>> = amps.iter().map(|a| a.to_small().map(SmallRing)).collect();
    let exact: Vec<Complex64> = match small.and_then(|s| accumulate_small(&items, &s, dim)) {
        Some(acc) => acc.into_iter().map(SmallRing::to_complex).collect(),
        None => accumulate_big(&items, amps, dim).iter().map(RingAmplitude::to_complex).collect(),
    };
    // exact diagonal zero <=> zero row, decided before the float conversion
    let support: Vec<usize> = (0..dim).filter(|&i| exact[i * dim + i] != Complex64::new(0.0, 0.0)).collect();
    ExactReduced { dim, support, entries: exact }
}

fn accumulate_small(items: &[(usize, usize, usize)], amps: &[SmallRing], dim: usize) -> Option<Vec<SmallRing>> {
    let mut acc = vec![SmallRing::default(); dim * dim];
    for g in groups(items) {
        for &(_, x, bx) in g {
            for &(_, y, by) in g {
                let p = amps[bx].checked_mul(amps[by].conj())?;
                acc[x * dim + y] = acc[x * dim + y].checked_add(p)?;
            }
        }
    }
    Some(acc)
}

fn accumulate_big(items: &[(usize, usize, usize)], amps: &[RingAmplitude], dim: usize) -> Vec<RingAmplitude> {
    let mut acc = vec![RingAmplitude::zero(); dim * dim];
    for g in groups(items) {
        for &(_, x, bx) in g {
            for &(_, y, by) in g {
                acc[x * dim + y] += &(&amps[bx] * &amps[by].conj());
            }
        }
    }
    acc
}

/// `ρ_I` as a float matrix, indexed by the subsystem qubits in ascending
/// order (lowest qubit most significant).
pub fn reduced_density_matrix(state: &PureState, subsystem: &[usize]) -> Result<DenseMatrix> {
    let sub = check_subsystem(state.num_qubits(), subsystem)?;
    let ex = exact_reduced(state, &sub);
    let denom = state.total_denominator().to_f64().unwrap_or(f64::INFINITY);
    Ok(DenseMatrix { dim: ex.dim, data: ex.entries.into_iter().map(|z| z / denom).collect() })
}

/// Von Neumann entropy `-Σ λ log λ` of `ρ_I`.
pub fn subsystem_entropy(state: &PureState, subsystem: &[usize], base: LogBase) -> Result<f64> {
    let sub = check_subsystem(state.num_qubits(), subsystem)?;
    let ex = exact_reduced(state, &sub);
    if ex.support.len() <= 1 {
        return Ok(0.0);
    }
    let denom = state.total_denominator().to_f64().unwrap_or(f64::INFINITY);
    let full = DenseMatrix { dim: ex.dim, data: ex.entries.iter().map(|z| z / denom).collect() };
    let rho = full.restrict(&ex.support);
    let ev = hermitian_eigenvalues(&rho)?;
    let mut probs = Vec::with_capacity(ev.len());
    for l in ev {
        if l < -EIGEN_CLAMP {
            return Err(Error::NegativeEigenvalue(l));
        }
        probs.push(l.max(0.0));
    }
    Ok(base.shannon(probs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_state::Gate;
    use num_bigint::BigInt;

    fn dicke_like(n: usize, ones: &[usize], m: i64) -> PureState {
        let mut amps = vec![RingAmplitude::zero(); 1 << n];
        for &b in ones {
            amps[b] = RingAmplitude::one();
        }
        PureState::from_parts(n, amps, 0, BigInt::from(m)).unwrap()
    }

    #[test]
    fn w2_single_qubit_is_maximally_mixed() {
        let s = dicke_like(2, &[1, 2], 2);
        let rho = reduced_density_matrix(&s, &[0]).unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);
        assert!((subsystem_entropy(&s, &[1], LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w3_first_qubit() {
        let s = dicke_like(3, &[4, 2, 1], 3);
        let rho = reduced_density_matrix(&s, &[0]).unwrap();
        // |0⟩ on qubit 0 carries two of the three terms
        assert!((rho.get(0, 0).re - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 1.0 / 3.0).abs() < 1e-15);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        let h = subsystem_entropy(&s, &[0], LogBase::Two).unwrap();
        let expected = (2.0 / 3.0) * (1.5f64).log2() + (1.0 / 3.0) * 3f64.log2();
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 0.9182958).abs() < 1e-7);
    }

    #[test]
    fn product_state_is_pure_everywhere() {
        let s = PureState::basis(2, 0b11).unwrap();
        let rho = reduced_density_matrix(&s, &[1]).unwrap();
        assert_eq!(rho.get(0, 0).re, 0.0);
        assert_eq!(rho.get(1, 1).re, 1.0);
        assert_eq!(subsystem_entropy(&s, &[0], LogBase::E).unwrap(), 0.0);
    }

    #[test]
    fn subsystem_errors() {
        let s = PureState::basis(3, 0).unwrap();
        assert_eq!(subsystem_entropy(&s, &[], LogBase::E), Err(Error::InvalidSubsystem));
        assert_eq!(subsystem_entropy(&s, &[0, 1, 2], LogBase::E), Err(Error::InvalidSubsystem));
        assert_eq!(subsystem_entropy(&s, &[0, 0], LogBase::E), Err(Error::InvalidSubsystem));
        assert_eq!(subsystem_entropy(&s, &[5], LogBase::E), Err(Error::QubitOutOfRange { index: 5, n: 3 }));
    }

    #[test]
    fn complex_rdm_is_hermitian_with_unit_trace() {
        let s = dicke_like(3, &[4, 2, 1], 3)
            .apply_gates(&[Gate::H(0), Gate::P(0), Gate::Cnot(0, 1), Gate::H(1), Gate::P(2)])
            .unwrap();
        for sub in [vec![0], vec![1], vec![0, 2], vec![1, 2]] {
            let rho = reduced_density_matrix(&s, &sub).unwrap();
            assert!(rho.is_hermitian(1e-14));
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
        }
        let a = subsystem_entropy(&s, &[0], LogBase::Two).unwrap();
        let b = subsystem_entropy(&s, &[1, 2], LogBase::Two).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn big_integer_fallback_path() {
        // amplitude 2^70 on |0⟩ and |1⟩ of a single qubit, entangled with a second
        let big = BigInt::from(1u64) << 70usize;
        let mut amps = vec![RingAmplitude::zero(); 4];
        amps[0] = RingAmplitude::from_coeffs([big.clone(), 0.into(), 0.into(), 0.into()]);
        amps[3] = amps[0].clone();
        let m = &big * &big * 2;
        let s = PureState::from_unchecked(2, amps, 0, m);
        let h = subsystem_entropy(&s, &[0], LogBase::Two).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
    }
}
