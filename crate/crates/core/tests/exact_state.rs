use dicke_core::dicke::{make_dicke, DickeSpec};
use dicke_core::exact_state::{reduced_density_matrix, subsystem_entropy};
use dicke_core::{Gate, LogBase, PureState};
use num_complex::Complex64;
use proptest::prelude::*;

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    (0..5usize, 0..n, 1..n).prop_map(move |(kind, q, shift)| {
        let r = (q + shift) % n;
        match kind {
            0 => Gate::H(q),
            1 => Gate::P(q),
            2 => Gate::Cnot(q, r),
            3 => Gate::X(q),
            _ => Gate::Z(q),
        }
    })
}

/// Partial trace straight from complex amplitudes; qubit 0 is the most
/// significant bit and the kept qubits keep their relative order.
fn float_rdm(amps: &[Complex64], n: usize, keep: &[usize]) -> Vec<Vec<Complex64>> {
    let dim = 1 << keep.len();
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let index = |sub: usize, env: usize| {
        let mut b = 0usize;
        for (j, &q) in keep.iter().enumerate() {
            if sub >> (keep.len() - 1 - j) & 1 == 1 {
                b |= 1 << (n - 1 - q);
            }
        }
        for (j, &q) in rest.iter().enumerate() {
            if env >> (rest.len() - 1 - j) & 1 == 1 {
                b |= 1 << (n - 1 - q);
            }
        }
        b
    };
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (r, row) in rho.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            for env in 0..1usize << rest.len() {
                *cell += amps[index(r, env)] * amps[index(c, env)].conj();
            }
        }
    }
    rho
}

#[test]
fn hadamard_and_cnot_examples() {
    let plus = PureState::basis(1, 0).unwrap().apply_gate(Gate::H(0)).unwrap();
    assert_eq!(plus.denom_exp(), 1);
    assert_eq!(plus.norm_square(), &1.into());
    let s = PureState::basis(2, 0b10).unwrap().apply_gate(Gate::Cnot(0, 1)).unwrap();
    assert_eq!(s, PureState::basis(2, 0b11).unwrap());
}

#[test]
fn eighth_power_of_hp_cubed_is_identity() {
    let zero = PureState::basis(1, 0).unwrap();
    let word = [Gate::P(0), Gate::H(0), Gate::P(0), Gate::H(0), Gate::P(0), Gate::H(0)];
    let mut s = zero.clone();
    for _ in 0..8 {
        s = s.apply_gates(&word).unwrap();
    }
    assert_eq!(s.canonical_key(), zero.canonical_key());
    assert_eq!(s, zero);
    let once = zero.apply_gates(&word).unwrap();
    assert_eq!(once.canonical_key(), zero.canonical_key());
    assert_ne!(once, zero);
}

#[test]
fn keys_respect_phase_only() {
    let w = make_dicke(DickeSpec::new(3, 1).unwrap()).unwrap();
    assert_eq!(w.mul_omega(2).canonical_key(), w.canonical_key());
    assert_ne!(PureState::basis(2, 1).unwrap().canonical_key(), PureState::basis(2, 2).unwrap().canonical_key());
}

#[test]
fn entropy_examples() {
    let w2 = make_dicke(DickeSpec::new(2, 1).unwrap()).unwrap();
    assert!((subsystem_entropy(&w2, &[0], LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
    let w3 = make_dicke(DickeSpec::new(3, 1).unwrap()).unwrap();
    let s1 = 2.0 / 3.0 * 1.5f64.log2() + 3f64.log2() / 3.0;
    assert!((subsystem_entropy(&w3, &[0], LogBase::Two).unwrap() - s1).abs() < 1e-12);
    let ones = make_dicke(DickeSpec::new(4, 4).unwrap()).unwrap();
    assert!(subsystem_entropy(&ones, &[1, 3], LogBase::E).unwrap().abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn circuits_preserve_normalization_and_match_float_trace(
        k in 0..=4usize,
        gates in prop::collection::vec(gate_strategy(4), 0..12),
        keep_mask in 1..15usize,
    ) {
        let s = make_dicke(DickeSpec::new(4, k).unwrap()).unwrap().apply_gates(&gates).unwrap();
        prop_assert!(s.is_normalized());
        let keep: Vec<usize> = (0..4).filter(|q| keep_mask >> q & 1 == 1).collect();
        let exact = reduced_density_matrix(&s, &keep).unwrap();
        let float = float_rdm(&s.to_complex_amplitudes(), 4, &keep);
        for (r, row) in float.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                prop_assert!((exact.get(r, c) - v).norm() < 1e-12);
            }
        }
        let complement: Vec<usize> = (0..4).filter(|q| !keep.contains(q)).collect();
        let a = subsystem_entropy(&s, &keep, LogBase::Two).unwrap();
        let b = subsystem_entropy(&s, &complement, LogBase::Two).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn key_invariant_under_global_phase(k in 0..=3usize, gates in prop::collection::vec(gate_strategy(3), 0..10), m in 0..8u32) {
        let s = make_dicke(DickeSpec::new(3, k).unwrap()).unwrap().apply_gates(&gates).unwrap();
        prop_assert_eq!(s.mul_omega(m).canonical_key(), s.canonical_key());
        prop_assert_eq!(PureState::from_json(&s.to_json()).unwrap(), s);
    }
}
