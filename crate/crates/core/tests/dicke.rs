use dicke_core::dicke::*;
use dicke_core::ring::RingAmplitude;
use dicke_core::LogBase;

fn d(n: usize, k: usize) -> DickeSpec {
    DickeSpec::new(n, k).unwrap()
}

#[test]
fn explicit_states() {
    let w = make_dicke(d(3, 1)).unwrap();
    let support: Vec<usize> = (0..8).filter(|&b| !w.amps()[b].is_zero()).collect();
    assert_eq!(support, vec![0b001, 0b010, 0b100]);
    assert!(support.iter().all(|&b| w.amps()[b] == RingAmplitude::one()));
    assert_eq!(w.norm_square(), &3.into());
    assert_eq!(make_dicke(d(4, 2)).unwrap().norm_square(), &6.into());
    let ones = make_dicke(d(5, 5)).unwrap();
    assert_eq!(ones, dicke_core::PureState::basis(5, 0b11111).unwrap());
}

#[test]
fn closed_form_examples() {
    let e = |n, k, l| dicke_entropy(d(n, k), l, LogBase::E).unwrap();
    assert!((e(3, 1, 1) - (3f64.ln() / 3.0 + 2.0 / 3.0 * 1.5f64.ln())).abs() < 1e-12);
    assert!((e(5, 2, 1) - (0.6 * (5.0f64 / 3.0).ln() + 0.4 * 2.5f64.ln())).abs() < 1e-12);
    assert!((e(5, 2, 1) - 0.67301).abs() < 1e-5);
    assert_eq!(e(7, 3, 7), 0.0);
    assert!((dicke_entropy_reduced_lgek(d(4, 1), 2, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-12);
    let lt = dicke_entropy_reduced_lltk(d(5, 3), 2, LogBase::E).unwrap();
    assert!((lt - e(5, 3, 2)).abs() < 1e-12);
    assert!(dicke_entropy_reduced_lltk(d(6, 6), 3, LogBase::Two).unwrap().abs() < 1e-12);
    assert!(dicke_entropy_reduced_lgek(d(6, 6), 3, LogBase::Two).is_err());
}

#[test]
fn wstate_examples() {
    assert!((wstate_entropy(3, 1, LogBase::Two).unwrap() - 0.9182958341).abs() < 1e-9);
    assert_eq!(wstate_entropy(4, 4, LogBase::E).unwrap(), 0.0);
    assert!((wstate_entropy(6, 3, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn vectors() {
    let v = dicke_entropy_vector(d(3, 3), EntropyForm::Full, LogBase::Two).unwrap();
    assert_eq!(v.entries, vec![0.0; 7]);
    let s1 = wstate_entropy(3, 1, LogBase::Two).unwrap();
    let v = dicke_entropy_vector(d(3, 1), EntropyForm::Reduced, LogBase::Two).unwrap();
    assert!(v.entries.iter().all(|x| (x - s1).abs() < 1e-12));
    let s2 = 2.0 / 3.0 * 1.5f64.log2() + 6f64.log2() / 3.0;
    let v = dicke_entropy_vector(d(4, 2), EntropyForm::Reduced, LogBase::Two).unwrap();
    assert_eq!(v.labels(), vec!["S1", "S2", "S3", "S4", "S12", "S13", "S23"]);
    let want = [1.0, 1.0, 1.0, 1.0, s2, s2, s2];
    assert!(v.entries.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
    let back = EntropyVector::from_json(&v.to_json()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn full_vectors_respect_purity() {
    for n in 2..=6 {
        for k in 0..=n {
            let v = dicke_entropy_vector(d(n, k), EntropyForm::Full, LogBase::E).unwrap();
            let subs = full_subsystems(n);
            for (sub, s) in subs.iter().zip(&v.entries) {
                assert!(*s >= 0.0);
                if sub.len() < n {
                    let comp: Vec<usize> = (0..n).filter(|q| !sub.contains(q)).collect();
                    let j = subs.iter().position(|x| *x == comp).unwrap();
                    assert!((s - v.entries[j]).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn symmetrized_collapses_for_dicke() {
    for n in 2..=9 {
        for k in 0..=n {
            for l in 1..=n {
                let a = symmetrized_entropy(d(n, k), l, LogBase::E).unwrap();
                let b = dicke_entropy(d(n, k), l, LogBase::E).unwrap();
                assert!((a - b).abs() < 1e-12, "({n},{k},{l})");
            }
        }
    }
    assert_eq!(symmetrized_entropy(d(5, 2), 5, LogBase::E).unwrap(), 0.0);
}

#[test]
fn spec_parsing() {
    assert_eq!("dicke:4:2".parse::<DickeSpec>().unwrap(), d(4, 2));
    assert_eq!("5:1".parse::<DickeSpec>().unwrap(), d(5, 1));
    assert!("dicke:2:3".parse::<DickeSpec>().is_err());
    assert!(DickeSpec::new(0, 0).is_err());
}

#[test]
fn reflection_and_particle_hole() {
    for n in 1..=10 {
        for k in 0..=n {
            for l in 0..=n {
                let a = dicke_entropy(d(n, k), l, LogBase::E).unwrap();
                assert!((a - dicke_entropy(d(n, k), n - l, LogBase::E).unwrap()).abs() < 1e-12);
            }
        }
    }
    for n in 2..=8 {
        for k in 0..=n {
            let flipped = make_dicke(d(n, n - k)).unwrap();
            let sub: Vec<usize> = (0..n / 2).collect();
            let brute = dicke_core::exact_state::subsystem_entropy(&flipped, &sub, LogBase::E).unwrap();
            assert!((brute - dicke_entropy(d(n, k), n / 2, LogBase::E).unwrap()).abs() < 1e-9);
        }
    }
}
