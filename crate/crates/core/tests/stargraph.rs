use dicke_core::dicke::{dicke_entropy, symmetrized_entropy, DickeSpec};
use dicke_core::stargraph::*;
use dicke_core::LogBase;

fn d(n: usize, k: usize) -> DickeSpec {
    DickeSpec::new(n, k).unwrap()
}

#[test]
fn min_cut_examples() {
    assert_eq!(star_min_cut(&StarGraph::new(3, 0.0), 1), 1.0);
    let w1 = solve_w1(3, 1, LogBase::E).unwrap();
    assert!((w1 - (1.5f64.ln() - 1.0)).abs() < 1e-12);
    assert!((w1 + 0.5945).abs() < 1e-4);
    assert!((star_min_cut(&StarGraph::new(3, w1), 1) - 1.5f64.ln()).abs() < 1e-12);
    assert_eq!(star_min_cut_side(&StarGraph::new(6, -40.0), 2).1, CutSide::Complement);
    assert!((solve_w2(3, 1, LogBase::E).unwrap() - 3f64.ln()).abs() < 1e-12);
}

#[test]
fn wstate_two_graph_model() {
    let s1 = dicke_entropy(d(3, 1), 1, LogBase::E).unwrap();
    assert!((wstate_startilde(3, 1, LogBase::E).unwrap() - s1).abs() < 1e-12);
    assert!((wstate_startilde(4, 2, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-12);
    for n in 2..=9 {
        for l in 1..n {
            let a = wstate_startilde(n, l, LogBase::E).unwrap();
            assert!((a - wstate_startilde(n, n - l, LogBase::E).unwrap()).abs() < 1e-12);
            let sum = build_stargraph_sum(d(n, 1), l, LogBase::E).unwrap();
            assert!((sum.evaluate() - a).abs() < 1e-12);
        }
    }
}

#[test]
fn bounds_match_signs() {
    for n in 2..=12 {
        for l in 1..n {
            assert_eq!(solve_w1(n, l, LogBase::E).unwrap() < 0.0, w1_bound_negative(n, l, LogBase::E).unwrap());
            assert_eq!(solve_w2(n, l, LogBase::E).unwrap() < 0.0, w2_bound_negative(n, l, LogBase::E).unwrap());
        }
    }
}

#[test]
fn d52_sums() {
    let one = build_stargraph_sum(d(5, 2), 1, LogBase::E).unwrap();
    assert_eq!(one.terms_for_part(1).count(), 2);
    let inner = 0.6 * (5.0f64 / 3.0).ln() + 0.4 * 2.5f64.ln();
    assert!((one.evaluate() - inner).abs() < 1e-12);
    let two = build_stargraph_sum(d(5, 2), 2, LogBase::E).unwrap();
    assert_eq!(two.terms_for_part(2).count(), 3);
    assert!((two.evaluate() - symmetrized_entropy(d(5, 2), 2, LogBase::E).unwrap()).abs() < 1e-12);
}

#[test]
fn exports_are_deterministic() {
    let s = build_stargraph_sum(d(6, 2), 3, LogBase::Two).unwrap();
    assert_eq!(s.to_json(), build_stargraph_sum(d(6, 2), 3, LogBase::Two).unwrap().to_json());
    assert!(s.to_dot().starts_with("graph"));
    assert!(stargraph_residual(&build_stargraph_sum(d(6, 2), 3, LogBase::E).unwrap()).unwrap() < 1e-12);
}
