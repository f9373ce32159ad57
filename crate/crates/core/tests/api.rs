//! End-to-end use of the public API across modules.

use num::BigInt;
use springer_core::action::{act, act_via_gamma, rep_matrix, ActionEngine, GammaConvention};
use springer_core::diagram::{distance, ArrowGraph};
use springer_core::homology::{betti, presentation_betti, HomClass, Reducer};
use springer_core::matching::enumerate;
use springer_core::skein::{calibrate, skein_act};
use springer_core::specht::{two_row_character, zeta};
use springer_core::tableau::{matching_of, standard_basis, tableau_of};
use springer_core::{DottedMatching, Matching, Perm};

fn cls(s: &str) -> HomClass {
    HomClass::parse(s).unwrap()
}

#[test]
fn transposition_on_two_caps() {
    let y = act(&Perm::parse("(2 3)", 4).unwrap(), &cls("4: u1-2 u3-4")).unwrap();
    assert_eq!(y.to_string(), "1·(4: u1-2 u3-4) + 1·(4: u1-4 u2-3)");
}

#[test]
fn three_routes_on_the_worked_example() {
    let x: DottedMatching = "3: u1-2 r3".parse().unwrap();
    let sigma = Perm::parse("(1 2 3)", 3).unwrap();
    let oracle = act(&sigma, &HomClass::single(x.clone())).unwrap();
    assert_eq!(oracle, cls("3: r1 u2-3"));
    assert_eq!(act_via_gamma(&sigma, &x, GammaConvention::LeftEndpointNegative).unwrap(), oracle);
    let c = calibrate(3).unwrap().chosen;
    assert_eq!(skein_act(&sigma, &x, &c).unwrap(), oracle);
}

#[test]
fn reduction_agrees_with_zeta() {
    let x = cls("4: u1-4 d2-3");
    let r = Reducer::new(4, 2, 1, None).unwrap().reduce(&x).unwrap();
    assert!(r.terms().keys().all(DottedMatching::is_standard));
    assert_eq!(zeta(&r), zeta(&x));
}

#[test]
fn betti_both_ways() {
    for (n, k) in [(4, 1), (5, 2), (6, 3)] {
        assert_eq!(betti(n, k).unwrap(), presentation_betti(n, k).unwrap());
    }
    assert_eq!(betti(6, 3).unwrap(), vec![1, 5, 9, 5]);
}

#[test]
fn trace_is_the_character() {
    let engine = ActionEngine::new(5, 2).unwrap();
    let sigma = Perm::parse("(1 2)(3 4 5)", 5).unwrap();
    for m in 0..=2 {
        let mat = rep_matrix(&sigma, 5, 2, m).unwrap();
        let trace: BigInt = (0..mat.len()).map(|i| mat[i][i].clone()).sum();
        assert_eq!(trace, BigInt::from(two_row_character(5, m, &sigma).unwrap()));
        assert_eq!(mat.len(), engine.basis(m).len());
    }
}

#[test]
fn tableaux_and_basis_correspond() {
    for x in standard_basis(6, 2, 2) {
        let t = tableau_of(&x).unwrap();
        assert_eq!(matching_of(&t, 2).unwrap(), x);
    }
}

#[test]
fn distances_in_x31() {
    let all = enumerate(4, 1).unwrap();
    let g = ArrowGraph::new(4, 1).unwrap();
    let a: Matching = "4: u1-2 r3 r4".parse().unwrap();
    let c: Matching = "4: r1 r2 u3-4".parse().unwrap();
    assert_eq!(all.len(), 3);
    assert_eq!(distance(&a, &c).unwrap(), Some(2));
    assert_eq!(g.meet(&a, &c).unwrap(), c);
}
