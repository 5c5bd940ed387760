mod common;

use std::collections::BTreeSet;

use common::*;
use num_traits::Zero;
use vallab::oracle::brute_force_facets;
use vallab::{
    asymptotic_membership, controlled_growth_check, howald_multiplier, jumping_number_oracle, lct_mixed,
    newton_polyhedron, LctValue, MonomialIdeal, Rational,
};

fn engine(q: &MonomialIdeal, a: &MonomialIdeal) -> LctValue<Rational> {
    lct_mixed(q, &Rational::zero(), &MonomialIdeal::unit(a.dim()), a).unwrap().value
}

#[test]
fn named_values() {
    let a = ideal(&[&[2, 0], &[0, 3]]);
    for (qq, expected) in [(MonomialIdeal::unit(2), q(5, 6)), (ideal(&[&[1, 0]]), q(4, 3))] {
        assert_eq!(jumping_number_oracle::<Rational>(&qq, &a).unwrap(), LctValue::Finite(expected.clone()));
        assert_eq!(engine(&qq, &a), LctValue::Finite(expected));
    }
    let xy = ideal(&[&[1, 1]]);
    assert_eq!(jumping_number_oracle::<Rational>(&xy, &xy).unwrap(), LctValue::Finite(int(2)));
}

#[test]
fn engine_matches_oracle_on_corpus() {
    let corpus = corpus();
    assert!(corpus.len() >= 100);
    for (qq, a) in &corpus {
        let oracle = jumping_number_oracle::<Rational>(qq, a).unwrap();
        assert_eq!(engine(qq, a), oracle, "q = ({qq}), a = ({a})");
    }
}

#[test]
fn oracle_scaling() {
    for (qq, a) in corpus().iter().filter(|(_, a)| a.dim() <= 2).take(40) {
        let base = jumping_number_oracle::<Rational>(qq, a).unwrap();
        for m in 2..=3u32 {
            let scaled = jumping_number_oracle::<Rational>(qq, &a.pow(m)).unwrap();
            match (&base, scaled) {
                (LctValue::Finite(b), LctValue::Finite(s)) => assert_eq!(s * int(m as i64), *b),
                (b, s) => assert_eq!(*b, s),
            }
        }
    }
}

#[test]
fn multiplier_ideal_laws() {
    let samples = [q(1, 2), q(1, 1), q(3, 2), q(5, 3)];
    let ideals: BTreeSet<MonomialIdeal> = corpus().into_iter().map(|(_, a)| a).filter(|a| a.dim() <= 2).collect();
    for a in ideals.iter().take(30) {
        let j1 = howald_multiplier(a, &int(1)).unwrap().ideal;
        assert!(a.is_subset_of(&j1), "a = ({a}) not in J(a) = ({j1})");
        for s in &samples {
            for t in &samples {
                let sum = howald_multiplier(a, &(s + t)).unwrap().ideal;
                let prod = howald_multiplier(a, s)
                    .unwrap()
                    .ideal
                    .product(&howald_multiplier(a, t).unwrap().ideal)
                    .unwrap();
                assert!(sum.is_subset_of(&prod), "J({s}+{t}) not in J({s})J({t}) for a = ({a})");
            }
        }
    }
}

#[test]
fn witnesses_are_interior() {
    let a = ideal(&[&[2, 0], &[0, 3]]);
    let res = howald_multiplier(&a, &q(5, 4)).unwrap();
    assert!(!res.witness.is_empty());
    for (_, slacks) in &res.witness {
        assert!(slacks.iter().all(|s| s > &Rational::zero()));
    }
}

#[test]
fn membership_boundary() {
    for (qq, a) in corpus().iter().filter(|(_, a)| a.dim() <= 2).take(50) {
        let LctValue::Finite(jn) = engine(qq, a) else { continue };
        assert!(!asymptotic_membership(qq, &jn, a).unwrap(), "membership at the jumping number");
        let below = &jn * q(9, 10);
        if below > Rational::zero() {
            assert!(asymptotic_membership(qq, &below, a).unwrap());
        }
    }
}

#[test]
fn newton_facets_match_brute_force() {
    for (_, a) in corpus() {
        let engine: BTreeSet<(Vec<Rational>, Rational)> = newton_polyhedron::<Rational>(&a)
            .unwrap()
            .facets()
            .iter()
            .map(|f| (f.normal.to_scalars(), f.offset.clone()))
            .collect();
        let brute: BTreeSet<(Vec<Rational>, Rational)> = brute_force_facets::<Rational>(&a).unwrap().into_iter().collect();
        assert_eq!(engine, brute, "a = ({a})");
    }
}

#[test]
fn controlled_growth() {
    let a = ideal(&[&[2, 0], &[0, 3]]);
    let rays: Vec<_> = newton_polyhedron::<Rational>(&a)
        .unwrap()
        .nontrivial_facets()
        .map(|f| f.normal.clone())
        .collect();
    let report = controlled_growth_check(&a, &rays, &[q(1, 2), int(1), q(3, 2), int(2), int(3)]).unwrap();
    assert!(report.passed());
    assert!(controlled_growth_check(&a, &rays, &[int(0)]).is_err());
}
