mod common;

use common::oracle::{Closure, Enumerator, Oracle};
use common::checks::oracle_agreement;
use rhopi::rho::{name_eq, struct_eq, RhoName, RhoProc};

const MAX_SIZE: usize = 8;
const DEPTH: usize = 6;

#[test]
fn struct_eq_agrees_with_rewrite_closure() {
    let t = oracle_agreement(MAX_SIZE, DEPTH);
    assert!(t.cases >= 10_000, "{} pairs", t.cases);
    assert!(t.exercised > 100, "{} non-trivial congruent pairs", t.exercised);
    assert!(t.failures.is_empty(), "{} disagreements, first: {:?}", t.failures.len(), &t.failures[..t.failures.len().min(3)]);
}

#[test]
fn struct_eq_itself_on_a_sample() {
    let closure = Closure::new(6, DEPTH);
    for i in 0..closure.terms.len() {
        for j in 0..closure.terms.len() {
            assert_eq!(struct_eq(&closure.terms[i], &closure.terms[j]), closure.congruent(i, j));
        }
    }
}

#[test]
fn name_eq_agrees_with_rewrite_closure() {
    let names: Vec<RhoName> = Enumerator::new(MAX_SIZE - 1)
        .up_to(MAX_SIZE - 1)
        .into_iter()
        .map(RhoName::quote)
        .collect();
    let oracle = Oracle { cap: MAX_SIZE, depth: DEPTH };
    let mut equal = 0;
    for (i, x) in names.iter().enumerate() {
        for y in &names[i..] {
            let o = oracle.names_equivalent(x, y);
            assert_eq!(name_eq(x, y), o, "{x:?} vs {y:?}");
            equal += usize::from(o);
        }
    }
    assert!(equal > names.len(), "only reflexive pairs were equal");
}

#[test]
fn documented_examples() {
    let oracle = Oracle { cap: 12, depth: DEPTH };
    let zero = RhoName::zero();
    let dropped = RhoName::quote(RhoProc::Drop(zero.clone()));
    let a = RhoProc::input(dropped.clone(), zero.clone(), RhoProc::Nil);
    let b = RhoProc::input(zero.clone(), zero.clone(), RhoProc::Nil);
    assert!(oracle.congruent(&a, &b));
    assert!(struct_eq(&a, &b));
    let twice = RhoName::quote(RhoProc::Drop(RhoName::quote(RhoProc::Drop(zero.clone()))));
    assert!(oracle.names_equivalent(&twice, &zero));
    let l = rhopi::rho::lincr(&zero);
    let r = rhopi::rho::rincr(&zero);
    assert!(!oracle.names_equivalent(&l, &r));
    assert!(!name_eq(&l, &r));
}
