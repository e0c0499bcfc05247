//! Divergence probing on explored graphs.
//!
//! Rules, tried in order on a bounded exploration:
//! 1. a cycle in the explored graph: Diverges;
//! 2. no truncation: Terminates;
//! 3. pumping: some state's top-level components strictly contain those of
//!    one of its BFS ancestors, so `s →+ s | R` and the steps repeat
//!    forever: Diverges;
//! 4. recurrence: along one BFS path, [`RECURRENCES`] states share the
//!    same multiset of top-level (kind, subject) prefixes: Diverges. This
//!    rule is a heuristic and can be fooled by terms that repeat their
//!    prefix shape a bounded number of times.
//!
//! Otherwise Unknown.

use serde::{Deserialize, Serialize};

use crate::lts::{explore, Bounds, Calculus, Lts};

/// States with an identical prefix shape needed on one path for rule 4.
pub const RECURRENCES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Divergence {
    Diverges,
    Terminates,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceRule {
    Cycle,
    Exhausted,
    Pumping,
    Recurrence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub verdict: Divergence,
    pub rule: Option<DivergenceRule>,
    pub states: usize,
    pub truncated: bool,
    pub bounds: Bounds,
}

pub fn divergence_probe<C: Calculus>(p: &C::Term, bounds: Bounds) -> DivergenceReport {
    divergence_on::<C>(&explore::<C>(p, bounds))
}

pub fn divergence_on<C: Calculus>(lts: &Lts<C::Term>) -> DivergenceReport {
    let done = |verdict, rule| DivergenceReport {
        verdict,
        rule,
        states: lts.len(),
        truncated: lts.truncated,
        bounds: lts.bounds,
    };
    if lts.has_cycle() {
        return done(Divergence::Diverges, Some(DivergenceRule::Cycle));
    }
    if !lts.truncated {
        return done(Divergence::Terminates, Some(DivergenceRule::Exhausted));
    }
    if pumping::<C>(lts) {
        return done(Divergence::Diverges, Some(DivergenceRule::Pumping));
    }
    if recurrence::<C>(lts) {
        return done(Divergence::Diverges, Some(DivergenceRule::Recurrence));
    }
    done(Divergence::Unknown, None)
}

fn sorted_components<C: Calculus>(t: &C::Term) -> Vec<C::Term> {
    let mut cs = C::components(t);
    cs.sort();
    cs
}

/// Is sorted `a` a strict sub-multiset of sorted `b`?
fn strict_submultiset<T: Ord>(a: &[T], b: &[T]) -> bool {
    if a.len() >= b.len() {
        return false;
    }
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn pumping<C: Calculus>(lts: &Lts<C::Term>) -> bool {
    let comps: Vec<Vec<C::Term>> = lts.states.iter().map(sorted_components::<C>).collect();
    (0..lts.len()).any(|t| {
        let mut cur = lts.parent[t];
        while let Some(s) = cur {
            if strict_submultiset(&comps[s], &comps[t]) {
                return true;
            }
            cur = lts.parent[s];
        }
        false
    })
}

fn recurrence<C: Calculus>(lts: &Lts<C::Term>) -> bool {
    let shapes: Vec<Vec<(u8, C::Name)>> = lts
        .states
        .iter()
        .map(|s| {
            let mut sh = C::shape(s);
            sh.sort();
            sh
        })
        .collect();
    // deepest states first: their paths are the longest
    (0..lts.len()).rev().any(|t| {
        if shapes[t].is_empty() {
            return false;
        }
        let path = lts.path_to(t);
        let mut counts: std::collections::HashMap<&Vec<(u8, C::Name)>, usize> =
            std::collections::HashMap::new();
        path.iter().any(|&s| {
            let c = counts.entry(&shapes[s]).or_insert(0);
            *c += 1;
            *c >= RECURRENCES
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Pi, Rho};
    use crate::pi::PiProc;
    use crate::rho::names::lincr;
    use crate::rho::term::{copier, RhoName, RhoProc};

    #[test]
    fn nil_terminates() {
        let r = divergence_probe::<Rho>(&RhoProc::Nil, Bounds::default());
        assert_eq!(r.verdict, Divergence::Terminates);
    }

    #[test]
    fn copier_diverges_by_cycle() {
        let x = RhoName::zero();
        let p = RhoProc::par([copier(&x), RhoProc::lift(x.clone(), copier(&x))]);
        let r = divergence_probe::<Rho>(&p, Bounds::default());
        assert_eq!((r.verdict, r.rule), (Divergence::Diverges, Some(DivergenceRule::Cycle)));
    }

    #[test]
    fn growing_copier_diverges_by_pumping() {
        // D(x) | x!(D(x) | y!(0)) spawns another y!(0) each round
        let x = RhoName::zero();
        let y = lincr(&x);
        let p = RhoProc::par([
            copier(&x),
            RhoProc::lift(x.clone(), RhoProc::par([copier(&x), RhoProc::lift(y, RhoProc::Nil)])),
        ]);
        let r = divergence_probe::<Rho>(&p, Bounds::new(1000, 30));
        assert_eq!((r.verdict, r.rule), (Divergence::Diverges, Some(DivergenceRule::Pumping)));
    }

    #[test]
    fn pi_replicated_ping_pong_cycles() {
        let p = PiProc::par([
            PiProc::repl(PiProc::input("x", "y", PiProc::output("x", "y"))),
            PiProc::output("x", "a"),
        ]);
        let r = divergence_probe::<Pi>(&p, Bounds::default());
        assert_eq!(r.verdict, Divergence::Diverges);
    }

    #[test]
    fn submultiset() {
        assert!(strict_submultiset(&[1, 2], &[1, 2, 2]));
        assert!(!strict_submultiset(&[1, 2], &[1, 2]));
        assert!(!strict_submultiset(&[1, 3], &[1, 2, 2]));
    }

    #[test]
    fn legacy_replicated_nil_diverges() {
        let p = PiProc::repl(PiProc::Nil);
        let policy = crate::encode::RenamingPolicy::for_term(&p);
        let params = crate::encode::default_legacy_params(&policy).unwrap();
        let t = crate::rho::canon_proc(&crate::encode::encode_mr(&p, &params, &policy).unwrap());
        let r = divergence_probe::<Rho>(&t, Bounds::new(2000, 40));
        assert_eq!(r.verdict, Divergence::Diverges);
    }

    #[test]
    fn pi_finite_terminates() {
        let p = PiProc::par([
            PiProc::output("x", "a"),
            PiProc::input("x", "y", PiProc::output("y", "b")),
        ]);
        let r = divergence_probe::<Pi>(&p, Bounds::default());
        assert_eq!(r.verdict, Divergence::Terminates);
    }
}
