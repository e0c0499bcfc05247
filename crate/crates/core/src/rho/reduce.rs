//! Communication on canonical terms.
//!
//! Reduction works directly on the flattened, sorted parallel multiset of a
//! canonical term, which absorbs the parallel and structural rules. A
//! top-level input's binder is the marker `Bound(0)`; instantiating it
//! shifts the levels of the remaining markers down by one and shifts the
//! markers of a dropped-in process up to the depth where it lands.

use std::collections::BTreeSet;

use super::canon::{canon_name, canon_proc};
use super::term::{Barb, RhoName, RhoProc};

/// A communication between the input at `input_index` and the lift at
/// `lift_index` of the canonical parallel multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub input_index: usize,
    pub lift_index: usize,
    pub subject: RhoName,
}

/// All input/lift pairs with equal (canonical) subjects. `p` must be
/// canonical.
pub fn redexes(p: &RhoProc) -> Vec<Redex> {
    let comps = p.components();
    let mut out = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let RhoProc::Input(x, _, _) = c else { continue };
        for (j, d) in comps.iter().enumerate() {
            if let RhoProc::Lift(x2, _) = d {
                if x == x2 {
                    out.push(Redex {
                        input_index: i,
                        lift_index: j,
                        subject: x.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Fire one redex of canonical `p`.
pub fn fire(p: &RhoProc, redex: &Redex) -> RhoProc {
    let comps = p.components();
    let RhoProc::Input(_, binder, body) = comps[redex.input_index] else {
        panic!("redex input index does not point at an input");
    };
    let RhoProc::Lift(_, lifted) = comps[redex.lift_index] else {
        panic!("redex lift index does not point at a lift");
    };
    debug_assert_eq!(*binder, RhoName::Bound(0));
    let payload = canon_name(&RhoName::Quote(std::sync::Arc::new((**lifted).clone())));
    let dropped = match &payload {
        RhoName::Quote(b) => (**b).clone(),
        RhoName::Bound(_) => RhoProc::Drop(payload.clone()),
    };
    let continuation = instantiate(body, 1, &payload, &dropped);
    let rest = comps
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != redex.input_index && *k != redex.lift_index)
        .map(|(_, c)| (*c).clone());
    canon_proc(&RhoProc::par(rest.chain(std::iter::once(continuation))))
}

/// One-step reducts, deduplicated and sorted. `p` must be canonical.
pub fn step(p: &RhoProc) -> Vec<RhoProc> {
    let out: BTreeSet<RhoProc> = redexes(p).iter().map(|r| fire(p, r)).collect();
    out.into_iter().collect()
}

/// One-step reducts paired with the subject they communicated on.
pub fn step_labelled(p: &RhoProc) -> Vec<(RhoName, RhoProc)> {
    let out: BTreeSet<(RhoName, RhoProc)> = redexes(p)
        .iter()
        .map(|r| (r.subject.clone(), fire(p, r)))
        .collect();
    out.into_iter().collect()
}

fn map_marker(x: &RhoName, payload: &RhoName) -> RhoName {
    match x {
        RhoName::Bound(0) => payload.clone(),
        RhoName::Bound(k) => RhoName::Bound(k - 1),
        q => q.clone(),
    }
}

/// Replace marker 0 by `payload` (and its drops by `dropped`) in a body whose
/// own binders start at level `depth`.
fn instantiate(p: &RhoProc, depth: usize, payload: &RhoName, dropped: &RhoProc) -> RhoProc {
    match p {
        RhoProc::Nil => RhoProc::Nil,
        RhoProc::Drop(RhoName::Bound(0)) => shift(dropped, depth - 1),
        RhoProc::Drop(x) => RhoProc::Drop(map_marker(x, payload)),
        RhoProc::Lift(x, b) => {
            RhoProc::lift(map_marker(x, payload), instantiate(b, depth, payload, dropped))
        }
        RhoProc::Input(x, y, b) => RhoProc::input(
            map_marker(x, payload),
            map_marker(y, payload),
            instantiate(b, depth + 1, payload, dropped),
        ),
        RhoProc::Par(ps) => RhoProc::Par(
            ps.iter()
                .map(|q| instantiate(q, depth, payload, dropped))
                .collect(),
        ),
    }
}

/// Raise every marker outside quotes by `delta`.
fn shift(p: &RhoProc, delta: usize) -> RhoProc {
    if delta == 0 {
        return p.clone();
    }
    let sh = |x: &RhoName| match x {
        RhoName::Bound(k) => RhoName::Bound(k + delta),
        q => q.clone(),
    };
    match p {
        RhoProc::Nil => RhoProc::Nil,
        RhoProc::Drop(x) => RhoProc::Drop(sh(x)),
        RhoProc::Lift(x, b) => RhoProc::lift(sh(x), shift(b, delta)),
        RhoProc::Input(x, y, b) => RhoProc::input(sh(x), sh(y), shift(b, delta)),
        RhoProc::Par(ps) => RhoProc::Par(ps.iter().map(|q| shift(q, delta)).collect()),
    }
}

/// Strong barbs of canonical `p` restricted to `restrict`: subjects of
/// top-level lifts (output) and inputs (input).
pub fn barbs(p: &RhoProc, restrict: &BTreeSet<RhoName>) -> BTreeSet<Barb<RhoName>> {
    let mut out = BTreeSet::new();
    for c in p.components() {
        match c {
            RhoProc::Lift(x, _) if restrict.contains(x) => {
                out.insert(Barb::output(x.clone()));
            }
            RhoProc::Input(x, _, _) if restrict.contains(x) => {
                out.insert(Barb::input(x.clone()));
            }
            _ => {}
        }
    }
    out
}

/// Canonicalize a restriction set once.
pub fn canon_restrict<'a>(names: impl IntoIterator<Item = &'a RhoName>) -> BTreeSet<RhoName> {
    names.into_iter().map(canon_name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::names::{lincr, rincr};
    use crate::rho::term::copier;

    fn zero() -> RhoName {
        RhoName::zero()
    }

    fn c(p: RhoProc) -> RhoProc {
        canon_proc(&p)
    }

    #[test]
    fn single_redex() {
        let y = lincr(&zero());
        let p = c(RhoProc::par([
            RhoProc::input(zero(), y, RhoProc::Nil),
            RhoProc::lift(zero(), RhoProc::Nil),
        ]));
        assert_eq!(redexes(&p).len(), 1);
        assert_eq!(step(&p), vec![RhoProc::Nil]);
    }

    #[test]
    fn equivalent_subjects_communicate() {
        let y = lincr(&zero());
        let p = c(RhoProc::par([
            RhoProc::input(RhoName::quote(RhoProc::Drop(zero())), y, RhoProc::Nil),
            RhoProc::lift(zero(), RhoProc::Nil),
        ]));
        assert_eq!(redexes(&p).len(), 1);
    }

    #[test]
    fn no_input_no_redex() {
        let p = c(RhoProc::par([
            RhoProc::lift(zero(), RhoProc::Nil),
            RhoProc::lift(lincr(&zero()), RhoProc::Nil),
        ]));
        assert!(redexes(&p).is_empty());
        assert!(step(&RhoProc::Nil).is_empty());
    }

    #[test]
    fn drop_runs_received_process() {
        let x1 = lincr(&zero());
        let y = rincr(&zero());
        let p = c(RhoProc::par([
            RhoProc::input(zero(), y.clone(), RhoProc::Drop(y)),
            RhoProc::lift(zero(), RhoProc::lift(x1.clone(), RhoProc::Nil)),
        ]));
        assert_eq!(step(&p), vec![RhoProc::lift(x1, RhoProc::Nil)]);
    }

    #[test]
    fn received_name_in_subject_position() {
        let y = lincr(&zero());
        let p = c(RhoProc::par([
            RhoProc::input(zero(), y.clone(), RhoProc::lift(y, RhoProc::Nil)),
            RhoProc::lift(zero(), RhoProc::Nil),
        ]));
        assert_eq!(step(&p), vec![RhoProc::lift(zero(), RhoProc::Nil)]);
    }

    #[test]
    fn nested_binders_are_relevelled() {
        // @0?(y).@1?(w).(*y | w!(0)) | @0!(Q)
        let one = lincr(&zero());
        let y = rincr(&zero());
        let w = rincr(&rincr(&zero()));
        let q = RhoProc::lift(one.clone(), RhoProc::Nil);
        let p = c(RhoProc::par([
            RhoProc::input(
                zero(),
                y.clone(),
                RhoProc::input(
                    one.clone(),
                    w.clone(),
                    RhoProc::par([RhoProc::Drop(y), RhoProc::lift(w.clone(), RhoProc::Nil)]),
                ),
            ),
            RhoProc::lift(zero(), q.clone()),
        ]));
        let expected = c(RhoProc::input(
            one,
            w.clone(),
            RhoProc::par([q, RhoProc::lift(w, RhoProc::Nil)]),
        ));
        assert_eq!(step(&p), vec![expected]);
    }

    #[test]
    fn dropped_process_binders_are_shifted() {
        // @0?(y).@1?(w).*y | @0!(@2?(u).*u)  --> @1?(w).@2?(u).*u
        let one = lincr(&zero());
        let two = lincr(&one);
        let y = rincr(&zero());
        let w = rincr(&one);
        let u = rincr(&two);
        let q = RhoProc::input(two.clone(), u.clone(), RhoProc::Drop(u.clone()));
        let p = c(RhoProc::par([
            RhoProc::input(zero(), y.clone(), RhoProc::input(one.clone(), w.clone(), RhoProc::Drop(y))),
            RhoProc::lift(zero(), q.clone()),
        ]));
        let expected = c(RhoProc::input(one, w, q));
        assert_eq!(step(&p), vec![expected]);
    }

    #[test]
    fn copier_loops_on_itself() {
        let x = zero();
        let d = copier(&x);
        let p = c(RhoProc::par([d.clone(), RhoProc::lift(x.clone(), d.clone())]));
        let next = step(&p);
        assert_eq!(next.len(), 1);
        let again = step(&next[0]);
        assert_eq!(again, next);
    }

    #[test]
    fn barbs_respect_restriction_and_guards() {
        let x1 = lincr(&zero());
        let y = rincr(&zero());
        let p = c(RhoProc::par([
            RhoProc::lift(zero(), RhoProc::Nil),
            RhoProc::input(x1.clone(), y.clone(), RhoProc::Nil),
        ]));
        let both = canon_restrict([&zero(), &x1]);
        assert_eq!(
            barbs(&p, &both),
            BTreeSet::from([Barb::output(zero()), Barb::input(x1.clone())])
        );
        let only = canon_restrict([&x1]);
        assert!(barbs(&c(RhoProc::lift(zero(), RhoProc::Nil)), &only).is_empty());
        let guarded = c(RhoProc::input(zero(), y, RhoProc::lift(x1, RhoProc::Nil)));
        assert!(barbs(&guarded, &only).is_empty());
    }
}
