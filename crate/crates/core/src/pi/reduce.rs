//! Substitution, reduction and barbs for the π-calculus.

use std::collections::BTreeSet;

use super::canon::{flatten_region, pi_canon, rename_apart};
use super::term::{atoms_in_order, free_atoms, FreshAtoms, PiName, PiProc};
use crate::rho::term::Barb;

/// Capture-avoiding `p{new/old}` on atoms.
pub fn pi_subst(p: &PiProc, new: &PiName, old: &PiName) -> PiProc {
    let mut fresh = FreshAtoms::above(&PiProc::par([
        p.clone(),
        PiProc::Output(new.clone(), old.clone()),
    ]));
    subst_in(p, new, old, &mut fresh)
}

fn subst_in(p: &PiProc, new: &PiName, old: &PiName, fresh: &mut FreshAtoms) -> PiProc {
    let n = |x: &PiName| if x == old { new.clone() } else { x.clone() };
    // re-bind `y` in `b`, renaming it when it would capture `new`
    let bind = |y: &PiName, b: &PiProc, fresh: &mut FreshAtoms| -> (PiName, PiProc) {
        if y == old {
            (y.clone(), b.clone())
        } else if y == new {
            let z = fresh.fresh();
            let renamed = subst_in(b, &z, y, fresh);
            (z, subst_in(&renamed, new, old, fresh))
        } else {
            (y.clone(), subst_in(b, new, old, fresh))
        }
    };
    match p {
        PiProc::Nil => PiProc::Nil,
        PiProc::Output(x, y) => PiProc::Output(n(x), n(y)),
        PiProc::Input(x, y, b) => {
            let subject = n(x);
            let (y, b) = bind(y, b, fresh);
            PiProc::Input(subject, y, Box::new(b))
        }
        PiProc::New(x, b) => {
            let (x, b) = bind(x, b, fresh);
            PiProc::New(x, Box::new(b))
        }
        PiProc::Repl(b) => PiProc::Repl(Box::new(subst_in(b, new, old, fresh))),
        PiProc::Par(ps) => PiProc::Par(ps.iter().map(|q| subst_in(q, new, old, fresh)).collect()),
    }
}

/// Canonical one-step reducts, sorted and deduplicated.
///
/// Each top-level replication may be unfolded once to supply one or both
/// partners of a communication.
pub fn pi_step(p: &PiProc) -> Vec<PiProc> {
    let mut fresh = FreshAtoms::above(p);
    let named = rename_apart(p, &mut Vec::new(), &mut fresh);
    let mut binders = Vec::new();
    let mut leaves = Vec::new();
    flatten_region(&named, &mut binders, &mut leaves);

    let mut out = BTreeSet::new();
    fire_all(&binders, &leaves, 0, &mut out);
    for leaf in &leaves {
        let PiProc::Repl(body) = leaf else { continue };
        let copy = rename_apart(body, &mut Vec::new(), &mut fresh);
        let mut bs = binders.clone();
        let mut ls = leaves.clone();
        flatten_region(&copy, &mut bs, &mut ls);
        // only communications that consume part of the unfolded copy
        fire_all(&bs, &ls, leaves.len(), &mut out);
    }
    out.into_iter().collect()
}

/// Fire every input/output pair where at least one partner has index
/// `>= from_copy` (or any pair when `from_copy` is 0).
fn fire_all(binders: &[PiName], leaves: &[PiProc], from_copy: usize, out: &mut BTreeSet<PiProc>) {
    for (i, a) in leaves.iter().enumerate() {
        let PiProc::Input(x, y, body) = a else { continue };
        for (j, b) in leaves.iter().enumerate() {
            let PiProc::Output(x2, z) = b else { continue };
            if x != x2 || x.as_atom().is_none() {
                continue;
            }
            if from_copy > 0 && i < from_copy && j < from_copy {
                continue;
            }
            let cont = pi_subst(body, z, y);
            let rest = leaves
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, l)| l.clone())
                .chain(std::iter::once(cont));
            let whole = binders
                .iter()
                .rev()
                .fold(PiProc::par(rest), |acc, b| PiProc::New(b.clone(), Box::new(acc)));
            out.insert(pi_canon(&whole));
        }
    }
}

/// Strong barbs over `restrict`: unguarded prefixes whose subject is an atom
/// in `restrict` and not captured by an enclosing restriction.
pub fn pi_barbs(p: &PiProc, restrict: &BTreeSet<PiName>) -> BTreeSet<Barb<PiName>> {
    fn go(p: &PiProc, bound: &mut Vec<PiName>, restrict: &BTreeSet<PiName>, out: &mut BTreeSet<Barb<PiName>>) {
        let visible = |x: &PiName, bound: &Vec<PiName>| restrict.contains(x) && !bound.contains(x);
        match p {
            PiProc::Nil => {}
            PiProc::Output(x, _) => {
                if visible(x, bound) {
                    out.insert(Barb::output(x.clone()));
                }
            }
            PiProc::Input(x, _, _) => {
                if visible(x, bound) {
                    out.insert(Barb::input(x.clone()));
                }
            }
            PiProc::New(x, b) => {
                bound.push(x.clone());
                go(b, bound, restrict, out);
                bound.pop();
            }
            PiProc::Repl(b) => go(b, bound, restrict, out),
            PiProc::Par(ps) => ps.iter().for_each(|q| go(q, bound, restrict, out)),
        }
    }
    let mut out = BTreeSet::new();
    go(p, &mut Vec::new(), restrict, &mut out);
    out
}

/// Free atoms as a restriction set.
pub fn pi_free_names(p: &PiProc) -> BTreeSet<PiName> {
    free_atoms(p).into_iter().map(PiName::Atom).collect()
}

/// An atom not occurring in `p`, based on `hint`.
pub fn pi_fresh_atom(p: &PiProc, hint: &str) -> String {
    let used = atoms_in_order(p);
    if !used.iter().any(|a| a == hint) {
        return hint.to_string();
    }
    (0..)
        .map(|k| format!("{hint}{k}"))
        .find(|c| !used.contains(c))
        .expect("infinitely many candidates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::canon::pi_struct_eq;

    fn o(x: &str, y: &str) -> PiProc {
        PiProc::output(x, y)
    }

    fn atoms(xs: &[&str]) -> BTreeSet<PiName> {
        xs.iter().map(|x| PiName::atom(x)).collect()
    }

    #[test]
    fn simple_communication() {
        let p = pi_canon(&PiProc::par([o("a", "b"), PiProc::input("a", "x", o("x", "c"))]));
        let next = pi_step(&p);
        assert_eq!(next, vec![pi_canon(&o("b", "c"))]);
    }

    #[test]
    fn restricted_channel_communicates() {
        let p = pi_canon(&PiProc::new_name(
            "k",
            PiProc::par([o("k", "b"), PiProc::input("k", "x", o("x", "c"))]),
        ));
        assert_eq!(pi_step(&p), vec![pi_canon(&o("b", "c"))]);
    }

    #[test]
    fn extruded_name_stays_private() {
        // (νk a!k) | a?(x).x!c  -->  νk k!c
        let p = pi_canon(&PiProc::par([
            PiProc::new_name("k", o("a", "k")),
            PiProc::input("a", "x", o("x", "c")),
        ]));
        let next = pi_step(&p);
        assert_eq!(next.len(), 1);
        assert!(pi_struct_eq(&next[0], &PiProc::new_name("k", o("k", "c"))));
        assert!(pi_barbs(&next[0], &atoms(&["k", "c"])).is_empty());
    }

    #[test]
    fn replication_unfolds() {
        let server = PiProc::repl(PiProc::input("a", "x", o("x", "c")));
        let p = pi_canon(&PiProc::par([server.clone(), o("a", "b")]));
        let next = pi_step(&p);
        assert_eq!(next, vec![pi_canon(&PiProc::par([server, o("b", "c")]))]);
    }

    #[test]
    fn replicated_output_feeds_input() {
        let p = pi_canon(&PiProc::par([
            PiProc::repl(o("a", "b")),
            PiProc::input("a", "x", o("x", "x")),
        ]));
        let next = pi_step(&p);
        assert_eq!(
            next,
            vec![pi_canon(&PiProc::par([PiProc::repl(o("a", "b")), o("b", "b")]))]
        );
    }

    #[test]
    fn substitution_avoids_capture() {
        let p = PiProc::new_name("b", o("a", "b"));
        let out = pi_subst(&p, &PiName::atom("b"), &PiName::atom("a"));
        assert!(pi_struct_eq(&out, &PiProc::new_name("c", o("b", "c"))));
    }

    #[test]
    fn barbs() {
        let p = PiProc::par([
            o("a", "b"),
            PiProc::input("c", "x", PiProc::Nil),
            PiProc::new_name("d", o("d", "a")),
        ]);
        let bs = pi_barbs(&p, &atoms(&["a", "c", "d"]));
        assert_eq!(
            bs,
            BTreeSet::from([Barb::output(PiName::atom("a")), Barb::input(PiName::atom("c"))])
        );
    }
}
