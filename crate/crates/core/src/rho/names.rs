//! Static name construction (increments, composition), quote depth,
//! namespace membership, freshness.

use std::collections::BTreeSet;

use super::canon::{canon_name, canon_proc, name_eq};
use super::term::{NamespaceScheme, RhoName, RhoProc};

/// Left increment `@(x!(0))`.
pub fn lincr(x: &RhoName) -> RhoName {
    canon_name(&RhoName::quote(RhoProc::lift(x.clone(), RhoProc::Nil)))
}

/// Right increment `@(x?(@0).0)`.
pub fn rincr(x: &RhoName) -> RhoName {
    canon_name(&RhoName::quote(RhoProc::input(
        x.clone(),
        RhoName::zero(),
        RhoProc::Nil,
    )))
}

/// Composition `@(x!(0) | y?(@0).0)`.
pub fn ncomp(x: &RhoName, y: &RhoName) -> RhoName {
    canon_name(&RhoName::quote(RhoProc::par([
        RhoProc::lift(x.clone(), RhoProc::Nil),
        RhoProc::input(y.clone(), RhoName::zero(), RhoProc::Nil),
    ])))
}

/// `k`-fold left increment.
pub fn lincr_n(x: &RhoName, k: usize) -> RhoName {
    (0..k).fold(canon_name(x), |acc, _| lincr(&acc))
}

/// Left-associated iterated composition: `x^1 = x`, `x^(k+1) = x^k . x`.
pub fn ncomp_pow(x: &RhoName, k: usize) -> RhoName {
    let x = canon_name(x);
    (1..k.max(1)).fold(x.clone(), |acc, _| ncomp(&acc, &x))
}

pub fn quote_depth(x: &RhoName) -> usize {
    match canon_name(x) {
        RhoName::Bound(_) => 0,
        RhoName::Quote(body) => 1 + depth_of_canonical(&body),
    }
}

pub fn quote_depth_proc(p: &RhoProc) -> usize {
    depth_of_canonical(&canon_proc(p))
}

fn depth_of_canonical(p: &RhoProc) -> usize {
    free_names_canonical(p)
        .iter()
        .map(|x| match x {
            RhoName::Quote(b) => 1 + depth_of_canonical(b),
            RhoName::Bound(_) => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Free names, each in canonical form.
pub fn free_names(p: &RhoProc) -> BTreeSet<RhoName> {
    free_names_canonical(&canon_proc(p))
}

fn free_names_canonical(p: &RhoProc) -> BTreeSet<RhoName> {
    let mut out = BTreeSet::new();
    collect_free(p, &mut out);
    out
}

// Binders are markers in canonical form, so every non-marker name position
// is free.
fn collect_free(p: &RhoProc, out: &mut BTreeSet<RhoName>) {
    let add = |x: &RhoName, out: &mut BTreeSet<RhoName>| {
        if let RhoName::Quote(_) = x {
            out.insert(x.clone());
        }
    };
    match p {
        RhoProc::Nil => {}
        RhoProc::Drop(x) => add(x, out),
        RhoProc::Lift(x, b) => {
            add(x, out);
            collect_free(b, out);
        }
        RhoProc::Input(x, _, b) => {
            add(x, out);
            collect_free(b, out);
        }
        RhoProc::Par(ps) => ps.iter().for_each(|q| collect_free(q, out)),
    }
}

/// All names at name positions (free and bound) of a user-level term,
/// canonicalized. Markers are skipped.
pub fn all_names(p: &RhoProc) -> BTreeSet<RhoName> {
    fn go(p: &RhoProc, out: &mut BTreeSet<RhoName>) {
        let mut add = |x: &RhoName| {
            if let RhoName::Quote(_) = x {
                out.insert(canon_name(x));
            }
        };
        match p {
            RhoProc::Nil => {}
            RhoProc::Drop(x) => add(x),
            RhoProc::Lift(x, b) => {
                add(x);
                go(b, out);
            }
            RhoProc::Input(x, y, b) => {
                add(x);
                add(y);
                go(b, out);
            }
            RhoProc::Par(ps) => ps.iter().for_each(|q| go(q, out)),
        }
    }
    let mut out = BTreeSet::new();
    go(p, &mut out);
    out
}

pub fn fresh_for(x: &RhoName, p: &RhoProc) -> bool {
    let x = canon_name(x);
    all_names(p).iter().all(|n| *n != x)
}

/// Deterministic fresh name: the quote of `Π x!(0)` over `avoid`,
/// left-incremented until it clashes with nothing in `avoid`.
pub fn gen_fresh<'a>(avoid: impl IntoIterator<Item = &'a RhoName>) -> RhoName {
    let avoid: BTreeSet<RhoName> = avoid.into_iter().map(canon_name).collect();
    let seed = RhoProc::par(avoid.iter().map(|x| RhoProc::lift(x.clone(), RhoProc::Nil)));
    let mut candidate = canon_name(&RhoName::quote(seed));
    while avoid.contains(&candidate) {
        candidate = lincr(&candidate);
    }
    candidate
}

/// Peel one template layer off a canonical name.
fn peel(x: &RhoName, scheme: NamespaceScheme) -> Option<Vec<RhoName>> {
    let body = x.body()?;
    match (scheme, body) {
        (NamespaceScheme::LeftIncrement, RhoProc::Lift(a, b)) if **b == RhoProc::Nil => {
            Some(vec![a.clone()])
        }
        (NamespaceScheme::RightIncrement, RhoProc::Input(a, RhoName::Bound(0), b))
            if **b == RhoProc::Nil =>
        {
            Some(vec![a.clone()])
        }
        (NamespaceScheme::Composition, RhoProc::Par(ps)) if ps.len() == 2 => {
            match (&ps[0], &ps[1]) {
                (RhoProc::Lift(a, b1), RhoProc::Input(c, RhoName::Bound(0), b2))
                    if **b1 == RhoProc::Nil && **b2 == RhoProc::Nil =>
                {
                    Some(vec![a.clone(), c.clone()])
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Is `x` (up to name equivalence) a finite iteration of `scheme`'s template
/// over `root`? Composition follows its grammar: both holes must themselves
/// be members.
pub fn ns_member(root: &RhoName, scheme: NamespaceScheme, x: &RhoName) -> bool {
    let root = canon_name(root);
    let root_depth = quote_depth(&root);
    fn go(root: &RhoName, root_depth: usize, scheme: NamespaceScheme, x: &RhoName) -> bool {
        if x == root {
            return true;
        }
        // every template layer adds at least one level of quoting
        if quote_depth(x) <= root_depth {
            return false;
        }
        match peel(x, scheme) {
            Some(parts) => parts.iter().all(|p| go(root, root_depth, scheme, p)),
            None => false,
        }
    }
    go(&root, root_depth, scheme, &canon_name(x))
}

/// Derivability `from ⤳ to`: `to` is built from the components of `from` by
/// any mix of left/right increments and compositions.
pub fn derivable(from: &[RhoName], to: &RhoName) -> bool {
    let from: Vec<RhoName> = from.iter().map(canon_name).collect();
    let min_depth = from.iter().map(quote_depth).min().unwrap_or(0);
    fn go(from: &[RhoName], min_depth: usize, x: &RhoName) -> bool {
        if from.contains(x) {
            return true;
        }
        if quote_depth(x) <= min_depth {
            return false;
        }
        NamespaceScheme::ALL.iter().any(|s| match peel(x, *s) {
            Some(parts) => parts.iter().all(|p| go(from, min_depth, p)),
            None => false,
        })
    }
    go(&from, min_depth, &canon_name(to))
}

/// Enumerate `ˡN(root)` up to `depth` iterations (root included).
pub fn enumerate_namespace(root: &RhoName, scheme: NamespaceScheme, depth: usize) -> Vec<RhoName> {
    let root = canon_name(root);
    let mut out = vec![root.clone()];
    match scheme {
        NamespaceScheme::LeftIncrement => {
            for k in 1..=depth {
                out.push(lincr_n(&root, k));
            }
        }
        NamespaceScheme::RightIncrement => {
            let mut cur = root;
            for _ in 0..depth {
                cur = rincr(&cur);
                out.push(cur.clone());
            }
        }
        NamespaceScheme::Composition => {
            for k in 2..=depth + 1 {
                out.push(ncomp_pow(&root, k));
            }
        }
    }
    out
}

/// Name equivalence is decided by canonical forms; re-exported here for
/// callers that only deal with names.
pub fn equivalent(x: &RhoName, y: &RhoName) -> bool {
    name_eq(x, y)
}
