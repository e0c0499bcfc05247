//! Canonical forms for structural congruence with scope extrusion.
//!
//! Binders are first renamed apart. Each scope region is then prenexed:
//! restrictions are pulled out of parallel compositions, unused ones are
//! discarded, a restriction used by a single component is pushed into it,
//! and the rest are grouped into connected components by shared names.
//! Finally binders become level markers, parallel components are sorted and
//! each chain of restrictions takes its least ordering.

use std::collections::{BTreeMap, BTreeSet};

use super::term::{free_atoms, FreshAtoms, PiName, PiProc};

/// Most restrictions in one chain whose orderings are searched exhaustively.
pub const MAX_PERMUTED_CHAIN: usize = 7;

pub fn pi_canon(p: &PiProc) -> PiProc {
    let mut fresh = FreshAtoms::above(p);
    let named = rename_apart(p, &mut Vec::new(), &mut fresh);
    let nf = normalize(&named);
    to_markers(&nf, &mut Vec::new(), 0)
}

pub fn pi_struct_eq(p: &PiProc, q: &PiProc) -> bool {
    pi_canon(p) == pi_canon(q)
}

/// Replace every binder (atom or marker) with a distinct reserved atom.
pub(crate) fn rename_apart(
    p: &PiProc,
    env: &mut Vec<(PiName, PiName)>,
    fresh: &mut FreshAtoms,
) -> PiProc {
    let look = |x: &PiName, env: &Vec<(PiName, PiName)>| {
        env.iter()
            .rev()
            .find(|(k, _)| k == x)
            .map_or_else(|| x.clone(), |(_, v)| v.clone())
    };
    match p {
        PiProc::Nil => PiProc::Nil,
        PiProc::Output(x, y) => PiProc::Output(look(x, env), look(y, env)),
        PiProc::Input(x, y, b) => {
            let subject = look(x, env);
            let a = fresh.fresh();
            env.push((y.clone(), a.clone()));
            let body = rename_apart(b, env, fresh);
            env.pop();
            PiProc::Input(subject, a, Box::new(body))
        }
        PiProc::New(x, b) => {
            let a = fresh.fresh();
            env.push((x.clone(), a.clone()));
            let body = rename_apart(b, env, fresh);
            env.pop();
            PiProc::New(a, Box::new(body))
        }
        PiProc::Repl(b) => PiProc::Repl(Box::new(rename_apart(b, env, fresh))),
        PiProc::Par(ps) => PiProc::Par(ps.iter().map(|q| rename_apart(q, env, fresh)).collect()),
    }
}

/// Split a scope region into its restricted names and its prefixed leaves.
/// Leaves are returned as they are; callers normalize them if needed.
pub(crate) fn flatten_region(p: &PiProc, binders: &mut Vec<PiName>, leaves: &mut Vec<PiProc>) {
    match p {
        PiProc::Nil => {}
        PiProc::Par(ps) => ps.iter().for_each(|q| flatten_region(q, binders, leaves)),
        PiProc::New(x, b) => {
            binders.push(x.clone());
            flatten_region(b, binders, leaves);
        }
        leaf => leaves.push(leaf.clone()),
    }
}

/// Replace binder markers with reserved atoms (`%k` for level `k`), giving
/// a named term with the same canonical form.
pub fn pi_named(p: &PiProc) -> PiProc {
    let n = |x: &PiName| match x {
        PiName::Bound(k) => PiName::Atom(format!("{}{k}", super::term::RESERVED_PREFIX)),
        a => a.clone(),
    };
    match p {
        PiProc::Nil => PiProc::Nil,
        PiProc::Output(x, y) => PiProc::Output(n(x), n(y)),
        PiProc::Input(x, y, b) => PiProc::Input(n(x), n(y), Box::new(pi_named(b))),
        PiProc::New(x, b) => PiProc::New(n(x), Box::new(pi_named(b))),
        PiProc::Repl(b) => PiProc::Repl(Box::new(pi_named(b))),
        PiProc::Par(ps) => PiProc::Par(ps.iter().map(pi_named).collect()),
    }
}

fn wrap(binders: &[PiName], body: PiProc) -> PiProc {
    binders
        .iter()
        .rev()
        .fold(body, |acc, b| PiProc::New(b.clone(), Box::new(acc)))
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Normalize a term whose binders are pairwise distinct.
fn normalize(p: &PiProc) -> PiProc {
    let mut binders = Vec::new();
    let mut raw = Vec::new();
    flatten_region(p, &mut binders, &mut raw);
    let leaves: Vec<PiProc> = raw
        .iter()
        .map(|l| match l {
            PiProc::Input(x, y, b) => PiProc::Input(x.clone(), y.clone(), Box::new(normalize(b))),
            PiProc::Repl(b) => PiProc::Repl(Box::new(normalize(b))),
            other => other.clone(),
        })
        .collect();
    let fns: Vec<BTreeSet<String>> = leaves.iter().map(free_atoms).collect();
    let n = leaves.len();
    let mut own: Vec<Vec<PiName>> = vec![Vec::new(); n];
    let mut shared: Vec<(PiName, Vec<usize>)> = Vec::new();
    for b in binders {
        let name = b.as_atom().expect("renamed binders are atoms").to_string();
        let users: Vec<usize> = (0..n).filter(|&i| fns[i].contains(&name)).collect();
        match users.len() {
            0 => {}
            1 => own[users[0]].push(b),
            _ => shared.push((b, users)),
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for (_, users) in &shared {
        let r = find(&mut parent, users[0]);
        for &u in &users[1..] {
            let ru = find(&mut parent, u);
            parent[ru] = r;
        }
    }
    let mut groups: BTreeMap<usize, (Vec<PiName>, Vec<usize>)> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().1.push(i);
    }
    for (b, users) in shared {
        let r = find(&mut parent, users[0]);
        groups.get_mut(&r).expect("group exists").0.push(b);
    }
    let mut leaves: Vec<Option<PiProc>> = leaves.into_iter().map(Some).collect();
    let mut items = Vec::new();
    for (_, (bs, members)) in groups {
        let wrapped: Vec<PiProc> = members
            .iter()
            .map(|&i| wrap(&own[i], leaves[i].take().expect("leaf used once")))
            .collect();
        if bs.is_empty() {
            items.extend(wrapped);
        } else {
            items.push(wrap(&bs, PiProc::par(wrapped)));
        }
    }
    PiProc::par(items)
}

fn marker(x: &PiName, env: &[(PiName, usize)]) -> PiName {
    env.iter()
        .rev()
        .find(|(k, _)| k == x)
        .map_or_else(|| x.clone(), |(_, l)| PiName::Bound(*l))
}

fn flatten_par(p: PiProc, out: &mut Vec<PiProc>) {
    match p {
        PiProc::Par(ps) => ps.into_iter().for_each(|q| flatten_par(q, out)),
        PiProc::Nil => {}
        q => out.push(q),
    }
}

fn to_markers(p: &PiProc, env: &mut Vec<(PiName, usize)>, depth: usize) -> PiProc {
    match p {
        PiProc::Nil => PiProc::Nil,
        PiProc::Output(x, y) => PiProc::Output(marker(x, env), marker(y, env)),
        PiProc::Input(x, y, b) => {
            let subject = marker(x, env);
            env.push((y.clone(), depth));
            let body = to_markers(b, env, depth + 1);
            env.pop();
            PiProc::Input(subject, PiName::Bound(depth), Box::new(body))
        }
        PiProc::Repl(b) => PiProc::Repl(Box::new(to_markers(b, env, depth))),
        PiProc::Par(ps) => {
            let mut out = Vec::new();
            for q in ps {
                flatten_par(to_markers(q, env, depth), &mut out);
            }
            out.sort();
            PiProc::par(out)
        }
        PiProc::New(..) => {
            let mut chain = Vec::new();
            let mut body = p;
            while let PiProc::New(x, b) = body {
                chain.push(x.clone());
                body = b;
            }
            let k = chain.len();
            let orders: Vec<Vec<usize>> = if k <= MAX_PERMUTED_CHAIN {
                permutations(k)
            } else {
                vec![(0..k).collect()]
            };
            orders
                .into_iter()
                .map(|order| {
                    for (lvl, &i) in order.iter().enumerate() {
                        env.push((chain[i].clone(), depth + lvl));
                    }
                    let inner = to_markers(body, env, depth + k);
                    env.truncate(env.len() - k);
                    (0..k).rev().fold(inner, |acc, lvl| {
                        PiProc::New(PiName::Bound(depth + lvl), Box::new(acc))
                    })
                })
                .min()
                .expect("at least one ordering")
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn go(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            go(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    go(0, &mut cur, &mut out);
    out
}
