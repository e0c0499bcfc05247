//! Bounded barbed bisimulation and divergence probing.

pub mod divergence;
pub mod obs;

pub use divergence::{divergence_on, divergence_probe, Divergence, DivergenceReport, DivergenceRule};
pub use obs::{restricted_weak_barbs, restricted_weak_obs};

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Pi, Rho};
use crate::lts::{explore, render_barb, Bounds, Calculus, Lts};
use crate::pi::{PiName, PiProc};
use crate::rho::term::Barb;
use crate::rho::{RhoName, RhoProc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BisimResult {
    Bisimilar,
    NotBisimilar,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReason {
    /// Only the `left` side (or only the right) exhibits the barb.
    Barb { barb: String, left_has_it: bool },
    /// One side reaches `target`, which the other cannot match.
    Step { from_left: bool, target: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub reason: WitnessReason,
    /// Canonical terms from the moving side's root to the unmatched state.
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimVerdict {
    pub result: BisimResult,
    pub witness: Option<Witness>,
    pub bounds: Bounds,
    pub left_states: usize,
    pub right_states: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("terms and restriction set must come from the same calculus")]
    CalculusMismatch,
}

/// A disjoint union of explored graphs over one calculus.
pub struct Union<T> {
    pub states: Vec<T>,
    pub edges: Vec<Vec<usize>>,
    /// Index of each component's root.
    pub roots: Vec<usize>,
    pub truncated: Vec<bool>,
}

impl<T: Clone> Union<T> {
    pub fn new(parts: &[&Lts<T>]) -> Self {
        let mut u = Union {
            states: Vec::new(),
            edges: Vec::new(),
            roots: Vec::new(),
            truncated: Vec::new(),
        };
        for l in parts {
            let off = u.states.len();
            u.roots.push(off);
            u.truncated.push(l.truncated);
            u.states.extend(l.states.iter().cloned());
            u.edges
                .extend(l.edges.iter().map(|es| es.iter().map(|e| e + off).collect::<Vec<_>>()));
        }
        u
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

fn rank<K: Hash + Eq + Clone>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let out = keys
        .iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

/// Strongly connected components in reverse topological order, plus the
/// component index of each state.
fn sccs(edges: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(edges.len(), 0);
    for _ in 0..edges.len() {
        g.add_node(());
    }
    for (s, es) in edges.iter().enumerate() {
        for &t in es {
            g.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
        }
    }
    let comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|n| n.index()).collect())
        .collect();
    let mut of = vec![0; edges.len()];
    for (i, c) in comps.iter().enumerate() {
        for &s in c {
            of[s] = i;
        }
    }
    (comps, of)
}

/// Per-state union of `key` over everything reachable (reflexively).
fn saturate<K: Ord + Clone>(edges: &[Vec<usize>], keys: &[BTreeSet<K>]) -> Vec<BTreeSet<K>> {
    let (comps, of) = sccs(edges);
    let mut acc: Vec<BTreeSet<K>> = vec![BTreeSet::new(); comps.len()];
    // successors of a component come earlier in reverse topological order
    for (i, c) in comps.iter().enumerate() {
        let mut set = BTreeSet::new();
        for &s in c {
            set.extend(keys[s].iter().cloned());
            for &t in &edges[s] {
                if of[t] != i {
                    set.extend(acc[of[t]].iter().cloned());
                }
            }
        }
        acc[i] = set;
    }
    (0..edges.len()).map(|s| acc[of[s]].clone()).collect()
}

/// Coarsest partition compatible with `initial` such that related states
/// reach the same blocks: in one step (strong) or reflexive-transitively
/// (weak).
pub fn refine(edges: &[Vec<usize>], initial: &[usize], mode: Mode) -> Vec<usize> {
    let n = edges.len();
    let (mut block, mut count) = rank(initial);
    let scc = if mode == Mode::Weak { Some(sccs(edges)) } else { None };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = match &scc {
            None => (0..n)
                .map(|s| {
                    let mut bs: Vec<usize> = edges[s].iter().map(|&t| block[t]).collect();
                    bs.sort_unstable();
                    bs.dedup();
                    (block[s], bs)
                })
                .collect(),
            Some((comps, of)) => {
                let mut acc: Vec<FixedBitSet> = Vec::with_capacity(comps.len());
                for (i, c) in comps.iter().enumerate() {
                    let mut set = FixedBitSet::with_capacity(count);
                    for &s in c {
                        set.insert(block[s]);
                        for &t in &edges[s] {
                            if of[t] != i {
                                set.union_with(&acc[of[t]]);
                            }
                        }
                    }
                    acc.push(set);
                }
                (0..n)
                    .map(|s| (block[s], acc[of[s]].ones().collect()))
                    .collect()
            }
        };
        let (next, next_count) = rank(&sigs);
        if next_count == count {
            return block;
        }
        block = next;
        count = next_count;
    }
}

/// Blocks of a bisimulation check over a union of graphs, with the observed
/// barb sets used to seed it.
pub struct Partition<N> {
    pub block: Vec<usize>,
    pub observed: Vec<BTreeSet<Barb<N>>>,
}

pub fn partition<C: Calculus>(
    u: &Union<C::Term>,
    restrict: &BTreeSet<C::Name>,
    mode: Mode,
) -> Partition<C::Name> {
    let restrict = C::canon_restrict(restrict);
    let strong: Vec<BTreeSet<Barb<C::Name>>> =
        u.states.iter().map(|s| C::barbs(s, &restrict)).collect();
    let observed = match mode {
        Mode::Strong => strong,
        Mode::Weak => saturate(&u.edges, &strong),
    };
    let (initial, _) = rank(&observed);
    Partition {
        block: refine(&u.edges, &initial, mode),
        observed,
    }
}

pub fn barbed_bisim<C: Calculus>(
    p: &C::Term,
    q: &C::Term,
    restrict: &BTreeSet<C::Name>,
    mode: Mode,
    bounds: Bounds,
) -> BisimVerdict {
    let lp = explore::<C>(p, bounds);
    let lq = explore::<C>(q, bounds);
    bisim_on::<C>(&lp, &lq, restrict, mode)
}

/// Decide on already-explored graphs.
pub fn bisim_on<C: Calculus>(
    lp: &Lts<C::Term>,
    lq: &Lts<C::Term>,
    restrict: &BTreeSet<C::Name>,
    mode: Mode,
) -> BisimVerdict {
    let u = Union::new(&[lp, lq]);
    let part = partition::<C>(&u, restrict, mode);
    let (l, r) = (u.roots[0], u.roots[1]);
    let truncated = lp.truncated || lq.truncated;
    let mut verdict = BisimVerdict {
        result: BisimResult::Bisimilar,
        witness: None,
        bounds: lp.bounds,
        left_states: lp.len(),
        right_states: lq.len(),
        truncated,
    };
    if part.block[l] == part.block[r] {
        if truncated {
            verdict.result = BisimResult::Unknown;
        }
        return verdict;
    }
    let witness = explain::<C>(&u, &part, mode);
    // with truncation only a barb difference that more exploration cannot
    // remove is decisive
    let decisive = !truncated
        || match &witness.reason {
            WitnessReason::Barb { left_has_it, .. } => match mode {
                Mode::Strong => true,
                Mode::Weak => {
                    if *left_has_it {
                        !lq.truncated
                    } else {
                        !lp.truncated
                    }
                }
            },
            WitnessReason::Step { .. } => false,
        };
    if decisive {
        verdict.result = BisimResult::NotBisimilar;
        verdict.witness = Some(witness);
    } else {
        verdict.result = BisimResult::Unknown;
    }
    verdict
}

fn explain<C: Calculus>(u: &Union<C::Term>, part: &Partition<C::Name>, mode: Mode) -> Witness {
    let (l, r) = (u.roots[0], u.roots[1]);
    let render = |s: usize| C::render(&u.states[s]);
    let (ol, or) = (&part.observed[l], &part.observed[r]);
    if ol != or {
        let (barb, left_has_it) = match ol.difference(or).next() {
            Some(b) => (b, true),
            None => (or.difference(ol).next().expect("sets differ"), false),
        };
        return Witness {
            left: render(l),
            right: render(r),
            reason: WitnessReason::Barb {
                barb: render_barb::<C>(barb),
                left_has_it,
            },
            trace: vec![render(if left_has_it { l } else { r })],
        };
    }
    let moves = |s: usize| -> Vec<usize> {
        match mode {
            Mode::Strong => u.edges[s].clone(),
            Mode::Weak => reach(&u.edges, s),
        }
    };
    let blocks = |s: usize| -> BTreeSet<usize> { moves(s).iter().map(|&t| part.block[t]).collect() };
    let (bl, br) = (blocks(l), blocks(r));
    for (from_left, src, other) in [(true, l, &br), (false, r, &bl)] {
        for t in moves(src) {
            if !other.contains(&part.block[t]) {
                return Witness {
                    left: render(l),
                    right: render(r),
                    reason: WitnessReason::Step {
                        from_left,
                        target: render(t),
                    },
                    trace: path(&u.edges, src, t).into_iter().map(render).collect(),
                };
            }
        }
    }
    unreachable!("roots in different blocks always differ in barbs or moves")
}

fn reach(edges: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut seen = vec![false; edges.len()];
    let mut stack = vec![s];
    let mut out = Vec::new();
    seen[s] = true;
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in &edges[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out
}

fn path(edges: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &edges[x] {
            if seen.insert(y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        match parent.get(&cur) {
            Some(&p) => {
                out.push(p);
                cur = p;
            }
            None => break,
        }
    }
    out.reverse();
    out
}

/// A term of either calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTerm {
    Rho(RhoProc),
    Pi(PiProc),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRestriction {
    Rho(BTreeSet<RhoName>),
    Pi(BTreeSet<PiName>),
}

pub fn barbed_bisim_any(
    p: &AnyTerm,
    q: &AnyTerm,
    restrict: &AnyRestriction,
    mode: Mode,
    bounds: Bounds,
) -> Result<BisimVerdict, EquivError> {
    match (p, q, restrict) {
        (AnyTerm::Rho(p), AnyTerm::Rho(q), AnyRestriction::Rho(r)) => {
            Ok(barbed_bisim::<Rho>(p, q, r, mode, bounds))
        }
        (AnyTerm::Pi(p), AnyTerm::Pi(q), AnyRestriction::Pi(r)) => {
            Ok(barbed_bisim::<Pi>(p, q, r, mode, bounds))
        }
        _ => Err(EquivError::CalculusMismatch),
    }
}
