//! Bounded state-space exploration shared by both calculi.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::rho::term::Barb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_states: 100_000,
            max_depth: 200,
        }
    }
}

impl Bounds {
    pub fn new(max_states: usize, max_depth: usize) -> Self {
        Bounds { max_states, max_depth }
    }
}

/// A calculus whose canonical terms can be explored.
pub trait Calculus {
    type Term: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Name: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    const NAME: &'static str;

    fn canon(t: &Self::Term) -> Self::Term;
    /// Canonical one-step reducts of a canonical term.
    fn successors(t: &Self::Term) -> Vec<Self::Term>;
    /// Bring a restriction set into the form `barbs` expects.
    fn canon_restrict(names: &BTreeSet<Self::Name>) -> BTreeSet<Self::Name>;
    /// `restrict` must come from `canon_restrict`.
    fn barbs(t: &Self::Term, restrict: &BTreeSet<Self::Name>) -> BTreeSet<Barb<Self::Name>>;
    /// Top-level parallel components, each closed.
    fn components(t: &Self::Term) -> Vec<Self::Term>;
    /// Top-level prefixes as (kind, subject) pairs.
    fn shape(t: &Self::Term) -> Vec<(u8, Self::Name)>;
    fn render(t: &Self::Term) -> String;
    fn render_name(n: &Self::Name) -> String;
}

/// Bounded reachability graph from a canonical root (state 0).
#[derive(Clone, Debug)]
pub struct Lts<T> {
    pub states: Vec<T>,
    pub edges: Vec<Vec<usize>>,
    /// Whether the state's successor set is complete.
    pub expanded: Vec<bool>,
    pub depth: Vec<usize>,
    /// BFS tree parent (None for the root).
    pub parent: Vec<Option<usize>>,
    pub truncated: bool,
    pub bounds: Bounds,
}

impl<T: Clone + Eq + Hash + Send + Sync> Lts<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Explore from `root` using `succ` as the one-step relation.
    pub fn build<F>(root: T, bounds: Bounds, succ: F) -> Self
    where
        F: Fn(&T) -> Vec<T> + Sync,
    {
        let mut lts = Lts {
            states: vec![root.clone()],
            edges: vec![Vec::new()],
            expanded: vec![false],
            depth: vec![0],
            parent: vec![None],
            truncated: false,
            bounds,
        };
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(root, 0);
        let mut frontier = vec![0usize];
        let mut level = 0usize;
        while !frontier.is_empty() {
            let computed: Vec<Vec<T>> = frontier
                .par_iter()
                .map(|&s| succ(&lts.states[s]))
                .collect();
            let mut next = Vec::new();
            let at_limit = level >= bounds.max_depth;
            'outer: for (&s, succs) in frontier.iter().zip(computed) {
                if at_limit {
                    if !succs.is_empty() {
                        lts.truncated = true;
                    } else {
                        lts.expanded[s] = true;
                    }
                    continue;
                }
                let mut targets = Vec::with_capacity(succs.len());
                for t in succs {
                    let id = match index.get(&t) {
                        Some(&id) => id,
                        None => {
                            if lts.states.len() >= bounds.max_states {
                                lts.truncated = true;
                                lts.edges[s] = targets;
                                continue 'outer;
                            }
                            let id = lts.states.len();
                            index.insert(t.clone(), id);
                            lts.states.push(t);
                            lts.edges.push(Vec::new());
                            lts.expanded.push(false);
                            lts.depth.push(level + 1);
                            lts.parent.push(Some(s));
                            next.push(id);
                            id
                        }
                    };
                    if !targets.contains(&id) {
                        targets.push(id);
                    }
                }
                lts.edges[s] = targets;
                lts.expanded[s] = true;
            }
            frontier = next;
            level += 1;
        }
        lts
    }

    /// Reflexive-transitive reachability from `s` within the explored graph.
    pub fn reach(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![s];
        let mut out = Vec::new();
        seen[s] = true;
        while let Some(u) = stack.pop() {
            out.push(u);
            for &v in &self.edges[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out
    }

    /// Does the explored graph contain a cycle (self-loops included)?
    pub fn has_cycle(&self) -> bool {
        // iterative three-colour DFS
        let n = self.len();
        let mut colour = vec![0u8; n];
        for start in 0..n {
            if colour[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            colour[start] = 1;
            while let Some((u, i)) = stack.pop() {
                if i < self.edges[u].len() {
                    stack.push((u, i + 1));
                    let v = self.edges[u][i];
                    match colour[v] {
                        0 => {
                            colour[v] = 1;
                            stack.push((v, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    colour[u] = 2;
                }
            }
        }
        false
    }

    /// Path of states from the root to `s` along BFS parents.
    pub fn path_to(&self, s: usize) -> Vec<usize> {
        let mut path = vec![s];
        let mut cur = s;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

pub fn explore<C: Calculus>(root: &C::Term, bounds: Bounds) -> Lts<C::Term> {
    Lts::build(C::canon(root), bounds, C::successors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

pub fn weak_barb_in<C: Calculus>(
    lts: &Lts<C::Term>,
    restrict: &BTreeSet<C::Name>,
    barb: &Barb<C::Name>,
) -> Ternary {
    let restrict = C::canon_restrict(restrict);
    if lts.states.iter().any(|s| C::barbs(s, &restrict).contains(barb)) {
        Ternary::Yes
    } else if lts.truncated {
        Ternary::Unknown
    } else {
        Ternary::No
    }
}

/// `root ⇓ barb` within bounds.
pub fn weak_barb<C: Calculus>(
    root: &C::Term,
    restrict: &BTreeSet<C::Name>,
    barb: &Barb<C::Name>,
    bounds: Bounds,
) -> Ternary {
    weak_barb_in::<C>(&explore::<C>(root, bounds), restrict, barb)
}

/// Line-oriented JSON: one object per state, one per edge, then a summary.
pub fn write_json_lines<C: Calculus, W: Write>(
    lts: &Lts<C::Term>,
    restrict: &BTreeSet<C::Name>,
    mut out: W,
) -> io::Result<()> {
    let restrict = &C::canon_restrict(restrict);
    for (i, s) in lts.states.iter().enumerate() {
        let barbs: Vec<String> = C::barbs(s, restrict).iter().map(render_barb::<C>).collect();
        writeln!(
            out,
            "{}",
            json!({"kind": "state", "id": i, "term": C::render(s), "barbs": barbs, "expanded": lts.expanded[i]})
        )?;
    }
    for (i, targets) in lts.edges.iter().enumerate() {
        for t in targets {
            writeln!(out, "{}", json!({"kind": "edge", "from": i, "to": t}))?;
        }
    }
    writeln!(
        out,
        "{}",
        json!({
            "kind": "summary",
            "calculus": C::NAME,
            "states": lts.len(),
            "edges": lts.edge_count(),
            "truncated": lts.truncated,
            "max_states": lts.bounds.max_states,
            "max_depth": lts.bounds.max_depth,
        })
    )
}

pub fn render_barb<C: Calculus>(b: &Barb<C::Name>) -> String {
    match b.direction {
        crate::rho::Direction::In => C::render_name(&b.name),
        crate::rho::Direction::Out => format!("~{}", C::render_name(&b.name)),
    }
}
