//! Brute-force structural congruence for small ρ-terms.
//!
//! Terms are rewritten one rule at a time at any position, including inside
//! quotes: Par unit, associativity and commutativity, α-renaming of input
//! binders over a small pool, and the quote/drop cancellation in both
//! directions. Every rule is applied in both directions and intermediate
//! terms never exceed a size cap. Each term's closure is its radius-`depth`
//! ball, and two terms are congruent when the closures intersect.

use std::collections::{HashMap, HashSet, VecDeque};

use rhopi::rho::{RhoName, RhoProc};

fn q(p: RhoProc) -> RhoName {
    RhoName::quote(p)
}

/// All terms of exactly `size`; Par nodes have at least two children.
pub struct Enumerator {
    by_size: Vec<Vec<RhoProc>>,
}

impl Enumerator {
    pub fn new(max: usize) -> Self {
        let mut e = Enumerator { by_size: vec![Vec::new(); max + 1] };
        for n in 1..=max {
            let terms = e.exact(n);
            e.by_size[n] = terms;
        }
        e
    }

    pub fn up_to(&self, max: usize) -> Vec<RhoProc> {
        self.by_size[..=max].iter().flatten().cloned().collect()
    }

    fn names(&self, size: usize) -> Vec<RhoName> {
        if size < 2 {
            return Vec::new();
        }
        self.by_size[size - 1].iter().cloned().map(q).collect()
    }

    fn exact(&self, n: usize) -> Vec<RhoProc> {
        let mut out = Vec::new();
        if n == 1 {
            out.push(RhoProc::Nil);
        }
        out.extend(self.names(n - 1).into_iter().map(RhoProc::Drop));
        for a in 2..n {
            for x in self.names(a) {
                for b in &self.by_size[n - 1 - a] {
                    out.push(RhoProc::Lift(x.clone(), Box::new(b.clone())));
                }
            }
        }
        for a in 2..n {
            for b in 2..n.saturating_sub(a) {
                let rest = n - 1 - a - b;
                if rest == 0 {
                    continue;
                }
                for x in self.names(a) {
                    for y in self.names(b) {
                        for body in &self.by_size[rest] {
                            out.push(RhoProc::Input(x.clone(), y.clone(), Box::new(body.clone())));
                        }
                    }
                }
            }
        }
        for kids in self.lists(n - 1, 2) {
            out.push(RhoProc::Par(kids));
        }
        out
    }

    /// Ordered lists of at least `min` terms whose sizes sum to `total`.
    fn lists(&self, total: usize, min: usize) -> Vec<Vec<RhoProc>> {
        if total == 0 {
            return if min == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 1..=total {
            if first >= self.by_size.len() {
                break;
            }
            for head in &self.by_size[first] {
                for mut tail in self.lists(total - first, min.saturating_sub(1)) {
                    tail.insert(0, head.clone());
                    out.push(tail);
                }
            }
        }
        out
    }
}

/// Names used as α-renaming targets.
fn pool() -> Vec<RhoName> {
    let zero = RhoName::zero();
    vec![
        zero.clone(),
        q(RhoProc::Lift(zero.clone(), Box::new(RhoProc::Nil))),
        q(RhoProc::Input(zero.clone(), zero, Box::new(RhoProc::Nil))),
    ]
}

pub struct Oracle {
    pub cap: usize,
    pub depth: usize,
}

impl Oracle {
    /// The closures of `p` and `r` intersect.
    pub fn congruent(&self, p: &RhoProc, r: &RhoProc) -> bool {
        p == r || meet(p, r, self.depth, &|t| self.neighbours(t))
    }

    pub fn names_equivalent(&self, x: &RhoName, y: &RhoName) -> bool {
        x == y || meet(x, y, self.depth, &|n| self.name_neighbours(n))
    }

    /// Name equivalence for the side conditions of α-renaming. The cap is
    /// the larger of the two sizes, which keeps the recursion well founded.
    fn side_eq(&self, x: &RhoName, y: &RhoName) -> bool {
        let inner = Oracle {
            cap: x.size().max(y.size()),
            depth: self.depth,
        };
        debug_assert!(inner.cap < self.cap);
        inner.names_equivalent(x, y)
    }

    pub fn neighbours(&self, p: &RhoProc) -> Vec<RhoProc> {
        let mut out = Vec::new();
        self.rewrite_proc(p, &mut |t| out.push(t));
        out.retain(|t| t.size() <= self.cap);
        out
    }

    fn name_neighbours(&self, x: &RhoName) -> Vec<RhoName> {
        let mut out = Vec::new();
        self.rewrite_name(x, &mut |n| out.push(n));
        out.retain(|n| n.size() <= self.cap);
        out
    }

    fn rewrite_name(&self, x: &RhoName, emit: &mut dyn FnMut(RhoName)) {
        emit(q(RhoProc::Drop(x.clone())));
        if let RhoName::Quote(body) = x {
            if let RhoProc::Drop(inner) = &**body {
                emit(inner.clone());
            }
            self.rewrite_proc(body, &mut |b| emit(q(b)));
        }
    }

    fn rewrite_proc(&self, p: &RhoProc, emit: &mut dyn FnMut(RhoProc)) {
        self.top_level(p, emit);
        match p {
            RhoProc::Nil => {}
            RhoProc::Drop(x) => self.rewrite_name(x, &mut |n| emit(RhoProc::Drop(n))),
            RhoProc::Lift(x, b) => {
                self.rewrite_name(x, &mut |n| emit(RhoProc::Lift(n, b.clone())));
                self.rewrite_proc(b, &mut |c| emit(RhoProc::Lift(x.clone(), Box::new(c))));
            }
            RhoProc::Input(x, y, b) => {
                self.rewrite_name(x, &mut |n| emit(RhoProc::Input(n, y.clone(), b.clone())));
                // rewriting a binder keeps its equivalence class, so the body
                // still refers to it
                self.rewrite_name(y, &mut |n| emit(RhoProc::Input(x.clone(), n, b.clone())));
                self.rewrite_proc(b, &mut |c| emit(RhoProc::Input(x.clone(), y.clone(), Box::new(c))));
            }
            RhoProc::Par(ps) => {
                for i in 0..ps.len() {
                    self.rewrite_proc(&ps[i], &mut |c| {
                        let mut v = ps.clone();
                        v[i] = c;
                        emit(RhoProc::Par(v));
                    });
                }
            }
        }
    }

    fn top_level(&self, p: &RhoProc, emit: &mut dyn FnMut(RhoProc)) {
        // unit, introduced
        emit(RhoProc::Par(vec![p.clone(), RhoProc::Nil]));
        emit(RhoProc::Par(vec![RhoProc::Nil, p.clone()]));
        if let RhoProc::Par(ps) = p {
            for i in 0..=ps.len() {
                let mut v = ps.clone();
                v.insert(i, RhoProc::Nil);
                emit(RhoProc::Par(v));
            }
            for i in 0..ps.len() {
                // unit, removed
                if ps[i] == RhoProc::Nil {
                    let mut v = ps.clone();
                    v.remove(i);
                    emit(if v.len() == 1 { v.pop().unwrap() } else { RhoProc::Par(v) });
                }
                // associativity, flattening
                if let RhoProc::Par(inner) = &ps[i] {
                    let mut v = ps[..i].to_vec();
                    v.extend(inner.iter().cloned());
                    v.extend(ps[i + 1..].iter().cloned());
                    emit(RhoProc::Par(v));
                }
                // commutativity
                for j in i + 1..ps.len() {
                    let mut v = ps.clone();
                    v.swap(i, j);
                    emit(RhoProc::Par(v));
                }
            }
            // associativity, grouping
            for i in 0..ps.len() {
                for j in i + 2..=ps.len() {
                    if j - i < ps.len() {
                        let mut v = ps[..i].to_vec();
                        v.push(RhoProc::Par(ps[i..j].to_vec()));
                        v.extend(ps[j..].iter().cloned());
                        emit(RhoProc::Par(v));
                    }
                }
            }
        }
        if let RhoProc::Input(x, y, b) = p {
            for z in pool() {
                if p.size() - y.size() + z.size() > self.cap {
                    continue;
                }
                if self.side_eq(&z, y) {
                    continue;
                }
                let mut clash = false;
                visit_names(b, &mut |n, binder| {
                    clash |= self.side_eq(n, &z) && (binder || !self.side_eq(n, y));
                });
                if clash {
                    continue;
                }
                emit(RhoProc::Input(x.clone(), z.clone(), Box::new(self.rename(b, y, &z))));
            }
        }
    }

    /// `b{z/y}` outside quotes, stopping at binders equivalent to `y`.
    fn rename(&self, b: &RhoProc, y: &RhoName, z: &RhoName) -> RhoProc {
        let n = |x: &RhoName| if self.side_eq(x, y) { z.clone() } else { x.clone() };
        match b {
            RhoProc::Nil => RhoProc::Nil,
            RhoProc::Drop(x) => RhoProc::Drop(n(x)),
            RhoProc::Lift(x, c) => RhoProc::Lift(n(x), Box::new(self.rename(c, y, z))),
            RhoProc::Input(x, w, c) if self.side_eq(w, y) => RhoProc::Input(n(x), w.clone(), c.clone()),
            RhoProc::Input(x, w, c) => RhoProc::Input(n(x), w.clone(), Box::new(self.rename(c, y, z))),
            RhoProc::Par(ps) => RhoProc::Par(ps.iter().map(|c| self.rename(c, y, z)).collect()),
        }
    }
}

/// Name positions outside quotes, flagged when the position is a binder.
fn visit_names(p: &RhoProc, f: &mut dyn FnMut(&RhoName, bool)) {
    match p {
        RhoProc::Nil => {}
        RhoProc::Drop(x) => f(x, false),
        RhoProc::Lift(x, b) => {
            f(x, false);
            visit_names(b, f);
        }
        RhoProc::Input(x, y, b) => {
            f(x, false);
            f(y, true);
            visit_names(b, f);
        }
        RhoProc::Par(ps) => ps.iter().for_each(|c| visit_names(c, f)),
    }
}

fn meet<T: Clone + Eq + std::hash::Hash>(a: &T, b: &T, depth: usize, next: &dyn Fn(&T) -> Vec<T>) -> bool {
    let left = ball(a, depth, next);
    let right = ball(b, depth, next);
    left.iter().any(|t| right.contains(t))
}

pub fn ball<T: Clone + Eq + std::hash::Hash>(root: &T, radius: usize, next: &dyn Fn(&T) -> Vec<T>) -> HashSet<T> {
    let mut seen = HashSet::from([root.clone()]);
    let mut queue = VecDeque::from([(root.clone(), 0)]);
    while let Some((t, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for u in next(&t) {
            if seen.insert(u.clone()) {
                queue.push_back((u, d + 1));
            }
        }
    }
    seen
}

/// Rewrite graph over an exhaustive enumeration, with precomputed balls.
pub struct Closure {
    pub terms: Vec<RhoProc>,
    balls: Vec<Vec<bool>>,
}

impl Closure {
    pub fn new(max_size: usize, depth: usize) -> Self {
        let terms = Enumerator::new(max_size).up_to(max_size);
        let index: HashMap<RhoProc, usize> = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let oracle = Oracle { cap: max_size, depth };
        let adj: Vec<Vec<usize>> = terms
            .iter()
            .map(|t| {
                oracle
                    .neighbours(t)
                    .iter()
                    .map(|u| *index.get(u).expect("rewrites stay inside the enumeration"))
                    .collect()
            })
            .collect();
        let radius = depth;
        let balls = (0..terms.len())
            .map(|i| {
                let reach = ball(&i, radius, &|&j| adj[j].clone());
                (0..terms.len()).map(|j| reach.contains(&j)).collect()
            })
            .collect();
        Closure { terms, balls }
    }

    /// The two closures intersect.
    pub fn congruent(&self, i: usize, j: usize) -> bool {
        self.balls[i].iter().zip(&self.balls[j]).any(|(a, b)| *a && *b)
    }
}
