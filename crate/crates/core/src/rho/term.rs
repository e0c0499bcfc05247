use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A process of the reflective higher-order calculus.
///
/// Variant order is significant: the derived `Ord` is the total order used
/// to sort parallel components in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoProc {
    Nil,
    Drop(RhoName),
    Lift(RhoName, Box<RhoProc>),
    Input(RhoName, RhoName, Box<RhoProc>),
    Par(Vec<RhoProc>),
}

/// A name: a quoted process, or (in canonical form only) a bound-variable
/// marker indexed by binder nesting level, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoName {
    Quote(Arc<RhoProc>),
    Bound(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    In,
    Out,
}

/// An observable subject, input or output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Barb<N> {
    pub direction: Direction,
    pub name: N,
}

impl<N> Barb<N> {
    pub fn output(name: N) -> Self {
        Barb { direction: Direction::Out, name }
    }

    pub fn input(name: N) -> Self {
        Barb { direction: Direction::In, name }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamespaceScheme {
    LeftIncrement,
    RightIncrement,
    Composition,
}

impl NamespaceScheme {
    pub const ALL: [NamespaceScheme; 3] = [
        NamespaceScheme::LeftIncrement,
        NamespaceScheme::RightIncrement,
        NamespaceScheme::Composition,
    ];
}

impl RhoProc {
    pub fn lift(subject: RhoName, body: RhoProc) -> Self {
        RhoProc::Lift(subject, Box::new(body))
    }

    pub fn input(subject: RhoName, binder: RhoName, body: RhoProc) -> Self {
        RhoProc::Input(subject, binder, Box::new(body))
    }

    pub fn drop(name: RhoName) -> Self {
        RhoProc::Drop(name)
    }

    /// Parallel composition of `procs`; degenerates to `Nil` or the single
    /// component.
    pub fn par(procs: impl IntoIterator<Item = RhoProc>) -> Self {
        let mut v: Vec<RhoProc> = procs.into_iter().collect();
        match v.len() {
            0 => RhoProc::Nil,
            1 => v.pop().unwrap(),
            _ => RhoProc::Par(v),
        }
    }

    /// `x̄⟨y⟩ := x!(*y)`, the output of a name.
    pub fn send(subject: RhoName, object: RhoName) -> Self {
        RhoProc::lift(subject, RhoProc::Drop(object))
    }

    /// Top-level parallel components (a non-`Par` term is its own single
    /// component, `Nil` has none).
    pub fn components(&self) -> Vec<&RhoProc> {
        match self {
            RhoProc::Nil => vec![],
            RhoProc::Par(ps) => ps.iter().collect(),
            p => vec![p],
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RhoProc::Nil => 1,
            RhoProc::Drop(x) => 1 + x.size(),
            RhoProc::Lift(x, p) => 1 + x.size() + p.size(),
            RhoProc::Input(x, y, p) => 1 + x.size() + y.size() + p.size(),
            RhoProc::Par(ps) => 1 + ps.iter().map(RhoProc::size).sum::<usize>(),
        }
    }

    pub fn has_markers(&self) -> bool {
        match self {
            RhoProc::Nil => false,
            RhoProc::Drop(x) => x.has_markers(),
            RhoProc::Lift(x, p) => x.has_markers() || p.has_markers(),
            RhoProc::Input(x, y, p) => x.has_markers() || y.has_markers() || p.has_markers(),
            RhoProc::Par(ps) => ps.iter().any(RhoProc::has_markers),
        }
    }
}

impl RhoName {
    pub fn quote(p: RhoProc) -> Self {
        RhoName::Quote(Arc::new(p))
    }

    /// `@0`
    pub fn zero() -> Self {
        RhoName::quote(RhoProc::Nil)
    }

    pub fn size(&self) -> usize {
        match self {
            RhoName::Quote(p) => 1 + p.size(),
            RhoName::Bound(_) => 1,
        }
    }

    pub fn has_markers(&self) -> bool {
        match self {
            RhoName::Quote(p) => p.has_markers(),
            RhoName::Bound(_) => true,
        }
    }

    pub fn body(&self) -> Option<&RhoProc> {
        match self {
            RhoName::Quote(p) => Some(p),
            RhoName::Bound(_) => None,
        }
    }
}

/// The copier `D(x) := x?(y).(*y | x!(*y))`.
pub fn copier(x: &RhoName) -> RhoProc {
    // any binder not name-equivalent to x works; the canonical form is the same
    let y = super::names::lincr(x);
    RhoProc::input(
        x.clone(),
        y.clone(),
        RhoProc::par([RhoProc::Drop(y.clone()), RhoProc::send(x.clone(), y)]),
    )
}
