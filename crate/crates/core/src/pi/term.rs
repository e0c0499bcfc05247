use std::collections::BTreeSet;

/// A π-calculus name: an atom, or (in canonical form) a binder marker
/// indexed by nesting level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiName {
    Atom(String),
    Bound(usize),
}

/// Asynchronous, choice-free π-calculus processes.
///
/// Variant order fixes the canonical sort order of parallel components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiProc {
    Nil,
    Output(PiName, PiName),
    Input(PiName, PiName, Box<PiProc>),
    New(PiName, Box<PiProc>),
    Repl(Box<PiProc>),
    Par(Vec<PiProc>),
}

/// Prefix reserved for atoms generated during α-renaming; the parser never
/// produces it.
pub const RESERVED_PREFIX: char = '%';

impl PiName {
    pub fn atom(s: &str) -> Self {
        PiName::Atom(s.to_string())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            PiName::Atom(s) => Some(s),
            PiName::Bound(_) => None,
        }
    }

    pub fn is_reserved(&self) -> bool {
        matches!(self, PiName::Atom(s) if s.starts_with(RESERVED_PREFIX))
    }
}

impl PiProc {
    pub fn output(x: &str, y: &str) -> Self {
        PiProc::Output(PiName::atom(x), PiName::atom(y))
    }

    pub fn input(x: &str, y: &str, body: PiProc) -> Self {
        PiProc::Input(PiName::atom(x), PiName::atom(y), Box::new(body))
    }

    pub fn new_name(x: &str, body: PiProc) -> Self {
        PiProc::New(PiName::atom(x), Box::new(body))
    }

    pub fn repl(body: PiProc) -> Self {
        PiProc::Repl(Box::new(body))
    }

    pub fn par(procs: impl IntoIterator<Item = PiProc>) -> Self {
        let mut v: Vec<PiProc> = procs.into_iter().collect();
        match v.len() {
            0 => PiProc::Nil,
            1 => v.pop().unwrap(),
            _ => PiProc::Par(v),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PiProc::Nil | PiProc::Output(..) => 1,
            PiProc::Input(_, _, b) | PiProc::New(_, b) | PiProc::Repl(b) => 1 + b.size(),
            PiProc::Par(ps) => 1 + ps.iter().map(PiProc::size).sum::<usize>(),
        }
    }

    /// Whether every replication is guarded by an input at its root.
    pub fn input_guarded(&self) -> bool {
        match self {
            PiProc::Nil | PiProc::Output(..) => true,
            PiProc::Input(_, _, b) | PiProc::New(_, b) => b.input_guarded(),
            PiProc::Repl(b) => matches!(**b, PiProc::Input(..)) && b.input_guarded(),
            PiProc::Par(ps) => ps.iter().all(PiProc::input_guarded),
        }
    }
}

/// Free atoms.
pub fn free_atoms(p: &PiProc) -> BTreeSet<String> {
    fn go(p: &PiProc, bound: &mut Vec<PiName>, out: &mut BTreeSet<String>) {
        let mut add = |x: &PiName, bound: &Vec<PiName>| {
            if let PiName::Atom(s) = x {
                if !bound.contains(x) {
                    out.insert(s.clone());
                }
            }
        };
        match p {
            PiProc::Nil => {}
            PiProc::Output(x, y) => {
                add(x, bound);
                add(y, bound);
            }
            PiProc::Input(x, y, b) => {
                add(x, bound);
                bound.push(y.clone());
                go(b, bound, out);
                bound.pop();
            }
            PiProc::New(x, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
            PiProc::Repl(b) => go(b, bound, out),
            PiProc::Par(ps) => ps.iter().for_each(|q| go(q, bound, out)),
        }
    }
    let mut out = BTreeSet::new();
    go(p, &mut Vec::new(), &mut out);
    out
}

/// All atoms in order of first occurrence (binders included).
pub fn atoms_in_order(p: &PiProc) -> Vec<String> {
    fn go(p: &PiProc, out: &mut Vec<String>) {
        let mut add = |x: &PiName| {
            if let PiName::Atom(s) = x {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        };
        match p {
            PiProc::Nil => {}
            PiProc::Output(x, y) => {
                add(x);
                add(y);
            }
            PiProc::Input(x, y, b) => {
                add(x);
                add(y);
                go(b, out);
            }
            PiProc::New(x, b) => {
                add(x);
                go(b, out);
            }
            PiProc::Repl(b) => go(b, out),
            PiProc::Par(ps) => ps.iter().for_each(|q| go(q, out)),
        }
    }
    let mut out = Vec::new();
    go(p, &mut out);
    out
}

/// Generator of reserved atoms `%k`, starting above any already present.
#[derive(Clone, Debug)]
pub struct FreshAtoms {
    next: usize,
}

impl FreshAtoms {
    pub fn above(p: &PiProc) -> Self {
        let max = atoms_in_order(p)
            .iter()
            .filter_map(|a| a.strip_prefix(RESERVED_PREFIX)?.parse::<usize>().ok())
            .max();
        FreshAtoms {
            next: max.map_or(0, |m| m + 1),
        }
    }

    pub fn starting_at(next: usize) -> Self {
        FreshAtoms { next }
    }

    pub fn fresh(&mut self) -> PiName {
        let a = PiName::Atom(format!("{RESERVED_PREFIX}{}", self.next));
        self.next += 1;
        a
    }
}
