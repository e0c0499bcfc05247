use crate::pi::term::{atoms_in_order, PiName, PiProc};
use crate::rho::canon::canon_name;
use crate::rho::names::lincr;
use crate::rho::term::RhoName;

/// Renaming policy φ: the i-th atom maps to the i-fold left increment of
/// the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenamingPolicy {
    seed: RhoName,
    mapping: Vec<(String, RhoName)>,
}

impl RenamingPolicy {
    pub fn new(seed: RhoName) -> Self {
        RenamingPolicy {
            seed: canon_name(&seed),
            mapping: Vec::new(),
        }
    }

    /// Policy over the atoms of `p` in first-occurrence order, seeded at `@0`.
    pub fn for_term(p: &PiProc) -> Self {
        let mut pol = RenamingPolicy::new(RhoName::zero());
        pol.extend_with(p);
        pol
    }

    /// Map any atoms of `p` not yet covered, keeping existing images.
    pub fn extend_with(&mut self, p: &PiProc) {
        for a in atoms_in_order(p) {
            self.extend(&a);
        }
    }

    pub fn extend(&mut self, atom: &str) -> RhoName {
        if let Some(x) = self.lookup(atom) {
            return x.clone();
        }
        let x = match self.mapping.last() {
            None => self.seed.clone(),
            Some((_, last)) => lincr(last),
        };
        self.mapping.push((atom.to_string(), x.clone()));
        x
    }

    pub fn lookup(&self, atom: &str) -> Option<&RhoName> {
        self.mapping.iter().find(|(a, _)| a == atom).map(|(_, x)| x)
    }

    /// φ(x). Panics on markers or unmapped atoms; translations extend the
    /// policy before use.
    pub fn phi(&self, x: &PiName) -> RhoName {
        match x {
            PiName::Atom(a) => self
                .lookup(a)
                .unwrap_or_else(|| panic!("atom '{a}' is not covered by the renaming policy"))
                .clone(),
            PiName::Bound(_) => panic!("binder markers have no image under the renaming policy"),
        }
    }

    pub fn seed(&self) -> &RhoName {
        &self.seed
    }

    pub fn entries(&self) -> &[(String, RhoName)] {
        &self.mapping
    }

    pub fn images(&self) -> Vec<RhoName> {
        self.mapping.iter().map(|(_, x)| x.clone()).collect()
    }
}
