//! The two calculi as explorable transition systems.

use std::collections::BTreeSet;

use crate::lts::Calculus;
use crate::pi::{pi_barbs, pi_canon, pi_step, PiName, PiProc};
use crate::rho::term::Barb;
use crate::rho::{barbs, canon_name, canon_proc, step, RhoName, RhoProc};
use crate::syntax::{print_pi, print_rho, print_rho_name};

/// Shape kinds.
const OUT: u8 = 0;
const IN: u8 = 1;

pub struct Rho;

impl Calculus for Rho {
    type Term = RhoProc;
    type Name = RhoName;
    const NAME: &'static str = "rho";

    fn canon(t: &RhoProc) -> RhoProc {
        canon_proc(t)
    }

    fn successors(t: &RhoProc) -> Vec<RhoProc> {
        step(t)
    }

    fn canon_restrict(names: &BTreeSet<RhoName>) -> BTreeSet<RhoName> {
        names.iter().map(canon_name).collect()
    }

    fn barbs(t: &RhoProc, restrict: &BTreeSet<RhoName>) -> BTreeSet<Barb<RhoName>> {
        barbs(t, restrict)
    }

    fn shape(t: &RhoProc) -> Vec<(u8, RhoName)> {
        t.components()
            .into_iter()
            .filter_map(|c| match c {
                RhoProc::Lift(x, _) => Some((OUT, x.clone())),
                RhoProc::Input(x, _, _) => Some((IN, x.clone())),
                _ => None,
            })
            .collect()
    }

    fn components(t: &RhoProc) -> Vec<RhoProc> {
        t.components().into_iter().cloned().collect()
    }

    fn render(t: &RhoProc) -> String {
        print_rho(t)
    }

    fn render_name(n: &RhoName) -> String {
        print_rho_name(n)
    }
}

pub struct Pi;

impl Calculus for Pi {
    type Term = PiProc;
    type Name = PiName;
    const NAME: &'static str = "pi";

    fn canon(t: &PiProc) -> PiProc {
        pi_canon(t)
    }

    fn successors(t: &PiProc) -> Vec<PiProc> {
        pi_step(t)
    }

    fn canon_restrict(names: &BTreeSet<PiName>) -> BTreeSet<PiName> {
        names.clone()
    }

    fn barbs(t: &PiProc, restrict: &BTreeSet<PiName>) -> BTreeSet<Barb<PiName>> {
        pi_barbs(t, restrict)
    }

    fn shape(t: &PiProc) -> Vec<(u8, PiName)> {
        fn go(p: &PiProc, out: &mut Vec<(u8, PiName)>) {
            match p {
                PiProc::Output(x, _) => out.push((OUT, x.clone())),
                PiProc::Input(x, _, _) => out.push((IN, x.clone())),
                PiProc::New(_, b) => go(b, out),
                PiProc::Par(ps) => ps.iter().for_each(|q| go(q, out)),
                PiProc::Nil | PiProc::Repl(_) => {}
            }
        }
        let mut out = Vec::new();
        go(t, &mut out);
        out
    }

    fn components(t: &PiProc) -> Vec<PiProc> {
        match t {
            PiProc::Par(ps) => ps.clone(),
            PiProc::Nil => Vec::new(),
            q => vec![q.clone()],
        }
    }

    fn render(t: &PiProc) -> String {
        print_pi(t)
    }

    fn render_name(n: &PiName) -> String {
        match n {
            PiName::Atom(a) => a.clone(),
            PiName::Bound(k) => format!("v{k}"),
        }
    }
}
