//! Instance-based checks shared by the property tests and the acceptance run.

use std::collections::BTreeSet;

use rhopi::harness::{handles_distinct, substitution_invariance};
use rhopi::pi::{free_atoms, pi_canon, pi_fresh_atom, pi_step, pi_subst, PiName, PiProc};
use rhopi::rho::{canon_proc, name_eq, quote_depth, RhoName, RhoProc};

use super::oracle::Closure;
use super::{pi_proc, rho_name, sample};

/// A congruent variant: reversed Par children, an extra `0`, and every
/// subject wrapped as `@(*x)`.
pub fn scramble(p: &RhoProc) -> RhoProc {
    let wrap = |x: &RhoName| RhoName::quote(RhoProc::Drop(x.clone()));
    match p {
        RhoProc::Nil => RhoProc::Par(vec![RhoProc::Nil, RhoProc::Nil]),
        RhoProc::Drop(x) => RhoProc::Drop(wrap(x)),
        RhoProc::Lift(x, b) => RhoProc::Lift(wrap(x), Box::new(scramble(b))),
        RhoProc::Input(x, y, b) => RhoProc::Input(wrap(x), y.clone(), Box::new(scramble(b))),
        RhoProc::Par(ps) => {
            let mut v: Vec<RhoProc> = ps.iter().rev().map(scramble).collect();
            v.push(RhoProc::Nil);
            RhoProc::Par(v)
        }
    }
}

pub struct Tally {
    pub cases: usize,
    /// Cases where the property had something to check.
    pub exercised: usize,
    pub failures: Vec<String>,
}

/// Equivalent names have equal quote depth. Half the pairs are equivalent by
/// construction.
pub fn stratification(pairs: usize) -> Tally {
    let xs = sample(rho_name(), pairs, 7);
    let ys = sample(rho_name(), pairs, 8);
    let mut t = Tally { cases: pairs, exercised: 0, failures: Vec::new() };
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        let y = if i % 2 == 0 {
            RhoName::quote(scramble(&RhoProc::Drop(x.clone())))
        } else {
            y.clone()
        };
        if name_eq(x, &y) {
            t.exercised += 1;
            if quote_depth(x) != quote_depth(&y) {
                t.failures.push(format!("{x:?} / {y:?}"));
            }
        }
    }
    t
}

/// Every pair of terms of size at most `max_size` against the closure.
pub fn oracle_agreement(max_size: usize, depth: usize) -> Tally {
    let closure = Closure::new(max_size, depth);
    let canon: Vec<RhoProc> = closure.terms.iter().map(canon_proc).collect();
    let mut t = Tally { cases: 0, exercised: 0, failures: Vec::new() };
    for i in 0..closure.terms.len() {
        for j in i..closure.terms.len() {
            t.cases += 1;
            let o = closure.congruent(i, j);
            t.exercised += usize::from(o && i != j);
            if (canon[i] == canon[j]) != o {
                t.failures.push(format!("{:?} / {:?}", closure.terms[i], closure.terms[j]));
            }
        }
    }
    t
}

fn fragment(n: usize, seed: u8) -> Vec<PiProc> {
    sample(pi_proc(), n, seed)
}

/// Materialized handles are pairwise distinct on random fragment terms.
pub fn uniqueness(n: usize) -> Tally {
    let mut t = Tally { cases: n, exercised: 0, failures: Vec::new() };
    for p in fragment(n, 21) {
        match handles_distinct(&p) {
            Ok(true) => t.exercised += 1,
            Ok(false) => t.failures.push(rhopi::syntax::print_pi(&p)),
            Err(e) => t.failures.push(format!("{}: {e}", rhopi::syntax::print_pi(&p))),
        }
    }
    t
}

/// Substitution invariance over random (P, u, w): `w` a free atom, `u` fresh or another free atom.
pub fn substitution(n: usize) -> Tally {
    let mut t = Tally { cases: 0, exercised: 0, failures: Vec::new() };
    for (i, p) in fragment(4 * n, 22).into_iter().enumerate() {
        if t.cases == n {
            break;
        }
        let free: Vec<String> = free_atoms(&p).into_iter().collect();
        let Some(w) = free.get(i % free.len().max(1)) else { continue };
        let u = if i % 2 == 0 || free.len() < 2 {
            pi_fresh_atom(&p, "u")
        } else {
            free[(i + 1) % free.len()].clone()
        };
        t.cases += 1;
        match substitution_invariance(&p, &u, w) {
            Ok(true) => t.exercised += 1,
            Ok(false) => t.failures.push(format!("{} {{{u}/{w}}}", rhopi::syntax::print_pi(&p))),
            Err(e) => t.failures.push(e.to_string()),
        }
    }
    t
}

/// `P → P'` implies `P{x/n} → P'{x/n}` for fresh `x`.
pub fn reduction_under_substitution(n: usize) -> Tally {
    let mut t = Tally { cases: 0, exercised: 0, failures: Vec::new() };
    // pairs of two-atom terms, so that most instances can communicate
    let halves = rhopi::harness::generate_corpus_over(23, 8 * n, 5, 2).terms;
    for pair in halves.chunks(2) {
        if t.cases == n {
            break;
        }
        let p = pi_canon(&PiProc::par(pair.to_vec()));
        let Some(w) = free_atoms(&p).into_iter().next() else { continue };
        if p.size() > 12 {
            continue;
        }
        t.cases += 1;
        let x = PiName::atom(&pi_fresh_atom(&p, "x"));
        let w = PiName::atom(&w);
        let sigma = |q: &PiProc| pi_canon(&pi_subst(q, &x, &w));
        let after: BTreeSet<PiProc> = pi_step(&sigma(&p)).iter().map(pi_canon).collect();
        for r in pi_step(&p) {
            t.exercised += 1;
            if !after.contains(&sigma(&r)) {
                t.failures.push(format!(
                    "{} -> {} lost under {{{x:?}/{w:?}}}",
                    rhopi::syntax::print_pi(&p),
                    rhopi::syntax::print_pi(&r)
                ));
            }
        }
    }
    t
}

/// The legacy encoding of `!0` diverges; the name-server encoding of every
/// corpus term whose own exploration terminates terminates too.
pub fn divergence_contrast(corpus: &rhopi::harness::Corpus) -> (rhopi::equiv::DivergenceReport, Tally) {
    use rhopi::encode::{default_legacy_params, encode_mr, encode_ns, RenamingPolicy};
    use rhopi::equiv::{divergence_probe, Divergence};
    use rhopi::lts::Bounds;
    use rhopi::{Pi, Rho};

    let bang = PiProc::repl(PiProc::Nil);
    let policy = RenamingPolicy::for_term(&bang);
    let legacy = encode_mr(&bang, &default_legacy_params(&policy).unwrap(), &policy).unwrap();
    let mr = divergence_probe::<Rho>(&legacy, Bounds::new(2000, 40));

    let bounds = rhopi::harness::CriteriaBounds::default();
    let mut t = Tally { cases: corpus.terms.len(), exercised: 0, failures: Vec::new() };
    for p in &corpus.terms {
        if divergence_probe::<Pi>(p, bounds.pi).verdict != Divergence::Terminates {
            continue;
        }
        t.exercised += 1;
        let r = divergence_probe::<Rho>(&encode_ns(p).unwrap().term, bounds.rho);
        if r.verdict != Divergence::Terminates {
            t.failures.push(format!("{}: {:?} via {:?}", rhopi::syntax::print_pi(p), r.verdict, r.rule));
        }
    }
    (mr, t)
}
