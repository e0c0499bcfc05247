//! Per-term checks of the name-server encoding over a corpus.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Check, Corpus, Report, Verdict};
use crate::calculus::{Pi, Rho};
use crate::encode::{
    encode_ns_with, materialized_handles, translate_ns, EncodeError, EncodingParams,
    RenamingPolicy,
};
use crate::equiv::{
    barbed_bisim, divergence_on, partition, restricted_weak_barbs, BisimResult, Divergence, Mode,
    Union,
};
use crate::lts::{explore, Bounds};
use crate::pi::{free_atoms, pi_barbs, pi_canon, pi_free_names, pi_fresh_atom, pi_named, pi_subst, PiName, PiProc};
use crate::rho::{canon_proc, name_eq, subst_syn, RhoName};
use crate::syntax::print_pi;

const INDEPENDENCE: &str = "parameter independence";
const SUBSTITUTION: &str = "substitution invariance";
const OPERATIONAL: &str = "operational correspondence";
const OBSERVATIONAL: &str = "observational correspondence";
const DIVERGENCE: &str = "divergence reflection";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaBounds {
    pub pi: Bounds,
    pub rho: Bounds,
}

impl Default for CriteriaBounds {
    fn default() -> Self {
        CriteriaBounds {
            pi: Bounds::new(200, 12),
            rho: Bounds::new(20_000, 80),
        }
    }
}

/// The five correspondence checks for every corpus term.
pub fn check_criteria(corpus: &Corpus, bounds: CriteriaBounds) -> Report {
    let per_term: Vec<Vec<Check>> = corpus
        .terms
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            check_term(p, bounds)
                .into_iter()
                .map(|mut c| {
                    c.label = format!("#{i} {}", c.label);
                    c
                })
                .collect()
        })
        .collect();
    let mut report = Report::new(format!("criteria seed={} count={}", corpus.seed, corpus.terms.len()));
    report.bounds("pi", bounds.pi);
    report.bounds("rho", bounds.rho);
    report.checks = per_term.into_iter().flatten().collect();
    report
}

fn ternary(label: &str, r: BisimResult, evidence: String) -> Check {
    let v = match r {
        BisimResult::Bisimilar => Verdict::Pass,
        BisimResult::NotBisimilar => Verdict::Fail,
        BisimResult::Unknown => Verdict::Unknown,
    };
    Check::new(label, v, evidence)
}

fn encode_error(label: &str, e: EncodeError) -> Check {
    Check::new(label, Verdict::Fail, e.to_string())
}

pub fn check_term(p: &PiProc, bounds: CriteriaBounds) -> Vec<Check> {
    let shown = print_pi(p);
    vec![
        independence(p, bounds).unwrap_or_else(|e| encode_error(INDEPENDENCE, e)),
        substitution(p).unwrap_or_else(|e| encode_error(SUBSTITUTION, e)),
        operational(p, bounds).unwrap_or_else(|e| encode_error(OPERATIONAL, e)),
        observational(p, bounds).unwrap_or_else(|e| encode_error(OBSERVATIONAL, e)),
        divergence(p, bounds).unwrap_or_else(|e| encode_error(DIVERGENCE, e)),
    ]
    .into_iter()
    .map(|mut c| {
        c.evidence = format!("{shown}: {}", c.evidence);
        c
    })
    .collect()
}

fn image_restriction(p: &PiProc, policy: &RenamingPolicy) -> BTreeSet<RhoName> {
    pi_free_names(p).iter().map(|a| policy.phi(a)).collect()
}

/// Two parameter sets give weakly bisimilar encodings.
fn independence(p: &PiProc, bounds: CriteriaBounds) -> Result<Check, EncodeError> {
    let policy = RenamingPolicy::for_term(p);
    let a = EncodingParams::for_policy(&policy)?;
    let b = a.alternative(&policy)?;
    let ea = encode_ns_with(p, &a, &policy)?;
    let eb = encode_ns_with(p, &b, &policy)?;
    let v = barbed_bisim::<Rho>(&ea.term, &eb.term, &image_restriction(p, &policy), Mode::Weak, bounds.rho);
    Ok(ternary(
        INDEPENDENCE,
        v.result,
        format!("{:?} over {} + {} states", v.result, v.left_states, v.right_states),
    ))
}

/// `⟦P{u/w}⟧` and `⟦P⟧{φu/φw}` have the same canonical form.
pub fn substitution_invariance(p: &PiProc, u: &str, w: &str) -> Result<bool, EncodeError> {
    let ps = pi_subst(p, &PiName::atom(u), &PiName::atom(w));
    let mut policy = RenamingPolicy::for_term(p);
    policy.extend(u);
    policy.extend_with(&ps);
    let params = EncodingParams::for_policy(&policy)?;
    let lhs = translate_ns(&ps, &params.n, &params.v, &policy)?;
    let t = translate_ns(p, &params.n, &params.v, &policy)?;
    let phi = |a: &str| policy.phi(&PiName::atom(a));
    let rhs = subst_syn(&t, &phi(u), &phi(w));
    Ok(canon_proc(&lhs) == canon_proc(&rhs))
}

fn substitution(p: &PiProc) -> Result<Check, EncodeError> {
    let label = SUBSTITUTION;
    let free: Vec<String> = free_atoms(p).into_iter().collect();
    let Some(w) = free.first() else {
        return Ok(Check::new(label, Verdict::Pass, "no free names, vacuous"));
    };
    let fresh = pi_fresh_atom(p, "g");
    let mut targets = vec![fresh];
    targets.extend(free.iter().skip(1).cloned());
    let mut bad = Vec::new();
    for u in &targets {
        if !substitution_invariance(p, u, w)? {
            bad.push(format!("{{{u}/{w}}}"));
        }
    }
    Ok(Check::pass_if(
        label,
        bad.is_empty(),
        format!("{} substitutions for {w}, failing: {bad:?}", targets.len()),
    ))
}

/// Encoded π reducts against the encoded source, in one weak refinement.
fn operational(p: &PiProc, bounds: CriteriaBounds) -> Result<Check, EncodeError> {
    let label = OPERATIONAL;
    let pl = explore::<Pi>(p, bounds.pi);
    let reducts: Vec<PiProc> = pl.states.iter().map(pi_named).collect();
    let mut policy = RenamingPolicy::for_term(p);
    for r in &reducts {
        policy.extend_with(r);
    }
    let params = EncodingParams::for_policy(&policy)?;
    let restrict = image_restriction(p, &policy);
    let source = explore::<Rho>(&encode_ns_with(p, &params, &policy)?.term, bounds.rho);
    let mut graphs = vec![source];
    for r in &reducts {
        graphs.push(explore::<Rho>(&encode_ns_with(r, &params, &policy)?.term, bounds.rho));
    }
    let truncated = pl.truncated || graphs.iter().any(|g| g.truncated);
    let refs: Vec<_> = graphs.iter().collect();
    let u = Union::new(&refs);
    let part = partition::<Rho>(&u, &restrict, Mode::Weak);
    let block_of = |g: usize, s: usize| part.block[u.roots[g] + s];
    let targets: BTreeSet<usize> = (1..graphs.len()).map(|g| block_of(g, 0)).collect();
    let source_blocks: BTreeSet<usize> = (0..graphs[0].len()).map(|s| block_of(0, s)).collect();

    // completeness: every π successor of the root is matched
    let mut unmatched = Vec::new();
    for &t in &pl.edges[0] {
        if !source_blocks.contains(&block_of(t + 1, 0)) {
            unmatched.push(print_pi(&pl.states[t]));
        }
    }
    // soundness: every explored state can still reach an encoded reduct
    let g0 = &graphs[0];
    let mut rev = vec![Vec::new(); g0.len()];
    for (s, ts) in g0.edges.iter().enumerate() {
        for &t in ts {
            rev[t].push(s);
        }
    }
    let mut good: Vec<bool> = (0..g0.len()).map(|s| targets.contains(&block_of(0, s))).collect();
    let mut stack: Vec<usize> = (0..g0.len()).filter(|&s| good[s]).collect();
    while let Some(t) = stack.pop() {
        for &s in &rev[t] {
            if !good[s] {
                good[s] = true;
                stack.push(s);
            }
        }
    }
    let stray = good.iter().filter(|g| !**g).count();
    let verdict = match (unmatched.is_empty() && stray == 0, truncated) {
        (true, _) => Verdict::Pass,
        (false, true) => Verdict::Unknown,
        (false, false) => Verdict::Fail,
    };
    Ok(Check::new(
        label,
        verdict,
        format!(
            "{} π steps, unmatched {unmatched:?}; {stray} of {} encoded states stray; truncated: {truncated}",
            pl.edges[0].len(),
            graphs[0].len()
        ),
    ))
}

fn observational(p: &PiProc, bounds: CriteriaBounds) -> Result<Check, EncodeError> {
    let label = OBSERVATIONAL;
    let policy = RenamingPolicy::for_term(p);
    let params = EncodingParams::for_policy(&policy)?;
    let restrict = pi_free_names(p);
    let (seen, unknown) = restricted_weak_barbs(p, &params, &policy, &restrict, bounds.rho)?;
    let want = pi_barbs(&pi_canon(p), &restrict);
    let verdict = if seen == want {
        Verdict::Pass
    } else if unknown && seen.is_subset(&want) {
        Verdict::Unknown
    } else {
        Verdict::Fail
    };
    let show = |bs: &BTreeSet<crate::rho::Barb<PiName>>| {
        bs.iter()
            .map(crate::lts::render_barb::<Pi>)
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(Check::new(
        label,
        verdict,
        format!("encoded [{}] vs source [{}]", show(&seen), show(&want)),
    ))
}

fn divergence(p: &PiProc, bounds: CriteriaBounds) -> Result<Check, EncodeError> {
    let label = DIVERGENCE;
    let src = divergence_on::<Pi>(&explore::<Pi>(p, bounds.pi));
    if src.verdict != Divergence::Terminates {
        return Ok(Check::new(label, Verdict::Pass, format!("source {:?}, vacuous", src.verdict)));
    }
    let policy = RenamingPolicy::for_term(p);
    let params = EncodingParams::for_policy(&policy)?;
    let enc = encode_ns_with(p, &params, &policy)?;
    let r = divergence_on::<Rho>(&explore::<Rho>(&enc.term, bounds.rho));
    let verdict = match r.verdict {
        Divergence::Terminates => Verdict::Pass,
        Divergence::Diverges => Verdict::Fail,
        Divergence::Unknown => Verdict::Unknown,
    };
    Ok(Check::new(
        label,
        verdict,
        format!("source terminates, encoding {:?} via {:?} over {} states", r.verdict, r.rule, r.states),
    ))
}

/// Handles consumed by the translation are pairwise non-equivalent.
pub fn handles_distinct(p: &PiProc) -> Result<bool, EncodeError> {
    let policy = RenamingPolicy::for_term(p);
    let params = EncodingParams::for_policy(&policy)?;
    let hs = materialized_handles(p, &params.n, &params.v, &policy)?;
    Ok(hs
        .iter()
        .enumerate()
        .all(|(i, a)| hs[i + 1..].iter().all(|b| !name_eq(a, b))))
}
