//! The two counter-examples against the legacy translation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Check, HarnessError, Report, Verdict};
use crate::calculus::{Pi, Rho};
use crate::encode::{default_legacy_params, encode_mr, translate_mr, RenamingPolicy};
use crate::equiv::{barbed_bisim, BisimResult, Mode};
use crate::lts::{explore, Bounds, Lts};
use crate::pi::{pi_barbs, pi_canon, pi_fresh_atom, pi_free_names, PiName, PiProc};
use crate::rho::names::{lincr, ncomp, rincr};
use crate::rho::reduce::barbs;
use crate::rho::term::{copier, Barb, RhoName, RhoProc};
use crate::rho::{canon_name, canon_proc, name_eq};
use crate::syntax::print_rho_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproBounds {
    /// π-side explorations; these must finish untruncated.
    pub pi: Bounds,
    /// Encoded terms replicate forever, so these always truncate.
    pub rho: Bounds,
}

impl Default for ReproBounds {
    fn default() -> Self {
        ReproBounds {
            pi: Bounds::default(),
            rho: Bounds::new(20_000, 14),
        }
    }
}

/// The names `a` to `j` generated by static quoting from `(n, p)`.
pub fn tabulated_names(n: &RhoName, p: &RhoName) -> Vec<(char, RhoName)> {
    let (d, e) = (lincr(n), lincr(p));
    vec![
        ('a', ncomp(n, p)),
        ('b', rincr(n)),
        ('c', rincr(p)),
        ('d', d.clone()),
        ('e', e.clone()),
        ('f', rincr(&d)),
        ('g', rincr(&e)),
        ('h', ncomp(&d, &e)),
        ('i', lincr(&d)),
        ('j', lincr(&e)),
    ]
}

pub(super) struct Atoms {
    pub u: String,
    pub x: String,
    pub o: String,
    pub z: String,
    pub q: String,
    n1: String,
    n2: String,
    w: String,
}

impl Atoms {
    pub(super) fn avoiding(p: &PiProc) -> Self {
        let mut taken = vec![p.clone()];
        let mut pick = |hint: &str| {
            let a = pi_fresh_atom(&PiProc::Par(taken.clone()), hint);
            taken.push(PiProc::output(&a, &a));
            a
        };
        Atoms {
            u: pick("u"),
            x: pick("x"),
            o: pick("o"),
            z: pick("z"),
            q: pick("q"),
            n1: pick("n1"),
            n2: pick("n2"),
            w: pick("w"),
        }
    }

    /// `[·] | u?(n1).u?(n2).(n1!o | n2?(w).x!o)`.
    pub(super) fn context(&self, hole: PiProc) -> PiProc {
        let tester = PiProc::input(
            &self.u,
            &self.n1,
            PiProc::input(
                &self.u,
                &self.n2,
                PiProc::Par(vec![
                    PiProc::output(&self.n1, &self.o),
                    PiProc::input(&self.n2, &self.w, PiProc::output(&self.x, &self.o)),
                ]),
            ),
        );
        PiProc::Par(vec![hole, tester])
    }
}

/// Objects of the top-level outputs on `subject` in canonical `p`.
pub(super) fn objects_on(p: &RhoProc, subject: &RhoName) -> Vec<RhoName> {
    p.components()
        .into_iter()
        .filter_map(|c| match c {
            RhoProc::Lift(x, body) if x == subject => Some(canon_name(&RhoName::quote((**body).clone()))),
            _ => None,
        })
        .collect()
}

/// Every output object on `subject` over all explored states, and the
/// largest number of simultaneous outputs seen in one state.
fn collect_objects(lts: &Lts<RhoProc>, subject: &RhoName) -> (Vec<Vec<RhoName>>, usize) {
    let per_state: Vec<Vec<RhoName>> = lts.states.iter().map(|s| objects_on(s, subject)).collect();
    let most = per_state.iter().map(Vec::len).max().unwrap_or(0);
    (per_state, most)
}

fn observed_barbs(lts: &Lts<RhoProc>, restrict: &BTreeSet<RhoName>) -> BTreeSet<Barb<RhoName>> {
    lts.states.iter().flat_map(|s| barbs(s, restrict)).collect()
}

fn show_barbs(bs: &BTreeSet<Barb<RhoName>>, aliases: &[(String, RhoName)]) -> String {
    let alias = |x: &RhoName| {
        aliases
            .iter()
            .find(|(_, y)| y == x)
            .map(|(a, _)| a.clone())
            .unwrap_or_else(|| print_rho_name(x))
    };
    let items: Vec<String> = bs
        .iter()
        .map(|b| match b.direction {
            crate::rho::Direction::Out => format!("~{}", alias(&b.name)),
            crate::rho::Direction::In => alias(&b.name),
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

/// Shortest depth of a π state with `barb`, if any.
fn pi_barb_depth(lts: &Lts<PiProc>, restrict: &BTreeSet<PiName>, barb: &Barb<PiName>) -> Option<usize> {
    (0..lts.len())
        .filter(|&s| pi_barbs(&lts.states[s], restrict).contains(barb))
        .map(|s| lts.depth[s])
        .min()
}

fn explore_pi(p: &PiProc, bounds: Bounds, what: &str) -> Result<Lts<PiProc>, HarnessError> {
    let lts = explore::<Pi>(p, bounds);
    if lts.truncated {
        return Err(HarnessError::BoundsTooSmall(format!(
            "π exploration of {what} truncated after {} states",
            lts.len()
        )));
    }
    Ok(lts)
}

/// `!((νz) u!z | Q)` against `(νz) !(u!z | Q)` under the legacy translation.
pub fn repro_cex1(q: &PiProc, bounds: ReproBounds) -> Result<Report, HarnessError> {
    let at = Atoms::avoiding(q);
    let p1 = PiProc::repl(PiProc::Par(vec![
        PiProc::new_name(&at.z, PiProc::output(&at.u, &at.z)),
        q.clone(),
    ]));
    let p2 = PiProc::new_name(
        &at.z,
        PiProc::repl(PiProc::Par(vec![PiProc::output(&at.u, &at.z), q.clone()])),
    );
    let (c1, c2) = (at.context(p1.clone()), at.context(p2.clone()));
    let mut report = Report::new("cex1");
    report.bounds("pi", bounds.pi);
    report.bounds("rho", bounds.rho);

    // π side
    let xs = BTreeSet::from([PiName::atom(&at.x)]);
    let out_x = Barb::output(PiName::atom(&at.x));
    let l1 = explore_pi(&c1, bounds.pi, "C[P1']")?;
    let l2 = explore_pi(&c2, bounds.pi, "C[P2']")?;
    let d1 = pi_barb_depth(&l1, &xs, &out_x);
    report.push(Check::pass_if(
        "pi: C[P1'] never reaches ~x",
        d1.is_none(),
        format!("{} states explored exhaustively, ~x at depth {d1:?}", l1.len()),
    ));
    let d2 = pi_barb_depth(&l2, &xs, &out_x);
    report.push(Check::pass_if(
        "pi: C[P2'] reaches ~x within 2 receptions and 3 further steps",
        matches!(d2, Some(k) if k <= 5),
        format!("{} states, first ~x at depth {d2:?}", l2.len()),
    ));

    // ρ side under the legacy translation
    let policy = RenamingPolicy::for_term(&PiProc::Par(vec![c1.clone(), c2.clone()]));
    let params = default_legacy_params(&policy)?;
    let phi = |a: &str| policy.phi(&PiName::atom(a));
    let u = phi(&at.u);
    let r1 = explore::<Rho>(&encode_mr(&c1, &params, &policy)?, bounds.rho);
    let r2 = explore::<Rho>(&encode_mr(&c2, &params, &policy)?, bounds.rho);
    let d = lincr(&lincr(&params.n0));
    let n = lincr(&params.n0);
    for (label, lts, expect, alias) in [
        ("rho: every u-object of [[C[P1']]] is d", &r1, &d, "d"),
        ("rho: every u-object of [[C[P2']]] is n", &r2, &n, "n"),
    ] {
        let (objs, most) = collect_objects(lts, &u);
        let all: Vec<&RhoName> = objs.iter().flatten().collect();
        let constant = !all.is_empty() && all.iter().all(|o| name_eq(o, expect));
        if most < 2 && lts.truncated && constant {
            return Err(HarnessError::BoundsTooSmall(format!(
                "{label}: fewer than two replication rounds within {} states",
                lts.len()
            )));
        }
        report.push(Check::pass_if(
            label,
            constant && most >= 2,
            format!(
                "{} u-outputs over {} states, up to {most} at once, all equivalent to {alias}: {constant}",
                all.len(),
                lts.len()
            ),
        ));
    }

    let restrict: BTreeSet<RhoName> = [&at.u, &at.x, &at.o].iter().map(|a| phi(a)).collect();
    let (b1, b2) = (observed_barbs(&r1, &restrict), observed_barbs(&r2, &restrict));
    let aliases = [
        ("u".to_string(), u.clone()),
        ("x".to_string(), phi(&at.x)),
        ("o".to_string(), phi(&at.o)),
    ];
    report.push(Check::pass_if(
        "rho: no barb on {u, x, o} separates the encodings within bounds",
        b1 == b2 && b1.contains(&Barb::output(phi(&at.x))),
        format!(
            "weak barbs {} vs {} ({} and {} states)",
            show_barbs(&b1, &aliases),
            show_barbs(&b2, &aliases),
            r1.len(),
            r2.len()
        ),
    ));

    // tabulated-name audit
    let (n0, p0) = (&params.n0, &params.p0);
    let t: Vec<RhoName> = tabulated_names(n0, p0).into_iter().map(|(_, x)| x).collect();
    let [a, b, c, d, e, f, g, h, i, j] = <[RhoName; 10]>::try_from(t).expect("ten names");
    let z = phi(&at.z);
    let hand1 = RhoProc::par([
        RhoProc::lift(
            a.clone(),
            RhoProc::input(
                b.clone(),
                n0.clone(),
                RhoProc::input(
                    c.clone(),
                    p0.clone(),
                    RhoProc::par([
                        RhoProc::input(e.clone(), z.clone(), RhoProc::send(u.clone(), z.clone())),
                        RhoProc::send(e.clone(), d.clone()),
                        translate_mr(q, &b, &c, &policy),
                        copier(&a),
                        RhoProc::lift(b.clone(), RhoProc::send(n0.clone(), n0.clone())),
                        RhoProc::lift(c.clone(), RhoProc::send(p0.clone(), p0.clone())),
                    ]),
                ),
            ),
        ),
        copier(&a),
        RhoProc::send(b.clone(), d.clone()),
        RhoProc::send(c.clone(), e.clone()),
    ]);
    let hand2 = RhoProc::par([
        RhoProc::input(
            p0.clone(),
            z.clone(),
            RhoProc::par([
                RhoProc::lift(
                    h.clone(),
                    RhoProc::input(
                        f.clone(),
                        d.clone(),
                        RhoProc::input(
                            g.clone(),
                            e.clone(),
                            RhoProc::par([
                                RhoProc::send(u.clone(), z.clone()),
                                translate_mr(q, &f, &g, &policy),
                                copier(&h),
                                RhoProc::lift(f.clone(), RhoProc::send(d.clone(), d.clone())),
                                RhoProc::lift(g.clone(), RhoProc::send(e.clone(), e.clone())),
                            ]),
                        ),
                    ),
                ),
                copier(&h),
                RhoProc::send(f.clone(), i.clone()),
                RhoProc::send(g.clone(), j.clone()),
            ]),
        ),
        RhoProc::send(p0.clone(), n0.clone()),
    ]);
    let ok1 = canon_proc(&hand1) == canon_proc(&translate_mr(&p1, n0, p0, &policy));
    let ok2 = canon_proc(&hand2) == canon_proc(&translate_mr(&p2, n0, p0, &policy));
    report.push(Check::pass_if(
        "tabulated names a..j reproduce [[P1']](n,p) and [[P2']](n,p)",
        ok1 && ok2,
        format!("[[P1']] matches: {ok1}, [[P2']] matches: {ok2}"),
    ));
    Ok(report)
}

/// `!(νz) u!z` against `!(νq)(νz) u!z` under the legacy translation.
pub fn repro_cex2(bounds: ReproBounds) -> Result<Report, HarnessError> {
    let at = Atoms::avoiding(&PiProc::Nil);
    let inner1 = PiProc::new_name(&at.z, PiProc::output(&at.u, &at.z));
    let inner2 = PiProc::new_name(&at.q, inner1.clone());
    let (p1, p2) = (PiProc::repl(inner1.clone()), PiProc::repl(inner2.clone()));
    let (c1, c2) = (at.context(p1.clone()), at.context(p2.clone()));
    let mut report = Report::new("cex2");
    report.bounds("pi", bounds.pi);
    report.bounds("rho", bounds.rho);

    // π side
    report.push(Check::pass_if(
        "pi: P1 and P2 are structurally congruent",
        pi_canon(&p1) == pi_canon(&p2),
        format!("canonical form {}", crate::syntax::print_pi(&pi_canon(&p1))),
    ));
    explore_pi(&c1, bounds.pi, "C[P1]")?;
    explore_pi(&c2, bounds.pi, "C[P2]")?;
    let fns: BTreeSet<PiName> = pi_free_names(&c1).union(&pi_free_names(&c2)).cloned().collect();
    let v = barbed_bisim::<Pi>(&c1, &c2, &fns, Mode::Weak, bounds.pi);
    report.push(Check::pass_if(
        "pi: C[P1] and C[P2] are weakly barbed bisimilar",
        v.result == BisimResult::Bisimilar,
        format!("{:?} over {} + {} states", v.result, v.left_states, v.right_states),
    ));

    // ρ side under the legacy translation
    let policy = RenamingPolicy::for_term(&PiProc::Par(vec![c1.clone(), c2.clone()]));
    let params = default_legacy_params(&policy)?;
    let (n0, p0) = (&params.n0, &params.p0);
    let phi = |a: &str| policy.phi(&PiName::atom(a));
    let u = phi(&at.u);
    let d = lincr(n0);
    for (label, inner, expect) in [
        ("rho: [[(vz) u!z]](n,p) reduces to u!(*n)", &inner1, n0),
        ("rho: [[(vq)(vz) u!z]](n,p) reduces to u!(*d)", &inner2, &d),
    ] {
        let lts = explore::<Rho>(&translate_mr(inner, n0, p0, &policy), bounds.pi);
        let finals: Vec<&RhoProc> =
            (0..lts.len()).filter(|&s| lts.edges[s].is_empty()).map(|s| &lts.states[s]).collect();
        let outputs_expected = |s: &RhoProc| {
            let objs = objects_on(s, &u);
            s.components().len() == 1 && objs.len() == 1 && name_eq(&objs[0], expect)
        };
        report.push(Check::pass_if(
            label,
            !lts.truncated && finals.len() == 1 && outputs_expected(finals[0]),
            format!("{} states, terminal states {}", lts.len(), finals.len()),
        ));
    }

    let r1 = explore::<Rho>(&encode_mr(&p1, &params, &policy)?, bounds.rho);
    let r2 = explore::<Rho>(&encode_mr(&p2, &params, &policy)?, bounds.rho);
    let (o1, most1) = collect_objects(&r1, &u);
    let (o2, most2) = collect_objects(&r2, &u);
    if (most1 < 2 && r1.truncated) || (most2 < 2 && r2.truncated) {
        return Err(HarnessError::BoundsTooSmall(
            "fewer than two replication rounds observed".into(),
        ));
    }
    let distinct_in_state = o1
        .iter()
        .all(|os| os.iter().enumerate().all(|(k, a)| os[k + 1..].iter().all(|b| !name_eq(a, b))));
    let seen: BTreeSet<&RhoName> = o1.iter().flatten().collect();
    report.push(Check::pass_if(
        "rho: u-objects of [[P1]] are pairwise distinct across rounds",
        distinct_in_state && most1 >= 2,
        format!("{} distinct objects, up to {most1} at once, none repeated within a state", seen.len()),
    ));
    let all2: Vec<&RhoName> = o2.iter().flatten().collect();
    let constant = !all2.is_empty() && all2.iter().all(|o| name_eq(o, &d));
    report.push(Check::pass_if(
        "rho: every u-object of [[P2]] is d",
        constant && most2 >= 2,
        format!("{} u-outputs, up to {most2} at once, all equivalent to d: {constant}", all2.len()),
    ));

    let xs = BTreeSet::from([phi(&at.x)]);
    let out_x = Barb::output(phi(&at.x));
    let e1 = explore::<Rho>(&encode_mr(&c1, &params, &policy)?, bounds.rho);
    let e2 = explore::<Rho>(&encode_mr(&c2, &params, &policy)?, bounds.rho);
    let has1 = observed_barbs(&e1, &xs).contains(&out_x);
    let has2 = observed_barbs(&e2, &xs).contains(&out_x);
    report.push(Check::new(
        "rho: the translated context separates [[C[P1]]] from [[C[P2]]]",
        match (has1, has2) {
            (false, true) => Verdict::Pass,
            (true, _) => Verdict::Fail,
            (false, false) => Verdict::Unknown,
        },
        format!(
            "[[C[P2]]] reaches ~x: {has2}; [[C[P1]]] shows no ~x in {} states (truncated: {})",
            e1.len(),
            e1.truncated
        ),
    ));
    Ok(report)
}
