//! The separation witness and the name-server check.

use std::collections::BTreeSet;

use super::repro::objects_on;
use super::{Check, Report};
use crate::encode::{name_server, EncodingParams, RenamingPolicy};
use crate::lts::Bounds;
use crate::rho::names::{free_names, gen_fresh, lincr, lincr_n, rincr};
use crate::rho::reduce::{barbs, step};
use crate::rho::term::{Barb, RhoName, RhoProc};
use crate::rho::{canon_name, canon_proc, name_eq};
use crate::syntax::{print_rho, print_rho_name};

/// `P = a!(*x1 | *x2) | a?(n).n!(0)` and `u = @(*x1 | *x2)`: `u` is not free
/// in `P` and `P` has no barb on it, yet `P → u!(0)`.
pub fn repro_separation_witness(bounds: Bounds) -> Report {
    let a = RhoName::zero();
    let x1 = lincr(&a);
    let x2 = rincr(&a);
    let n = lincr(&x1);
    let payload = RhoProc::par([RhoProc::Drop(x1), RhoProc::Drop(x2)]);
    let u = canon_name(&RhoName::quote(payload.clone()));
    let p = canon_proc(&RhoProc::par([
        RhoProc::lift(a.clone(), payload),
        RhoProc::input(a, n.clone(), RhoProc::lift(n, RhoProc::Nil)),
    ]));
    let only_u = BTreeSet::from([u.clone()]);
    let mut report = Report::new("separation");
    report.bounds("steps", bounds);

    let b = barbs(&p, &only_u);
    report.push(Check::pass_if(
        "P has no barb on u",
        b.is_empty(),
        format!("P = {}, barbs on u: {}", print_rho(&p), b.len()),
    ));
    let fns = free_names(&p);
    report.push(Check::pass_if(
        "u is not a free name of P",
        !fns.iter().any(|x| name_eq(x, &u)),
        format!(
            "fn(P) = {{{}}}",
            fns.iter().map(print_rho_name).collect::<Vec<_>>().join(", ")
        ),
    ));
    let next = step(&p);
    let target = canon_proc(&RhoProc::lift(u.clone(), RhoProc::Nil));
    let shows = next.len() == 1 && next[0] == target && barbs(&next[0], &only_u) == BTreeSet::from([Barb::output(u)]);
    report.push(Check::pass_if(
        "P reduces in one step to u!(0), which shows ~u",
        shows,
        format!(
            "successors: [{}]",
            next.iter().map(print_rho).collect::<Vec<_>>().join(", ")
        ),
    ));
    report
}

/// The names the server hands out for `k` consecutive requests, or `None`
/// if any phase is not deterministic.
pub fn served_names(params: &EncodingParams, k: usize) -> Option<Vec<RhoName>> {
    let mut state = canon_proc(&name_server(params));
    run_to_quiescence(&mut state)?;
    let mut reply_to = gen_fresh([&params.n, &params.v, &params.x, &params.z, &params.s]);
    let mut out = Vec::new();
    for _ in 0..k {
        reply_to = lincr(&reply_to);
        state = canon_proc(&RhoProc::par([state, RhoProc::send(params.v.clone(), reply_to.clone())]));
        run_to_quiescence(&mut state)?;
        let got = objects_on(&state, &canon_name(&reply_to));
        if got.len() != 1 {
            return None;
        }
        out.push(got[0].clone());
    }
    Some(out)
}

fn run_to_quiescence(state: &mut RhoProc) -> Option<usize> {
    let mut steps = 0;
    loop {
        let next = step(state);
        match next.len() {
            0 => return Some(steps),
            1 => {
                *state = next.into_iter().next().unwrap();
                steps += 1;
            }
            _ => return None,
        }
    }
}

/// The server reaches its ready state in exactly two steps and serves the
/// left-increment sequence from `s`.
pub fn repro_name_server() -> Report {
    let policy = RenamingPolicy::new(RhoName::zero());
    let params = EncodingParams::for_policy(&policy).expect("parameters for the empty policy");
    let mut report = Report::new("name-server");
    let mut state = canon_proc(&name_server(&params));
    let steps = run_to_quiescence(&mut state);
    report.push(Check::pass_if(
        "initial state reaches ready in exactly 2 steps",
        steps == Some(2),
        format!("deterministic steps to quiescence: {steps:?}"),
    ));
    let served = served_names(&params, 5).unwrap_or_default();
    let distinct = served
        .iter()
        .enumerate()
        .all(|(i, a)| served[i + 1..].iter().all(|b| !name_eq(a, b)));
    report.push(Check::pass_if(
        "first five served names are pairwise distinct",
        served.len() == 5 && distinct,
        format!("{} names served", served.len()),
    ));
    let sequence = served.len() == 5
        && served
            .iter()
            .enumerate()
            .all(|(i, a)| name_eq(a, &lincr_n(&params.s, i)));
    report.push(Check::pass_if(
        "the i-th served name is the (i-1)-fold left increment of s",
        sequence,
        format!("s = {}", print_rho_name(&params.s)),
    ));
    report
}
