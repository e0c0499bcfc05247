//! Subcommand dispatch. Each command returns its stdout and exit status.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rhopi::encode::{default_legacy_params, encode_mr, encode_ns, RenamingPolicy};
use rhopi::equiv::{barbed_bisim, divergence_probe, BisimResult, Mode};
use rhopi::harness::{
    check_criteria, generate_corpus_over, repro_cex1, repro_cex2, repro_name_server,
    repro_separation_witness, CriteriaBounds, Report, ReproBounds, Verdict,
};
use rhopi::lts::{explore, render_barb, write_json_lines, Bounds, Calculus};
use rhopi::pi::{pi_canon, pi_free_names, PiProc};
use rhopi::rho::{canon_proc, RhoName, free_names, name_eq, quote_depth, quote_depth_proc, struct_eq};
use rhopi::syntax::{parse_pi, print_pi, print_rho, RhoPrinter};
use rhopi::{Pi, Rho};

use crate::input::{is_pi, pi_names, pi_term, rho_name, rho_names, rho_term, CliError};
use crate::{Command, ReproArg, SchemeArg};

pub struct Output {
    pub stdout: String,
    pub status: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, status: 0 }
    }

    fn check(stdout: String, failed: bool) -> Self {
        Output {
            stdout,
            status: u8::from(failed),
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Parse { term, pi } => Ok(Output::ok(line(if is_pi(&term, pi) {
            print_pi(&pi_canon(&pi_term(&term)?))
        } else {
            print_rho(&canon_proc(&rho_term(&term)?))
        }))),
        Command::Nameq { a, b } => Ok(Output::ok(line(name_eq(&rho_name(&a)?, &rho_name(&b)?)))),
        Command::Structeq { a, b, pi } => {
            let eq = if is_pi(&a, pi) || is_pi(&b, pi) {
                pi_canon(&pi_term(&a)?) == pi_canon(&pi_term(&b)?)
            } else {
                struct_eq(&rho_term(&a)?, &rho_term(&b)?)
            };
            Ok(Output::ok(line(eq)))
        }
        Command::Qdepth { term } => {
            let d = match rho_name(&term) {
                Ok(x) => quote_depth(&x),
                Err(_) => quote_depth_proc(&rho_term(&term)?),
            };
            Ok(Output::ok(line(d)))
        }
        Command::Reduce { term, steps, pi } => Ok(Output::ok(if is_pi(&term, pi) {
            reduce::<Pi>(&pi_term(&term)?, steps)
        } else {
            reduce::<Rho>(&rho_term(&term)?, steps)
        })),
        Command::Trace {
            term,
            pi,
            json,
            restrict,
            bounds,
        } => {
            let bounds = bounds.bounds();
            if is_pi(&term, pi) {
                let p = pi_term(&term)?;
                let r = match restrict {
                    Some(xs) => pi_names(&xs)?,
                    None => pi_free_names(&p),
                };
                trace::<Pi>(&p, &r, bounds, json)
            } else {
                let p = rho_term(&term)?;
                let r = match restrict {
                    Some(xs) => rho_names(&xs)?,
                    None => free_names(&canon_proc(&p)),
                };
                trace::<Rho>(&p, &r, bounds, json)
            }
        }
        Command::Barbs { term, pi, restrict } => {
            let shown = if is_pi(&term, pi) {
                let p = pi_term(&term)?;
                let r = match restrict {
                    Some(xs) => pi_names(&xs)?,
                    None => pi_free_names(&p),
                };
                barbs::<Pi>(&p, &r)
            } else {
                let p = rho_term(&term)?;
                let r = match restrict {
                    Some(xs) => rho_names(&xs)?,
                    None => free_names(&canon_proc(&p)),
                };
                barbs::<Rho>(&p, &r)
            };
            Ok(Output::ok(line(shown)))
        }
        Command::Encode {
            term,
            scheme,
            manifest,
            raw,
        } => encode(&pi_term(&term)?, scheme, manifest, raw).map(Output::ok),
        Command::Bisim {
            a,
            b,
            pi,
            weak,
            restrict,
            json,
            bounds,
        } => {
            let mode = if weak { Mode::Weak } else { Mode::Strong };
            let bounds = bounds.bounds();
            let v = if is_pi(&a, pi) || is_pi(&b, pi) {
                let (p, q) = (pi_term(&a)?, pi_term(&b)?);
                let r = match restrict {
                    Some(xs) => pi_names(&xs)?,
                    None => pi_free_names(&p).union(&pi_free_names(&q)).cloned().collect(),
                };
                barbed_bisim::<Pi>(&p, &q, &r, mode, bounds)
            } else {
                let (p, q) = (rho_term(&a)?, rho_term(&b)?);
                let r = match restrict {
                    Some(xs) => rho_names(&xs)?,
                    None => free_names(&canon_proc(&p))
                        .union(&free_names(&canon_proc(&q)))
                        .cloned()
                        .collect(),
                };
                barbed_bisim::<Rho>(&p, &q, &r, mode, bounds)
            };
            let out = if json {
                line(serde_json::to_string(&v).expect("verdict serializes"))
            } else {
                let mut s = line(format!("{:?}", v.result));
                let _ = writeln!(s, "states: {} + {}, truncated: {}", v.left_states, v.right_states, v.truncated);
                if let Some(w) = &v.witness {
                    let _ = writeln!(s, "witness: {:?}", w.reason);
                    for t in &w.trace {
                        let _ = writeln!(s, "  {t}");
                    }
                }
                s
            };
            Ok(Output::check(out, v.result == BisimResult::NotBisimilar))
        }
        Command::Diverge {
            term,
            pi,
            encode: scheme,
            json,
            bounds,
        } => {
            let bounds = bounds.bounds();
            let r = match scheme {
                Some(s) => divergence_probe::<Rho>(&encoded(&pi_term(&term)?, s)?, bounds),
                None if is_pi(&term, pi) => divergence_probe::<Pi>(&pi_term(&term)?, bounds),
                None => divergence_probe::<Rho>(&rho_term(&term)?, bounds),
            };
            Ok(Output::ok(if json {
                line(serde_json::to_string(&r).expect("report serializes"))
            } else {
                line(format!(
                    "{:?} (rule {:?}, {} states, truncated: {})",
                    r.verdict, r.rule, r.states, r.truncated
                ))
            }))
        }
        Command::Repro { which, q, json } => {
            let report = match which {
                ReproArg::Cex1 => {
                    let q = match q {
                        Some(src) => parse_pi(&src)?,
                        None => PiProc::Nil,
                    };
                    repro_cex1(&q, ReproBounds::default())
                }
                ReproArg::Cex2 => repro_cex2(ReproBounds::default()),
                ReproArg::Separation => Ok(repro_separation_witness(Bounds::default())),
                ReproArg::Nameserver => Ok(repro_name_server()),
            };
            match report {
                Ok(r) => Ok(Output::check(render_report(&r, json, true), r.failed())),
                Err(e) => Ok(Output::check(line(format!("report did not resolve: {e}")), true)),
            }
        }
        Command::Criteria {
            seed,
            count,
            size,
            pool,
            json,
            verbose,
        } => {
            let corpus = generate_corpus_over(seed, count, size, pool);
            let r = check_criteria(&corpus, CriteriaBounds::default());
            Ok(Output::check(render_report(&r, json, verbose), r.failed()))
        }
    }
}

fn reduce<C: Calculus>(t: &C::Term, steps: usize) -> String {
    let mut cur = C::canon(t);
    let mut out = line(C::render(&cur));
    for _ in 0..steps {
        let Some(next) = C::successors(&cur).into_iter().next() else {
            out.push_str("(no redex)\n");
            break;
        };
        cur = next;
        out.push_str(&line(format!("-> {}", C::render(&cur))));
    }
    out
}

fn trace<C: Calculus>(
    t: &C::Term,
    restrict: &BTreeSet<C::Name>,
    bounds: Bounds,
    json: bool,
) -> Result<Output, CliError> {
    let lts = explore::<C>(t, bounds);
    let mut buf = Vec::new();
    if json {
        write_json_lines::<C, _>(&lts, restrict, &mut buf).expect("writing to memory");
        return Ok(Output::ok(String::from_utf8(buf).expect("JSON is UTF-8")));
    }
    let r = C::canon_restrict(restrict);
    let mut s = String::new();
    for (i, st) in lts.states.iter().enumerate() {
        let b: Vec<String> = C::barbs(st, &r).iter().map(render_barb::<C>).collect();
        let _ = writeln!(s, "{i}: {}   [{}] -> {:?}", C::render(st), b.join(" "), lts.edges[i]);
    }
    let _ = writeln!(s, "{} states, truncated: {}", lts.len(), lts.truncated);
    Ok(Output::ok(s))
}

fn barbs<C: Calculus>(t: &C::Term, restrict: &BTreeSet<C::Name>) -> String {
    let r = C::canon_restrict(restrict);
    C::barbs(&C::canon(t), &r)
        .iter()
        .map(render_barb::<C>)
        .collect::<Vec<_>>()
        .join(" ")
}

fn encoded(p: &PiProc, scheme: SchemeArg) -> Result<rhopi::rho::RhoProc, CliError> {
    Ok(match scheme {
        SchemeArg::Ns => encode_ns(p)?.term,
        SchemeArg::Mr => {
            let policy = RenamingPolicy::for_term(p);
            encode_mr(p, &default_legacy_params(&policy)?, &policy)?
        }
    })
}

fn encode(p: &PiProc, scheme: SchemeArg, manifest: bool, raw: bool) -> Result<String, CliError> {
    let (term, policy, m, params) = match scheme {
        SchemeArg::Ns => {
            let e = encode_ns(p)?;
            let m = e.params.manifest(&e.policy);
            let named: Vec<(String, RhoName)> =
                e.params.named().iter().map(|(k, x)| (k.to_string(), (*x).clone())).collect();
            (e.term, e.policy, m, named)
        }
        SchemeArg::Mr => {
            let policy = RenamingPolicy::for_term(p);
            let params = default_legacy_params(&policy)?;
            let t = encode_mr(p, &params, &policy)?;
            let m = params.manifest(&policy);
            let named = vec![("n".to_string(), params.n0), ("p".to_string(), params.p0)];
            (t, policy, m, named)
        }
    };
    let mut out = if raw {
        line(print_rho(&term))
    } else {
        let mut aliases: Vec<(RhoName, String)> = policy
            .entries()
            .iter()
            .map(|(a, x)| (x.clone(), a.clone()))
            .collect();
        // parameters whose name clashes with a source atom are primed
        for (k, x) in params {
            let k = if policy.lookup(&k).is_some() { format!("{k}'") } else { k };
            aliases.push((x, k));
        }
        line(RhoPrinter::with_aliases(aliases).proc(&term))
    };
    if manifest {
        let _ = writeln!(out, "// scheme {}", m.scheme);
        for (k, v) in &m.atoms {
            let _ = writeln!(out, "// {k} := {v}");
        }
        for (k, v) in &m.params {
            let k = if policy.lookup(k).is_some() { format!("{k}'") } else { k.clone() };
            let _ = writeln!(out, "// {k} := {v}");
        }
    }
    Ok(out)
}

fn render_report(r: &Report, json: bool, all: bool) -> String {
    if json {
        return line(serde_json::to_string_pretty(r).expect("report serializes"));
    }
    let tag = |v: Verdict| match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Unknown => "unknown",
    };
    let mut s = String::new();
    for c in &r.checks {
        if all || c.verdict != Verdict::Pass {
            let _ = writeln!(s, "[{}] {}: {}", tag(c.verdict), c.label, c.evidence);
        }
    }
    let overall = if r.passed() {
        "PASS"
    } else if r.failed() {
        "FAIL"
    } else {
        "INCONCLUSIVE"
    };
    let _ = writeln!(
        s,
        "{}: {overall} ({} pass, {} fail, {} unknown, unknown rate {:.1}%)",
        r.name,
        r.count(Verdict::Pass),
        r.count(Verdict::Fail),
        r.count(Verdict::Unknown),
        100.0 * r.unknown_rate()
    );
    s
}
