//! Structurally restricted weak observation of name-server encodings.
//!
//! The source's top-level parallel structure is followed as the translation
//! splits the handle. At each non-parallel leaf `S` the term
//! `⟦S⟧(n', v) | NS` is explored using administrative steps only: those on
//! the name server's own channels (`v`, `x`, `z`) and those on names
//! derivable from the top-level handle `n`. Steps on images of source names
//! correspond to source communications and are not taken.

use std::collections::BTreeSet;

use crate::encode::{name_server, translate_ns, EncodeError, EncodingParams, RenamingPolicy};
use crate::lts::{Bounds, Lts, Ternary};
use crate::pi::{PiName, PiProc};
use crate::rho::canon::{canon_name, canon_proc};
use crate::rho::names::{derivable, lincr, rincr};
use crate::rho::reduce::{barbs, step_labelled};
use crate::rho::term::{Barb, RhoName, RhoProc};

/// Does the administrative closure of some leaf exhibit `barb`?
pub fn restricted_weak_obs(
    source: &PiProc,
    params: &EncodingParams,
    policy: &RenamingPolicy,
    barb: &Barb<RhoName>,
    bounds: Bounds,
) -> Result<Ternary, EncodeError> {
    let admin = Admin::new(params);
    let restrict = BTreeSet::from([canon_name(&barb.name)]);
    let barb = Barb {
        direction: barb.direction,
        name: canon_name(&barb.name),
    };
    leaf_obs(source, &params.n, params, policy, &admin, &restrict, &barb, bounds)
}

/// All source-level strong barbs over `restrict` as seen through the
/// restricted weak predicate.
pub fn restricted_weak_barbs(
    source: &PiProc,
    params: &EncodingParams,
    policy: &RenamingPolicy,
    restrict: &BTreeSet<PiName>,
    bounds: Bounds,
) -> Result<(BTreeSet<Barb<PiName>>, bool), EncodeError> {
    let mut out = BTreeSet::new();
    let mut unknown = false;
    for a in restrict {
        for b in [Barb::output(a.clone()), Barb::input(a.clone())] {
            let rb = Barb {
                direction: b.direction,
                name: policy.phi(a),
            };
            match restricted_weak_obs(source, params, policy, &rb, bounds)? {
                Ternary::Yes => {
                    out.insert(b);
                }
                Ternary::No => {}
                Ternary::Unknown => unknown = true,
            }
        }
    }
    Ok((out, unknown))
}

struct Admin {
    server: Vec<RhoName>,
    n: RhoName,
}

impl Admin {
    fn new(p: &EncodingParams) -> Self {
        Admin {
            server: [&p.v, &p.x, &p.z].into_iter().map(canon_name).collect(),
            n: canon_name(&p.n),
        }
    }

    fn allows(&self, subject: &RhoName) -> bool {
        self.server.contains(subject) || derivable(std::slice::from_ref(&self.n), subject)
    }
}

#[allow(clippy::too_many_arguments)]
fn leaf_obs(
    s: &PiProc,
    n: &RhoName,
    params: &EncodingParams,
    policy: &RenamingPolicy,
    admin: &Admin,
    restrict: &BTreeSet<RhoName>,
    barb: &Barb<RhoName>,
    bounds: Bounds,
) -> Result<Ternary, EncodeError> {
    if let PiProc::Par(ps) = s {
        if let [first, rest @ ..] = ps.as_slice() {
            if !rest.is_empty() {
                let left = leaf_obs(first, &lincr(n), params, policy, admin, restrict, barb, bounds)?;
                if left == Ternary::Yes {
                    return Ok(left);
                }
                let right = leaf_obs(
                    &PiProc::par(rest.to_vec()),
                    &rincr(n),
                    params,
                    policy,
                    admin,
                    restrict,
                    barb,
                    bounds,
                )?;
                return Ok(match (left, right) {
                    (_, Ternary::Yes) => Ternary::Yes,
                    (Ternary::No, Ternary::No) => Ternary::No,
                    _ => Ternary::Unknown,
                });
            }
        }
    }
    let t = translate_ns(s, n, &params.v, policy)?;
    let root = canon_proc(&RhoProc::Par(vec![t, name_server(params)]));
    let lts = Lts::build(root, bounds, |p| {
        step_labelled(p)
            .into_iter()
            .filter(|(x, _)| admin.allows(x))
            .map(|(_, q)| q)
            .collect()
    });
    if lts.states.iter().any(|p| barbs(p, restrict).contains(barb)) {
        Ok(Ternary::Yes)
    } else if lts.truncated {
        Ok(Ternary::Unknown)
    } else {
        Ok(Ternary::No)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::pi_barbs;

    fn setup(p: &PiProc) -> (EncodingParams, RenamingPolicy) {
        let policy = RenamingPolicy::for_term(p);
        (EncodingParams::for_policy(&policy).unwrap(), policy)
    }

    fn obs(p: &PiProc, dir_out: bool, atom: &str) -> Ternary {
        let (params, policy) = setup(p);
        let x = policy.phi(&PiName::atom(atom));
        let b = if dir_out { Barb::output(x) } else { Barb::input(x) };
        restricted_weak_obs(p, &params, &policy, &b, Bounds::default()).unwrap()
    }

    #[test]
    fn leaf_output() {
        assert_eq!(obs(&PiProc::output("x", "a"), true, "x"), Ternary::Yes);
    }

    #[test]
    fn right_branch() {
        let p = PiProc::par([PiProc::output("x", "a"), PiProc::output("y", "b")]);
        assert_eq!(obs(&p, true, "y"), Ternary::Yes);
    }

    #[test]
    fn guarded_output_not_seen() {
        let p = PiProc::input("x", "y", PiProc::output("y", "a"));
        assert_eq!(obs(&p, true, "a"), Ternary::No);
    }

    #[test]
    fn source_communication_not_taken() {
        // x!a | x?(y).y!b has no strong barb on a
        let p = PiProc::par([
            PiProc::output("x", "a"),
            PiProc::input("x", "y", PiProc::output("y", "b")),
        ]);
        assert_eq!(obs(&p, true, "a"), Ternary::No);
    }

    #[test]
    fn restriction_and_replication_leaves() {
        let p = PiProc::par([
            PiProc::new_name("k", PiProc::output("a", "k")),
            PiProc::repl(PiProc::input("b", "y", PiProc::Nil)),
        ]);
        let (params, policy) = setup(&p);
        let restrict = crate::pi::pi_free_names(&p);
        let (seen, unknown) =
            restricted_weak_barbs(&p, &params, &policy, &restrict, Bounds::default()).unwrap();
        assert!(!unknown);
        assert_eq!(seen, pi_barbs(&p, &restrict));
    }
}
