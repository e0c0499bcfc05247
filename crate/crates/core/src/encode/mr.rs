//! The legacy statically-quoted translation with parameter pair `(n, p)`.

use super::ns::ParamManifest;
use super::policy::RenamingPolicy;
use super::EncodeError;
use crate::pi::term::PiProc;
use crate::rho::canon::{canon_name, name_eq};
use crate::rho::names::{derivable, lincr, ncomp, rincr};
use crate::rho::term::{copier, RhoName, RhoProc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegacyParams {
    pub n0: RhoName,
    pub p0: RhoName,
}

impl LegacyParams {
    /// Distinct from each other and from every source image, and no source
    /// image is derivable from them.
    pub fn validate(&self, policy: &RenamingPolicy) -> Result<(), EncodeError> {
        if name_eq(&self.n0, &self.p0) {
            return Err(EncodeError::InvalidParams("n0 and p0 coincide".into()));
        }
        let from = [self.n0.clone(), self.p0.clone()];
        for (atom, x) in policy.entries() {
            if name_eq(x, &self.n0) || name_eq(x, &self.p0) {
                return Err(EncodeError::InvalidParams(format!(
                    "parameter clashes with the image of '{atom}'"
                )));
            }
            if derivable(&from, x) {
                return Err(EncodeError::InvalidParams(format!(
                    "the image of '{atom}' is derivable from the parameters"
                )));
            }
        }
        Ok(())
    }

    pub fn manifest(&self, policy: &RenamingPolicy) -> ParamManifest {
        let show = crate::syntax::print_rho_name;
        ParamManifest {
            scheme: "mr",
            atoms: policy
                .entries()
                .iter()
                .map(|(a, x)| (a.clone(), show(&canon_name(x))))
                .collect(),
            params: vec![
                ("n".into(), show(&canon_name(&self.n0))),
                ("p".into(), show(&canon_name(&self.p0))),
            ],
        }
    }
}

/// `n0 = @(Π x!(0))` and `p0 = @(Π x?(@0).0)` over the images of every
/// atom of the source, falling back to `(ˡ@0, @0ʳ)` when there are none.
pub fn default_legacy_params(policy: &RenamingPolicy) -> Result<LegacyParams, EncodeError> {
    let images = policy.images();
    let params = if images.is_empty() {
        LegacyParams {
            n0: lincr(&RhoName::zero()),
            p0: rincr(&RhoName::zero()),
        }
    } else {
        let outs = images.iter().map(|x| RhoProc::lift(x.clone(), RhoProc::Nil));
        let ins = images
            .iter()
            .map(|x| RhoProc::input(x.clone(), RhoName::zero(), RhoProc::Nil));
        LegacyParams {
            n0: canon_name(&RhoName::quote(RhoProc::par(outs))),
            p0: canon_name(&RhoName::quote(RhoProc::par(ins))),
        }
    };
    params.validate(policy)?;
    Ok(params)
}

/// `⟦p⟧(n0, p0)` under the legacy clauses.
pub fn encode_mr(
    p: &PiProc,
    params: &LegacyParams,
    policy: &RenamingPolicy,
) -> Result<RhoProc, EncodeError> {
    params.validate(policy)?;
    Ok(mr(p, &params.n0, &params.p0, policy))
}

/// The clauses themselves, without parameter validation.
pub fn translate_mr(p: &PiProc, n: &RhoName, q: &RhoName, policy: &RenamingPolicy) -> RhoProc {
    mr(p, n, q, policy)
}

fn mr(p: &PiProc, n: &RhoName, q: &RhoName, pol: &RenamingPolicy) -> RhoProc {
    match p {
        PiProc::Nil => RhoProc::Nil,
        PiProc::Output(x, y) => RhoProc::send(pol.phi(x), pol.phi(y)),
        PiProc::Input(x, y, b) => RhoProc::input(pol.phi(x), pol.phi(y), mr(b, n, q, pol)),
        PiProc::Par(ps) => match ps.as_slice() {
            [] => RhoProc::Nil,
            [only] => mr(only, n, q, pol),
            [first, rest @ ..] => RhoProc::Par(vec![
                mr(first, &lincr(n), &lincr(q), pol),
                mr(&PiProc::par(rest.to_vec()), &rincr(n), &rincr(q), pol),
            ]),
        },
        PiProc::New(x, b) => RhoProc::Par(vec![
            RhoProc::input(q.clone(), pol.phi(x), mr(b, &lincr(n), &lincr(q), pol)),
            RhoProc::send(q.clone(), n.clone()),
        ]),
        PiProc::Repl(b) => {
            let a = ncomp(n, q);
            let nr = rincr(n);
            let qr = rincr(q);
            let body = RhoProc::Par(vec![
                mr(b, n, q, pol),
                copier(&a),
                RhoProc::lift(nr.clone(), RhoProc::send(n.clone(), n.clone())),
                RhoProc::lift(qr.clone(), RhoProc::send(q.clone(), q.clone())),
            ]);
            RhoProc::Par(vec![
                RhoProc::lift(
                    a.clone(),
                    RhoProc::input(nr.clone(), n.clone(), RhoProc::input(qr.clone(), q.clone(), body)),
                ),
                copier(&a),
                RhoProc::send(nr, lincr(n)),
                RhoProc::send(qr, lincr(q)),
            ])
        }
    }
}
