//! Translation with a runtime name server.

use serde::Serialize;

use super::policy::RenamingPolicy;
use super::EncodeError;
use crate::pi::term::{PiName, PiProc};
use crate::rho::canon::{canon_name, name_eq};
use crate::rho::names::{gen_fresh, lincr, ncomp, ns_member, rincr};
use crate::rho::term::{copier, NamespaceScheme, RhoName, RhoProc};

/// Parameters of the name-server encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingParams {
    /// Return address and replication handle.
    pub n: RhoName,
    /// Request channel of the name server.
    pub v: RhoName,
    pub x: RhoName,
    pub z: RhoName,
    /// Root of the served namespace.
    pub s: RhoName,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamManifest {
    pub scheme: &'static str,
    pub atoms: Vec<(String, String)>,
    pub params: Vec<(String, String)>,
}

impl EncodingParams {
    /// Choose parameters fresh for the policy's image.
    pub fn for_policy(policy: &RenamingPolicy) -> Result<Self, EncodeError> {
        let images = policy.images();
        let s = gen_fresh(images.iter());
        let v = rincr(&s);
        let x = rincr(&v);
        let z = rincr(&x);
        let mut avoid = images.clone();
        avoid.extend([s.clone(), v.clone(), x.clone(), z.clone()]);
        let n = gen_fresh(avoid.iter());
        let params = EncodingParams { n, v, x, z, s };
        params.validate(&images)?;
        Ok(params)
    }

    /// A second parameter set sharing `v`, `x` and `z` but with a different
    /// handle and namespace root.
    pub fn alternative(&self, policy: &RenamingPolicy) -> Result<Self, EncodeError> {
        let images = policy.images();
        let mut avoid = images.clone();
        avoid.extend([
            self.n.clone(),
            self.v.clone(),
            self.x.clone(),
            self.z.clone(),
            self.s.clone(),
        ]);
        let s = gen_fresh(avoid.iter());
        avoid.push(s.clone());
        let n = gen_fresh(avoid.iter());
        let params = EncodingParams {
            n,
            s,
            ..self.clone()
        };
        params.validate(&images)?;
        Ok(params)
    }

    pub fn validate(&self, source_names: &[RhoName]) -> Result<(), EncodeError> {
        let named = self.named();
        for (i, (a, x)) in named.iter().enumerate() {
            for (b, y) in &named[i + 1..] {
                if name_eq(x, y) {
                    return Err(EncodeError::InvalidParams(format!("{a} and {b} coincide")));
                }
            }
            if source_names.iter().any(|m| name_eq(m, x)) {
                return Err(EncodeError::InvalidParams(format!("{a} clashes with a source name")));
            }
        }
        for (a, x) in &named[..4] {
            if ns_member(&self.s, NamespaceScheme::LeftIncrement, x) {
                return Err(EncodeError::InvalidParams(format!(
                    "{a} lies in the served namespace"
                )));
            }
        }
        Ok(())
    }

    /// Parameters with their conventional names.
    pub fn named(&self) -> [(&'static str, &RhoName); 5] {
        [
            ("n", &self.n),
            ("v", &self.v),
            ("x", &self.x),
            ("z", &self.z),
            ("s", &self.s),
        ]
    }

    pub fn manifest(&self, policy: &RenamingPolicy) -> ParamManifest {
        let show = crate::syntax::print_rho_name;
        ParamManifest {
            scheme: "ns",
            atoms: policy
                .entries()
                .iter()
                .map(|(a, x)| (a.clone(), show(&canon_name(x))))
                .collect(),
            params: self
                .named()
                .iter()
                .map(|(a, x)| (a.to_string(), show(&canon_name(x))))
                .collect(),
        }
    }
}

/// `D(x) | x!( z?(a).v?(r).( D(x) | r!(*a) | z!(a!(0)) ) ) | z!(*s)`.
pub fn name_server(params: &EncodingParams) -> RhoProc {
    let EncodingParams { v, x, z, s, .. } = params;
    let a = gen_fresh([v, x, z, s]);
    let r = gen_fresh([v, x, z, s, &a]);
    let serve = RhoProc::input(
        z.clone(),
        a.clone(),
        RhoProc::input(
            v.clone(),
            r.clone(),
            RhoProc::par([
                copier(x),
                RhoProc::send(r, a.clone()),
                RhoProc::lift(z.clone(), RhoProc::lift(a, RhoProc::Nil)),
            ]),
        ),
    );
    RhoProc::par([
        copier(x),
        RhoProc::lift(x.clone(), serve),
        RhoProc::send(z.clone(), s.clone()),
    ])
}

/// `⟦p⟧(n, v)`.
pub fn translate_ns(
    p: &PiProc,
    n: &RhoName,
    v: &RhoName,
    policy: &RenamingPolicy,
) -> Result<RhoProc, EncodeError> {
    Translator {
        policy,
        v,
        handles: None,
    }
    .go(p, n)
}

/// The handles consumed by restriction and replication clauses while
/// translating `p`, in translation order.
pub fn materialized_handles(
    p: &PiProc,
    n: &RhoName,
    v: &RhoName,
    policy: &RenamingPolicy,
) -> Result<Vec<RhoName>, EncodeError> {
    let mut t = Translator {
        policy,
        v,
        handles: Some(Vec::new()),
    };
    t.go(p, n)?;
    Ok(t.handles.unwrap_or_default())
}

struct Translator<'a> {
    policy: &'a RenamingPolicy,
    v: &'a RhoName,
    handles: Option<Vec<RhoName>>,
}

impl Translator<'_> {
    fn phi(&self, x: &PiName) -> RhoName {
        self.policy.phi(x)
    }

    fn record(&mut self, n: &RhoName) {
        if let Some(h) = &mut self.handles {
            h.push(n.clone());
        }
    }

    fn go(&mut self, p: &PiProc, n: &RhoName) -> Result<RhoProc, EncodeError> {
        Ok(match p {
            PiProc::Nil => RhoProc::Nil,
            PiProc::Output(x, z) => RhoProc::send(self.phi(x), self.phi(z)),
            PiProc::Input(x, y, b) => RhoProc::input(self.phi(x), self.phi(y), self.go(b, n)?),
            PiProc::Par(ps) => match ps.as_slice() {
                [] => RhoProc::Nil,
                [only] => self.go(only, n)?,
                [first, rest @ ..] => {
                    let left = self.go(first, &lincr(n))?;
                    let right = self.go(&PiProc::par(rest.to_vec()), &rincr(n))?;
                    RhoProc::Par(vec![left, right])
                }
            },
            PiProc::New(x, b) => {
                self.record(n);
                RhoProc::Par(vec![
                    RhoProc::send(self.v.clone(), n.clone()),
                    RhoProc::input(n.clone(), self.phi(x), self.go(b, &ncomp(n, n))?),
                ])
            }
            PiProc::Repl(b) => {
                let PiProc::Input(x, y, body) = &**b else {
                    return Err(EncodeError::UnguardedReplication(crate::syntax::print_pi(p)));
                };
                self.record(n);
                let inner = self.go(body, &ncomp(n, n))?;
                RhoProc::Par(vec![
                    copier(n),
                    RhoProc::lift(
                        n.clone(),
                        RhoProc::input(
                            self.phi(x),
                            self.phi(y),
                            RhoProc::Par(vec![copier(n), inner]),
                        ),
                    ),
                ])
            }
        })
    }
}

/// The result of encoding a source term.
#[derive(Clone, Debug)]
pub struct NsEncoding {
    pub term: RhoProc,
    pub params: EncodingParams,
    pub policy: RenamingPolicy,
}

/// `⟦p⟧(n, v) | NS_s` with parameters chosen fresh for `p`.
pub fn encode_ns(p: &PiProc) -> Result<NsEncoding, EncodeError> {
    let policy = RenamingPolicy::for_term(p);
    let params = EncodingParams::for_policy(&policy)?;
    encode_ns_with(p, &params, &policy)
}

pub fn encode_ns_with(
    p: &PiProc,
    params: &EncodingParams,
    policy: &RenamingPolicy,
) -> Result<NsEncoding, EncodeError> {
    let t = translate_ns(p, &params.n, &params.v, policy)?;
    Ok(NsEncoding {
        term: RhoProc::Par(vec![t, name_server(params)]),
        params: params.clone(),
        policy: policy.clone(),
    })
}
