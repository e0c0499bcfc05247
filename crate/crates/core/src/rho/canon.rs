//! Canonical forms for processes and names.
//!
//! A canonical process has flattened, `Nil`-free, sorted parallel
//! compositions, every input binder replaced by a [`RhoName::Bound`] marker
//! whose index is the binder's nesting level, and every name in canonical
//! form. A canonical name is never `Quote(Drop(x))`: the quote/drop pair is
//! cancelled to `x`. Two terms are structurally congruent iff their canonical
//! forms are syntactically equal.
//!
//! Quoted bodies are canonicalized as closed terms (level 0, empty
//! environment), so a name's canonical form is independent of where it
//! occurs. Substitution never enters a quote, so binder markers never escape
//! into quoted bodies.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use super::term::{RhoName, RhoProc};

const CACHE_LIMIT: usize = 1 << 18;

thread_local! {
    // Arc address -> (kept-alive key, canonical name). Pure cache: hits return
    // exactly what recomputation would.
    static NAME_CACHE: RefCell<HashMap<usize, (Arc<RhoProc>, RhoName)>> =
        RefCell::new(HashMap::new());
}

pub fn canon_proc(p: &RhoProc) -> RhoProc {
    let mut env = Vec::new();
    let out = canon_at(p, 0, &mut env);
    debug_assert!(out.size() <= p.size(), "canonicalization must not grow terms");
    out
}

pub fn canon_name(x: &RhoName) -> RhoName {
    match x {
        RhoName::Bound(i) => RhoName::Bound(*i),
        RhoName::Quote(body) => {
            let key = Arc::as_ptr(body) as usize;
            if let Some(hit) = NAME_CACHE.with(|c| c.borrow().get(&key).map(|(_, n)| n.clone())) {
                return hit;
            }
            let mut env = Vec::new();
            let c = canon_at(body, 0, &mut env);
            let out = match c {
                // n-drop: @(*x) == x
                RhoProc::Drop(n) => n,
                c => RhoName::Quote(Arc::new(c)),
            };
            NAME_CACHE.with(|cache| {
                let mut cache = cache.borrow_mut();
                if cache.len() >= CACHE_LIMIT {
                    cache.clear();
                }
                cache.insert(key, (body.clone(), out.clone()));
                if let RhoName::Quote(b) = &out {
                    cache.insert(Arc::as_ptr(b) as usize, (b.clone(), out.clone()));
                }
            });
            out
        }
    }
}

pub fn struct_eq(p: &RhoProc, q: &RhoProc) -> bool {
    canon_proc(p) == canon_proc(q)
}

pub fn name_eq(x: &RhoName, y: &RhoName) -> bool {
    canon_name(x) == canon_name(y)
}

/// Binder environment: canonical key of the binder name and its level.
type Env = Vec<(RhoName, usize)>;

fn resolve(x: &RhoName, env: &Env) -> RhoName {
    let c = canon_name(x);
    for (key, level) in env.iter().rev() {
        if *key == c {
            return RhoName::Bound(*level);
        }
    }
    c
}

fn canon_at(p: &RhoProc, depth: usize, env: &mut Env) -> RhoProc {
    match p {
        RhoProc::Nil => RhoProc::Nil,
        RhoProc::Drop(x) => RhoProc::Drop(resolve(x, env)),
        RhoProc::Lift(x, body) => {
            RhoProc::Lift(resolve(x, env), Box::new(canon_at(body, depth, env)))
        }
        RhoProc::Input(x, y, body) => {
            let subject = resolve(x, env);
            env.push((canon_name(y), depth));
            let body = canon_at(body, depth + 1, env);
            env.pop();
            RhoProc::Input(subject, RhoName::Bound(depth), Box::new(body))
        }
        RhoProc::Par(ps) => {
            let mut out = Vec::with_capacity(ps.len());
            for q in ps {
                match canon_at(q, depth, env) {
                    RhoProc::Nil => {}
                    RhoProc::Par(qs) => out.extend(qs),
                    q => out.push(q),
                }
            }
            out.sort();
            RhoProc::par(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::names::{lincr, rincr};

    fn zero() -> RhoName {
        RhoName::zero()
    }

    #[test]
    fn unit_law() {
        let p = RhoProc::par([RhoProc::Nil, RhoProc::lift(zero(), RhoProc::Nil)]);
        assert_eq!(canon_proc(&p), RhoProc::lift(zero(), RhoProc::Nil));
        assert!(struct_eq(&RhoProc::par([RhoProc::Nil, RhoProc::Nil]), &RhoProc::Nil));
    }

    #[test]
    fn alpha_on_input_binders() {
        let y = lincr(&zero());
        let z = rincr(&zero());
        let p = RhoProc::input(zero(), y.clone(), RhoProc::Drop(y));
        let q = RhoProc::input(zero(), z.clone(), RhoProc::Drop(z));
        assert_eq!(canon_proc(&p), canon_proc(&q));
    }

    #[test]
    fn commutativity() {
        let p = RhoProc::lift(zero(), RhoProc::Nil);
        let q = RhoProc::input(zero(), lincr(&zero()), RhoProc::Nil);
        assert!(struct_eq(
            &RhoProc::par([p.clone(), q.clone()]),
            &RhoProc::par([q, p])
        ));
    }

    #[test]
    fn drop_cancellation_in_names() {
        let at_drop_zero = RhoName::quote(RhoProc::Drop(zero()));
        assert_eq!(canon_name(&at_drop_zero), zero());
        let twice = RhoName::quote(RhoProc::Drop(at_drop_zero));
        assert!(name_eq(&twice, &zero()));
        let zz = RhoName::quote(RhoProc::par([RhoProc::Nil, RhoProc::Nil]));
        assert!(name_eq(&zz, &zero()));
        assert!(!name_eq(&lincr(&zero()), &zero()));
    }

    #[test]
    fn process_drop_is_not_rewritten() {
        let p = RhoProc::Drop(RhoName::quote(RhoProc::lift(zero(), RhoProc::Nil)));
        assert!(!struct_eq(&p, &RhoProc::lift(zero(), RhoProc::Nil)));
    }

    #[test]
    fn equivalent_subjects_and_alpha() {
        let at_drop_zero = RhoName::quote(RhoProc::Drop(zero()));
        let p = RhoProc::input(at_drop_zero, lincr(&zero()), RhoProc::Nil);
        let q = RhoProc::input(zero(), rincr(&zero()), RhoProc::Nil);
        assert!(struct_eq(&p, &q));
        assert!(!struct_eq(
            &RhoProc::lift(zero(), RhoProc::Nil),
            &RhoProc::input(zero(), lincr(&zero()), RhoProc::Nil)
        ));
    }

    #[test]
    fn shadowing_binders() {
        // @0?(y).@0?(y).*y : the inner binder captures *y
        let y = lincr(&zero());
        let w = rincr(&zero());
        let p = RhoProc::input(
            zero(),
            y.clone(),
            RhoProc::input(zero(), y.clone(), RhoProc::Drop(y.clone())),
        );
        let q = RhoProc::input(
            zero(),
            y.clone(),
            RhoProc::input(zero(), w.clone(), RhoProc::Drop(w.clone())),
        );
        let r = RhoProc::input(
            zero(),
            y.clone(),
            RhoProc::input(zero(), w, RhoProc::Drop(y)),
        );
        assert!(struct_eq(&p, &q));
        assert!(!struct_eq(&p, &r));
    }

    #[test]
    fn idempotent_on_canonical_terms() {
        let y = lincr(&zero());
        let p = RhoProc::par([
            RhoProc::input(zero(), y.clone(), RhoProc::par([RhoProc::Drop(y.clone()), RhoProc::Nil])),
            RhoProc::lift(y, RhoProc::Nil),
        ]);
        let c = canon_proc(&p);
        assert_eq!(canon_proc(&c), c);
    }
}
