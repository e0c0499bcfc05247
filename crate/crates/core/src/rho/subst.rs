//! Capture-avoiding substitution on user-level terms.
//!
//! A name position is replaced when the whole name is name-equivalent to the
//! target; names that merely contain the target under a quote are left
//! alone. The semantic variant additionally executes drops of the target.

use std::collections::BTreeSet;

use super::canon::canon_name;
use super::names::{all_names, gen_fresh};
use super::term::{RhoName, RhoProc};

/// `p{new/old}`.
pub fn subst_syn(p: &RhoProc, new: &RhoName, old: &RhoName) -> RhoProc {
    Subst::new(new, old, None).proc(p)
}

/// `p{payload/old}` as used by communication: also replaces `*n` with
/// `n ≡N old` by the process quoted in `payload`.
pub fn subst_sem(p: &RhoProc, payload: &RhoName, old: &RhoName) -> RhoProc {
    let payload = canon_name(payload);
    let body = match &payload {
        RhoName::Quote(b) => (**b).clone(),
        RhoName::Bound(_) => RhoProc::Drop(payload.clone()),
    };
    Subst::new(&payload, old, Some(body)).proc(p)
}

struct Subst {
    new: RhoName,
    old: RhoName,
    drop_body: Option<RhoProc>,
}

impl Subst {
    fn new(new: &RhoName, old: &RhoName, drop_body: Option<RhoProc>) -> Self {
        Subst {
            new: canon_name(new),
            old: canon_name(old),
            drop_body,
        }
    }

    fn name(&self, x: &RhoName) -> RhoName {
        if canon_name(x) == self.old {
            self.new.clone()
        } else {
            x.clone()
        }
    }

    fn proc(&self, p: &RhoProc) -> RhoProc {
        match p {
            RhoProc::Nil => RhoProc::Nil,
            RhoProc::Drop(x) => match &self.drop_body {
                Some(body) if canon_name(x) == self.old => body.clone(),
                _ => RhoProc::Drop(self.name(x)),
            },
            RhoProc::Lift(x, b) => RhoProc::lift(self.name(x), self.proc(b)),
            RhoProc::Input(x, y, b) => {
                let subject = self.name(x);
                let cy = canon_name(y);
                if cy == self.old {
                    // shadowed
                    return RhoProc::Input(subject, y.clone(), b.clone());
                }
                if cy == self.new {
                    let mut avoid: BTreeSet<RhoName> = all_names(b);
                    avoid.insert(self.new.clone());
                    avoid.insert(self.old.clone());
                    avoid.insert(cy.clone());
                    let fresh = gen_fresh(avoid.iter());
                    let renamed = subst_syn(b, &fresh, y);
                    return RhoProc::input(subject, fresh, self.proc(&renamed));
                }
                RhoProc::input(subject, y.clone(), self.proc(b))
            }
            RhoProc::Par(ps) => RhoProc::Par(ps.iter().map(|q| self.proc(q)).collect()),
        }
    }
}
