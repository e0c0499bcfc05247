//! The reflective higher-order calculus: terms, canonical forms, names,
//! substitution and reduction.

pub mod canon;
pub mod names;
pub mod reduce;
pub mod subst;
pub mod term;

pub use canon::{canon_name, canon_proc, name_eq, struct_eq};
pub use names::{
    derivable, free_names, fresh_for, gen_fresh, lincr, ncomp, ns_member, quote_depth,
    quote_depth_proc, rincr,
};
pub use reduce::{barbs, redexes, step, Redex};
pub use subst::{subst_sem, subst_syn};
pub use term::{copier, Barb, Direction, NamespaceScheme, RhoName, RhoProc};
