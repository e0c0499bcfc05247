//! Asynchronous π-calculus with replication.

pub mod canon;
pub mod reduce;
pub mod term;

pub use canon::{pi_canon, pi_named, pi_struct_eq};
pub use reduce::{pi_barbs, pi_free_names, pi_fresh_atom, pi_step, pi_subst};
pub use term::{atoms_in_order, free_atoms, PiName, PiProc};
