//! A workbench for the reflective higher-order calculus and the asynchronous
//! π-calculus: canonical forms, reduction, π-to-ρ encodings, bounded barbed
//! bisimulation and reproduction harnesses.

pub mod calculus;
pub mod encode;
pub mod equiv;
pub mod harness;
pub mod lts;
pub mod pi;
pub mod rho;
pub mod syntax;

pub use calculus::{Pi, Rho};
pub use lts::{explore, weak_barb, Bounds, Calculus, Lts, Ternary};
