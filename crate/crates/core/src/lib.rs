//! Exact computations for invariant jet differentials.
//!
//! The crate covers truncated jets and their reparametrization groups, the
//! embedding of jets into flags of symmetric powers, Plücker generators of the
//! invariant algebras and the one-parameter-subgroup orbit analysis at small
//! orders. All arithmetic is exact over the rationals.

pub mod cli;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod flag;
pub mod invariants;
pub mod jet;
pub mod orbit;
pub mod random;
pub mod sym;

pub use error::{Error, Result};
