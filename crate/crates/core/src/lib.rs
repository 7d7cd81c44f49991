//! Exact computation of decomposition multiplicities of fusion products of
//! Kirillov–Reshetikhin modules over current algebras.
//!
//! Four independent engines compute the multiplicity of `V(λ − γ)`:
//!
//! * [`fermionic`]: the fermionic sum over admissible configurations;
//! * [`current`]: explicit fusion products of evaluation modules;
//! * [`pbw`]: the quotient `U(n₋[t]) / (n₋U(n₋[t]) + I)` by PBW linear algebra;
//! * [`dual`]: dimensions of spaces of symmetric rational functions paired
//!   with `U(n₋[t])` by iterated residues.

pub mod current;
pub mod dual;
pub mod error;
pub mod fermionic;
pub mod liealg;
pub mod linalg;
pub mod pbw;

pub use error::{Error, Result};
