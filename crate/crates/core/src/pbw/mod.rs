//! The quotient `U⁻/(n₋U⁻ + I)` of `U⁻ = U(n₋[t])`, computed on PBW bases.

mod algebra;
mod quotient;

pub use algebra::{pbw_basis, pbw_basis_degree, Letter, PbwAlgebra, PbwElement, PbwMonomial};
pub use quotient::{
    current_power_element, graded_upper_bound, ideal_slice, multiplicity_upper_bound,
    quotient_dims, IdealSlice, Schedule, UpperBound,
};
