//! The functional realization of the restricted dual of `U(n₋[t])`.

mod checks;
mod element;
mod factored;
mod filtration;
mod functions;
mod laurent;
mod residue;
mod spaces;

pub use checks::{residue_checks, ResidueChecks};
pub use element::{pair, pair_scalar, residue_r, RationalElement, VarLayout};
pub use factored::FactoredRational;
pub use filtration::{
    compute_p, filtration_basis, gamma_filtration_test, require_filtration, specialize_phi,
    specialize_phi_with, SpecializedFn,
};
pub use functions::{
    compatibility_failures, dual_current_function, dual_current_function_at, pair_root_vector,
};
pub use laurent::{binom_signed, LaurentPoly};
pub use residue::{
    check_simple_pole, iterated_residue_chain, iterated_residue_simplified,
    nested_commutator_pairing, nested_commutator_words, pair_sum, root_vector_sequence,
    root_vector_words, word_product, WordSum,
};
pub use spaces::{
    basis_of_bar_u, basis_of_v, delta_degree, dim_v, random_u_element, random_u_elements, DimV,
    SymmetricSpace,
};
