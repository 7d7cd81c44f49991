//! Cartan data, weights, characters and partitions for simple Lie algebras
//! of rank at most 4.

mod cartan;
mod partition;
mod repr;
mod weight;

pub use cartan::{build_cartan, CartanData, StructureConstant, SUPPORTED_TYPES};
pub use partition::{dominance_compare, DominanceOrder, NTuplePartitions, Partition};
pub use repr::{
    dominant_gammas, dominant_representative, form_weights, freudenthal_weights, reflect, rho,
    tensor_decompose, weyl_dim, weyl_orbit,
};
pub use weight::{RootVector, Weight};
