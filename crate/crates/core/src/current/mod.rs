//! Explicit graded `g[t]`-modules: evaluation and KR modules in type A,
//! fusion products, and matrix checks of the defining relations.

mod evaluation;
mod fusion;
mod matrix;
mod module;
mod relations;

pub use evaluation::{evaluation_module, kr_module, kr_relation_failures, DEFAULT_K_CAP};
pub use fusion::{default_points, fusion_product};
pub use matrix::SparseMatrix;
pub use module::{
    character_csv, character_entries, dump_triplets, g_decompose, g_decompose_coinvariant,
    g_decompose_kernel, graded_character, BasisLabel, CharacterEntry, GenKind, Generator,
    GradedCharacter, GradedModule,
};
pub use relations::{
    apply_current_power, check_theorem_relations, current_power_coefficient, CurrentMonomial,
    RelationCheck, RelationReport,
};

use crate::error::Result;
use crate::fermionic::KrSpec;
use crate::liealg::CartanData;
use crate::linalg::Q;

/// `W^{i_1,ℓ_1} * ⋯ * W^{i_p,ℓ_p}` at the given points (default `0, 1, …`).
pub fn fusion_of_spec(
    cartan: &CartanData,
    spec: &KrSpec,
    points: Option<&[Q]>,
) -> Result<GradedModule> {
    spec.validate(cartan)?;
    let zero = Q::from_integer(0.into());
    let modules = spec
        .factors()
        .iter()
        .map(|f| kr_module(cartan, f.node, f.level, &zero))
        .collect::<Result<Vec<_>>>()?;
    let default = default_points(modules.len());
    fusion_product(cartan, &modules, points.unwrap_or(&default))
}
