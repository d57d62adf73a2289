//! Graded pieces of the invariant ring: coordinates, dimensions, relation
//! kernels and degree-one generation.

mod dense;
mod expand;
mod kempe;
mod kernel;
mod space;
mod sym;

pub use expand::{
    bracket_expand, eval_at, eval_point, sample_points, Expansion, ExpansionMatrix, MAX_EXPANSION_VERTICES,
};
pub use kempe::{kempe_check, KempeMethod, KempeVerdict, KEMPE_PRIME};
pub use kernel::{
    multiplication_rank, relation_kernel, relation_kernel_with, KernelOptions, MultiplicationMap, RelationKernel,
};
pub use space::{
    graded_dimension, graded_dimension_with, linear_relation_space, noncrossing_count, Mode, MultidegreeSpace,
    FULL_COEFFICIENT_LIMIT, SAMPLE_MARGIN, SPANNING_CAP,
};
pub use sym::{to_field, IntVec, SparseVec, SymPower, SymbolicRelation};
