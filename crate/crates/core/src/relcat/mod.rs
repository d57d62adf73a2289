//! Named relations, orbit spans and generation checks.

mod catalog;
mod skew;
mod span;

pub use catalog::{
    binomial_sides, del_pezzo_base, del_pezzo_quadrics, extend_relation, plucker_relation, segre_binomial_cubic,
    sign_relation, simple_quadric, simple_quadric_factors, CatalogEntry, CatalogName,
};
pub use skew::{
    partial_vectors, partial_vectors_in_basis, partials, primitive_part, reduce_vector, skew_cubic,
    skew_cubic_vector, MAX_SKEW_N,
};
pub use span::{generation_check, generation_check_with, orbit_span, GenerationVerdict, OrbitSpan};

pub use crate::invring::SymbolicRelation;
