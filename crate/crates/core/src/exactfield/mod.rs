//! Exact scalars and sparse linear algebra over Q and prime fields.

mod elim;
mod matrix;
mod modular;
mod scalar;

pub use matrix::{kernel_basis, rank, rref, span_contains, subspace_equal, EchelonBasis, Rref, SparseMatrix};
pub use scalar::{is_prime, primes_below, FieldSpec, Scalar};

pub(crate) use scalar::{add_mod, bigint_mod, inv_mod, mul_mod, sub_mod};
