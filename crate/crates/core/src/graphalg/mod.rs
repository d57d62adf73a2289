//! Graph monomials, their products and symmetries, and straightening.

mod enumerate;
mod monomial;
mod perm;
mod polynomial;
mod solve;
mod straighten;

pub use enumerate::{enumerate_noncrossing, enumerate_spanning, Enumeration};
pub use monomial::{crosses, Edge, GraphMonomial, ValenceVector, MAX_VERTICES};
pub use perm::Permutation;
pub use polynomial::GraphPolynomial;
pub use solve::straighten_by_solve;
pub use straighten::{plucker_step, straighten, straighten_monomial, STEP_LIMIT};

pub(crate) use polynomial::signed_coefficient;
pub(crate) use straighten::{pack, straighten_packed, unpack, Packed};
