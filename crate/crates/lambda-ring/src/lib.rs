//! Exact kernel for the growth-bounded series rings `F[X1..Xn; Y, lambda]`
//! sitting between `F[X]` and `F[X][[Y]]`.
//!
//! The kernel provides the Weierstrass machinery for these rings over exact
//! coefficients (prime fields and the rationals): lambda-scaled
//! non-Archimedean norms in exponent space, unit inversion, Weierstrass
//! division by contraction iteration with an independent level-by-level
//! oracle, Weierstrass preparation, distinguishing variable-change
//! automorphisms, and a constructive one-X-variable factorization built on
//! Hensel lifting. All arithmetic is exact; there is no floating point
//! anywhere.

pub mod automorphism;
pub mod error;
pub mod factor;
pub mod field;
pub mod growth;
pub mod json;
pub mod norm;
pub mod parse;
pub mod series;
pub mod unipoly;
pub mod weierstrass;

pub use error::Error;
pub use field::{FieldDesc, FieldElem};
pub use growth::GrowthFn;
pub use norm::{NormExp, Weights};
pub use series::{DegX, Monomial, Series};
