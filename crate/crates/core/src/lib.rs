//! Exact-arithmetic invariants of braid closures.
//!
//! The crate computes HOMFLY-PT polynomials of braid closures by a Hecke
//! algebra trace, Alexander polynomials three independent ways (reduced
//! Burau determinant, HOMFLY specialization, and closed forms for the
//! built-in knot family), formal semigroups with their semigroup and rank
//! tests, cyclotomic root-of-unity certificates, and the
//! Lisca--Stipsicz/Lisca--Matic L-space decision for small Seifert fibered
//! spaces. Everything is exact: arbitrary-precision integers and rationals,
//! no floating point.
//!
//! The polynomial core is generic over the integer scalar; the aliases
//! below fix the arbitrary-precision instantiation used throughout the
//! invariant engines.

pub mod alexander;
pub mod braid;
pub mod corpus;
pub mod cyclotomic;
pub mod homfly;
pub mod polynomial;
pub mod semigroup;
pub mod sfs;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;

/// Exact rational with arbitrary-precision parts.
pub type Rational = num_rational::BigRational;

/// Integer Laurent polynomial over [`Int`].
pub type IntPoly = polynomial::LaurentPoly<Int>;

/// Sparse three-variable polynomial over [`Int`].
pub type IntMultiPoly = polynomial::MultiPoly<Int>;

pub use braid::{parse_word, BraidWord, FamilyParams};
