//! Centralizer algebras of wreath products and their rook-monoid analogues.
//!
//! The crate works with the wreath product `G ≀ S_n` realized as G-labeled
//! permutation matrices inside the semigroup of G-labeled rook matrices, and
//! computes centralizer subalgebras by exact linear algebra.

pub mod algebra;
pub mod centralizers;
pub mod classdata;
pub mod expr;
pub mod groups;
pub mod gz;
pub mod hecke;
pub mod report;
pub mod rook;
pub mod suite;

pub use algebra::{AlgebraElement, Ambient, BasisKind, Fp, Rational, Scalar};
pub use groups::{load_group, Group};
pub use rook::RookMatrix;
