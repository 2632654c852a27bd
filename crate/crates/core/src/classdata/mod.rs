//! Conjugacy-class data: partitions, types, class sums and orbit invariants.

pub mod class_sum;
pub mod omega;
pub mod partition;
pub mod types;

use thiserror::Error;

pub use class_sum::{class_sum, delta_rho, eps_bar, eps_prod};
pub use omega::{c_omega_rho, delta_omega_rho, enumerate_omegas, gamma_omega_p, orbit_invariant, OmegaEntry, OmegaMatrix, OrbitInvariant};
pub use types::{enumerate_types, type_of, BoundMode, TypeError, TypeFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassDataError {
    #[error("index set {subset:?} is not a subset of 1..={n} without repeats")]
    BadSubset { subset: Vec<usize>, n: usize },
    #[error("index set of size {size} does not match type norm {norm}")]
    SubsetSize { size: usize, norm: usize },
    #[error("type has {found} classes, group has {expected}")]
    ClassCount { expected: usize, found: usize },
    #[error("element is not in the corner semigroup for m = {m}, n = {n}")]
    NotInGamma { m: usize, n: usize },
    #[error("invalid Ω-matrix: {0}")]
    BadOmega(String),
    #[error(transparent)]
    Rook(#[from] crate::rook::RookError),
    #[error(transparent)]
    Type(#[from] TypeError),
}
