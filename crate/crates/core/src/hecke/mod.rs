//! Jucys-Murphy elements, their semigroup lifts `u_{k|n}`, wreath Hecke
//! algebras in normal form, and the maps between them.

pub mod verify;
pub mod word;

use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, Ambient, BasisKind, Scalar};
use crate::rook::{RookError, RookMatrix};

pub use verify::{verify_diagram, verify_hecke_relations, verify_image_generation, verify_retraction_multiplicative};
pub use word::{HeckeElement, HeckeFlavor, HeckeWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("index {index} out of range 1..={bound}")]
    Index { index: usize, bound: usize },
    #[error("need k < l, got k = {0}, l = {1}")]
    Order(usize, usize),
    #[error("{0}")]
    Parse(String),
    #[error("operation needs the {0} algebra")]
    WrongFlavor(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rook(#[from] RookError),
}

fn check_index(i: usize, n: usize) -> Result<(), HeckeError> {
    if i == 0 || i > n {
        return Err(HeckeError::Index { index: i, bound: n });
    }
    Ok(())
}

/// `t_{kl} = Σ_h h^{(k)} (h⁻¹)^{(l)}`.
pub fn t_elem<S: Scalar>(amb: &Ambient, k: usize, l: usize) -> Result<AlgebraElement<S>, HeckeError> {
    let n = amb.n;
    check_index(k, n)?;
    check_index(l, n)?;
    if k >= l {
        return Err(HeckeError::Order(k, l));
    }
    let g = &*amb.group;
    let mut out = AlgebraElement::zero(amb);
    for h in 0..g.order() {
        let x = RookMatrix::slot(h, k, n)?.mul(&RookMatrix::slot(g.inv(h), l, n)?, g);
        out.add_term(x, S::one());
    }
    Ok(out)
}

/// `t_{kl}·(k,l)`.
pub fn t_transposition<S: Scalar>(amb: &Ambient, k: usize, l: usize) -> Result<AlgebraElement<S>, HeckeError> {
    let tr = RookMatrix::transposition(k, l, amb.n)?;
    Ok(t_elem::<S>(amb, k, l)?.right_mul_basis(&tr))
}

/// `ξ_k = Σ_{l>k} t_{kl}(k,l)`; `ξ_n = 0`.
pub fn xi<S: Scalar>(amb: &Ambient, k: usize) -> Result<AlgebraElement<S>, HeckeError> {
    check_index(k, amb.n)?;
    let mut out = AlgebraElement::zero(amb);
    for l in k + 1..=amb.n {
        out = &out + &t_transposition::<S>(amb, k, l)?;
    }
    Ok(out)
}

/// `Σ_{i>l} t_{li}` without transpositions: the alternative image of `x_l`.
pub fn xi_without_transpositions<S: Scalar>(amb: &Ambient, l: usize) -> Result<AlgebraElement<S>, HeckeError> {
    check_index(l, amb.n)?;
    let mut out = AlgebraElement::zero(amb);
    for i in l + 1..=amb.n {
        out = &out + &t_elem::<S>(amb, l, i)?;
    }
    Ok(out)
}

/// `ε̄_i = 1 − ε_i` in a semigroup ambient.
pub(crate) fn eps_bar_one<S: Scalar>(amb: &Ambient, i: usize) -> Result<AlgebraElement<S>, HeckeError> {
    let one = AlgebraElement::one(amb);
    let e = AlgebraElement::basis(amb, RookMatrix::epsilon(i, amb.n)?)?;
    Ok(&one - &e)
}

fn semigroup_ambient(amb: &Ambient) -> Result<(), HeckeError> {
    if amb.kind != BasisKind::Semigroup {
        return Err(HeckeError::WrongFlavor("semigroup"));
    }
    Ok(())
}

/// `u_{k|n} = Σ_{i>k} t_{ki}(k,i)(1−ε_k)(1−ε_i)`.
pub fn u_elem<S: Scalar>(amb: &Ambient, k: usize) -> Result<AlgebraElement<S>, HeckeError> {
    semigroup_ambient(amb)?;
    check_index(k, amb.n)?;
    let ek = eps_bar_one::<S>(amb, k)?;
    let mut out = AlgebraElement::zero(amb);
    for i in k + 1..=amb.n {
        let term = &(&t_transposition::<S>(amb, k, i)? * &ek) * &eps_bar_one::<S>(amb, i)?;
        out = &out + &term;
    }
    Ok(out)
}

/// The second displayed form `Σ_{i>k} (1−ε_i) t_{ki}(k,i) (1−ε_i)`.
pub fn u_elem_sandwich<S: Scalar>(amb: &Ambient, k: usize) -> Result<AlgebraElement<S>, HeckeError> {
    semigroup_ambient(amb)?;
    check_index(k, amb.n)?;
    let mut out = AlgebraElement::zero(amb);
    for i in k + 1..=amb.n {
        let ei = eps_bar_one::<S>(amb, i)?;
        out = &out + &(&(&ei * &t_transposition::<S>(amb, k, i)?) * &ei);
    }
    Ok(out)
}

/// The retraction `Φ` onto `𝔽G_n`: non-total labels go to 0.
pub fn phi_retraction<S: Scalar>(x: &AlgebraElement<S>) -> AlgebraElement<S> {
    x.retract()
}
