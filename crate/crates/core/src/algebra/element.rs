//! Finitely supported linear combinations of rook matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use super::scalar::Scalar;
use crate::groups::Group;
use crate::rook::{RookError, RookMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("degree of the zero element is undefined")]
    ZeroElement,
    #[error("label is not total but the ambient is the group algebra")]
    NotTotal,
    #[error("subalgebra closure did not stabilize within {0} steps")]
    ClosureDidNotStabilize(usize),
    #[error(transparent)]
    Rook(#[from] RookError),
}

/// Which basis an element is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// All rook matrices.
    Semigroup,
    /// Total rook matrices only.
    Group,
}

/// Algebra an element lives in: size, group, basis kind.
#[derive(Clone)]
pub struct Ambient {
    pub n: usize,
    pub group: Arc<Group>,
    pub kind: BasisKind,
}

impl Ambient {
    pub fn new(n: usize, group: Arc<Group>, kind: BasisKind) -> Self {
        Ambient { n, group, kind }
    }

    pub fn semigroup(n: usize, group: &Arc<Group>) -> Self {
        Ambient::new(n, group.clone(), BasisKind::Semigroup)
    }

    pub fn group_algebra(n: usize, group: &Arc<Group>) -> Self {
        Ambient::new(n, group.clone(), BasisKind::Group)
    }

    pub fn with_n(&self, n: usize) -> Self {
        Ambient::new(n, self.group.clone(), self.kind)
    }

    pub fn with_kind(&self, kind: BasisKind) -> Self {
        Ambient::new(self.n, self.group.clone(), kind)
    }

    /// Number of basis elements.
    pub fn dim(&self) -> u128 {
        match self.kind {
            BasisKind::Semigroup => crate::rook::semigroup_size(self.n, self.group.order()),
            BasisKind::Group => crate::rook::group_size(self.n, self.group.order()),
        }
    }

    fn same_group(&self, other: &Ambient) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.kind == other.kind && self.same_group(other)
    }
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            BasisKind::Semigroup => "FḠ",
            BasisKind::Group => "FG",
        };
        write!(f, "{tag}_{}({})", self.n, self.group.label())
    }
}

/// Element of the semigroup algebra or of the group algebra.
#[derive(Clone)]
pub struct AlgebraElement<S: Scalar> {
    ambient: Ambient,
    terms: BTreeMap<RookMatrix, S>,
}

impl<S: Scalar> PartialEq for AlgebraElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.terms == other.terms
    }
}

impl<S: Scalar> Eq for AlgebraElement<S> {}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(ambient: &Ambient) -> Self {
        AlgebraElement { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::basis_unchecked(ambient, RookMatrix::identity(ambient.n))
    }

    /// A single basis element with coefficient 1.
    pub fn basis(ambient: &Ambient, label: RookMatrix) -> Result<Self, AlgebraError> {
        Self::check_label(ambient, &label)?;
        Ok(Self::basis_unchecked(ambient, label))
    }

    pub(crate) fn basis_unchecked(ambient: &Ambient, label: RookMatrix) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(label, S::one());
        AlgebraElement { ambient: ambient.clone(), terms }
    }

    fn check_label(ambient: &Ambient, label: &RookMatrix) -> Result<(), AlgebraError> {
        if label.n() != ambient.n {
            return Err(RookError::SizeMismatch(label.n(), ambient.n).into());
        }
        if ambient.kind == BasisKind::Group && !label.is_group_element() {
            return Err(AlgebraError::NotTotal);
        }
        Ok(())
    }

    /// Sums `(label, coefficient)` pairs, validating every label.
    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (RookMatrix, S)>,
    {
        let mut out = Self::zero(ambient);
        for (label, c) in terms {
            Self::check_label(ambient, &label)?;
            out.add_term(label, c);
        }
        Ok(out)
    }

    pub(crate) fn from_terms_unchecked<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (RookMatrix, S)>,
    {
        let mut out = Self::zero(ambient);
        for (label, c) in terms {
            out.add_term(label, c);
        }
        out
    }

    /// Builds from a map already free of zero coefficients.
    pub(crate) fn from_map_unchecked(ambient: &Ambient, terms: BTreeMap<RookMatrix, S>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        AlgebraElement { ambient: ambient.clone(), terms }
    }

    pub(crate) fn add_term(&mut self, label: RookMatrix, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.n
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.ambient.group
    }

    pub fn terms(&self) -> &BTreeMap<RookMatrix, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &RookMatrix) -> S {
        self.terms.get(label).cloned().unwrap_or_else(S::zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ambient != other.ambient {
            return Err(AlgebraError::AmbientMismatch(
                format!("{:?}", self.ambient),
                format!("{:?}", other.ambient),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(*l, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(*l, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ambient);
        }
        let terms = self.terms.iter().map(|(l, c)| (*l, c.clone() * s.clone())).collect();
        Self::from_map_unchecked(&self.ambient, terms)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let group = &*self.ambient.group;
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (a, ca) = self.terms.iter().next().expect("one term");
            let (b, cb) = other.terms.iter().next().expect("one term");
            return Self::from_terms_unchecked(&self.ambient, [(a.mul(b, group), ca.clone() * cb.clone())]);
        }
        let mut acc: FxHashMap<RookMatrix, S> = FxHashMap::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let p = a.mul(b, group);
                let v = ca.clone() * cb.clone();
                match acc.get_mut(&p) {
                    Some(x) => *x = x.clone() + v,
                    None => {
                        acc.insert(p, v);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_map_unchecked(&self.ambient, terms)
    }

    /// Left multiplication by a single basis element.
    pub fn left_mul_basis(&self, g: &RookMatrix) -> Self {
        let group = &*self.ambient.group;
        Self::from_terms_unchecked(&self.ambient, self.terms.iter().map(|(l, c)| (g.mul(l, group), c.clone())))
    }

    /// Right multiplication by a single basis element.
    pub fn right_mul_basis(&self, g: &RookMatrix) -> Self {
        let group = &*self.ambient.group;
        Self::from_terms_unchecked(&self.ambient, self.terms.iter().map(|(l, c)| (l.mul(g, group), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn try_commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Maximum of `deg_m` over the support (`deg` when `m = 0`).
    pub fn degree(&self, m: usize) -> Result<usize, AlgebraError> {
        self.terms.keys().map(|l| l.deg_m(m)).max().ok_or(AlgebraError::ZeroElement)
    }

    /// Linear extension of the corner projection; always lands in the semigroup algebra.
    pub fn theta(&self, m: usize) -> Result<Self, AlgebraError> {
        let amb = Ambient::new(m, self.ambient.group.clone(), BasisKind::Semigroup);
        let mut out = Self::zero(&amb);
        for (l, c) in &self.terms {
            out.add_term(l.theta(m)?, c.clone());
        }
        Ok(out)
    }

    /// Canonical embedding into size `n`.
    pub fn embed(&self, n: usize) -> Result<Self, AlgebraError> {
        let amb = self.ambient.with_n(n);
        let mut out = Self::zero(&amb);
        for (l, c) in &self.terms {
            out.add_term(l.embed(n)?, c.clone());
        }
        Ok(out)
    }

    /// Embedding onto the last slots of size `n`.
    pub fn embed_last(&self, n: usize) -> Result<Self, AlgebraError> {
        let amb = self.ambient.with_n(n);
        let mut out = Self::zero(&amb);
        for (l, c) in &self.terms {
            out.add_term(l.embed_last(n)?, c.clone());
        }
        Ok(out)
    }

    /// The retraction onto the group algebra: non-total labels are sent to 0.
    pub fn retract(&self) -> Self {
        let amb = self.ambient.with_kind(BasisKind::Group);
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.is_group_element())
            .map(|(l, c)| (*l, c.clone()))
            .collect();
        Self::from_map_unchecked(&amb, terms)
    }

    /// The same element viewed in the semigroup algebra.
    pub fn to_semigroup(&self) -> Self {
        AlgebraElement { ambient: self.ambient.with_kind(BasisKind::Semigroup), terms: self.terms.clone() }
    }

    /// The same element viewed in the group algebra, if every label is total.
    pub fn to_group(&self) -> Result<Self, AlgebraError> {
        if self.terms.keys().any(|l| !l.is_group_element()) {
            return Err(AlgebraError::NotTotal);
        }
        Ok(AlgebraElement { ambient: self.ambient.with_kind(BasisKind::Group), terms: self.terms.clone() })
    }

    /// `[[label, numerator, denominator], ...]` in canonical label order.
    pub fn to_json(&self) -> serde_json::Value {
        let group = &*self.ambient.group;
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(l, c)| {
                    let (num, den) = c.to_fraction();
                    serde_json::json!([l.display(group).to_string(), num.to_string(), den.to_string()])
                })
                .collect(),
        )
    }
}

impl<S: Scalar> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.ambient, self)
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let group = &*self.ambient.group;
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", l.display(group))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<S: Scalar> $tr<&AlgebraElement<S>> for &AlgebraElement<S> {
            type Output = AlgebraElement<S>;
            /// Panics on ambient mismatch; use the `try_` method to get an error instead.
            fn $method(self, rhs: &AlgebraElement<S>) -> AlgebraElement<S> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<S: Scalar> $tr<AlgebraElement<S>> for AlgebraElement<S> {
            type Output = AlgebraElement<S>;
            fn $method(self, rhs: AlgebraElement<S>) -> AlgebraElement<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn neg(self) -> AlgebraElement<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Neg for AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn neg(self) -> AlgebraElement<S> {
        (&self).neg()
    }
}
