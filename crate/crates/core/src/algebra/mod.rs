//! Scalars, algebra elements and exact span computations over them.

pub mod element;
pub mod linalg;
pub mod presentation;
pub mod scalar;

use rustc_hash::FxHashMap;

use crate::rook::RookMatrix;
pub use element::{AlgebraElement, AlgebraError, Ambient, BasisKind};
use linalg::{Echelon, SparseRow};
pub use presentation::verify_presentation;
pub use scalar::{Fp, Rational, Scalar};

/// Assigns column indices to basis labels in first-seen order.
#[derive(Default, Clone)]
pub struct Interner {
    index: FxHashMap<RookMatrix, usize>,
    labels: Vec<RookMatrix>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns labels in canonical sorted order.
    pub fn from_sorted<I: IntoIterator<Item = RookMatrix>>(labels: I) -> Self {
        let mut all: Vec<RookMatrix> = labels.into_iter().collect();
        all.sort_unstable();
        all.dedup();
        let index = all.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Interner { index, labels: all }
    }

    pub fn intern(&mut self, label: &RookMatrix) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(*label, i);
        self.labels.push(*label);
        i
    }

    pub fn get(&self, label: &RookMatrix) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &RookMatrix {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[RookMatrix] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// A subspace of an algebra maintained in echelon form.
#[derive(Clone)]
pub struct Subspace<S: Scalar> {
    ambient: Ambient,
    interner: Interner,
    echelon: Echelon<S::Elim>,
    basis: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(ambient: &Ambient) -> Self {
        Subspace { ambient: ambient.clone(), interner: Interner::new(), echelon: Echelon::new(), basis: Vec::new() }
    }

    pub fn spanned_by<'a, I>(ambient: &Ambient, elems: I) -> Self
    where
        I: IntoIterator<Item = &'a AlgebraElement<S>>,
    {
        let mut s = Subspace::new(ambient);
        for x in elems {
            s.insert(x);
        }
        s
    }

    fn row(&mut self, x: &AlgebraElement<S>) -> SparseRow<S::Elim> {
        let row: SparseRow<S> = x.terms().iter().map(|(l, c)| (self.interner.intern(l), c.clone())).collect();
        linalg::to_elim_row(&row)
    }

    fn row_readonly(&self, x: &AlgebraElement<S>) -> Option<SparseRow<S::Elim>> {
        let mut row: SparseRow<S> = Vec::with_capacity(x.len());
        for (l, c) in x.terms() {
            row.push((self.interner.get(l)?, c.clone()));
        }
        Some(linalg::to_elim_row(&row))
    }

    /// Adds `x`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, x: &AlgebraElement<S>) -> bool {
        assert_eq!(x.ambient(), &self.ambient, "subspace ambient mismatch");
        if x.is_zero() {
            return false;
        }
        let row = self.row(x);
        let fresh = self.echelon.insert(row);
        if fresh {
            self.basis.push(x.clone());
        }
        fresh
    }

    pub fn contains(&self, x: &AlgebraElement<S>) -> bool {
        if x.is_zero() {
            return true;
        }
        match self.row_readonly(x) {
            Some(row) => self.echelon.contains(row),
            None => false,
        }
    }

    pub fn contains_all<'a, I>(&self, elems: I) -> bool
    where
        I: IntoIterator<Item = &'a AlgebraElement<S>>,
    {
        elems.into_iter().all(|x| self.contains(x))
    }

    /// First element of `elems` outside the span, if any.
    pub fn first_missing<'a, I>(&self, elems: I) -> Option<&'a AlgebraElement<S>>
    where
        I: IntoIterator<Item = &'a AlgebraElement<S>>,
    {
        elems.into_iter().find(|x| !self.contains(x))
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// The inserted elements that were independent, in insertion order.
    pub fn basis(&self) -> &[AlgebraElement<S>] {
        &self.basis
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
}

/// Dimension of the span of `elems`.
pub fn rank_of<S: Scalar>(ambient: &Ambient, elems: &[AlgebraElement<S>]) -> usize {
    Subspace::spanned_by(ambient, elems).dim()
}

/// Exact membership of `v` in the span of `basis`.
pub fn span_membership<S: Scalar>(v: &AlgebraElement<S>, basis: &[AlgebraElement<S>]) -> bool {
    Subspace::spanned_by(v.ambient(), basis).contains(v)
}

/// Whether two families span the same subspace.
pub fn span_equal<S: Scalar>(ambient: &Ambient, a: &[AlgebraElement<S>], b: &[AlgebraElement<S>]) -> bool {
    let sa = Subspace::spanned_by(ambient, a);
    let sb = Subspace::spanned_by(ambient, b);
    sa.dim() == sb.dim() && sa.contains_all(b)
}

/// A basis of `span(a) ∩ span(b)`.
///
/// Solves `Σ xᵢ aᵢ − Σ yⱼ bⱼ = 0` and maps each kernel vector to `Σ xᵢ aᵢ`.
pub fn span_intersection<S: Scalar>(
    ambient: &Ambient,
    a: &[AlgebraElement<S>],
    b: &[AlgebraElement<S>],
) -> Vec<AlgebraElement<S>> {
    let a = Subspace::spanned_by(ambient, a).basis().to_vec();
    let b = Subspace::spanned_by(ambient, b).basis().to_vec();
    let mut interner = Interner::new();
    let mut rows: FxHashMap<usize, SparseRow<S>> = FxHashMap::default();
    for (i, x) in a.iter().enumerate() {
        for (l, c) in x.terms() {
            rows.entry(interner.intern(l)).or_default().push((i, c.clone()));
        }
    }
    for (j, y) in b.iter().enumerate() {
        for (l, c) in y.terms() {
            rows.entry(interner.intern(l)).or_default().push((a.len() + j, -c.clone()));
        }
    }
    let mut keys: Vec<usize> = rows.keys().copied().collect();
    keys.sort_unstable();
    let rows: Vec<SparseRow<S>> = keys.into_iter().map(|k| rows.remove(&k).expect("key")).collect();
    let kernel = linalg::nullspace(&rows, a.len() + b.len());
    let mut out = Subspace::new(ambient);
    for v in kernel {
        let mut x = AlgebraElement::zero(ambient);
        for (i, c) in v {
            if i < a.len() {
                for (l, d) in a[i].terms() {
                    x.add_term(*l, c.clone() * d.clone());
                }
            }
        }
        out.insert(&x);
    }
    out.basis().to_vec()
}

/// A basis of the unital subalgebra generated by `gens`.
///
/// Starts from `{1}` and left-multiplies by generators until the span is
/// stable. `max_dim` bounds the number of basis elements as a guard.
pub fn subalgebra_closure<S: Scalar>(
    ambient: &Ambient,
    gens: &[AlgebraElement<S>],
    max_dim: usize,
) -> Result<Vec<AlgebraElement<S>>, AlgebraError> {
    let mut space = Subspace::new(ambient);
    let one = AlgebraElement::one(ambient);
    space.insert(&one);
    let mut frontier = vec![one];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g.try_mul(x)?;
                if space.insert(&y) {
                    if space.dim() > max_dim {
                        return Err(AlgebraError::ClosureDidNotStabilize(max_dim));
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(space.basis().to_vec())
}

/// Whether every pair of elements commutes.
pub fn all_commute<S: Scalar>(elems: &[AlgebraElement<S>]) -> Option<(usize, usize)> {
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let ab = &elems[i] * &elems[j];
            let ba = &elems[j] * &elems[i];
            if ab != ba {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;
    use std::sync::Arc;

    #[test]
    fn closure_examples() {
        let g = Arc::new(Group::trivial());
        let a = Ambient::group_algebra(2, &g);
        let basis = subalgebra_closure::<Rational>(&a, &[], 10).unwrap();
        assert_eq!(basis.len(), 1);
        let s1 = AlgebraElement::basis(&a, RookMatrix::s(1, 2).unwrap()).unwrap();
        let basis = subalgebra_closure::<Rational>(&a, std::slice::from_ref(&s1), 10).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(subalgebra_closure::<Rational>(&a, &[s1], 1).is_err());
    }

    #[test]
    fn intersection_and_membership() {
        let g = Arc::new(Group::cyclic(2).unwrap());
        let a = Ambient::semigroup(2, &g);
        let e = |m: RookMatrix| AlgebraElement::<Rational>::basis(&a, m).unwrap();
        let one = e(RookMatrix::identity(2));
        let e1 = e(RookMatrix::epsilon(1, 2).unwrap());
        let e2 = e(RookMatrix::epsilon(2, 2).unwrap());
        let s = e(RookMatrix::s(1, 2).unwrap());
        let left = vec![one.clone(), e1.clone(), s.clone()];
        let right = vec![&one + &e1, e2.clone(), s.clone()];
        let cap = span_intersection(&a, &left, &right);
        assert_eq!(cap.len(), 2);
        assert!(span_equal(&a, &cap, &[&one + &e1, s.clone()]));
        assert!(span_membership(&(&one - &e1), &left));
        assert!(!span_membership(&e2, &left));
        assert_eq!(rank_of(&a, &[one.clone(), one.clone(), e1.clone()]), 2);
        assert!(all_commute(&[one, e1, e2]).is_none());
    }
}
