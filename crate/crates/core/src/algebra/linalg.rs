//! Sparse exact Gaussian elimination.
//!
//! Rows are sorted `(column, value)` lists. The elimination ring is either
//! a field (pivots normalized to 1) or the integers, where rows are kept
//! primitive and eliminated fraction-free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;

pub type SparseRow<E> = Vec<(usize, E)>;

/// Ring in which elimination takes place.
pub trait ElimRing: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    /// Factors `(s, t)` with `s·coeff = t·lead`, so that `s·row − t·pivot`
    /// clears the pivot column. `s` must be nonzero.
    fn elim_factors(lead: &Self, coeff: &Self) -> (Self, Self);
    /// `s·a − t·b`.
    fn combine(s: &Self, a: &Self, t: &Self, b: &Self) -> Self;
    /// `s·a`.
    fn scale(s: &Self, a: &Self) -> Self;
    /// `−t·b`.
    fn neg_scale(t: &Self, b: &Self) -> Self;
    fn is_one(&self) -> bool;
    /// Puts a nonzero row into canonical form (unit lead, or primitive with
    /// positive lead).
    fn normalize(row: &mut SparseRow<Self>);
}

impl ElimRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn elim_factors(lead: &Self, coeff: &Self) -> (Self, Self) {
        let g = lead.gcd(coeff);
        (lead / &g, coeff / &g)
    }
    fn combine(s: &Self, a: &Self, t: &Self, b: &Self) -> Self {
        s * a - t * b
    }
    fn scale(s: &Self, a: &Self) -> Self {
        s * a
    }
    fn neg_scale(t: &Self, b: &Self) -> Self {
        -(t * b)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn normalize(row: &mut SparseRow<Self>) {
        let mut content = BigInt::zero();
        for (_, v) in row.iter() {
            content = content.gcd(v);
            if One::is_one(&content) {
                break;
            }
        }
        if row[0].1.is_negative() {
            content = -content;
        }
        if !One::is_one(&content) {
            for (_, v) in row.iter_mut() {
                *v = &*v / &content;
            }
        }
    }
}

/// Field wrapper used as its own elimination ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FieldElim<S>(pub S);

impl<S: Scalar + Copy> ElimRing for FieldElim<S> {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn elim_factors(lead: &Self, coeff: &Self) -> (Self, Self) {
        debug_assert!(lead.0 == S::one());
        (FieldElim(S::one()), *coeff)
    }
    fn combine(s: &Self, a: &Self, t: &Self, b: &Self) -> Self {
        FieldElim(s.0 * a.0 - t.0 * b.0)
    }
    fn scale(s: &Self, a: &Self) -> Self {
        FieldElim(s.0 * a.0)
    }
    fn neg_scale(t: &Self, b: &Self) -> Self {
        FieldElim(-(t.0 * b.0))
    }
    fn is_one(&self) -> bool {
        self.0 == S::one()
    }
    fn normalize(row: &mut SparseRow<Self>) {
        let inv = row[0].1 .0.inv().expect("nonzero lead");
        for (_, v) in row.iter_mut() {
            v.0 = v.0 * inv;
        }
    }
}

/// `row ← s·row − t·pivot`, merging sorted supports.
fn eliminate<E: ElimRing>(row: &SparseRow<E>, pivot: &SparseRow<E>, s: &E, t: &E) -> SparseRow<E> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let s_is_one = s.is_one();
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ci < cj {
            let v = if s_is_one { row[i].1.clone() } else { E::scale(s, &row[i].1) };
            out.push((ci, v));
            i += 1;
        } else if cj < ci {
            out.push((cj, E::neg_scale(t, &pivot[j].1)));
            j += 1;
        } else {
            let v = E::combine(s, &row[i].1, t, &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built incrementally.
#[derive(Clone)]
pub struct Echelon<E: ElimRing> {
    rows: Vec<SparseRow<E>>,
    pivot_of: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<E: ElimRing> Default for Echelon<E> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivot_of: Vec::new() }
    }
}

impl<E: ElimRing> Echelon<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<E>] {
        &self.rows
    }

    fn pivot_row(&self, col: usize) -> Option<usize> {
        match self.pivot_of.get(col) {
            Some(&p) if p != NONE => Some(p as usize),
            _ => None,
        }
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow<E>) -> SparseRow<E> {
        let mut idx = 0;
        while idx < row.len() {
            let col = row[idx].0;
            match self.pivot_row(col) {
                Some(p) => {
                    let pivot = &self.rows[p];
                    let (s, t) = E::elim_factors(&pivot[0].1, &row[idx].1);
                    row = eliminate(&row, pivot, &s, &t);
                }
                None => idx += 1,
            }
        }
        row
    }

    /// Inserts a row; returns `true` when it was independent of the span.
    pub fn insert(&mut self, row: SparseRow<E>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        E::normalize(&mut row);
        let col = row[0].0;
        if self.pivot_of.len() <= col {
            self.pivot_of.resize(col + 1, NONE);
        }
        self.pivot_of[col] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: SparseRow<E>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// Brings the rows to reduced echelon form, sorted by pivot column.
    pub fn into_rref(mut self) -> Vec<SparseRow<E>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| self.rows[i][0].0);
        for &p in order.iter().rev() {
            let pcol = self.rows[p][0].0;
            for i in 0..self.rows.len() {
                if i == p || self.rows[i][0].0 > pcol {
                    continue;
                }
                if let Ok(pos) = self.rows[i].binary_search_by_key(&pcol, |x| x.0) {
                    let pivot = &self.rows[p];
                    let (s, t) = E::elim_factors(&pivot[0].1, &self.rows[i][pos].1);
                    let mut new = eliminate(&self.rows[i], pivot, &s, &t);
                    E::normalize(&mut new);
                    self.rows[i] = new;
                }
            }
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_unstable_by_key(|r| r[0].0);
        rows
    }
}

/// Kernel of the linear map whose constraint rows are `rows` over `dim`
/// unknowns. One basis vector per free column, in increasing column order;
/// the free column carries coefficient 1.
pub fn nullspace<S: Scalar>(rows: &[SparseRow<S>], dim: usize) -> Vec<SparseRow<S>> {
    let mut ech: Echelon<S::Elim> = Echelon::new();
    for row in rows {
        let row = to_elim_row::<S>(row);
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    kernel_from_echelon::<S>(ech, dim)
}

pub(crate) fn kernel_from_echelon<S: Scalar>(ech: Echelon<S::Elim>, dim: usize) -> Vec<SparseRow<S>> {
    let rref = ech.into_rref();
    let mut is_pivot = vec![false; dim];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    // For each free column, the rows that mention it.
    let mut mentions: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
    for (ri, r) in rref.iter().enumerate() {
        for (pos, (c, _)) in r.iter().enumerate().skip(1) {
            mentions[*c].push((ri, pos));
        }
    }
    let mut out = Vec::new();
    for f in 0..dim {
        if is_pivot[f] {
            continue;
        }
        let mut v: SparseRow<S> = Vec::with_capacity(mentions[f].len() + 1);
        for &(ri, pos) in &mentions[f] {
            let r = &rref[ri];
            // lead·x_p + b·x_f = 0 with x_f = 1.
            let coeff = -S::elim_ratio(&r[pos].1, &r[0].1);
            v.push((r[0].0, coeff));
        }
        v.push((f, S::one()));
        v.sort_unstable_by_key(|x| x.0);
        out.push(v);
    }
    out
}

pub(crate) fn to_elim_row<S: Scalar>(row: &SparseRow<S>) -> SparseRow<S::Elim> {
    let mut sorted: Vec<&(usize, S)> = row.iter().filter(|(_, v)| !v.is_zero()).collect();
    sorted.sort_unstable_by_key(|x| x.0);
    let vals: Vec<S> = sorted.iter().map(|x| x.1.clone()).collect();
    let scaled = S::to_elim(&vals);
    sorted.iter().map(|x| x.0).zip(scaled).collect()
}

/// Rank of a set of sparse rows.
pub fn rank<S: Scalar>(rows: &[SparseRow<S>]) -> usize {
    let mut ech: Echelon<S::Elim> = Echelon::new();
    for row in rows {
        let row = to_elim_row::<S>(row);
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    ech.rank()
}

#[cfg(test)]
fn row_content(row: &SparseRow<BigInt>) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Fp, Rational};
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn apply<S: Scalar>(rows: &[SparseRow<S>], v: &SparseRow<S>) -> Vec<S> {
        rows.iter()
            .map(|r| {
                let mut acc = S::zero();
                for (c, a) in r {
                    if let Some((_, b)) = v.iter().find(|(d, _)| d == c) {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn trivial_kernels() {
        let k = nullspace::<Rational>(&[], 3);
        assert_eq!(k.len(), 3);
        let k = nullspace(&[vec![(0, q(1)), (1, q(1))]], 2);
        assert_eq!(k, vec![vec![(0, q(-1)), (1, q(1))]]);
    }

    #[test]
    fn rational_kernel_with_fractions() {
        // 2x + 3y = 0; y - z = 0
        let rows = vec![vec![(0, q(2)), (1, q(3))], vec![(1, q(1)), (2, q(-1))]];
        let k = nullspace(&rows, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, Rational::new(-3, 2)), (1, q(1)), (2, q(1))]);
    }

    fn random_rows(max_dim: usize) -> impl Strategy<Value = (usize, Vec<Vec<(usize, i64)>>)> {
        (1..max_dim).prop_flat_map(|dim| {
            let row = proptest::collection::btree_map(0..dim, -3i64..=3, 0..dim.min(5) + 1)
                .prop_map(|m| m.into_iter().collect::<Vec<_>>());
            (Just(dim), proptest::collection::vec(row, 0..10))
        })
    }

    proptest! {
        #[test]
        fn kernel_annihilates_and_rank_nullity((dim, raw) in random_rows(9)) {
            let rows: Vec<SparseRow<Rational>> =
                raw.iter().map(|r| r.iter().map(|&(c, v)| (c, q(v))).collect()).collect();
            let k = nullspace(&rows, dim);
            for v in &k {
                prop_assert!(apply(&rows, v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(rank(&rows) + k.len(), dim);
            prop_assert_eq!(rank(&k), k.len());

            let rows_p: Vec<SparseRow<Fp<101>>> =
                raw.iter().map(|r| r.iter().map(|&(c, v)| (c, Fp::new(v))).collect()).collect();
            let kp = nullspace(&rows_p, dim);
            for v in &kp {
                prop_assert!(apply(&rows_p, v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(rank(&rows_p) + kp.len(), dim);
        }
    }

    #[test]
    fn integer_rows_stay_primitive() {
        let mut ech: Echelon<BigInt> = Echelon::new();
        assert!(ech.insert(vec![(0, BigInt::from(4)), (2, BigInt::from(6))]));
        assert!(ech.insert(vec![(0, BigInt::from(2)), (1, BigInt::from(2))]));
        assert!(!ech.insert(vec![(0, BigInt::from(6)), (1, BigInt::from(2)), (2, BigInt::from(6))]));
        for r in ech.rows() {
            assert!(One::is_one(&row_content(r)));
        }
        let rref = ech.into_rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0][0].0, 0);
        assert!(rref[0].iter().all(|(c, _)| *c != 1));
    }
}
