//! Ω-matrices, the orbit invariant `ℱ(γ) = (Ω(γ), ρ(γ))`, the sets `Γ(Ω, P)`
//! and the elements `C^{Ω,ρ}_n`, `Δ^{Ω,ρ}_n`.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::class_sum::{bump, class_sum_counts, counts_to_element, for_each_permutation, mask_of, signed_submasks, subsets_of_size, Counts};
use super::types::{cycles_on, type_from_cycles, TypeFunction};
use super::ClassDataError;
use crate::algebra::{AlgebraElement, Ambient, Scalar};
use crate::groups::Group;
use crate::rook::{RookMatrix, MAX_N};

/// A nonzero entry of an Ω-matrix: row (1-based), group label and exponent of `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaEntry {
    pub row: usize,
    pub label: usize,
    pub exp: usize,
}

/// An `m×m` matrix over `(G × ℤ_+) ∪ {0}` with at most one nonzero per row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaMatrix {
    cols: Vec<Option<OmegaEntry>>,
}

impl OmegaMatrix {
    /// Validates that rows are in range and distinct.
    pub fn new(cols: Vec<Option<OmegaEntry>>, group: &Group) -> Result<Self, ClassDataError> {
        let m = cols.len();
        let mut used = vec![false; m];
        for e in cols.iter().flatten() {
            if e.row == 0 || e.row > m {
                return Err(ClassDataError::BadOmega(format!("row {} out of range 1..={m}", e.row)));
            }
            if e.label >= group.order() {
                return Err(ClassDataError::BadOmega(format!("label {} out of range", e.label)));
            }
            if std::mem::replace(&mut used[e.row - 1], true) {
                return Err(ClassDataError::BadOmega(format!("row {} used twice", e.row)));
            }
        }
        Ok(OmegaMatrix { cols })
    }

    /// `β` with every exponent 0.
    pub fn from_rook(beta: &RookMatrix) -> Self {
        let cols = (1..=beta.n()).map(|j| beta.col(j).map(|(row, label)| OmegaEntry { row, label, exp: 0 })).collect();
        OmegaMatrix { cols }
    }

    /// The `m×m` identity `𝕀`.
    pub fn identity(m: usize) -> Self {
        Self::from_rook(&RookMatrix::identity(m))
    }

    /// `α_k`: the identity with exponent 1 at slot `k`.
    pub fn alpha(k: usize, m: usize) -> Result<Self, ClassDataError> {
        if k == 0 || k > m {
            return Err(ClassDataError::BadOmega(format!("slot {k} out of range 1..={m}")));
        }
        let mut o = Self::identity(m);
        if let Some(e) = o.cols[k - 1].as_mut() {
            e.exp = 1;
        }
        Ok(o)
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    /// Column `j` (1-based).
    pub fn col(&self, j: usize) -> Option<OmegaEntry> {
        self.cols[j - 1]
    }

    pub fn cols(&self) -> &[Option<OmegaEntry>] {
        &self.cols
    }

    /// `ord(Ω)`: the sum of exponents.
    pub fn ord(&self) -> usize {
        self.cols.iter().flatten().map(|e| e.exp).sum()
    }

    pub fn is_total(&self) -> bool {
        self.cols.iter().all(Option::is_some)
    }

    /// The underlying rook matrix, forgetting exponents.
    pub fn shape(&self) -> RookMatrix {
        let entries: Vec<(usize, usize, usize)> =
            self.cols.iter().enumerate().filter_map(|(j, e)| e.map(|e| (j + 1, e.row, e.label))).collect();
        let mut x = RookMatrix::zero(self.m());
        for (j, i, g) in entries {
            x.set_col0(j - 1, Some((i - 1, g)));
        }
        x
    }

    pub fn display<'a>(&'a self, group: &'a Group) -> OmegaDisplay<'a> {
        OmegaDisplay { omega: self, group }
    }

    /// `[[row, col, label, exponent], ...]` with label names.
    pub fn to_json(&self, group: &Group) -> serde_json::Value {
        serde_json::Value::Array(
            self.cols
                .iter()
                .enumerate()
                .filter_map(|(j, e)| e.map(|e| serde_json::json!([e.row, j + 1, group.name(e.label), e.exp])))
                .collect(),
        )
    }
}

impl Serialize for OmegaMatrix {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        let entries: Vec<(usize, usize, usize, usize)> =
            self.cols.iter().enumerate().filter_map(|(j, e)| e.map(|e| (e.row, j + 1, e.label, e.exp))).collect();
        let mut seq = s.serialize_seq(Some(entries.len()))?;
        for e in entries {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

pub struct OmegaDisplay<'a> {
    omega: &'a OmegaMatrix,
    group: &'a Group,
}

impl fmt::Display for OmegaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (j, e) in self.omega.cols.iter().enumerate() {
            if let Some(e) = e {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}->({},{},z^{})", j + 1, e.row, self.group.name(e.label), e.exp)?;
            }
        }
        write!(f, "}}/{}", self.omega.m())
    }
}

/// All `m×m` Ω-matrices with `ord ≤ max_ord`, in canonical order.
pub fn enumerate_omegas(m: usize, group: &Group, max_ord: usize) -> Vec<OmegaMatrix> {
    fn rec(
        m: usize,
        group: &Group,
        budget: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Option<OmegaEntry>>,
        out: &mut Vec<OmegaMatrix>,
    ) {
        if cur.len() == m {
            out.push(OmegaMatrix { cols: cur.clone() });
            return;
        }
        cur.push(None);
        rec(m, group, budget, used, cur, out);
        cur.pop();
        for row in 1..=m {
            if used[row - 1] {
                continue;
            }
            used[row - 1] = true;
            for label in 0..group.order() {
                for exp in 0..=budget {
                    cur.push(Some(OmegaEntry { row, label, exp }));
                    rec(m, group, budget - exp, used, cur, out);
                    cur.pop();
                }
            }
            used[row - 1] = false;
        }
    }
    let mut out = Vec::new();
    rec(m, group, max_ord, &mut vec![false; m], &mut Vec::new(), &mut out);
    out
}

/// `ℱ(γ)` together with the chain support `P(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitInvariant {
    pub omega: OmegaMatrix,
    pub rho: TypeFunction,
    /// Union of chain interiors (1-based, sorted).
    pub p: Vec<usize>,
}

/// Computes `(Ω(γ), ρ(γ))` and `P(γ)` for `γ ∈ Ḡ_{m,n}`.
pub fn orbit_invariant(gamma: &RookMatrix, m: usize, group: &Group) -> Result<OrbitInvariant, ClassDataError> {
    let n = gamma.n();
    if m > n || !gamma.in_gamma_mn(m) {
        return Err(ClassDataError::NotInGamma { m, n });
    }
    let mut p = Vec::new();
    let mut cols = Vec::with_capacity(m);
    for j in 0..m {
        let entry = gamma.col0(j).map(|(row, label)| {
            let (mut cur, mut acc, mut k) = (row, label, 0);
            while cur >= m {
                p.push(cur + 1);
                k += 1;
                let (r, l) = gamma.col0(cur).expect("columns beyond the corner are nonzero");
                acc = group.mul(l, acc);
                cur = r;
            }
            OmegaEntry { row: cur + 1, label: acc, exp: k }
        });
        cols.push(entry);
    }
    p.sort_unstable();
    let rest: Vec<usize> = (m..n).filter(|c| p.binary_search(&(c + 1)).is_err()).collect();
    let rho = type_from_cycles(&cycles_on(gamma, group, &rest), group.num_classes());
    Ok(OrbitInvariant { omega: OmegaMatrix { cols }, rho, p })
}

/// Enumerates `Γ(Ω, P)` inside `Ḡ_n`: chains of Ω's positive exponents laid
/// through `P` in every order, labels along each chain multiplying to Ω's
/// label, and the identity on `{m+1..n} \ P`.
pub fn gamma_omega_p(omega: &OmegaMatrix, p: &[usize], n: usize, group: &Group) -> Result<Vec<RookMatrix>, ClassDataError> {
    let m = omega.m();
    if n > MAX_N || m > n {
        return Err(ClassDataError::NotInGamma { m, n });
    }
    if p.len() != omega.ord() || p.iter().any(|&i| i <= m || i > n) {
        return Err(ClassDataError::BadSubset { subset: p.to_vec(), n });
    }
    let mut base = RookMatrix::identity(n);
    let mut chains: Vec<(usize, OmegaEntry)> = Vec::new();
    for (j, e) in omega.cols.iter().enumerate() {
        match e {
            None => base.set_col0(j, None),
            Some(e) if e.exp == 0 => base.set_col0(j, Some((e.row - 1, e.label))),
            Some(e) => chains.push((j, *e)),
        }
    }
    let order = group.order();
    let mut seen = std::collections::BTreeSet::new();
    for_each_permutation(p, |perm| {
        let mut paths: Vec<(usize, OmegaEntry, &[usize])> = Vec::with_capacity(chains.len());
        let mut at = 0;
        for &(j, e) in &chains {
            paths.push((j, e, &perm[at..at + e.exp]));
            at += e.exp;
        }
        let free: usize = chains.iter().map(|(_, e)| e.exp).sum();
        for code in 0..order.pow(free as u32) {
            let mut c = code;
            let mut x = base;
            for &(j, e, path) in &paths {
                // Edges j→p1→…→pk→row; the first k labels are free.
                let mut from = j;
                let mut acc = 0usize;
                for &q in path {
                    let a = c % order;
                    c /= order;
                    x.set_col0(from, Some((q - 1, a)));
                    acc = group.mul(a, acc);
                    from = q - 1;
                }
                let last = group.mul(e.label, group.inv(acc));
                x.set_col0(from, Some((e.row - 1, last)));
            }
            seen.insert(x);
        }
    });
    Ok(seen.into_iter().collect())
}

struct OmegaTerms {
    /// `(P, T, Σ_γ γ·C^ρ_{n,T})` per disjoint pair.
    pieces: Vec<(Vec<usize>, Vec<usize>, Counts)>,
}

fn omega_rho_terms(group: &Group, n: usize, omega: &OmegaMatrix, rho: &TypeFunction) -> Result<Option<OmegaTerms>, ClassDataError> {
    let m = omega.m();
    if m > n || n > MAX_N {
        return Err(ClassDataError::NotInGamma { m, n });
    }
    if rho.num_classes() != group.num_classes() {
        return Err(ClassDataError::ClassCount { expected: group.num_classes(), found: rho.num_classes() });
    }
    if omega.ord() + rho.norm() > n - m {
        return Ok(None);
    }
    let pool: Vec<usize> = (m + 1..=n).collect();
    let mut pieces = Vec::new();
    for ps in subsets_of_size(&pool, omega.ord()) {
        let gammas = gamma_omega_p(omega, &ps, n, group)?;
        let rest: Vec<usize> = pool.iter().copied().filter(|i| !ps.contains(i)).collect();
        for ts in subsets_of_size(&rest, rho.norm()) {
            let cs = class_sum_counts(group, n, rho, &ts);
            let mut counts = Counts::default();
            for g in &gammas {
                for (c, &v) in &cs {
                    bump(&mut counts, g.mul(c, group), v);
                }
            }
            pieces.push((ps.clone(), ts, counts));
        }
    }
    Ok(Some(OmegaTerms { pieces }))
}

/// `C^{Ω,ρ}_n = Σ_{P,T} Σ_{γ∈Γ(Ω,P)} γ C^ρ_{n,T}` in the semigroup algebra.
pub fn c_omega_rho<S: Scalar>(
    group: &Arc<Group>,
    n: usize,
    omega: &OmegaMatrix,
    rho: &TypeFunction,
) -> Result<AlgebraElement<S>, ClassDataError> {
    let amb = Ambient::semigroup(n, group);
    let Some(terms) = omega_rho_terms(group, n, omega, rho)? else {
        return Ok(AlgebraElement::zero(&amb));
    };
    let mut total = Counts::default();
    for (_, _, c) in terms.pieces {
        for (l, v) in c {
            bump(&mut total, l, v);
        }
    }
    Ok(counts_to_element(&amb, &total))
}

/// `Δ^{Ω,ρ}_n = Σ_{P,T} Σ_{γ∈Γ(Ω,P)} ε̄_P γ C^ρ_{n,T} ε̄_T ε̄_P`.
pub fn delta_omega_rho<S: Scalar>(
    group: &Arc<Group>,
    n: usize,
    omega: &OmegaMatrix,
    rho: &TypeFunction,
) -> Result<AlgebraElement<S>, ClassDataError> {
    let amb = Ambient::semigroup(n, group);
    let Some(terms) = omega_rho_terms(group, n, omega, rho)? else {
        return Ok(AlgebraElement::zero(&amb));
    };
    let mut total = Counts::default();
    for (ps, ts, c) in terms.pieces {
        let pm = mask_of(&ps);
        let left = signed_submasks(pm);
        let right = signed_submasks(pm | mask_of(&ts));
        for (l, v) in c {
            for &(r, sr) in &left {
                let lr = l.zero_rows(r);
                for &(q, sq) in &right {
                    bump(&mut total, lr.zero_columns(q), v * sr * sq);
                }
            }
        }
    }
    Ok(counts_to_element(&amb, &total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::classdata::class_sum::{class_sum, delta_rho, eps_bar};
    use crate::classdata::types::{enumerate_types, BoundMode};
    use crate::rook::enumerate_semigroup;
    use std::collections::{BTreeMap, BTreeSet};

    type Q = Rational;

    fn c2() -> Arc<Group> {
        Arc::new(Group::cyclic(2).unwrap())
    }

    #[test]
    fn omega_enumeration_counts() {
        let g = c2();
        assert_eq!(enumerate_omegas(0, &g, 3).len(), 1);
        let zero = enumerate_omegas(1, &g, 0);
        assert_eq!(zero.len(), 3);
        assert_eq!(enumerate_omegas(1, &g, 1).len(), 5);
        let two = enumerate_omegas(2, &g, 2);
        assert!(two.windows(2).all(|w| w[0] < w[1]));
        assert!(two.iter().all(|o| o.ord() <= 2));
    }

    #[test]
    fn invariant_examples() {
        let g = c2();
        let neg = 1;
        // m = n: Ω = γ.
        let x = RookMatrix::from_entries(2, &[(1, 2, neg), (2, 1, 0)], &g).unwrap();
        let inv = orbit_invariant(&x, 2, &g).unwrap();
        assert_eq!(inv.omega, OmegaMatrix::from_rook(&x));
        assert!(inv.rho.is_empty());
        // Antidiagonal with labels g at (1,2) and h at (2,1), m = 1.
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let x = RookMatrix::from_entries(2, &[(2, 1, a), (1, 2, b)], &g).unwrap();
            let inv = orbit_invariant(&x, 1, &g).unwrap();
            let e = inv.omega.col(1).unwrap();
            assert_eq!((e.row, e.label, e.exp), (1, g.mul(a, b), 1));
            assert!(inv.rho.is_empty());
            assert_eq!(inv.p, vec![2]);
        }
        // Diagonal.
        let x = RookMatrix::diagonal(&[1, 0]);
        let inv = orbit_invariant(&x, 1, &g).unwrap();
        assert_eq!(inv.omega.col(1).unwrap(), OmegaEntry { row: 1, label: 1, exp: 0 });
        assert_eq!(inv.rho, TypeFunction::atom(2, 0, 1).unwrap());
        let x = RookMatrix::diagonal(&[0, 1]);
        assert_eq!(orbit_invariant(&x, 1, &g).unwrap().rho, TypeFunction::atom(2, 1, 1).unwrap());
        assert!(orbit_invariant(&RookMatrix::epsilon(2, 2).unwrap(), 1, &g).is_err());
    }

    /// Brute-force orbits of `G'_{n−m}` (acting on the last slots) on `Ḡ_{m,n}`.
    fn orbits(n: usize, m: usize, g: &Group) -> Vec<BTreeSet<RookMatrix>> {
        let all: Vec<RookMatrix> =
            enumerate_semigroup(n, g, 1 << 22).unwrap().filter(|x| x.in_gamma_mn(m)).collect();
        let conj: Vec<RookMatrix> = crate::rook::enumerate_group(n - m, g, 1 << 22)
            .unwrap()
            .map(|b| b.embed_last(n).unwrap())
            .collect();
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for x in &all {
            if done.contains(x) {
                continue;
            }
            let orbit: BTreeSet<RookMatrix> = conj.iter().map(|b| b.mul(x, g).mul(&b.inverse(g).unwrap(), g)).collect();
            done.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }

    #[test]
    fn invariant_separates_orbits() {
        for (g, cases) in [(Group::cyclic(2).unwrap(), vec![(1, 1), (2, 1), (3, 1), (3, 2), (2, 0), (3, 0)]), (Group::symmetric(3).unwrap(), vec![(2, 1)])] {
            for (n, m) in cases {
                let mut seen = BTreeMap::new();
                for (i, orbit) in orbits(n, m, &g).iter().enumerate() {
                    let invs: BTreeSet<(OmegaMatrix, TypeFunction)> = orbit
                        .iter()
                        .map(|x| {
                            let inv = orbit_invariant(x, m, &g).unwrap();
                            assert_eq!(inv.omega.ord() + inv.rho.norm(), n - m);
                            (inv.omega, inv.rho)
                        })
                        .collect();
                    assert_eq!(invs.len(), 1, "not constant on an orbit (n={n}, m={m})");
                    assert!(seen.insert(invs.into_iter().next().unwrap(), i).is_none(), "two orbits collide");
                }
            }
        }
    }

    #[test]
    fn gamma_sets_realize_their_invariant() {
        let g = c2();
        let n = 3;
        let m = 1;
        for omega in enumerate_omegas(m, &g, n - m) {
            let pool: Vec<usize> = (m + 1..=n).collect();
            for p in subsets_of_size(&pool, omega.ord()) {
                let set = gamma_omega_p(&omega, &p, n, &g).unwrap();
                let expect = crate::rook::factorial(p.len()) as usize * g.order().pow(p.len() as u32);
                assert_eq!(set.len(), expect);
                for x in &set {
                    let inv = orbit_invariant(x, m, &g).unwrap();
                    assert_eq!(inv.omega, omega);
                    assert_eq!(inv.p, p);
                    assert_eq!(inv.rho, TypeFunction::new(vec![vec![1; n - m - p.len()], vec![]]));
                }
            }
        }
    }

    #[test]
    fn remark_checks() {
        let g = c2();
        // Δ^{β,∅} = β.
        for beta in enumerate_semigroup(2, &g, 100).unwrap() {
            let d = delta_omega_rho::<Q>(&g, 4, &OmegaMatrix::from_rook(&beta), &TypeFunction::empty(2)).unwrap();
            let amb = Ambient::semigroup(4, &g);
            assert_eq!(d, AlgebraElement::basis(&amb, beta.embed(4).unwrap()).unwrap());
        }
        // Δ^{𝕀,ρ} = Σ_{T ⊆ {m+1..n}} C^ρ_{n,T} ε̄_T.
        let (n, m) = (3, 1);
        for rho in enumerate_types(&g, n - m, BoundMode::AtMost) {
            let d = delta_omega_rho::<Q>(&g, n, &OmegaMatrix::identity(m), &rho).unwrap();
            let amb = Ambient::semigroup(n, &g);
            let mut expect = AlgebraElement::<Q>::zero(&amb);
            for t in subsets_of_size(&[2, 3], rho.norm()) {
                let c = class_sum::<Q>(&g, n, &rho, Some(&t)).unwrap().to_semigroup();
                expect = &expect + &(&c * &eps_bar::<Q>(&g, n, &t).unwrap());
            }
            assert_eq!(d, expect, "ρ = {rho}");
        }
        // Δ^{α_k,∅} = Σ_{l>m} (1−ε_l) t_kl (kl) (1−ε_l).
        let (n, m) = (4, 2);
        let amb = Ambient::semigroup(n, &g);
        for k in 1..=m {
            let d = delta_omega_rho::<Q>(&g, n, &OmegaMatrix::alpha(k, m).unwrap(), &TypeFunction::empty(2)).unwrap();
            let mut expect = AlgebraElement::<Q>::zero(&amb);
            for l in m + 1..=n {
                let mut t = AlgebraElement::<Q>::zero(&amb);
                for h in 0..g.order() {
                    let x = RookMatrix::slot(h, k, n).unwrap().mul(&RookMatrix::slot(g.inv(h), l, n).unwrap(), &g);
                    t = &t + &AlgebraElement::basis(&amb, x).unwrap();
                }
                let tr = AlgebraElement::basis(&amb, RookMatrix::transposition(k, l, n).unwrap()).unwrap();
                let el = eps_bar::<Q>(&g, n, &[l]).unwrap();
                expect = &expect + &(&(&(&el * &t) * &tr) * &el);
            }
            assert_eq!(d, expect);
        }
    }

    #[test]
    fn corner_zero_matches_delta_rho() {
        let g = c2();
        for n in 0..=3 {
            for rho in enumerate_types(&g, n, BoundMode::AtMost) {
                let a = delta_omega_rho::<Q>(&g, n, &OmegaMatrix::identity(0), &rho).unwrap();
                assert_eq!(a, delta_rho::<Q>(&g, n, &rho).unwrap());
            }
        }
    }

    #[test]
    fn theta_stability_and_bound() {
        let g = c2();
        let m = 1;
        for n in 2..=3 {
            for omega in enumerate_omegas(m, &g, n - m) {
                for rho in enumerate_types(&g, n - m - omega.ord(), BoundMode::AtMost) {
                    let d = delta_omega_rho::<Q>(&g, n, &omega, &rho).unwrap();
                    let below = delta_omega_rho::<Q>(&g, n - 1, &omega, &rho).unwrap();
                    assert_eq!(d.theta(n - 1).unwrap(), below);
                }
            }
        }
        let big = OmegaMatrix::alpha(1, 1).unwrap();
        assert!(delta_omega_rho::<Q>(&g, 1, &big, &TypeFunction::empty(2)).unwrap().is_zero());
    }

    #[test]
    fn json_shapes() {
        let g = c2();
        let o = OmegaMatrix::alpha(1, 2).unwrap();
        assert_eq!(serde_json::to_string(&o).unwrap(), "[[1,1,0,1],[2,2,0,0]]");
        assert_eq!(o.display(&g).to_string(), "{1->(1,1,z^1), 2->(2,1,z^0)}/2");
        let t = TypeFunction::new(vec![vec![2, 1], vec![]]);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[2,1],[]]");
        assert!(OmegaMatrix::new(vec![Some(OmegaEntry { row: 1, label: 0, exp: 0 }); 2], &g).is_err());
    }
}
