//! Class sums `C^ρ_{n,T}`, `C^ρ_n`, the idempotents `ε_T`, `ε̄_T`, and `Δ^ρ_n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::types::TypeFunction;
use super::ClassDataError;
use crate::algebra::{AlgebraElement, Ambient, Scalar};
use crate::groups::Group;
use crate::rook::{RookMatrix, MAX_N};

/// Integer-weighted sum of basis labels, converted to a scalar element at the end.
pub(crate) type Counts = FxHashMap<RookMatrix, i64>;

pub(crate) fn counts_to_element<S: Scalar>(ambient: &Ambient, counts: &Counts) -> AlgebraElement<S> {
    let terms: BTreeMap<RookMatrix, S> = counts
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(l, &c)| (*l, S::from_i64(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    AlgebraElement::from_map_unchecked(ambient, terms)
}

pub(crate) fn bump(counts: &mut Counts, label: RookMatrix, c: i64) {
    *counts.entry(label).or_insert(0) += c;
}

/// Calls `f` on every ordering of `items`.
pub(crate) fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    rec(&mut v, 0, &mut f);
}

/// All `k`-subsets of `pool` (sorted), lexicographically.
pub(crate) fn subsets_of_size(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0u32, |m, &i| m | (1 << (i - 1)))
}

/// Sub-masks of `mask` with their signs `(−1)^{|Q|}`.
pub(crate) fn signed_submasks(mask: u32) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    let mut q = mask;
    loop {
        out.push((q, if q.count_ones().is_multiple_of(2) { 1 } else { -1 }));
        if q == 0 {
            break;
        }
        q = (q - 1) & mask;
    }
    out
}

/// Label vectors along one cycle slot of length `mu`, listed by position:
/// the first `mu − 1` labels are free and the last completes the cycle
/// product into the class `class`.
fn cycle_labels(group: &Group, mu: usize, class: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let order = group.order();
    let free = order.pow(mu as u32 - 1);
    for code in 0..free {
        let mut labels = Vec::with_capacity(mu);
        let mut c = code;
        let mut prod = 0usize;
        for _ in 0..mu - 1 {
            let a = c % order;
            c /= order;
            prod = group.mul(a, prod);
            labels.push(a);
        }
        let pinv = group.inv(prod);
        for &x in &group.conjugacy_classes()[class] {
            let mut l = labels.clone();
            l.push(group.mul(x, pinv));
            out.push(l);
        }
    }
    out
}

fn check_subset(n: usize, t: &[usize]) -> Result<(), ClassDataError> {
    if n > MAX_N {
        return Err(ClassDataError::Rook(crate::rook::RookError::TooLarge(n)));
    }
    let mut seen = 0u32;
    for &i in t {
        if i == 0 || i > n || seen & (1 << (i - 1)) != 0 {
            return Err(ClassDataError::BadSubset { subset: t.to_vec(), n });
        }
        seen |= 1 << (i - 1);
    }
    Ok(())
}

fn check_type(group: &Group, rho: &TypeFunction) -> Result<(), ClassDataError> {
    if rho.num_classes() != group.num_classes() {
        return Err(ClassDataError::ClassCount { expected: group.num_classes(), found: rho.num_classes() });
    }
    Ok(())
}

/// Multiset of matrices in `C^ρ_{n,T}`, keyed by label with its coefficient.
pub(crate) fn class_sum_counts(group: &Group, n: usize, rho: &TypeFunction, t: &[usize]) -> Counts {
    let slots = rho.slots();
    let options: Vec<Vec<Vec<usize>>> = slots.iter().map(|&(mu, c)| cycle_labels(group, mu, c)).collect();
    let mut counts = Counts::default();
    for_each_permutation(t, |seq| {
        // Split the sequence into cycles following the slot lengths.
        let mut cycles: Vec<&[usize]> = Vec::with_capacity(slots.len());
        let mut at = 0;
        for &(mu, _) in &slots {
            cycles.push(&seq[at..at + mu]);
            at += mu;
        }
        let mut choice = vec![0usize; slots.len()];
        loop {
            let mut x = RookMatrix::identity(n);
            for (s, cyc) in cycles.iter().enumerate() {
                let labels = &options[s][choice[s]];
                let mu = cyc.len();
                for p in 0..mu {
                    // Column k_p goes to row k_{p+1}, carrying that row's label.
                    let next = (p + 1) % mu;
                    x.set_col0(cyc[p] - 1, Some((cyc[next] - 1, labels[next])));
                }
            }
            bump(&mut counts, x, 1);
            let mut s = 0;
            while s < choice.len() {
                choice[s] += 1;
                if choice[s] < options[s].len() {
                    break;
                }
                choice[s] = 0;
                s += 1;
            }
            if s == choice.len() {
                break;
            }
        }
    });
    counts
}

/// All subsets `T ⊆ {1..n}` of size `‖ρ‖` with their class-sum multisets.
fn class_sum_counts_all(group: &Group, n: usize, rho: &TypeFunction) -> Vec<(Vec<usize>, Counts)> {
    let pool: Vec<usize> = (1..=n).collect();
    subsets_of_size(&pool, rho.norm())
        .into_iter()
        .map(|t| {
            let c = class_sum_counts(group, n, rho, &t);
            (t, c)
        })
        .collect()
}

/// `C^ρ_{n,T}` when `t` is given, else `C^ρ_n = Σ_T C^ρ_{n,T}`, in the group algebra of `G_n`.
pub fn class_sum<S: Scalar>(
    group: &Arc<Group>,
    n: usize,
    rho: &TypeFunction,
    t: Option<&[usize]>,
) -> Result<AlgebraElement<S>, ClassDataError> {
    check_type(group, rho)?;
    let amb = Ambient::group_algebra(n, group);
    match t {
        Some(t) => {
            check_subset(n, t)?;
            if t.len() != rho.norm() {
                return Err(ClassDataError::SubsetSize { size: t.len(), norm: rho.norm() });
            }
            Ok(counts_to_element(&amb, &class_sum_counts(group, n, rho, t)))
        }
        None => {
            if rho.norm() > n {
                return Ok(AlgebraElement::zero(&amb));
            }
            let mut total = Counts::default();
            for (_, c) in class_sum_counts_all(group, n, rho) {
                for (l, v) in c {
                    bump(&mut total, l, v);
                }
            }
            Ok(counts_to_element(&amb, &total))
        }
    }
}

/// `ε_T = Π_{i∈T} ε_i` in the semigroup algebra of size `n`.
pub fn eps_prod<S: Scalar>(group: &Arc<Group>, n: usize, t: &[usize]) -> Result<AlgebraElement<S>, ClassDataError> {
    check_subset(n, t)?;
    let amb = Ambient::semigroup(n, group);
    Ok(AlgebraElement::basis_unchecked(&amb, RookMatrix::identity(n).zero_columns(mask_of(t))))
}

/// `ε̄_T = Π_{i∈T} (1 − ε_i) = Σ_{Q⊆T} (−1)^{|Q|} ε_Q`.
pub fn eps_bar<S: Scalar>(group: &Arc<Group>, n: usize, t: &[usize]) -> Result<AlgebraElement<S>, ClassDataError> {
    check_subset(n, t)?;
    let amb = Ambient::semigroup(n, group);
    let id = RookMatrix::identity(n);
    let mut counts = Counts::default();
    for (q, sign) in signed_submasks(mask_of(t)) {
        bump(&mut counts, id.zero_columns(q), sign);
    }
    Ok(counts_to_element(&amb, &counts))
}

/// `Δ^ρ_n = Σ_T C^ρ_{n,T} ε̄_T` in the semigroup algebra; zero when `‖ρ‖ > n`.
pub fn delta_rho<S: Scalar>(group: &Arc<Group>, n: usize, rho: &TypeFunction) -> Result<AlgebraElement<S>, ClassDataError> {
    check_type(group, rho)?;
    check_subset(n, &[])?;
    let amb = Ambient::semigroup(n, group);
    if rho.norm() > n {
        return Ok(AlgebraElement::zero(&amb));
    }
    let mut total = Counts::default();
    for (t, c) in class_sum_counts_all(group, n, rho) {
        let subs = signed_submasks(mask_of(&t));
        for (l, v) in c {
            for &(q, sign) in &subs {
                bump(&mut total, l.zero_columns(q), sign * v);
            }
        }
    }
    Ok(counts_to_element(&amb, &total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::classdata::types::{enumerate_types, BoundMode};
    use crate::rook::{from_wreath, WreathElement};
    use proptest::prelude::*;

    type Q = Rational;

    fn c2() -> Arc<Group> {
        Arc::new(Group::cyclic(2).unwrap())
    }

    fn example_rho() -> TypeFunction {
        TypeFunction::new(vec![vec![1], vec![2]])
    }

    /// The explicitly listed six-term element for `ρ(1) = (1)`, `ρ(−1) = (2)`.
    fn golden(g: &Arc<Group>) -> AlgebraElement<Q> {
        let amb = Ambient::group_algebra(3, g);
        // Label index 1 is −1. Permutations are one-line.
        let terms: [([usize; 3], [usize; 3]); 6] = [
            ([0, 0, 1], [1, 3, 2]),
            ([0, 1, 0], [1, 3, 2]),
            ([0, 0, 1], [3, 2, 1]),
            ([1, 0, 0], [3, 2, 1]),
            ([0, 1, 0], [2, 1, 3]),
            ([1, 0, 0], [2, 1, 3]),
        ];
        AlgebraElement::from_terms(
            &amb,
            terms.iter().map(|(lab, sig)| {
                (from_wreath(&WreathElement::new(lab.to_vec(), sig.to_vec()).unwrap()), Q::from_i64(2))
            }),
        )
        .unwrap()
    }

    #[test]
    fn golden_class_sum() {
        let g = c2();
        let c: AlgebraElement<Q> = class_sum(&g, 3, &example_rho(), None).unwrap();
        assert_eq!(c, golden(&g));
    }

    #[test]
    fn empty_and_oversized() {
        let g = c2();
        let e = TypeFunction::empty(2);
        assert_eq!(class_sum::<Q>(&g, 3, &e, None).unwrap(), AlgebraElement::one(&Ambient::group_algebra(3, &g)));
        let big = TypeFunction::new(vec![vec![2, 2], vec![]]);
        assert!(class_sum::<Q>(&g, 3, &big, None).unwrap().is_zero());
        assert!(delta_rho::<Q>(&g, 3, &big).unwrap().is_zero());
        assert!(class_sum::<Q>(&g, 3, &example_rho(), Some(&[1, 2])).is_err());
        assert!(class_sum::<Q>(&g, 3, &example_rho(), Some(&[1, 1, 2])).is_err());
        assert!(class_sum::<Q>(&g, 3, &TypeFunction::empty(3), None).is_err());
    }

    #[test]
    fn identity_part_law_exhaustive() {
        // C^{ρ∪ρ_1^1}_n = (n − ‖ρ‖) C^ρ_n.
        let atom = TypeFunction::atom(2, 0, 1).unwrap();
        let g = c2();
        for n in 1..=4 {
            for rho in enumerate_types(&g, n - 1, BoundMode::AtMost) {
                let lhs: AlgebraElement<Q> = class_sum(&g, n, &rho.union(&atom), None).unwrap();
                let rhs: AlgebraElement<Q> = class_sum(&g, n, &rho, None).unwrap();
                assert_eq!(lhs, rhs.scale(&Q::from_i64((n - rho.norm()) as i64)), "ρ = {rho}, n = {n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn identity_part_law_random_groups(gi in 0usize..3, n in 1usize..=3, pick in any::<prop::sample::Index>()) {
            let groups = [Group::trivial(), Group::cyclic(3).unwrap(), Group::symmetric(3).unwrap()];
            let g = Arc::new(groups[gi].clone());
            let types = enumerate_types(&g, n - 1, BoundMode::AtMost);
            let rho = pick.get(&types);
            let atom = TypeFunction::atom(g.num_classes(), 0, 1).unwrap();
            let lhs: AlgebraElement<Q> = class_sum(&g, n, &rho.union(&atom), None).unwrap();
            let rhs: AlgebraElement<Q> = class_sum(&g, n, rho, None).unwrap();
            prop_assert_eq!(lhs, rhs.scale(&Q::from_i64((n - rho.norm()) as i64)));
        }
    }

    #[test]
    fn class_sums_partition_the_group() {
        // Σ_ρ C^ρ_n / (multiplicity) counts each element; here just total coefficient mass.
        let g = Arc::new(Group::symmetric(3).unwrap());
        for n in 1..=2 {
            let mut support = 0;
            for rho in enumerate_types(&g, n, BoundMode::Exact) {
                let c: AlgebraElement<Q> = class_sum(&g, n, &rho, None).unwrap();
                support += c.len();
                let coeffs: std::collections::BTreeSet<_> = c.terms().values().cloned().collect();
                assert_eq!(coeffs.len(), 1, "class sum of a single class has a constant coefficient");
            }
            assert_eq!(support as u128, crate::rook::group_size(n, 6));
        }
    }

    #[test]
    fn idempotents() {
        let g = c2();
        let one = AlgebraElement::<Q>::one(&Ambient::semigroup(3, &g));
        assert_eq!(eps_prod::<Q>(&g, 3, &[]).unwrap(), one);
        assert_eq!(eps_bar::<Q>(&g, 3, &[]).unwrap(), one);
        for i in 1..=3 {
            let e = eps_prod::<Q>(&g, 3, &[i]).unwrap();
            let eb = eps_bar::<Q>(&g, 3, &[i]).unwrap();
            assert!((&eb * &e).is_zero());
            assert_eq!(&one - &e, eb);
        }
        for t in [vec![1], vec![1, 3], vec![1, 2, 3]] {
            let eb = eps_bar::<Q>(&g, 3, &t).unwrap();
            assert_eq!(&eb * &eb, eb);
            let e = eps_prod::<Q>(&g, 3, &t).unwrap();
            assert_eq!(&e * &e, e);
        }
        assert!(eps_bar::<Q>(&g, 3, &[4]).is_err());
    }

    #[test]
    fn delta_examples() {
        let g = c2();
        let amb = Ambient::semigroup(3, &g);
        let atom = TypeFunction::atom(2, 0, 1).unwrap();
        let mut expect = AlgebraElement::<Q>::zero(&amb);
        for i in 1..=3 {
            expect = &expect + &eps_bar::<Q>(&g, 3, &[i]).unwrap();
        }
        assert_eq!(delta_rho::<Q>(&g, 3, &atom).unwrap(), expect);

        let rho = example_rho();
        let d = delta_rho::<Q>(&g, 3, &rho).unwrap();
        let c = class_sum::<Q>(&g, 3, &rho, None).unwrap().to_semigroup();
        assert_eq!(d, &c * &eps_bar::<Q>(&g, 3, &[1, 2, 3]).unwrap());
        assert!(d.theta(2).unwrap().is_zero());
    }

    fn semigroup_generators(g: &Arc<Group>, n: usize) -> Vec<AlgebraElement<Q>> {
        let amb = Ambient::semigroup(n, g);
        let mut out = Vec::new();
        for i in 1..n {
            out.push(AlgebraElement::basis(&amb, RookMatrix::s(i, n).unwrap()).unwrap());
        }
        for &h in g.generators() {
            out.push(AlgebraElement::basis(&amb, RookMatrix::slot(h, 1, n).unwrap()).unwrap());
        }
        out.push(AlgebraElement::basis(&amb, RookMatrix::epsilon(1, n).unwrap()).unwrap());
        out
    }

    #[test]
    fn delta_is_central_and_stable() {
        let g = c2();
        for n in 1..=3 {
            let gens = semigroup_generators(&g, n);
            for rho in enumerate_types(&g, n, BoundMode::AtMost) {
                let d = delta_rho::<Q>(&g, n, &rho).unwrap();
                for x in &gens {
                    assert_eq!(&d * x, x * &d, "Δ^{rho} fails to commute, n = {n}");
                }
                let below = delta_rho::<Q>(&g, n - 1, &rho).unwrap();
                assert_eq!(d.theta(n - 1).unwrap(), below, "θ(Δ^{rho}_{n})");
            }
        }
    }

    #[test]
    fn degree_formula_matches_support() {
        for g in [c2(), Arc::new(Group::symmetric(3).unwrap())] {
            for n in 1..=3 {
                for rho in enumerate_types(&g, n, BoundMode::AtMost) {
                    let c: AlgebraElement<Q> = class_sum(&g, n, &rho, None).unwrap();
                    assert_eq!(c.degree(0).unwrap(), rho.class_sum_degree(), "ρ = {rho}");
                }
            }
        }
    }
}
