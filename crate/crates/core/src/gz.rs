//! Gelfand-Zetlin subalgebras of `𝔽G_n` for abelian `G`.
//!
//! For abelian `G` the torus algebra is all of `𝔽G` in each slot, so
//! `𝒜_n` is generated by the `h^{(k)}` and the Jucys-Murphy elements.
//! Every check is a rank equality over `ℚ`, which is unchanged by
//! extending scalars to `ℂ`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::linalg::{self, SparseRow};
use crate::algebra::{all_commute, span_equal, subalgebra_closure, AlgebraElement, Ambient, Scalar};
use crate::centralizers::{CentralizerError, Ctx};
use crate::classdata::partition::{partitions, standard_tableaux};
use crate::classdata::{class_sum, enumerate_types, BoundMode};
use crate::groups::Group;
use crate::hecke::xi;
use crate::report::Report;
use crate::rook::{enumerate_group, RookMatrix};

/// `𝒜_n` with the generators it was built from.
#[derive(Clone, Debug)]
pub struct GZData<S: Scalar> {
    pub n: usize,
    pub ambient: Ambient,
    pub generators: Vec<AlgebraElement<S>>,
    pub basis: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> GZData<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// What the `gz` subcommand prints.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GzSummary {
    pub n: usize,
    pub group: String,
    pub dim: usize,
    pub expected_dim: u128,
    pub maximal: bool,
    pub commutative: bool,
}

fn require_abelian(group: &Group) -> Result<(), CentralizerError> {
    if !group.is_abelian() {
        return Err(CentralizerError::Unsupported(format!(
            "the Gelfand-Zetlin construction here needs an abelian group; {} is not abelian",
            group.label()
        )));
    }
    Ok(())
}

/// `Σ_{λ̄} n!/Π|λ^{(i)}|! · Π f^{λ^{(i)}}` over `r`-multipartitions of `n`:
/// the sum of the irreducible dimensions of `G ≀ S_n` for `|G| = r` abelian.
pub fn irrep_dim_sum(n: usize, r: usize) -> u128 {
    // f_sum[k] = Σ_{λ ⊢ k} f^λ.
    let f_sum: Vec<u128> = (0..=n).map(|k| partitions(k).iter().map(|l| standard_tableaux(l)).sum()).collect();
    fn rec(left: usize, slots: usize, f_sum: &[u128]) -> u128 {
        // Σ_k C(left, k) f_sum[k] · rec(left − k, slots − 1).
        if slots == 0 {
            return u128::from(left == 0);
        }
        (0..=left).map(|k| crate::rook::binomial(left, k) * f_sum[k] * rec(left - k, slots - 1, f_sum)).sum()
    }
    if r == 0 {
        return 0;
    }
    rec(n, r, &f_sum)
}

fn torus_generators<S: Scalar>(amb: &Ambient) -> Result<Vec<AlgebraElement<S>>, CentralizerError> {
    let g = &amb.group;
    let mut out = Vec::new();
    for k in 1..=amb.n {
        for h in 1..g.order() {
            out.push(AlgebraElement::basis(amb, RookMatrix::slot(h, k, amb.n)?)?);
        }
    }
    Ok(out)
}

/// `𝒜_n`: generated by the `ξ_k` and `h^{(k)}`.
pub fn gz_algebra<S: Scalar>(ctx: &Ctx, n: usize) -> Result<GZData<S>, CentralizerError> {
    require_abelian(&ctx.group)?;
    let amb = Ambient::group_algebra(n, &ctx.group);
    enumerate_group(n, &ctx.group, ctx.cap)?;
    let mut generators: Vec<AlgebraElement<S>> = (1..=n).map(|k| xi::<S>(&amb, k)).collect::<Result<_, _>>()?;
    generators.extend(torus_generators::<S>(&amb)?);
    let basis = subalgebra_closure(&amb, &generators, amb.dim() as usize)?;
    Ok(GZData { n, ambient: amb, generators, basis })
}

/// The variant generated by the centers of `𝔽G'_k`, `k ≤ n`, and the `h^{(k)}`.
pub fn gz_algebra_from_centers<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Vec<AlgebraElement<S>>, CentralizerError> {
    require_abelian(&ctx.group)?;
    let g = &ctx.group;
    let amb = Ambient::group_algebra(n, g);
    let mut gens = torus_generators::<S>(&amb)?;
    for k in 1..=n {
        for rho in enumerate_types(g, k, BoundMode::Exact) {
            gens.push(class_sum::<S>(g, k, &rho, None)?.embed_last(n)?);
        }
    }
    Ok(subalgebra_closure(&amb, &gens, amb.dim() as usize)?)
}

/// Elements of `𝔽G_n` commuting with every element of `elems`.
fn centralizer_of<S: Scalar>(
    ctx: &Ctx,
    amb: &Ambient,
    elems: &[AlgebraElement<S>],
) -> Result<Vec<AlgebraElement<S>>, CentralizerError> {
    let g = &*ctx.group;
    let unknowns: Vec<RookMatrix> = enumerate_group(amb.n, g, ctx.cap)?.collect();
    let per: Vec<Vec<SparseRow<S>>> = elems
        .par_iter()
        .map(|a| {
            let mut rows: FxHashMap<RookMatrix, BTreeMap<usize, S>> = FxHashMap::default();
            for (i, b) in unknowns.iter().enumerate() {
                for (l, c) in a.terms() {
                    let e = rows.entry(b.mul(l, g)).or_default().entry(i).or_insert_with(S::zero);
                    *e = e.clone() + c.clone();
                    let e = rows.entry(l.mul(b, g)).or_default().entry(i).or_insert_with(S::zero);
                    *e = e.clone() - c.clone();
                }
            }
            let mut keyed: Vec<(RookMatrix, SparseRow<S>)> = rows
                .into_iter()
                .map(|(k, r)| (k, r.into_iter().filter(|(_, v)| !v.is_zero()).collect::<SparseRow<S>>()))
                .filter(|(_, r)| !r.is_empty())
                .collect();
            keyed.sort_unstable_by_key(|x| x.0);
            keyed.into_iter().map(|(_, r)| r).collect()
        })
        .collect();
    let rows: Vec<SparseRow<S>> = per.into_iter().flatten().collect();
    Ok(linalg::nullspace(&rows, unknowns.len())
        .into_iter()
        .map(|v| AlgebraElement::from_terms_unchecked(amb, v.into_iter().map(|(i, c)| (unknowns[i], c))))
        .collect())
}

/// Dimension, commutativity, maximality and both generation variants.
pub fn verify_gz<S: Scalar>(ctx: &Ctx, n: usize) -> Result<(Vec<Report>, GzSummary), CentralizerError> {
    let g = &ctx.group;
    let data = gz_algebra::<S>(ctx, n)?;
    let expected = irrep_dim_sum(n, g.order());
    let base = |claim: &str, reference: &str| Report::new(claim, reference).param("group", g.label()).param("n", n);
    let field_note = "rank equalities over Q, unchanged over C";

    let mut dim = base("gz-dimension", "dim A_n = sum of the dimensions of the irreducible modules of G wr S_n");
    dim.set_dim("dim", data.dim());
    dim.set_dim("expected", expected);
    dim.check(data.dim() as u128 == expected, || format!("dim {} != {expected}", data.dim()));

    let mut comm = base("gz-maximal-commutative", "A_n is a maximal commutative subalgebra of FG_n");
    let commutative = all_commute(&data.basis).is_none();
    comm.check(commutative, || "A_n is not commutative".into());
    let cent = centralizer_of(ctx, &data.ambient, &data.generators)?;
    let maximal = span_equal(&data.ambient, &cent, &data.basis);
    comm.set_dim("centralizer", cent.len());
    comm.set_dim("commutative", commutative);
    comm.set_dim("maximal", maximal);
    comm.check(maximal, || format!("centralizer of A_n has dim {}, A_n has dim {}", cent.len(), data.dim()));
    comm.note(field_note);

    let mut var = base(
        "gz-generation-variants",
        "A_n is generated by Z'_{0,1..n} and the torus, and by xi_1..xi_n and the torus",
    );
    let other = gz_algebra_from_centers::<S>(ctx, n)?;
    var.set_dim("from_jucys_murphy", data.dim());
    var.set_dim("from_centers", other.len());
    var.check(span_equal(&data.ambient, &other, &data.basis), || "the two generating sets give different algebras".into());

    let summary = GzSummary { n, group: g.label().to_string(), dim: data.dim(), expected_dim: expected, maximal, commutative };
    Ok((vec![dim.finish(false), comm.finish(false), var.finish(false)], summary))
}

/// `(𝔽G_n)^{G×G'_{n−1}}` is commutative and generated by `Z'_{0,n−1}`,
/// the class sums of `G` in slot 1 and `ξ_1`.
pub fn verify_branching_centralizer<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Report, CentralizerError> {
    let g = &ctx.group;
    let mut r = Report::new(
        "branching-centralizer",
        "(FG_n)^{G x G'_{n-1}} is commutative and generated by Z'_{0,n-1}, Z_{0,1} and xi_1",
    )
    .param("group", g.label())
    .param("n", n);
    if n == 0 {
        return Ok(r.skip("needs n >= 1"));
    }
    let amb = Ambient::group_algebra(n, g);
    let mut fixing: Vec<AlgebraElement<S>> = Vec::new();
    for &h in g.generators() {
        fixing.push(AlgebraElement::basis(&amb, RookMatrix::slot(h, 1, n)?)?);
        if n >= 2 {
            fixing.push(AlgebraElement::basis(&amb, RookMatrix::slot(h, 2, n)?)?);
        }
    }
    for i in 2..n {
        fixing.push(AlgebraElement::basis(&amb, RookMatrix::s(i, n)?)?);
    }
    let cent = centralizer_of(ctx, &amb, &fixing)?;
    let mut gens: Vec<AlgebraElement<S>> = vec![xi::<S>(&amb, 1)?];
    for rho in enumerate_types(g, n - 1, BoundMode::Exact) {
        gens.push(class_sum::<S>(g, n - 1, &rho, None)?.embed_last(n)?);
    }
    for rho in enumerate_types(g, 1, BoundMode::Exact) {
        gens.push(class_sum::<S>(g, 1, &rho, None)?.embed(n)?);
    }
    let closure = subalgebra_closure(&amb, &gens, amb.dim() as usize)?;
    r.set_dim("centralizer", cent.len());
    r.set_dim("generated", closure.len());
    r.check(all_commute(&cent).is_none(), || "the centralizer is not commutative".into());
    r.check(span_equal(&amb, &cent, &closure), || "generated subalgebra differs from the centralizer".into());
    Ok(r.finish(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::rook::factorial;

    type Q = Rational;

    #[test]
    fn irrep_sums() {
        assert_eq!(irrep_dim_sum(1, 2), 2);
        assert_eq!(irrep_dim_sum(2, 2), 6);
        assert_eq!(irrep_dim_sum(3, 1), 4);
        assert_eq!((1..=4).map(|n| irrep_dim_sum(n, 1)).collect::<Vec<_>>(), vec![1, 2, 4, 10]);
    }

    #[test]
    fn irrep_sums_match_multipartitions() {
        // Direct sum over r-multipartitions of n.
        fn direct(n: usize, r: usize) -> u128 {
            fn rec(left: usize, slots: usize, acc: u128, denom: u128, out: &mut u128, n: usize) {
                if slots == 0 {
                    if left == 0 {
                        *out += factorial(n) / denom * acc;
                    }
                    return;
                }
                for k in 0..=left {
                    for lambda in partitions(k) {
                        rec(left - k, slots - 1, acc * standard_tableaux(&lambda), denom * factorial(k), out, n);
                    }
                }
            }
            let mut out = 0;
            rec(n, r, 1, 1, &mut out, n);
            out
        }
        for n in 0..=5 {
            for r in 1..=4 {
                assert_eq!(irrep_dim_sum(n, r), direct(n, r), "n = {n}, r = {r}");
            }
        }
    }

    #[test]
    fn gz_small() {
        let ctx = Ctx::new(Group::cyclic(2).unwrap());
        let a1 = gz_algebra::<Q>(&ctx, 1).unwrap();
        assert_eq!(a1.dim(), 2);
        for n in 1..=2 {
            let (reports, summary) = verify_gz::<Q>(&ctx, n).unwrap();
            for r in &reports {
                assert!(r.passed(), "{}", r.summary());
            }
            assert!(summary.maximal && summary.commutative);
        }
        assert_eq!(verify_gz::<Q>(&ctx, 2).unwrap().1.dim, 6);
        let ctx3 = Ctx::new(Group::cyclic(3).unwrap());
        let (reports, _) = verify_gz::<Q>(&ctx3, 2).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn nonabelian_rejected() {
        let ctx = Ctx::new(Group::symmetric(3).unwrap());
        let err = gz_algebra::<Q>(&ctx, 2).unwrap_err();
        assert!(err.to_string().contains("abelian"));
    }

    #[test]
    fn branching_centralizer() {
        let ctx = Ctx::new(Group::cyclic(2).unwrap());
        for n in 1..=3 {
            let r = verify_branching_centralizer::<Q>(&ctx, n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }
}
