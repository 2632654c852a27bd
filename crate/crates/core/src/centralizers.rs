//! Centralizer algebras `Z_{m,n}`, `Z̄_{m,n}` and `Z*_{m,n}`, computed both
//! from explicit combinatorial bases and as commutant nullspaces, together
//! with the structural checks that relate them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::linalg::{self, SparseRow};
use crate::algebra::{
    rank_of, span_equal, span_intersection, AlgebraElement, AlgebraError, Ambient, Scalar, Subspace,
};
use crate::classdata::{
    c_omega_rho, class_sum, delta_omega_rho, delta_rho, enumerate_omegas, enumerate_types, eps_bar, orbit_invariant,
    BoundMode, ClassDataError, OmegaMatrix, TypeFunction,
};
use crate::groups::Group;
use crate::hecke::{u_elem, HeckeError};
use crate::report::Report;
use crate::rook::{enumerate_group, enumerate_semigroup, RookError, RookMatrix};

/// Default bound on the number of rook matrices enumerated for one ambient.
pub const DEFAULT_CAP: u128 = 1 << 20;

#[derive(Debug, Error)]
pub enum CentralizerError {
    #[error("need m <= n, got m = {m}, n = {n}")]
    Order { m: usize, n: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Rook(#[from] RookError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    ClassData(#[from] ClassDataError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Group and enumeration cap shared by all computations.
#[derive(Clone)]
pub struct Ctx {
    pub group: Arc<Group>,
    pub cap: u128,
}

impl Ctx {
    pub fn new(group: Group) -> Self {
        Ctx { group: Arc::new(group), cap: DEFAULT_CAP }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralizerKind {
    /// `Z_{m,n} = (𝔽G_n)^{G'_{n−m}}`.
    Group,
    /// `Z̄_{m,n} = (𝔽Ḡ_n)^{Ḡ'_{n−m}}`.
    Semigroup,
    /// `Z*_{m,n} = (𝔽Ḡ_{m,n})^{G'_{n−m}}`.
    Star,
}

impl CentralizerKind {
    pub const ALL: [CentralizerKind; 3] = [CentralizerKind::Group, CentralizerKind::Semigroup, CentralizerKind::Star];

    pub fn name(self) -> &'static str {
        match self {
            CentralizerKind::Group => "group",
            CentralizerKind::Semigroup => "semigroup",
            CentralizerKind::Star => "star",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "group" => Some(CentralizerKind::Group),
            "semigroup" => Some(CentralizerKind::Semigroup),
            "star" => Some(CentralizerKind::Star),
            _ => None,
        }
    }

    pub fn ambient(self, n: usize, group: &Arc<Group>) -> Ambient {
        match self {
            CentralizerKind::Group => Ambient::group_algebra(n, group),
            _ => Ambient::semigroup(n, group),
        }
    }
}

impl fmt::Display for CentralizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Combinatorial,
    Nullspace,
}

#[derive(Clone, Debug)]
pub struct CentralizerBasis<S: Scalar> {
    pub n: usize,
    pub m: usize,
    pub kind: CentralizerKind,
    pub provenance: Provenance,
    pub ambient: Ambient,
    pub basis: Vec<AlgebraElement<S>>,
    /// Human-readable index of each basis element.
    pub index: Vec<String>,
}

impl<S: Scalar> CentralizerBasis<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_order(n: usize, m: usize) -> Result<(), CentralizerError> {
    if m > n {
        return Err(CentralizerError::Order { m, n });
    }
    Ok(())
}

/// The basis labels of the ambient space, sorted.
pub fn labels(ctx: &Ctx, n: usize, m: usize, kind: CentralizerKind) -> Result<Vec<RookMatrix>, CentralizerError> {
    check_order(n, m)?;
    let g = &*ctx.group;
    Ok(match kind {
        CentralizerKind::Group => enumerate_group(n, g, ctx.cap)?.collect(),
        CentralizerKind::Semigroup => enumerate_semigroup(n, g, ctx.cap)?.collect(),
        CentralizerKind::Star => enumerate_semigroup(n, g, ctx.cap)?.filter(|x| x.in_gamma_mn(m)).collect(),
    })
}

/// Generators of `G'_{n−m}` (plus `ε_{m+1..n}` for the semigroup kind).
///
/// With `full`, every transposition and every group element in every slot
/// beyond `m` is included instead of the reduced set.
pub fn commutant_generators(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
    full: bool,
) -> Result<Vec<RookMatrix>, CentralizerError> {
    check_order(n, m)?;
    let g = &*ctx.group;
    let mut out = Vec::new();
    if full {
        for i in m + 1..=n {
            for j in i + 1..=n {
                out.push(RookMatrix::transposition(i, j, n)?);
            }
            for h in 1..g.order() {
                out.push(RookMatrix::slot(h, i, n)?);
            }
        }
    } else {
        for i in m + 1..n {
            out.push(RookMatrix::s(i, n)?);
        }
        if m < n {
            for &h in g.generators() {
                out.push(RookMatrix::slot(h, m + 1, n)?);
            }
        }
    }
    if kind == CentralizerKind::Semigroup {
        for i in m + 1..=n {
            out.push(RookMatrix::epsilon(i, n)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Kernel of `x ↦ (xγ − γx)_γ` over the given unknown labels.
fn commutant_kernel<S: Scalar>(
    amb: &Ambient,
    unknowns: &[RookMatrix],
    gens: &[RookMatrix],
) -> Vec<AlgebraElement<S>> {
    let g = &*amb.group;
    // Rows keyed by (generator, output label); assembled per generator.
    let per_gen: Vec<Vec<SparseRow<S>>> = gens
        .par_iter()
        .map(|gamma| {
            let mut rows: FxHashMap<RookMatrix, BTreeMap<usize, i64>> = FxHashMap::default();
            for (i, a) in unknowns.iter().enumerate() {
                *rows.entry(a.mul(gamma, g)).or_default().entry(i).or_default() += 1;
                *rows.entry(gamma.mul(a, g)).or_default().entry(i).or_default() -= 1;
            }
            let mut keyed: Vec<(RookMatrix, SparseRow<S>)> = rows
                .into_iter()
                .map(|(k, r)| (k, r.into_iter().filter(|&(_, v)| v != 0).map(|(i, v)| (i, S::from_i64(v))).collect()))
                .filter(|(_, r): &(RookMatrix, SparseRow<S>)| !r.is_empty())
                .collect();
            keyed.sort_unstable_by_key(|a| a.0);
            keyed.into_iter().map(|(_, r)| r).collect()
        })
        .collect();
    let rows: Vec<SparseRow<S>> = per_gen.into_iter().flatten().collect();
    linalg::nullspace(&rows, unknowns.len())
        .into_iter()
        .map(|v| AlgebraElement::from_terms_unchecked(amb, v.into_iter().map(|(i, c)| (unknowns[i], c))))
        .collect()
}

/// Commutant nullspace, optionally restricted to labels with `deg_m ≤ max_deg`.
pub fn centralizer_nullspace_restricted<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
    max_deg: Option<usize>,
    full: bool,
) -> Result<CentralizerBasis<S>, CentralizerError> {
    let amb = kind.ambient(n, &ctx.group);
    let mut unknowns = labels(ctx, n, m, kind)?;
    if let Some(k) = max_deg {
        unknowns.retain(|x| x.deg_m(m) <= k);
    }
    let gens = commutant_generators(ctx, n, m, kind, full)?;
    let basis = commutant_kernel::<S>(&amb, &unknowns, &gens);
    let index = (0..basis.len()).map(|i| format!("v{i}")).collect();
    Ok(CentralizerBasis { n, m, kind, provenance: Provenance::Nullspace, ambient: amb, basis, index })
}

pub fn centralizer_nullspace<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
) -> Result<CentralizerBasis<S>, CentralizerError> {
    centralizer_nullspace_restricted(ctx, n, m, kind, None, false)
}

fn index_name(ctx: &Ctx, omega: &OmegaMatrix, rho: &TypeFunction) -> String {
    format!("{}|{}", omega.display(&ctx.group), rho)
}

/// The explicit basis: `Δ^{Ω,ρ}_n` for `Z̄`, orbit sums for `Z`, `C^{Ω,ρ}_n` for `Z*`.
pub fn centralizer_combinatorial<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
) -> Result<CentralizerBasis<S>, CentralizerError> {
    check_order(n, m)?;
    let g = &ctx.group;
    let amb = kind.ambient(n, g);
    // Guard the enumeration size before building anything.
    labels(ctx, n, m, CentralizerKind::Group)?;
    let mut basis = Vec::new();
    let mut index = Vec::new();
    match kind {
        CentralizerKind::Semigroup | CentralizerKind::Star => {
            enumerate_semigroup(n, g, ctx.cap)?;
            let (mode, build): (BoundMode, fn(&Arc<Group>, usize, &OmegaMatrix, &TypeFunction) -> _) =
                if kind == CentralizerKind::Semigroup {
                    (BoundMode::AtMost, delta_omega_rho::<S>)
                } else {
                    (BoundMode::Exact, c_omega_rho::<S>)
                };
            let pairs: Vec<(OmegaMatrix, TypeFunction)> = enumerate_omegas(m, g, n - m)
                .into_iter()
                .flat_map(|omega| {
                    let rest = n - m - omega.ord();
                    enumerate_types(g, rest, mode).into_iter().map(move |rho| (omega.clone(), rho))
                })
                .collect();
            let built: Vec<Result<AlgebraElement<S>, ClassDataError>> =
                pairs.par_iter().map(|(omega, rho)| build(g, n, omega, rho)).collect();
            for ((omega, rho), x) in pairs.iter().zip(built) {
                basis.push(x?);
                index.push(index_name(ctx, omega, rho));
            }
        }
        CentralizerKind::Group => {
            let mut orbits: BTreeMap<(OmegaMatrix, TypeFunction), Vec<(RookMatrix, S)>> = BTreeMap::new();
            for x in enumerate_group(n, g, ctx.cap)? {
                let inv = orbit_invariant(&x, m, g)?;
                orbits.entry((inv.omega, inv.rho)).or_default().push((x, S::one()));
            }
            for ((omega, rho), terms) in orbits {
                basis.push(AlgebraElement::from_terms_unchecked(&amb, terms));
                index.push(index_name(ctx, &omega, &rho));
            }
        }
    }
    Ok(CentralizerBasis { n, m, kind, provenance: Provenance::Combinatorial, ambient: amb, basis, index })
}

/// Closed count of basis pairs `(Ω, ρ)`.
///
/// `Z̄`: all Ω with `ord + ‖ρ‖ ≤ n−m`; `Z`: total Ω with `ord + ‖ρ‖ = n−m`;
/// `Z*`: all Ω with `ord + ‖ρ‖ = n−m`.
pub fn pair_count(group: &Group, n: usize, m: usize, kind: CentralizerKind) -> u128 {
    if m > n {
        return 0;
    }
    let mut cache: BTreeMap<usize, u128> = BTreeMap::new();
    let mode = if kind == CentralizerKind::Semigroup { BoundMode::AtMost } else { BoundMode::Exact };
    enumerate_omegas(m, group, n - m)
        .into_iter()
        .filter(|o| kind != CentralizerKind::Group || o.is_total())
        .map(|o| {
            let rest = n - m - o.ord();
            *cache.entry(rest).or_insert_with(|| enumerate_types(group, rest, mode).len() as u128)
        })
        .sum()
}

/// First pair `(basis index, generator)` that fails to commute.
fn first_noncommuting<S: Scalar>(basis: &[AlgebraElement<S>], gens: &[RookMatrix]) -> Option<(usize, RookMatrix)> {
    basis
        .par_iter()
        .enumerate()
        .find_map_first(|(i, x)| gens.iter().find(|g| x.left_mul_basis(g) != x.right_mul_basis(g)).map(|g| (i, *g)))
}

fn report(claim: &str, reference: &str, ctx: &Ctx, n: usize, m: usize) -> Report {
    Report::new(claim, reference).param("group", ctx.group.label()).param("n", n).param("m", m)
}

/// Combinatorial and nullspace bases span the same space of the predicted dimension.
pub fn verify_basis_agreement<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
) -> Result<Report, CentralizerError> {
    let reference = match kind {
        CentralizerKind::Group => "Z_{m,n} has a basis of G'_{n-m}-orbit sums indexed by total (Omega, rho) with ord + |rho| = n-m",
        CentralizerKind::Semigroup => "Z-bar_{m,n} has basis Delta^{Omega,rho}_n with ord + |rho| <= n-m",
        CentralizerKind::Star => "Z*_{m,n} has basis C^{Omega,rho}_n with ord + |rho| = n-m",
    };
    let mut r = report("basis-agreement", reference, ctx, n, m).param("kind", kind);
    let comb = centralizer_combinatorial::<S>(ctx, n, m, kind)?;
    let null = centralizer_nullspace::<S>(ctx, n, m, kind)?;
    let expected = pair_count(&ctx.group, n, m, kind);
    let amb = &comb.ambient;
    let rank = rank_of(amb, &comb.basis);
    r.set_dim("combinatorial", comb.dim());
    r.set_dim("combinatorial_rank", rank);
    r.set_dim("nullspace", null.dim());
    r.set_dim("expected", expected);
    r.check(rank == comb.dim(), || "combinatorial basis is linearly dependent".into());
    r.check(comb.dim() as u128 == expected, || format!("{} combinatorial elements, expected {expected}", comb.dim()));
    r.check(null.dim() as u128 == expected, || format!("nullspace dimension {}, expected {expected}", null.dim()));
    let gens = commutant_generators(ctx, n, m, kind, false)?;
    if let Some((i, g)) = first_noncommuting(&comb.basis, &gens) {
        r.fail(format!("basis element {} does not commute with {}", comb.index[i], g.display(&ctx.group)));
    }
    let null_space = Subspace::spanned_by(amb, &null.basis);
    if let Some(x) = null_space.first_missing(&comb.basis) {
        r.fail(format!("combinatorial element outside the nullspace: {x}"));
    }
    Ok(r)
}

/// The full generator set gives the same commutant as the reduced one.
pub fn verify_generator_reduction<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
) -> Result<Report, CentralizerError> {
    let mut r = report(
        "generator-reduction",
        "G'_{n-m} is generated by s_{m+1..n-1} and G in slot m+1; the semigroup adds e_{m+1..n}",
        ctx,
        n,
        m,
    )
    .param("kind", kind);
    let reduced = centralizer_nullspace::<S>(ctx, n, m, kind)?;
    let full = centralizer_nullspace_restricted::<S>(ctx, n, m, kind, None, true)?;
    r.set_dim("reduced", reduced.dim());
    r.set_dim("full", full.dim());
    r.check(span_equal(&reduced.ambient, &reduced.basis, &full.basis), || "commutants differ".into());
    Ok(r)
}

/// Elements of `basis` whose `m`-degree is at most `k`.
pub fn filtration_term<S: Scalar>(basis: &CentralizerBasis<S>, k: usize) -> CentralizerBasis<S> {
    let keep: Vec<usize> =
        (0..basis.dim()).filter(|&i| basis.basis[i].degree(basis.m).map(|d| d <= k).unwrap_or(true)).collect();
    CentralizerBasis {
        basis: keep.iter().map(|&i| basis.basis[i].clone()).collect(),
        index: keep.iter().map(|&i| basis.index[i].clone()).collect(),
        ..basis.clone()
    }
}

/// The `Δ^{Ω,ρ}` with `ord + ‖ρ‖ ≤ k` span the degree-`k` filtration term of `Z̄_{m,n}`.
pub fn verify_filtration<S: Scalar>(ctx: &Ctx, n: usize, m: usize, k: usize) -> Result<Report, CentralizerError> {
    let mut r = report(
        "filtration",
        "Delta^{Omega,rho}_n with ord + |rho| <= k span the m-degree <= k part of Z-bar_{m,n}",
        ctx,
        n,
        m,
    )
    .param("k", k);
    let comb = centralizer_combinatorial::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    let term = filtration_term(&comb, k);
    let restricted = centralizer_nullspace_restricted::<S>(ctx, n, m, CentralizerKind::Semigroup, Some(k), false)?;
    let expected: usize = enumerate_omegas(m, &ctx.group, k.min(n - m))
        .iter()
        .map(|o| enumerate_types(&ctx.group, k.min(n - m) - o.ord(), BoundMode::AtMost).len())
        .sum();
    r.set_dim("filtration_term", term.dim());
    r.set_dim("restricted_nullspace", restricted.dim());
    r.set_dim("expected", expected);
    r.check(term.dim() == expected, || format!("{} basis elements of degree <= {k}, expected {expected}", term.dim()));
    r.check(span_equal(&comb.ambient, &term.basis, &restricted.basis), || "filtration term and restricted commutant differ".into());
    Ok(r)
}

/// `θ_n` is multiplicative on `Z̄_{n−1,n}`.
pub fn verify_theta_multiplicative<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Report, CentralizerError> {
    let m = n.saturating_sub(1);
    let r = report("theta-multiplicative", "theta_n(xy) = theta_n(x) theta_n(y) on Z-bar_{n-1,n}", ctx, n, m);
    if n == 0 {
        return Ok(r.skip("no projection below n = 0"));
    }
    let mut r = r;
    let comb = centralizer_combinatorial::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    let thetas: Vec<AlgebraElement<S>> = comb.basis.iter().map(|x| x.theta(n - 1)).collect::<Result<_, _>>()?;
    let d = comb.dim();
    r.set_dim("basis", d);
    r.set_dim("pairs", d * d);
    let bad = (0..d * d).into_par_iter().find_first(|&ij| {
        let (i, j) = (ij / d, ij % d);
        let lhs = (&comb.basis[i] * &comb.basis[j]).theta(n - 1).expect("corner");
        lhs != &thetas[i] * &thetas[j]
    });
    if let Some(ij) = bad {
        r.fail(format!("fails on ({}, {})", comb.index[ij / d], comb.index[ij % d]));
    }
    Ok(r)
}

/// `θ_n` maps `Z̄_{m,n}` into `Z̄_{m,n−1}`, sends `Δ^{Ω,ρ}_n` to `Δ^{Ω,ρ}_{n−1}`
/// and fixes constant sequences.
pub fn verify_theta_chain<S: Scalar>(ctx: &Ctx, n: usize, m: usize) -> Result<Report, CentralizerError> {
    let r = report(
        "theta-chain",
        "theta_n(Z-bar_{m,n}) in Z-bar_{m,n-1}, theta_n(Delta^{Omega,rho}_n) = Delta^{Omega,rho}_{n-1}",
        ctx,
        n,
        m,
    );
    check_order(n, m)?;
    if n == m {
        return Ok(r.skip("no projection from Z-bar_{m,m}"));
    }
    let mut r = r;
    let g = &ctx.group;
    let comb = centralizer_combinatorial::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    let below = centralizer_combinatorial::<S>(ctx, n - 1, m, CentralizerKind::Semigroup)?;
    let below_space = Subspace::spanned_by(&below.ambient, &below.basis);
    let mut vanishing = 0;
    for (omega, rho, x, name) in enumerate_omegas(m, g, n - m)
        .into_iter()
        .flat_map(|o| {
            let rest = n - m - o.ord();
            enumerate_types(g, rest, BoundMode::AtMost).into_iter().map(move |t| (o.clone(), t))
        })
        .zip(comb.basis.iter().zip(&comb.index))
        .map(|((o, t), (x, name))| (o, t, x, name))
    {
        let image = x.theta(n - 1)?;
        let expect = delta_omega_rho::<S>(g, n - 1, &omega, &rho)?;
        if expect.is_zero() {
            vanishing += 1;
        }
        if !r.check(image == expect, || format!("theta of {name} differs from its lower-level counterpart")) {
            break;
        }
        if !below_space.contains(&image) {
            r.fail(format!("theta of {name} leaves Z-bar_{{m,n-1}}"));
            break;
        }
    }
    r.set_dim("basis", comb.dim());
    r.set_dim("vanishing_images", vanishing);
    for beta in enumerate_semigroup(m, g, ctx.cap)? {
        let x = AlgebraElement::<S>::basis(&comb.ambient, beta.embed(n)?)?;
        let y = AlgebraElement::<S>::basis(&below.ambient, beta.embed(n - 1)?)?;
        if x.theta(n - 1)? != y {
            r.fail(format!("theta moves the constant sequence {}", beta.display(g)));
            break;
        }
    }
    Ok(r)
}

/// `θ_n` is injective on the `m`-degree `≤ n−m−1` part of `Z̄_{m,n}`.
pub fn verify_injectivity<S: Scalar>(ctx: &Ctx, n: usize, m: usize) -> Result<Report, CentralizerError> {
    let r = report("injectivity", "theta_n is injective on the m-degree <= n-m-1 part of Z-bar_{m,n}", ctx, n, m);
    check_order(n, m)?;
    if n == m {
        return Ok(r.skip("vacuous: no projection from Z-bar_{m,m}"));
    }
    let mut r = r;
    let k = n - m - 1;
    let term = centralizer_nullspace_restricted::<S>(ctx, n, m, CentralizerKind::Semigroup, Some(k), false)?;
    let images: Vec<AlgebraElement<S>> = term.basis.iter().map(|x| x.theta(n - 1)).collect::<Result<_, _>>()?;
    let rank = rank_of(&Ambient::semigroup(n - 1, &ctx.group), &images);
    r.set_dim("filtration_term", term.dim());
    r.set_dim("image_rank", rank);
    r.check(rank == term.dim(), || format!("kernel of dimension {}", term.dim() - rank));
    Ok(r)
}

/// `I(n,G) ∩ Z̄_{m,n}` equals `Z_{0,n} ε̄_{1..n}` for `m = 0` and
/// `ε̄_{m+1..n} Z*_{m,n} ε̄_{m+1..n}` for `0 < m < n`.
pub fn verify_ideal_lemma<S: Scalar>(ctx: &Ctx, n: usize, m: usize) -> Result<Report, CentralizerError> {
    let reference = if m == 0 {
        "I(n,G) cap Z-bar_{0,n} = Z_{0,n} (1-e_1)...(1-e_n)"
    } else {
        "I(n,G) cap Z-bar_{m,n} = (1-e_{m+1})...(1-e_n) Z*_{m,n} (1-e_{m+1})...(1-e_n)"
    };
    let r = report("ideal", reference, ctx, n, m);
    check_order(n, m)?;
    if n == 0 {
        return Ok(r.skip("I(0,G) is not defined"));
    }
    if n == m {
        return Ok(r.skip(
            "degenerate at m = n: the right side is the whole algebra while I(n,G) is a proper ideal",
        ));
    }
    let mut r = r;
    let g = &ctx.group;
    let amb = Ambient::semigroup(n, g);
    let zbar = centralizer_nullspace::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    let eps_n = RookMatrix::epsilon(n, n)?;
    let ideal: Vec<AlgebraElement<S>> = labels(ctx, n, m, CentralizerKind::Semigroup)?
        .into_iter()
        .map(|a| AlgebraElement::from_terms_unchecked(&amb, [(a, S::one()), (a.mul(&eps_n, g), -S::one())]))
        .filter(|x| !x.is_zero())
        .collect();
    let lhs = span_intersection(&amb, &zbar.basis, &ideal);
    let rhs: Vec<AlgebraElement<S>> = if m == 0 {
        let bar = eps_bar::<S>(g, n, &(1..=n).collect::<Vec<_>>())?;
        enumerate_types(g, n, BoundMode::Exact)
            .iter()
            .map(|rho| Ok(&class_sum::<S>(g, n, rho, None)?.to_semigroup() * &bar))
            .collect::<Result<_, ClassDataError>>()?
    } else {
        let bar = eps_bar::<S>(g, n, &(m + 1..=n).collect::<Vec<_>>())?;
        centralizer_combinatorial::<S>(ctx, n, m, CentralizerKind::Star)?.basis.iter().map(|x| &(&bar * x) * &bar).collect()
    };
    let rhs_rank = rank_of(&amb, &rhs);
    r.set_dim("intersection", lhs.len());
    r.set_dim("right_side", rhs_rank);
    r.check(span_equal(&amb, &lhs, &rhs), || format!("intersection has dim {}, right side {rhs_rank}", lhs.len()));
    Ok(r)
}

/// `{γ u_{1|n}^{k_1}···u_{m|n}^{k_m} Δ^{𝕀,ρ}_n}` spans `Z̄_{m,n}`.
pub fn verify_tensor_decomposition<S: Scalar>(ctx: &Ctx, n: usize, m: usize) -> Result<Report, CentralizerError> {
    let mut r = report(
        "tensor-decomposition",
        "gamma u_{1|n}^{k_1}...u_{m|n}^{k_m} Delta^{I,rho}_n with sum k + |rho| <= n-m span Z-bar_{m,n}",
        ctx,
        n,
        m,
    );
    check_order(n, m)?;
    if m == 0 {
        return Err(CentralizerError::Unsupported("the tensor decomposition needs m >= 1".into()));
    }
    let g = &ctx.group;
    let amb = Ambient::semigroup(n, g);
    let us: Vec<AlgebraElement<S>> = (1..=m).map(|k| u_elem::<S>(&amb, k)).collect::<Result<_, _>>()?;
    let mut family = Vec::new();
    let mut zeros = 0usize;
    let ident = OmegaMatrix::identity(m);
    let deltas: Vec<(usize, AlgebraElement<S>)> = enumerate_types(g, n - m, BoundMode::AtMost)
        .iter()
        .map(|rho| Ok((rho.norm(), delta_omega_rho::<S>(g, n, &ident, rho)?)))
        .collect::<Result<_, ClassDataError>>()?;
    let gammas: Vec<RookMatrix> = enumerate_semigroup(m, g, ctx.cap)?.collect();
    for mono in crate::hecke::word::monomials(m, (n - m) as u32) {
        let mut umono = AlgebraElement::one(&amb);
        for (k, &e) in mono.iter().enumerate() {
            umono = &umono * &us[k].pow(e);
        }
        let deg: usize = mono.iter().map(|&e| e as usize).sum();
        for (norm, delta) in &deltas {
            if deg + norm > n - m {
                continue;
            }
            let tail = &umono * delta;
            for gamma in &gammas {
                let x = tail.left_mul_basis(&gamma.embed(n)?);
                if x.is_zero() {
                    zeros += 1;
                }
                family.push(x);
            }
        }
    }
    let expected = pair_count(g, n, m, CentralizerKind::Semigroup);
    let rank = rank_of(&amb, &family);
    r.set_dim("family", family.len());
    r.set_dim("zero_members", zeros);
    r.set_dim("rank", rank);
    r.set_dim("expected", expected);
    r.check(rank as u128 == expected, || format!("rank {rank}, expected {expected}"));
    let gens = commutant_generators(ctx, n, m, CentralizerKind::Semigroup, false)?;
    if let Some((i, gen)) = first_noncommuting(&family, &gens) {
        r.fail(format!("family member {i} does not commute with {}", gen.display(g)));
    }
    let null = centralizer_nullspace::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    r.check(null.dim() == rank, || format!("centralizer has dim {}", null.dim()));
    if zeros > 0 {
        r.note(format!("{zeros} family members vanish because a u-power meets a zero column of gamma"));
    }
    Ok(r)
}

/// The retraction maps `Z̄_{m,n}` onto `Z_{m,n}`.
pub fn verify_retraction_onto<S: Scalar>(ctx: &Ctx, n: usize, m: usize) -> Result<Report, CentralizerError> {
    let mut r = report("retraction-onto", "Phi maps Z-bar_{m,n} onto Z_{m,n}", ctx, n, m);
    let zbar = centralizer_combinatorial::<S>(ctx, n, m, CentralizerKind::Semigroup)?;
    let z = centralizer_nullspace::<S>(ctx, n, m, CentralizerKind::Group)?;
    let images: Vec<AlgebraElement<S>> = zbar.basis.iter().map(|x| x.retract()).collect();
    r.set_dim("image_rank", rank_of(&z.ambient, &images));
    r.set_dim("target", z.dim());
    r.check(span_equal(&z.ambient, &images, &z.basis), || "image differs from Z_{m,n}".into());
    Ok(r)
}

/// Products of atom class sums (resp. atom `Δ`s) are bases of `Z_{0,n}`
/// (resp. `Z̄_{0,n}`), compatibly with the degree filtration.
pub fn verify_monomial_bases<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Vec<Report>, CentralizerError> {
    let g = &ctx.group;
    let classes = g.num_classes();
    let atom_product = |rho: &TypeFunction, f: &dyn Fn(&TypeFunction) -> Result<AlgebraElement<S>, ClassDataError>| {
        let mut acc: Option<AlgebraElement<S>> = None;
        for (len, class) in rho.slots() {
            let a = f(&TypeFunction::atom(classes, class, len).expect("class"))?;
            acc = Some(match acc {
                None => a,
                Some(x) => &x * &a,
            });
        }
        Ok::<_, ClassDataError>(acc)
    };
    let mut out = Vec::new();
    for kind in [CentralizerKind::Group, CentralizerKind::Semigroup] {
        let (claim, reference) = match kind {
            CentralizerKind::Group => (
                "monomial-basis-class-sums",
                "monomials in C_n^{rho^k_i} of weighted degree <= t form a basis of Z^t_{0,n}",
            ),
            _ => ("monomial-basis-deltas", "monomials in Delta_n^{rho^k_i} of weight <= t form a basis of Z-bar^t_{0,n}"),
        };
        let mut r = report(claim, reference, ctx, n, 0);
        let amb = kind.ambient(n, g);
        let mut weighted: Vec<(usize, AlgebraElement<S>)> = Vec::new();
        for rho in enumerate_types(g, n, BoundMode::AtMost) {
            let x = match kind {
                CentralizerKind::Group => {
                    if rho.has_unit_fixed_part() {
                        continue;
                    }
                    atom_product(&rho, &|t| class_sum::<S>(g, n, t, None))?
                }
                _ => atom_product(&rho, &|t| delta_rho::<S>(g, n, t))?,
            };
            weighted.push((rho.norm(), x.unwrap_or_else(|| AlgebraElement::one(&amb))));
        }
        for t in 0..=n {
            let family: Vec<AlgebraElement<S>> = weighted.iter().filter(|(w, _)| *w <= t).map(|(_, x)| x.clone()).collect();
            let term = centralizer_nullspace_restricted::<S>(ctx, n, 0, kind, Some(t), false)?;
            let rank = rank_of(&amb, &family);
            r.set_dim(&format!("t{t}"), serde_json::json!([family.len(), rank, term.dim()]));
            r.check(rank == family.len(), || format!("monomials of weight <= {t} are dependent"));
            r.check(span_equal(&amb, &family, &term.basis), || format!("monomials of weight <= {t} miss the filtration term"));
        }
        out.push(r);
    }
    Ok(out)
}

/// `C^ρ C^π − C^{ρ∪π}` and `Δ^ρ Δ^π − Δ^{ρ∪π}` lie in the span of lower norms.
pub fn verify_leading_terms<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Vec<Report>, CentralizerError> {
    let g = &ctx.group;
    let types = enumerate_types(g, n, BoundMode::AtMost);
    let mut out = Vec::new();
    for kind in [CentralizerKind::Group, CentralizerKind::Semigroup] {
        let (claim, reference) = match kind {
            CentralizerKind::Group => (
                "leading-term-class-sums",
                "C^rho C^pi - C^{rho cup pi} is a combination of C^varrho with |varrho| < |rho| + |pi|",
            ),
            _ => (
                "leading-term-deltas",
                "Delta^rho Delta^pi - Delta^{rho cup pi} is a combination of Delta^varrho with |varrho| < |rho| + |pi|",
            ),
        };
        let mut r = report(claim, reference, ctx, n, 0);
        let elem = |t: &TypeFunction| -> Result<AlgebraElement<S>, ClassDataError> {
            match kind {
                CentralizerKind::Group => class_sum::<S>(g, n, t, None),
                _ => delta_rho::<S>(g, n, t),
            }
        };
        let amb = kind.ambient(n, g);
        let elems: Vec<AlgebraElement<S>> = types.iter().map(elem).collect::<Result<_, _>>()?;
        let mut lower: BTreeMap<usize, Subspace<S>> = BTreeMap::new();
        for s in 0..=n {
            let below: Vec<AlgebraElement<S>> =
                types.iter().zip(&elems).filter(|(t, _)| t.norm() < s).map(|(_, x)| x.clone()).collect();
            lower.insert(s, Subspace::spanned_by(&amb, &below));
        }
        let mut pairs = 0;
        for (i, rho) in types.iter().enumerate() {
            for (j, pi) in types.iter().enumerate().skip(i) {
                let s = rho.norm() + pi.norm();
                if s > n || (kind == CentralizerKind::Group && (rho.has_unit_fixed_part() || pi.has_unit_fixed_part())) {
                    continue;
                }
                pairs += 1;
                let union = elem(&rho.union(pi))?;
                let diff = &(&elems[i] * &elems[j]) - &union;
                if !lower[&s].contains(&diff) {
                    r.fail(format!("fails for rho = {rho}, pi = {pi}"));
                }
            }
        }
        r.set_dim("pairs", pairs);
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rational};

    type Q = Rational;

    fn c2() -> Ctx {
        Ctx::new(Group::cyclic(2).unwrap())
    }

    #[test]
    fn documented_dimensions() {
        let ctx = c2();
        let dim = |n, m, kind| centralizer_nullspace::<Q>(&ctx, n, m, kind).unwrap().dim();
        assert_eq!(dim(2, 0, CentralizerKind::Group), 5);
        assert_eq!(dim(2, 0, CentralizerKind::Semigroup), 8);
        assert_eq!(dim(2, 1, CentralizerKind::Semigroup), 11);
        assert_eq!(dim(2, 1, CentralizerKind::Group), 6);
        assert_eq!(dim(3, 1, CentralizerKind::Semigroup), 32);
        assert_eq!(dim(2, 2, CentralizerKind::Semigroup), 17);
        assert_eq!(dim(2, 2, CentralizerKind::Group), 8);
        for (n, m, kind, d) in [
            (2, 1, CentralizerKind::Semigroup, 11),
            (2, 1, CentralizerKind::Group, 6),
            (3, 1, CentralizerKind::Semigroup, 32),
            (2, 0, CentralizerKind::Star, 5),
        ] {
            assert_eq!(pair_count(&ctx.group, n, m, kind), d as u128);
            assert_eq!(centralizer_combinatorial::<Q>(&ctx, n, m, kind).unwrap().dim(), d);
        }
        let trivial = Ctx::new(Group::trivial());
        assert_eq!(centralizer_nullspace::<Q>(&trivial, 3, 0, CentralizerKind::Group).unwrap().dim(), 3);
    }

    #[test]
    fn zbar_mm_is_everything() {
        let ctx = c2();
        let b = centralizer_combinatorial::<Q>(&ctx, 2, 2, CentralizerKind::Semigroup).unwrap();
        let all: Vec<RookMatrix> = enumerate_semigroup(2, &ctx.group, 1 << 10).unwrap().collect();
        let mut support: Vec<RookMatrix> = b.basis.iter().flat_map(|x| x.terms().keys().copied()).collect();
        support.sort_unstable();
        assert_eq!(support, all);
        assert!(b.basis.iter().all(|x| x.len() == 1));
    }

    #[test]
    fn agreement_small_grid() {
        let ctx = c2();
        for n in 0..=3 {
            for m in 0..=n {
                for kind in CentralizerKind::ALL {
                    let r = verify_basis_agreement::<Q>(&ctx, n, m, kind).unwrap();
                    assert!(r.passed(), "{}", r.summary());
                }
            }
        }
        let s3 = Ctx::new(Group::symmetric(3).unwrap());
        let r = verify_basis_agreement::<Q>(&s3, 2, 1, CentralizerKind::Semigroup).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn prime_field_matches_rationals() {
        let ctx = c2();
        for kind in CentralizerKind::ALL {
            let q = centralizer_nullspace::<Q>(&ctx, 3, 1, kind).unwrap().dim();
            let p = centralizer_nullspace::<Fp<101>>(&ctx, 3, 1, kind).unwrap().dim();
            assert_eq!(q, p);
        }
    }

    #[test]
    fn reduced_generators_suffice() {
        let ctx = Ctx::new(Group::cyclic(3).unwrap());
        for kind in CentralizerKind::ALL {
            let r = verify_generator_reduction::<Q>(&ctx, 3, 1, kind).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn filtration_examples() {
        let ctx = c2();
        let comb = centralizer_combinatorial::<Q>(&ctx, 3, 0, CentralizerKind::Semigroup).unwrap();
        let t0 = filtration_term(&comb, 0);
        assert_eq!(t0.dim(), 1);
        assert_eq!(t0.basis[0], AlgebraElement::one(&comb.ambient));
        assert_eq!(filtration_term(&comb, 2).dim(), 8);
        assert_eq!(filtration_term(&comb, 10).dim(), comb.dim());
        for (n, m) in [(3, 0), (3, 1), (2, 1)] {
            for k in 0..=n - m {
                let r = verify_filtration::<Q>(&ctx, n, m, k).unwrap();
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn theta_checks() {
        let ctx = c2();
        for n in 1..=3 {
            let r = verify_theta_multiplicative::<Q>(&ctx, n).unwrap();
            assert!(r.passed(), "{}", r.summary());
            for m in 0..=n {
                for r in [verify_theta_chain::<Q>(&ctx, n, m).unwrap(), verify_injectivity::<Q>(&ctx, n, m).unwrap()] {
                    assert!(r.passed(), "{}", r.summary());
                    assert_eq!(r.status == crate::report::Status::Skipped, n == m);
                }
            }
        }
    }

    #[test]
    fn ideal_lemma_small() {
        let ctx = c2();
        for (n, m, dim) in [(1, 0, 2), (2, 0, 5), (2, 1, 0)] {
            let r = verify_ideal_lemma::<Q>(&ctx, n, m).unwrap();
            assert!(r.passed(), "{}", r.summary());
            if dim > 0 {
                assert_eq!(r.dims["intersection"], dim);
            }
        }
        assert_eq!(verify_ideal_lemma::<Q>(&ctx, 2, 2).unwrap().status, crate::report::Status::Skipped);
    }

    #[test]
    fn ideal_lemma_fails_at_m_equal_n() {
        // At m = n the right side is FḠ_n, strictly larger than the ideal.
        let ctx = c2();
        let g = &ctx.group;
        let amb = Ambient::semigroup(1, g);
        let zbar = centralizer_nullspace::<Q>(&ctx, 1, 1, CentralizerKind::Semigroup).unwrap();
        let eps = RookMatrix::epsilon(1, 1).unwrap();
        let ideal: Vec<AlgebraElement<Q>> = labels(&ctx, 1, 1, CentralizerKind::Semigroup)
            .unwrap()
            .into_iter()
            .map(|a| AlgebraElement::from_terms_unchecked(&amb, [(a, Q::one()), (a.mul(&eps, g), -Q::one())]))
            .filter(|x| !x.is_zero())
            .collect();
        let lhs = span_intersection(&amb, &zbar.basis, &ideal);
        assert_eq!(lhs.len(), 2);
        assert_eq!(zbar.dim(), 3);
    }

    #[test]
    fn tensor_small() {
        let ctx = c2();
        let r = verify_tensor_decomposition::<Q>(&ctx, 2, 1).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.dims["rank"], 11);
        let r = verify_tensor_decomposition::<Q>(&ctx, 1, 1).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn monomials_and_leading_terms() {
        let ctx = c2();
        for n in 1..=3 {
            for r in verify_monomial_bases::<Q>(&ctx, n).unwrap().into_iter().chain(verify_leading_terms::<Q>(&ctx, n).unwrap()) {
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn retraction_onto() {
        let ctx = c2();
        for (n, m) in [(2, 0), (2, 1), (3, 1)] {
            let r = verify_retraction_onto::<Q>(&ctx, n, m).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }
}
