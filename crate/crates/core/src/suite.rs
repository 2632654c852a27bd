//! Named batch checks and the deterministic runner behind `wreath verify`.

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::presentation::verify_presentation;
use crate::algebra::{AlgebraElement, Ambient, Fp, Rational, Scalar};
use crate::centralizers::{self as cz, CentralizerError, CentralizerKind, Ctx};
use crate::classdata::{class_sum, TypeFunction};
use crate::groups::{load_group, Group, GroupError};
use crate::gz::{verify_branching_centralizer, verify_gz};
use crate::hecke::{verify_diagram, verify_hecke_relations, verify_image_generation, verify_retraction_multiplicative};
use crate::report::Report;
use crate::rook::{enumerate_group, enumerate_semigroup, from_wreath, WreathElement};

/// Every check name, in run order.
pub const CHECKS: &[&str] = &[
    "size",
    "presentation",
    "golden-class-sum",
    "bases",
    "generators",
    "field-agreement",
    "filtration",
    "theta-chain",
    "injectivity",
    "ideal",
    "leading-terms",
    "monomial-bases",
    "tensor",
    "retraction",
    "hecke",
    "diagram",
    "image",
    "gz",
    "branching",
];

/// Primes accepted for `field`; `Fp` is monomorphized per modulus.
pub const PRIMES: &[u32] = &[2, 3, 5, 7, 11, 13, 101, 1009, 32003];

/// Largest `n` a run may request.
pub const MAX_RUN_N: usize = 6;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unsupported prime {0}; choose one of {PRIMES:?}")]
    Prime(u32),
    #[error("bad range: {0}")]
    Range(String),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A batch run. The JSON form of this struct is the config file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Built-in name or Cayley-table path, as accepted by `load_group`.
    pub group: String,
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: usize,
    /// Defaults to `n` for each `n`.
    pub m_max: Option<usize>,
    /// Empty means all three.
    pub kinds: Vec<CentralizerKind>,
    pub field: Field,
    /// Empty means all of `CHECKS`.
    pub checks: Vec<String>,
    pub output: Option<PathBuf>,
    pub element_cap: u64,
    pub threads: Option<usize>,
    /// Keep wall-clock times in the reports. Timed reports are not reproducible.
    pub timed: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: "c2".into(),
            n_min: 0,
            n_max: 3,
            m_min: 0,
            m_max: None,
            kinds: Vec::new(),
            field: Field::Rational,
            checks: Vec::new(),
            output: None,
            element_cap: cz::DEFAULT_CAP as u64,
            threads: None,
            timed: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        for c in &self.checks {
            if !CHECKS.contains(&c.as_str()) {
                return Err(SuiteError::UnknownCheck(c.clone()));
            }
        }
        if let Field::Prime(p) = self.field {
            if !PRIMES.contains(&p) {
                return Err(SuiteError::Prime(p));
            }
        }
        if self.n_min > self.n_max {
            return Err(SuiteError::Range(format!("n_min {} > n_max {}", self.n_min, self.n_max)));
        }
        if self.n_max > MAX_RUN_N {
            return Err(SuiteError::Range(format!("n_max {} exceeds {MAX_RUN_N}", self.n_max)));
        }
        if self.m_max.is_some_and(|m| m < self.m_min) {
            return Err(SuiteError::Range(format!("m_min {} > m_max", self.m_min)));
        }
        if self.threads == Some(0) {
            return Err(SuiteError::Range("threads must be positive".into()));
        }
        Ok(())
    }

    fn selected(&self) -> Vec<&'static str> {
        CHECKS.iter().copied().filter(|c| self.checks.is_empty() || self.checks.iter().any(|s| s == c)).collect()
    }

    fn kinds(&self) -> Vec<CentralizerKind> {
        if self.kinds.is_empty() {
            CentralizerKind::ALL.to_vec()
        } else {
            self.kinds.clone()
        }
    }

    fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    fn ms(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        self.m_min..=self.m_max.unwrap_or(n).min(n)
    }
}

/// Loads the group, then runs every selected check over the configured
/// ranges. Failures are collected, not fatal.
pub fn run(cfg: &RunConfig) -> Result<Vec<Report>, SuiteError> {
    cfg.validate()?;
    let group = load_group(&cfg.group)?;
    let ctx = Ctx::new(group).with_cap(cfg.element_cap as u128);
    in_pool(cfg.threads, || run_field(&ctx, cfg))?
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SuiteError> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SuiteError::Threads(e.to_string()))?
            .install(f)),
        None => Ok(f()),
    }
}

fn run_field(ctx: &Ctx, cfg: &RunConfig) -> Result<Vec<Report>, SuiteError> {
    macro_rules! primes {
        ($p:expr; $($q:literal),*) => {
            match $p {
                $($q => Ok(run_with::<Fp<$q>>(ctx, cfg)),)*
                other => Err(SuiteError::Prime(other)),
            }
        };
    }
    match cfg.field {
        Field::Rational => Ok(run_with::<Rational>(ctx, cfg)),
        Field::Prime(p) => primes!(p; 2, 3, 5, 7, 11, 13, 101, 1009, 32003),
    }
}

struct Sink<'a> {
    ctx: &'a Ctx,
    timed: bool,
    out: Vec<Report>,
}

impl Sink<'_> {
    fn push(&mut self, check: &str, params: &[(&str, usize)], r: Result<Report, CentralizerError>) {
        self.extend(check, params, r.map(|r| vec![r]));
    }

    /// Records results, turning computation errors into failed (or, for
    /// unsupported inputs, skipped) reports.
    fn extend(&mut self, check: &str, params: &[(&str, usize)], r: Result<Vec<Report>, CentralizerError>) {
        match r {
            Ok(rs) => self.out.extend(rs.into_iter().map(|r| r.finish(self.timed))),
            Err(e) => {
                let mut r = Report::new(check, "computation").param("group", self.ctx.group.label());
                for (k, v) in params {
                    r = r.param(k, v);
                }
                let r = match e {
                    CentralizerError::Unsupported(msg) => r.skip(msg),
                    other => {
                        let mut r = r;
                        r.fail(format!("error: {other}"));
                        r
                    }
                };
                self.out.push(r.finish(false));
            }
        }
    }
}

fn run_with<S: Scalar>(ctx: &Ctx, cfg: &RunConfig) -> Vec<Report> {
    let mut sink = Sink { ctx, timed: cfg.timed, out: Vec::new() };
    let grid: Vec<(usize, usize)> = cfg.ns().flat_map(|n| cfg.ms(n).map(move |m| (n, m))).collect();
    let hecke_grid: Vec<(usize, usize)> = grid.iter().copied().filter(|&(_, m)| m >= 1).collect();
    for check in cfg.selected() {
        match check {
            "size" => {
                for n in cfg.ns() {
                    sink.push(check, &[("n", n)], verify_sizes(ctx, n));
                }
            }
            "presentation" => {
                for n in cfg.ns() {
                    sink.push(check, &[("n", n)], verify_presentation::<S>(&ctx.group, n).map_err(Into::into));
                }
            }
            "golden-class-sum" => sink.push(check, &[], verify_golden_class_sum::<S>()),
            "bases" | "generators" | "field-agreement" => {
                for &(n, m) in &grid {
                    for kind in cfg.kinds() {
                        let r = match check {
                            "bases" => cz::verify_basis_agreement::<S>(ctx, n, m, kind),
                            "generators" => cz::verify_generator_reduction::<S>(ctx, n, m, kind),
                            _ => verify_field_agreement::<S>(ctx, n, m, kind),
                        };
                        sink.push(check, &[("n", n), ("m", m)], r);
                    }
                }
            }
            "filtration" => {
                for &(n, m) in &grid {
                    for k in 0..=n - m {
                        sink.push(check, &[("n", n), ("m", m), ("k", k)], cz::verify_filtration::<S>(ctx, n, m, k));
                    }
                }
            }
            "theta-chain" => {
                for n in cfg.ns().filter(|&n| n >= 1) {
                    sink.push(check, &[("n", n)], cz::verify_theta_multiplicative::<S>(ctx, n));
                    for m in cfg.ms(n) {
                        sink.push(check, &[("n", n), ("m", m)], cz::verify_theta_chain::<S>(ctx, n, m));
                    }
                }
            }
            "injectivity" | "ideal" => {
                for &(n, m) in &grid {
                    let r = if check == "ideal" {
                        cz::verify_ideal_lemma::<S>(ctx, n, m)
                    } else {
                        cz::verify_injectivity::<S>(ctx, n, m)
                    };
                    sink.push(check, &[("n", n), ("m", m)], r);
                }
            }
            "leading-terms" | "monomial-bases" => {
                for n in cfg.ns() {
                    let r = if check == "leading-terms" {
                        cz::verify_leading_terms::<S>(ctx, n)
                    } else {
                        cz::verify_monomial_bases::<S>(ctx, n)
                    };
                    sink.extend(check, &[("n", n)], r);
                }
            }
            "tensor" => {
                for &(n, m) in &hecke_grid {
                    sink.push(check, &[("n", n), ("m", m)], cz::verify_tensor_decomposition::<S>(ctx, n, m));
                }
            }
            "retraction" => {
                for n in cfg.ns() {
                    sink.push(check, &[("n", n)], verify_retraction_multiplicative::<S>(ctx, n));
                    for m in cfg.ms(n) {
                        sink.push(check, &[("n", n), ("m", m)], cz::verify_retraction_onto::<S>(ctx, n, m));
                    }
                }
            }
            "hecke" | "diagram" | "image" => {
                for &(n, m) in &hecke_grid {
                    let params = [("n", n), ("m", m)];
                    match check {
                        "hecke" => sink.extend(check, &params, verify_hecke_relations::<S>(ctx, m, n)),
                        "diagram" => sink.push(check, &params, verify_diagram::<S>(ctx, m, n)),
                        _ => sink.extend(check, &params, verify_image_generation::<S>(ctx, m, n)),
                    }
                }
            }
            "gz" => {
                for n in cfg.ns().filter(|&n| n >= 1) {
                    sink.extend(check, &[("n", n)], verify_gz::<S>(ctx, n).map(|(rs, _)| rs));
                }
            }
            "branching" => {
                for n in cfg.ns().filter(|&n| n >= 1) {
                    sink.push(check, &[("n", n)], verify_branching_centralizer::<S>(ctx, n));
                }
            }
            other => unreachable!("check list out of sync: {other}"),
        }
    }
    sink.out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerated `|Ḡ_n|` and `|G_n|` against `Σ_t C(n,t)² t! |G|^t` and `n! |G|^n`.
pub fn verify_sizes(ctx: &Ctx, n: usize) -> Result<Report, CentralizerError> {
    let g = ctx.group.order() as u128;
    let mut r = Report::new("semigroup-size", "|G-bar_n| = sum_t C(n,t)^2 t! |G|^t and |G_n| = n! |G|^n")
        .param("group", ctx.group.label())
        .param("n", n);
    let fact = |k: u128| (1..=k).product::<u128>();
    let nn = n as u128;
    let expected: u128 = (0..=nn).map(|t| binomial(nn, t).pow(2) * fact(t) * g.pow(t as u32)).sum();
    let expected_group = fact(nn) * g.pow(n as u32);
    let semi = enumerate_semigroup(n, &ctx.group, ctx.cap)?.count() as u128;
    let total = enumerate_group(n, &ctx.group, ctx.cap)?.count() as u128;
    r.set_dim("semigroup", semi);
    r.set_dim("semigroup_expected", expected);
    r.set_dim("group", total);
    r.set_dim("group_expected", expected_group);
    r.check(semi == expected, || format!("enumerated {semi} rook matrices, expected {expected}"));
    r.check(total == expected_group, || format!("enumerated {total} group elements, expected {expected_group}"));
    Ok(r)
}

/// The class sum `C_3^ρ` over `C_2` with `ρ(1) = (1)`, `ρ(−1) = (2)`,
/// against its six-term expansion with every coefficient 2.
pub fn verify_golden_class_sum<S: Scalar>() -> Result<Report, CentralizerError> {
    let g = Arc::new(Group::cyclic(2).map_err(|e| CentralizerError::Unsupported(e.to_string()))?);
    let mut r = Report::new(
        "golden-class-sum",
        "C_3^rho for G = C_2, rho(1) = (1), rho(-1) = (2) is the sum of six elements with coefficient 2",
    )
    .param("group", g.label())
    .param("n", 3);
    let amb = Ambient::group_algebra(3, &g);
    // Labels (0 = 1, 1 = −1) and one-line permutations.
    let terms: [([usize; 3], [usize; 3]); 6] = [
        ([0, 0, 1], [1, 3, 2]),
        ([0, 1, 0], [1, 3, 2]),
        ([0, 0, 1], [3, 2, 1]),
        ([1, 0, 0], [3, 2, 1]),
        ([0, 1, 0], [2, 1, 3]),
        ([1, 0, 0], [2, 1, 3]),
    ];
    let mut literal = Vec::new();
    for (lab, sig) in terms {
        let w = WreathElement::new(lab.to_vec(), sig.to_vec())?;
        literal.push((from_wreath(&w), S::from_i64(2)));
    }
    let literal = AlgebraElement::from_terms(&amb, literal)?;
    let rho = TypeFunction::new(vec![vec![1], vec![2]]);
    let computed: AlgebraElement<S> = class_sum(&g, 3, &rho, None)?;
    r.set_dim("terms", computed.len());
    r.check(computed == literal, || format!("computed {computed}; difference {}", &computed - &literal));
    Ok(r)
}

/// Nullspace dimensions over the run field and over ℚ agree.
pub fn verify_field_agreement<S: Scalar>(
    ctx: &Ctx,
    n: usize,
    m: usize,
    kind: CentralizerKind,
) -> Result<Report, CentralizerError> {
    let mut r = Report::new("field-agreement", "dim of the nullspace centralizer is the same over Q and F_101")
        .param("group", ctx.group.label())
        .param("n", n)
        .param("m", m)
        .param("kind", kind);
    let q = cz::centralizer_nullspace::<Rational>(ctx, n, m, kind)?.dim();
    let p = cz::centralizer_nullspace::<Fp<101>>(ctx, n, m, kind)?.dim();
    let here = cz::centralizer_nullspace::<S>(ctx, n, m, kind)?.dim();
    r.set_dim("rational", q);
    r.set_dim("mod_101", p);
    r.set_dim("run_field", here);
    r.check(q == p && q == here, || format!("dimensions {q} over Q, {p} mod 101, {here} in the run field"));
    Ok(r)
}
