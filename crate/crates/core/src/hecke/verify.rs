//! Relation checks for the Jucys-Murphy elements and `u_{k|n}`, and the
//! square formed by `Ψ̄`, `Φ̄`, `Ψ` and the retraction `Φ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::word::{HeckeElement, HeckeFlavor};
use super::{t_elem, u_elem, xi, xi_without_transpositions};
use crate::algebra::{span_equal, subalgebra_closure, AlgebraElement, Ambient, Scalar};
use crate::centralizers::{centralizer_nullspace, commutant_generators, CentralizerError, CentralizerKind, Ctx};
use crate::classdata::{class_sum, delta_rho, enumerate_types, BoundMode, TypeFunction};
use crate::report::Report;
use crate::rook::{enumerate_semigroup, RookMatrix};

fn report(claim: &str, reference: &str, ctx: &Ctx, m: usize, n: usize) -> Report {
    Report::new(claim, reference).param("group", ctx.group.label()).param("m", m).param("n", n)
}

fn check_range(m: usize, n: usize) -> Result<(), CentralizerError> {
    if m == 0 || m > n {
        return Err(CentralizerError::Unsupported(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

struct Relations<'a, S: Scalar> {
    report: &'a mut Report,
    count: usize,
    _s: std::marker::PhantomData<S>,
}

impl<S: Scalar> Relations<'_, S> {
    fn eq(&mut self, id: impl FnOnce() -> String, lhs: &AlgebraElement<S>, rhs: &AlgebraElement<S>) {
        self.count += 1;
        if lhs != rhs {
            let diff = lhs - rhs;
            self.report.fail(format!("{}: difference {diff}", id()));
        }
    }
}

/// Slot generators `h^{(k)}` for all `k ≤ m` and `h` among the group generators.
fn slot_generators(ctx: &Ctx, m: usize, n: usize) -> Result<Vec<(String, RookMatrix)>, CentralizerError> {
    let g = &ctx.group;
    let mut out = Vec::new();
    for k in 1..=m {
        for &h in g.generators() {
            out.push((format!("{}^({k})", g.name(h)), RookMatrix::slot(h, k, n)?));
        }
    }
    Ok(out)
}

/// Checks the defining relations of `H̄_m(G)` on `u_{k|n}` and those of
/// `H_m(G)` on `ξ_k`, and records the printed variants separately.
pub fn verify_hecke_relations<S: Scalar>(ctx: &Ctx, m: usize, n: usize) -> Result<Vec<Report>, CentralizerError> {
    check_range(m, n)?;
    let g = &ctx.group;
    let samb = Ambient::semigroup(n, g);
    let gamb = Ambient::group_algebra(n, g);
    let us: Vec<AlgebraElement<S>> = (1..=m).map(|k| u_elem::<S>(&samb, k)).collect::<Result<_, _>>()?;
    let xis: Vec<AlgebraElement<S>> = (1..=m).map(|k| xi::<S>(&gamb, k)).collect::<Result<_, _>>()?;
    let slots = slot_generators(ctx, m, n)?;
    let eb = |i: usize| -> Result<AlgebraElement<S>, CentralizerError> { Ok(super::eps_bar_one::<S>(&samb, i)?) };

    let mut semi = report(
        "hecke-relations-semigroup",
        "g u_k = u_k g, s_k u_k = u_{k+1} s_k + t_{k,k+1}(1-e_k)(1-e_{k+1}), s_k u_l = u_l s_k, u_k u_l = u_l u_k, e_k u_k = u_k e_k = 0, e_l u_k = u_k e_l",
        ctx,
        m,
        n,
    );
    let mut printed_gu = 0usize;
    let mut printed_gu_true = 0usize;
    let mut count = {
        let mut rel: Relations<S> = Relations { report: &mut semi, count: 0, _s: Default::default() };
        for k in 1..=m {
            let u = &us[k - 1];
            for (name, h) in &slots {
                let he = AlgebraElement::<S>::basis(&samb, *h)?;
                rel.eq(|| format!("{name} u_{k} = u_{k} {name}"), &(&he * u), &(u * &he));
                printed_gu += 1;
                if &he * u == *u {
                    printed_gu_true += 1;
                }
            }
            if k < m {
                let s = AlgebraElement::<S>::basis(&samb, RookMatrix::s(k, n)?)?;
                let t = &(&t_elem::<S>(&samb, k, k + 1)? * &eb(k)?) * &eb(k + 1)?;
                rel.eq(|| format!("s_{k} u_{k} = u_{} s_{k} + t'", k + 1), &(&s * u), &(&(&us[k] * &s) + &t));
            }
            for i in 1..m {
                if i == k || i + 1 == k {
                    continue;
                }
                let s = AlgebraElement::<S>::basis(&samb, RookMatrix::s(i, n)?)?;
                rel.eq(|| format!("s_{i} u_{k} = u_{k} s_{i}"), &(&s * u), &(u * &s));
            }
            for l in k + 1..=m {
                rel.eq(|| format!("u_{k} u_{l} = u_{l} u_{k}"), &(u * &us[l - 1]), &(&us[l - 1] * u));
            }
            for l in 1..=m {
                let e = AlgebraElement::<S>::basis(&samb, RookMatrix::epsilon(l, n)?)?;
                if l == k {
                    let zero = AlgebraElement::zero(&samb);
                    rel.eq(|| format!("e_{k} u_{k} = 0"), &(&e * u), &zero);
                    rel.eq(|| format!("u_{k} e_{k} = 0"), &(u * &e), &zero);
                } else {
                    rel.eq(|| format!("e_{l} u_{k} = u_{k} e_{l}"), &(&e * u), &(u * &e));
                }
            }
            rel.eq(|| format!("Phi(u_{{{k}|n}}) = xi_{k}"), &u.retract(), &xis[k - 1]);
        }
        rel.count
    };
    semi.set_dim("relation_instances", count);
    semi.set_dim("printed_g_u_equals_u_holds", format!("{printed_gu_true}/{printed_gu}"));
    if printed_gu_true < printed_gu {
        semi.note(format!(
            "g u_k = u_k as printed holds in {printed_gu_true} of {printed_gu} instances; the conjugation form g u_k = u_k g holds"
        ));
    }

    let mut grp = report(
        "hecke-relations-group",
        "g xi_k = xi_k g, s_k xi_k = xi_{k+1} s_k + t_{k,k+1}, s_k xi_l = xi_l s_k, xi_k xi_l = xi_l xi_k",
        ctx,
        m,
        n,
    );
    let all_xis: Vec<AlgebraElement<S>> = (1..=n).map(|k| xi::<S>(&gamb, k)).collect::<Result<_, _>>()?;
    count = {
        let mut rel: Relations<S> = Relations { report: &mut grp, count: 0, _s: Default::default() };
        crossing_relations(&mut rel, &gamb, &slots, &all_xis, m, false)?;
        for k in 1..=n {
            for l in k + 1..=n {
                let (a, b) = (&all_xis[k - 1], &all_xis[l - 1]);
                rel.eq(|| format!("xi_{k} xi_{l} = xi_{l} xi_{k}"), &(a * b), &(b * a));
            }
        }
        rel.count
    };
    grp.set_dim("relation_instances", count);

    // The alternative image x_l ↦ Σ_{i>l} t_{li}: evaluated, not required.
    let mut alt = report(
        "hecke-relations-without-transpositions",
        "x_l -> sum_{i>l} t_{li} checked against the same relations",
        ctx,
        m,
        n,
    );
    let alt_xis: Vec<AlgebraElement<S>> =
        (1..=n).map(|k| xi_without_transpositions::<S>(&gamb, k)).collect::<Result<_, _>>()?;
    let mut probe = Report::new("probe", "");
    let total = {
        let mut rel: Relations<S> = Relations { report: &mut probe, count: 0, _s: Default::default() };
        crossing_relations(&mut rel, &gamb, &slots, &alt_xis, m, true)?;
        rel.count
    };
    alt.set_dim("relation_instances", total);
    alt.set_dim("satisfied", probe.passed());
    alt.note(match &probe.witness {
        Some(w) => format!("informational: not a homomorphism, first failure {w}"),
        None => "informational: all relations hold".to_string(),
    });
    Ok(vec![semi.finish(false), grp.finish(false), alt.finish(false)])
}

fn crossing_relations<S: Scalar>(
    rel: &mut Relations<S>,
    gamb: &Ambient,
    slots: &[(String, RookMatrix)],
    images: &[AlgebraElement<S>],
    m: usize,
    stop_early: bool,
) -> Result<(), CentralizerError> {
    let n = gamb.n;
    for k in 1..=m {
        let x = &images[k - 1];
        for (name, h) in slots {
            let he = AlgebraElement::<S>::basis(gamb, *h)?;
            rel.eq(|| format!("{name} xi_{k} = xi_{k} {name}"), &(&he * x), &(x * &he));
        }
        if k < m {
            let s = AlgebraElement::<S>::basis(gamb, RookMatrix::s(k, n)?)?;
            let t = t_elem::<S>(gamb, k, k + 1)?;
            rel.eq(|| format!("s_{k} xi_{k} = xi_{} s_{k} + t_{k}{}", k + 1, k + 1), &(&s * x), &(&(&images[k] * &s) + &t));
        }
        for i in 1..m {
            if i == k || i + 1 == k {
                continue;
            }
            let s = AlgebraElement::<S>::basis(gamb, RookMatrix::s(i, n)?)?;
            rel.eq(|| format!("s_{i} xi_{k} = xi_{k} s_{i}"), &(&s * x), &(x * &s));
        }
        if stop_early && !rel.report.passed() {
            return Ok(());
        }
    }
    Ok(())
}

/// Generators of `H̄_m(G)` as words: `s_k`, slot generators, `ε_k`, `u_k`.
fn semigroup_generators<S: Scalar>(ctx: &Ctx, m: usize) -> Result<Vec<(String, HeckeElement<S>)>, CentralizerError> {
    let g = &ctx.group;
    let f = HeckeFlavor::Semigroup;
    let mut out = Vec::new();
    for k in 1..m {
        out.push((format!("s{k}"), HeckeElement::s(f, m, g, k)?));
    }
    for k in 1..=m {
        for &h in g.generators() {
            out.push((format!("{}^({k})", g.name(h)), HeckeElement::group_part(f, g, RookMatrix::slot(h, k, m)?)?));
        }
        out.push((format!("e{k}"), HeckeElement::eps(m, g, k)?));
        out.push((format!("u{k}"), HeckeElement::generator(f, m, g, k)?));
    }
    Ok(out)
}

/// `Φ∘Ψ̄ = Ψ∘Φ̄` on generators and random words, `Ψ` and `Ψ̄` are
/// multiplicative on random products, and their images centralize.
pub fn verify_diagram<S: Scalar>(ctx: &Ctx, m: usize, n: usize) -> Result<Report, CentralizerError> {
    check_range(m, n)?;
    let mut r = report(
        "hecke-diagram",
        "Phi(Psi-bar(w)) = Psi(Phi-bar(w)) with Psi(x_l) = xi_l, Psi-bar(u_k) = u_{k|n}, Phi-bar(e_k) = 0",
        ctx,
        m,
        n,
    );
    let g = &ctx.group;
    let gens = semigroup_generators::<S>(ctx, m)?;
    let mut words: Vec<(String, HeckeElement<S>)> = gens.clone();
    // Deterministic random words of length up to 3 in the generators.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..24 {
        let len = rng.gen_range(2..=3);
        let mut name = Vec::new();
        let mut w = HeckeElement::one(HeckeFlavor::Semigroup, m, g);
        for _ in 0..len {
            let (gn, gx) = &gens[rng.gen_range(0..gens.len())];
            name.push(gn.clone());
            w = w.try_mul(gx)?;
        }
        words.push((name.join(" "), w));
    }
    let zbar_gens = commutant_generators(ctx, n, m, CentralizerKind::Semigroup, false)?;
    let z_gens = commutant_generators(ctx, n, m, CentralizerKind::Group, false)?;
    for (name, w) in &words {
        let top = w.psi(n)?.retract();
        let bottom = w.phi_bar()?.psi(n)?;
        if !r.check(top == bottom, || format!("square fails on {name}")) {
            break;
        }
        let image = w.psi(n)?;
        if let Some(gen) = zbar_gens.iter().find(|x| image.left_mul_basis(x) != image.right_mul_basis(x)) {
            r.fail(format!("Psi-bar({name}) does not commute with {}", gen.display(g)));
        }
        if let Some(gen) = z_gens.iter().find(|x| bottom.left_mul_basis(x) != bottom.right_mul_basis(x)) {
            r.fail(format!("Psi(Phi-bar({name})) does not commute with {}", gen.display(g)));
        }
    }
    // Multiplicativity on random pairs of words.
    let mut pairs = 0;
    for _ in 0..16 {
        let (an, a) = &words[rng.gen_range(0..words.len())];
        let (bn, b) = &words[rng.gen_range(0..words.len())];
        pairs += 1;
        let ab = a.try_mul(b)?;
        r.check(ab.psi(n)? == &a.psi(n)? * &b.psi(n)?, || format!("Psi-bar not multiplicative on ({an}, {bn})"));
        let (pa, pb) = (a.phi_bar()?, b.phi_bar()?);
        r.check(pa.try_mul(&pb)? == ab.phi_bar()?, || format!("Phi-bar not multiplicative on ({an}, {bn})"));
        r.check(pa.try_mul(&pb)?.psi(n)? == &pa.psi(n)? * &pb.psi(n)?, || format!("Psi not multiplicative on ({an}, {bn})"));
    }
    r.set_dim("words", words.len());
    r.set_dim("product_pairs", pairs);
    // The alternative x_l ↦ Σ t_{li} against the square, for the record.
    let mut alt_closes = true;
    for k in 1..=m {
        let x = HeckeElement::<S>::generator(HeckeFlavor::Group, m, g, k)?;
        let u = HeckeElement::<S>::generator(HeckeFlavor::Semigroup, m, g, k)?;
        if u.psi(n)?.retract() != x.psi_without_transpositions(n)? {
            alt_closes = false;
        }
    }
    r.set_dim("square_closes_without_transpositions", alt_closes);
    Ok(r.finish(false))
}

/// `Z_{m,n}` is generated by `Ψ(H_m(G))` and the center of `𝔽G'_{n−m}`;
/// `Z̄_{m,n}` by `Ψ̄(H̄_m(G))` and the center of `𝔽Ḡ'_{n−m}`.
pub fn verify_image_generation<S: Scalar>(ctx: &Ctx, m: usize, n: usize) -> Result<Vec<Report>, CentralizerError> {
    check_range(m, n)?;
    let g = &ctx.group;
    let mut out = Vec::new();
    for kind in [CentralizerKind::Group, CentralizerKind::Semigroup] {
        let (claim, reference) = match kind {
            CentralizerKind::Group => ("hecke-image-group", "Z_{m,n} is generated by Psi(H_m(G)) and the center of FG'_{n-m}"),
            _ => ("hecke-image-semigroup", "Z-bar_{m,n} is generated by Psi-bar(H-bar_m(G)) and the center of FG-bar'_{n-m}"),
        };
        let mut r = report(claim, reference, ctx, m, n);
        let amb = kind.ambient(n, g);
        let flavor = if kind == CentralizerKind::Group { HeckeFlavor::Group } else { HeckeFlavor::Semigroup };
        let mut gens: Vec<AlgebraElement<S>> = Vec::new();
        for k in 1..m {
            gens.push(HeckeElement::<S>::s(flavor, m, g, k)?.psi(n)?);
        }
        for k in 1..=m {
            for &h in g.generators() {
                gens.push(HeckeElement::<S>::group_part(flavor, g, RookMatrix::slot(h, k, m)?)?.psi(n)?);
            }
            gens.push(HeckeElement::<S>::generator(flavor, m, g, k)?.psi(n)?);
            if kind == CentralizerKind::Semigroup {
                gens.push(HeckeElement::<S>::eps(m, g, k)?.psi(n)?);
            }
        }
        let rest = n - m;
        let center: Vec<AlgebraElement<S>> = match kind {
            CentralizerKind::Group => enumerate_types(g, rest, BoundMode::Exact)
                .iter()
                .map(|rho: &TypeFunction| Ok(class_sum::<S>(g, rest, rho, None)?.embed_last(n)?))
                .collect::<Result<_, CentralizerError>>()?,
            _ => enumerate_types(g, rest, BoundMode::AtMost)
                .iter()
                .map(|rho: &TypeFunction| Ok(delta_rho::<S>(g, rest, rho)?.embed_last(n)?))
                .collect::<Result<_, CentralizerError>>()?,
        };
        gens.extend(center);
        let target = centralizer_nullspace::<S>(ctx, n, m, kind)?;
        let closure = subalgebra_closure(&amb, &gens, target.dim().max(1))?;
        r.set_dim("closure", closure.len());
        r.set_dim("centralizer", target.dim());
        r.check(span_equal(&amb, &closure, &target.basis), || "generated subalgebra differs from the centralizer".into());
        out.push(r.finish(false));
    }
    Ok(out)
}

/// `Φ` is multiplicative on all pairs of rook matrices in `Ḡ_n`.
pub fn verify_retraction_multiplicative<S: Scalar>(ctx: &Ctx, n: usize) -> Result<Report, CentralizerError> {
    let g = &ctx.group;
    let mut r = Report::new("retraction-multiplicative", "Phi(xy) = Phi(x) Phi(y), Phi(e_i) = 0")
        .param("group", g.label())
        .param("n", n);
    let amb = Ambient::semigroup(n, g);
    let all: Vec<RookMatrix> = enumerate_semigroup(n, g, ctx.cap)?.collect();
    let elems: Vec<AlgebraElement<S>> = all.iter().map(|x| AlgebraElement::<S>::basis(&amb, *x)).collect::<Result<_, _>>()?;
    let phis: Vec<AlgebraElement<S>> = elems.iter().map(|x| x.retract()).collect();
    'outer: for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            if (x * y).retract() != &phis[i] * &phis[j] {
                r.fail(format!("fails on ({}, {})", all[i].display(g), all[j].display(g)));
                break 'outer;
            }
        }
    }
    r.set_dim("pairs", elems.len() * elems.len());
    Ok(r.finish(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::groups::Group;

    type Q = Rational;

    #[test]
    fn relation_suite() {
        for (g, n) in [(Group::cyclic(2).unwrap(), 4), (Group::symmetric(3).unwrap(), 3)] {
            let ctx = Ctx::new(g.clone());
            for m in 1..=2.min(n) {
                let reports = verify_hecke_relations::<Q>(&ctx, m, n).unwrap();
                assert!(reports[0].passed(), "{}", reports[0].summary());
                assert!(reports[1].passed(), "{}", reports[1].summary());
            }
        }
        // The printed g u_k = u_k is false as soon as G is nontrivial.
        let ctx = Ctx::new(Group::cyclic(2).unwrap());
        let r = &verify_hecke_relations::<Q>(&ctx, 1, 2).unwrap()[0];
        assert_eq!(r.dims["printed_g_u_equals_u_holds"], "0/1");
    }

    #[test]
    fn trivial_group_crossing() {
        // For S_n the crossing relation reads s_k ξ_k = ξ_{k+1} s_k + 1.
        let ctx = Ctx::new(Group::trivial());
        let g = &ctx.group;
        let amb = Ambient::group_algebra(3, g);
        let s1 = AlgebraElement::<Q>::basis(&amb, RookMatrix::s(1, 3).unwrap()).unwrap();
        let (x1, x2) = (xi::<Q>(&amb, 1).unwrap(), xi::<Q>(&amb, 2).unwrap());
        assert_eq!(&s1 * &x1, &(&x2 * &s1) + &AlgebraElement::one(&amb));
    }

    #[test]
    fn diagram_commutes() {
        for (g, n) in [(Group::cyclic(2).unwrap(), 3), (Group::symmetric(3).unwrap(), 2)] {
            let ctx = Ctx::new(g);
            for m in 1..=2.min(n) {
                let r = verify_diagram::<Q>(&ctx, m, n).unwrap();
                assert!(r.passed(), "{}", r.summary());
                assert_eq!(r.dims["square_closes_without_transpositions"], false);
            }
        }
    }

    #[test]
    fn images_generate() {
        let ctx = Ctx::new(Group::cyclic(2).unwrap());
        for (m, n) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            for r in verify_image_generation::<Q>(&ctx, m, n).unwrap() {
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn retraction_is_multiplicative() {
        let ctx = Ctx::new(Group::cyclic(2).unwrap());
        for n in 1..=2 {
            assert!(verify_retraction_multiplicative::<Q>(&ctx, n).unwrap().passed());
        }
    }
}
