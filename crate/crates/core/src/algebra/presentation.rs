//! Evaluates the defining relations of the semigroup algebra `𝔽Ḡ_n` on
//! generator elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AlgebraElement, Ambient, Scalar};
use crate::groups::Group;
use crate::report::Report;
use crate::rook::{RookError, RookMatrix};

struct Checker<'a, S: Scalar> {
    amb: &'a Ambient,
    report: Report,
    counts: BTreeMap<&'static str, usize>,
    _s: std::marker::PhantomData<S>,
}

impl<S: Scalar> Checker<'_, S> {
    fn el(&self, x: RookMatrix) -> AlgebraElement<S> {
        AlgebraElement::basis_unchecked(self.amb, x)
    }

    fn prod(&self, xs: &[RookMatrix]) -> AlgebraElement<S> {
        let mut acc = AlgebraElement::one(self.amb);
        for x in xs {
            acc = &acc * &self.el(*x);
        }
        acc
    }

    fn eq(&mut self, family: &'static str, lhs: &[RookMatrix], rhs: &[RookMatrix]) {
        *self.counts.entry(family).or_default() += 1;
        let (a, b) = (self.prod(lhs), self.prod(rhs));
        if a != b {
            let g = &self.amb.group;
            let show = |xs: &[RookMatrix]| xs.iter().map(|x| x.display(g).to_string()).collect::<Vec<_>>().join("·");
            self.report.fail(format!("{family}: {} != {}; difference {}", show(lhs), show(rhs), &a - &b));
        }
    }
}

/// Checks every instance of the braid, wreath, idempotent and mixed
/// relations of `𝔽Ḡ_n`, with `g` ranging over all of `G^n` and `h` over `G`.
pub fn verify_presentation<S: Scalar>(group: &Arc<Group>, n: usize) -> Result<Report, RookError> {
    let amb = Ambient::semigroup(n, group);
    let report = Report::new(
        "semigroup-presentation",
        "braid relations, s_i g = (s_i g s_i) s_i, e_i^2 = e_i, s_i e_i = e_{i+1} s_i, s_i e_i e_{i+1} = e_i e_{i+1}, e_i h^(i) = h^(i) e_i = e_i",
    )
    .param("group", group.label())
    .param("n", n);
    let mut c: Checker<S> = Checker { amb: &amb, report, counts: BTreeMap::new(), _s: Default::default() };
    let id = RookMatrix::identity(n);
    let s: Vec<RookMatrix> = (1..n).map(|i| RookMatrix::s(i, n)).collect::<Result<_, _>>()?;
    let e: Vec<RookMatrix> = (1..=n).map(|i| RookMatrix::epsilon(i, n)).collect::<Result<_, _>>()?;
    let order = group.order();
    let diagonals: Vec<Vec<usize>> = (0..order.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let a = code % order;
                    code /= order;
                    a
                })
                .collect()
        })
        .collect();

    for i in 0..n.saturating_sub(1) {
        c.eq("braid", &[s[i], s[i]], &[id]);
        for j in i + 2..n - 1 {
            c.eq("braid", &[s[i], s[j]], &[s[j], s[i]]);
        }
        if i + 1 < n - 1 {
            c.eq("braid", &[s[i], s[i + 1], s[i]], &[s[i + 1], s[i], s[i + 1]]);
        }
        for g in &diagonals {
            let mut swapped = g.clone();
            swapped.swap(i, i + 1);
            c.eq("wreath", &[s[i], RookMatrix::diagonal(g)], &[RookMatrix::diagonal(&swapped), s[i]]);
        }
    }
    for i in 0..n {
        c.eq("idempotent", &[e[i], e[i]], &[e[i]]);
        for j in i + 1..n {
            c.eq("idempotent", &[e[i], e[j]], &[e[j], e[i]]);
        }
    }
    for i in 0..n.saturating_sub(1) {
        c.eq("symmetric-idempotent", &[s[i], e[i]], &[e[i + 1], s[i]]);
        for j in (0..n).filter(|&j| j != i && j != i + 1) {
            c.eq("symmetric-idempotent", &[s[i], e[j]], &[e[j], s[i]]);
        }
        c.eq("symmetric-idempotent", &[s[i], e[i], e[i + 1]], &[e[i], e[i + 1]]);
    }
    for i in 0..n {
        for g in &diagonals {
            let g = RookMatrix::diagonal(g);
            c.eq("group-idempotent", &[e[i], g], &[g, e[i]]);
        }
        for h in 0..order {
            let hi = RookMatrix::slot(h, i + 1, n)?;
            c.eq("group-idempotent", &[e[i], hi], &[e[i]]);
            c.eq("group-idempotent", &[hi, e[i]], &[e[i]]);
        }
    }
    let mut report = c.report;
    for (family, count) in c.counts {
        report.set_dim(&format!("instances_{family}"), count);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    #[test]
    fn relations_hold() {
        for g in [Group::trivial(), Group::cyclic(2).unwrap(), Group::symmetric(3).unwrap()] {
            let g = Arc::new(g);
            for n in 1..=3 {
                let r = verify_presentation::<Rational>(&g, n).unwrap();
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }
}
