//! The wreath Hecke algebra `H_m(G)` and its semigroup version `H̄_m(G)` in
//! normal form `β·x_1^{k_1}···x_m^{k_m}` (resp. `γ·u^k`).
//!
//! Multiplication moves a monomial to the right of a group part one simple
//! transposition at a time, using `f·s_k = s_k·(s_k f) + t'_k·∂_k f` with the
//! divided difference `∂_k f = (f − s_k f)/(x_k − x_{k+1})`. Here `t'_k` is
//! `t_{k,k+1}` for `H_m(G)` and `t_{k,k+1}(1−ε_k)(1−ε_{k+1})` for `H̄_m(G)`.
//! In `H̄_m(G)` a monomial touching a zero column of the group part vanishes,
//! since `γ = γ ε_j` when column `j` of `γ` is zero and `ε_j u_j = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{u_elem, xi, xi_without_transpositions, HeckeError};
use crate::algebra::{AlgebraElement, Ambient, Scalar};
use crate::expr::Cursor;
use crate::groups::Group;
use crate::rook::{parse_rook_literal, RookMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeckeFlavor {
    /// `H_m(G)` with polynomial generators `x_k`.
    Group,
    /// `H̄_m(G)` with polynomial generators `u_k` and the idempotents `ε_k`.
    Semigroup,
}

impl HeckeFlavor {
    fn var(self) -> char {
        match self {
            HeckeFlavor::Group => 'x',
            HeckeFlavor::Semigroup => 'u',
        }
    }
}

type Mono = Vec<u32>;
/// Integer polynomial in the `m` commuting generators.
type Poly = BTreeMap<Mono, i64>;

fn poly_add(p: &mut Poly, mono: Mono, c: i64) {
    if c == 0 {
        return;
    }
    let e = p.entry(mono.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        p.remove(&mono);
    }
}

/// `s_k f`: swaps the exponents of slots `k` and `k+1` (1-based `k`).
fn poly_swap(f: &Poly, k: usize) -> Poly {
    f.iter()
        .map(|(m, &c)| {
            let mut m = m.clone();
            m.swap(k - 1, k);
            (m, c)
        })
        .collect()
}

/// `∂_k f = (f − s_k f)/(x_k − x_{k+1})`, monomial by monomial.
fn poly_divdiff(f: &Poly, k: usize) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in f {
        let (p, q) = (m[k - 1], m[k]);
        if p == q {
            continue;
        }
        // (x^p y^q − x^q y^p)/(x − y) = ± x^lo y^lo Σ_{i<d} x^{d−1−i} y^i.
        let (lo, d, sign) = if p > q { (q, p - q, 1) } else { (p, q - p, -1) };
        for i in 0..d {
            let mut mono = m.clone();
            mono[k - 1] = lo + d - 1 - i;
            mono[k] = lo + i;
            poly_add(&mut out, mono, sign * c);
        }
    }
    out
}

/// Element of `H_m(G)` or `H̄_m(G)` in normal form.
#[derive(Clone)]
pub struct HeckeElement<S: Scalar> {
    flavor: HeckeFlavor,
    m: usize,
    group: Arc<Group>,
    terms: BTreeMap<(RookMatrix, Mono), S>,
}

impl<S: Scalar> PartialEq for HeckeElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor && self.m == other.m && *self.group == *other.group && self.terms == other.terms
    }
}

impl<S: Scalar> Eq for HeckeElement<S> {}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(flavor: HeckeFlavor, m: usize, group: &Arc<Group>) -> Self {
        HeckeElement { flavor, m, group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(flavor: HeckeFlavor, m: usize, group: &Arc<Group>) -> Self {
        let mut x = Self::zero(flavor, m, group);
        x.add_term(RookMatrix::identity(m), vec![0; m], S::one());
        x
    }

    /// A group part `β` (total for `H_m(G)`, any rook matrix for `H̄_m(G)`).
    pub fn group_part(flavor: HeckeFlavor, group: &Arc<Group>, beta: RookMatrix) -> Result<Self, HeckeError> {
        if flavor == HeckeFlavor::Group && !beta.is_group_element() {
            return Err(HeckeError::WrongFlavor("semigroup"));
        }
        let m = beta.n();
        let mut x = Self::zero(flavor, m, group);
        x.add_term(beta, vec![0; m], S::one());
        Ok(x)
    }

    /// `x_k` or `u_k`.
    pub fn generator(flavor: HeckeFlavor, m: usize, group: &Arc<Group>, k: usize) -> Result<Self, HeckeError> {
        if k == 0 || k > m {
            return Err(HeckeError::Index { index: k, bound: m });
        }
        let mut mono = vec![0; m];
        mono[k - 1] = 1;
        let mut x = Self::zero(flavor, m, group);
        x.add_term(RookMatrix::identity(m), mono, S::one());
        Ok(x)
    }

    pub fn s(flavor: HeckeFlavor, m: usize, group: &Arc<Group>, k: usize) -> Result<Self, HeckeError> {
        Self::group_part(flavor, group, RookMatrix::s(k, m)?)
    }

    pub fn eps(m: usize, group: &Arc<Group>, k: usize) -> Result<Self, HeckeError> {
        Self::group_part(HeckeFlavor::Semigroup, group, RookMatrix::epsilon(k, m)?)
    }

    /// `t_{kl} = Σ_h h^{(k)} (h⁻¹)^{(l)}`.
    pub fn t(flavor: HeckeFlavor, m: usize, group: &Arc<Group>, k: usize, l: usize) -> Result<Self, HeckeError> {
        if k >= l {
            return Err(HeckeError::Order(k, l));
        }
        let mut x = Self::zero(flavor, m, group);
        for h in 0..group.order() {
            let y = RookMatrix::slot(h, k, m)?.mul(&RookMatrix::slot(group.inv(h), l, m)?, group);
            x.add_term(y, vec![0; m], S::one());
        }
        Ok(x)
    }

    pub fn flavor(&self) -> HeckeFlavor {
        self.flavor
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(group part, exponents, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&RookMatrix, &[u32], &S)> {
        self.terms.iter().map(|((b, m), c)| (b, m.as_slice(), c))
    }

    fn add_term(&mut self, beta: RookMatrix, mono: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        // A monomial through a zero column of the group part vanishes.
        if (0..self.m).any(|j| mono[j] > 0 && beta.col0(j).is_none()) {
            return;
        }
        let key = (beta, mono);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), HeckeError> {
        if self.flavor != other.flavor || self.m != other.m || *self.group != *other.group {
            return Err(HeckeError::WrongFlavor("same"));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for ((b, m), c) in &other.terms {
            out.add_term(*b, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.try_add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.flavor, self.m, &self.group);
        for ((b, m), c) in &self.terms {
            out.add_term(*b, m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// The correction term `t'_k` as signed group parts.
    fn t_prime(&self, k: usize) -> Vec<(RookMatrix, i64)> {
        let g = &*self.group;
        let m = self.m;
        let mut out = Vec::new();
        for h in 0..g.order() {
            let y = RookMatrix::slot(h, k, m)
                .expect("index")
                .mul(&RookMatrix::slot(g.inv(h), k + 1, m).expect("index"), g);
            match self.flavor {
                HeckeFlavor::Group => out.push((y, 1)),
                HeckeFlavor::Semigroup => {
                    let (a, b) = (1u32 << (k - 1), 1u32 << k);
                    out.push((y, 1));
                    out.push((y.zero_columns(a), -1));
                    out.push((y.zero_columns(b), -1));
                    out.push((y.zero_columns(a | b), 1));
                }
            }
        }
        out
    }

    /// Rewrites `f·γ` as `Σ δ·f_δ`.
    fn push_past(&self, f: Poly, gamma: &RookMatrix) -> BTreeMap<RookMatrix, Poly> {
        let g = &*self.group;
        let m = self.m;
        // Complete γ to a total matrix w with γ = w·ε_Q.
        let mut w = *gamma;
        let mut zero_mask = 0u32;
        let mut used = vec![false; m];
        for j in 0..m {
            if let Some((r, _)) = gamma.col0(j) {
                used[r] = true;
            }
        }
        let mut free_rows = (0..m).filter(|&r| !used[r]);
        for j in 0..m {
            if gamma.col0(j).is_none() {
                zero_mask |= 1 << j;
                w.set_col0(j, Some((free_rows.next().expect("as many free rows as zero columns"), 0)));
            }
        }
        // w = Δ(g)·M(σ); peel M(σ) into simple transpositions.
        let mut diag = RookMatrix::identity(m);
        let mut perm = w;
        for j in 0..m {
            let (r, label) = w.col0(j).expect("total");
            diag.set_col0(r, Some((r, label)));
            perm.set_col0(j, Some((r, 0)));
        }
        let mut letters = Vec::new();
        while let Some(j) = (0..m.saturating_sub(1)).find(|&j| perm.col0(j).unwrap().0 > perm.col0(j + 1).unwrap().0) {
            perm = perm.mul(&RookMatrix::s(j + 1, m).expect("index"), g);
            letters.push(j + 1);
        }
        letters.reverse();

        let mut state: BTreeMap<RookMatrix, Poly> = BTreeMap::new();
        state.insert(diag, f);
        for k in letters {
            let sk = RookMatrix::s(k, m).expect("index");
            let tp = self.t_prime(k);
            let mut next: BTreeMap<RookMatrix, Poly> = BTreeMap::new();
            for (delta, f) in state {
                let swapped = poly_swap(&f, k);
                let entry = next.entry(delta.mul(&sk, g)).or_default();
                for (mono, c) in swapped {
                    poly_add(entry, mono, c);
                }
                let d = poly_divdiff(&f, k);
                if d.is_empty() {
                    continue;
                }
                for (tau, sign) in &tp {
                    let entry = next.entry(delta.mul(tau, g)).or_default();
                    for (mono, &c) in &d {
                        poly_add(entry, mono.clone(), sign * c);
                    }
                }
            }
            state = next;
        }
        if zero_mask == 0 {
            return state;
        }
        let mut out: BTreeMap<RookMatrix, Poly> = BTreeMap::new();
        for (delta, f) in state {
            let entry = out.entry(delta.zero_columns(zero_mask)).or_default();
            for (mono, c) in f {
                if (0..m).all(|j| zero_mask & (1 << j) == 0 || mono[j] == 0) {
                    poly_add(entry, mono, c);
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.compatible(other)?;
        let g = &*self.group;
        let mut out = Self::zero(self.flavor, self.m, &self.group);
        for ((beta, a), ca) in &self.terms {
            let mut f = Poly::new();
            f.insert(a.clone(), 1);
            let pushed_by_gamma: Vec<_> = other.terms.iter().map(|((gamma, b), cb)| (self.push_past(f.clone(), gamma), b, cb)).collect();
            for (pushed, b, cb) in pushed_by_gamma {
                for (delta, poly) in pushed {
                    let left = beta.mul(&delta, g);
                    for (mono, c) in poly {
                        let total: Mono = mono.iter().zip(b).map(|(x, y)| x + y).collect();
                        out.add_term(left, total, S::from_i64(c) * ca.clone() * cb.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.flavor, self.m, &self.group);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    /// The epimorphism `H̄_m(G) → H_m(G)`: `u ↦ x`, `ε ↦ 0`.
    pub fn phi_bar(&self) -> Result<Self, HeckeError> {
        if self.flavor != HeckeFlavor::Semigroup {
            return Err(HeckeError::WrongFlavor("semigroup"));
        }
        let mut out = Self::zero(HeckeFlavor::Group, self.m, &self.group);
        for ((b, m), c) in &self.terms {
            if b.is_group_element() {
                out.add_term(*b, m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    fn evaluate(&self, amb: &Ambient, gens: &[AlgebraElement<S>]) -> Result<AlgebraElement<S>, HeckeError> {
        let mut powers: BTreeMap<(usize, u32), AlgebraElement<S>> = BTreeMap::new();
        let mut out = AlgebraElement::zero(amb);
        for ((b, mono), c) in &self.terms {
            let mut x = AlgebraElement::from_terms(amb, [(b.embed(amb.n)?, c.clone())])?;
            for (k, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((k, e)).or_insert_with(|| gens[k].pow(e));
                x = &x * p;
            }
            out = &out + &x;
        }
        Ok(out)
    }

    /// `Ψ: x_l ↦ ξ_l` into `𝔽G_n`, or `Ψ̄: u_k ↦ u_{k|n}` into `𝔽Ḡ_n`.
    pub fn psi(&self, n: usize) -> Result<AlgebraElement<S>, HeckeError> {
        if n < self.m {
            return Err(HeckeError::Index { index: self.m, bound: n });
        }
        match self.flavor {
            HeckeFlavor::Group => {
                let amb = Ambient::group_algebra(n, &self.group);
                let gens: Vec<_> = (1..=self.m).map(|k| xi::<S>(&amb, k)).collect::<Result<_, _>>()?;
                self.evaluate(&amb, &gens)
            }
            HeckeFlavor::Semigroup => {
                let amb = Ambient::semigroup(n, &self.group);
                let gens: Vec<_> = (1..=self.m).map(|k| u_elem::<S>(&amb, k)).collect::<Result<_, _>>()?;
                self.evaluate(&amb, &gens)
            }
        }
    }

    /// The alternative map `x_l ↦ Σ_{i>l} t_{li}` (no transpositions).
    pub fn psi_without_transpositions(&self, n: usize) -> Result<AlgebraElement<S>, HeckeError> {
        if self.flavor != HeckeFlavor::Group {
            return Err(HeckeError::WrongFlavor("group"));
        }
        let amb = Ambient::group_algebra(n, &self.group);
        let gens: Vec<_> = (1..=self.m).map(|k| xi_without_transpositions::<S>(&amb, k)).collect::<Result<_, _>>()?;
        self.evaluate(&amb, &gens)
    }

    /// All normal-form basis words with total degree at most `max_deg`.
    pub fn basis_words(flavor: HeckeFlavor, m: usize, group: &Arc<Group>, max_deg: u32) -> Vec<Self> {
        let parts: Vec<RookMatrix> = match flavor {
            HeckeFlavor::Group => crate::rook::enumerate_group(m, group, u128::MAX).expect("size").collect(),
            HeckeFlavor::Semigroup => crate::rook::enumerate_semigroup(m, group, u128::MAX).expect("size").collect(),
        };
        let monos = monomials(m, max_deg);
        let mut out = Vec::new();
        for b in parts {
            for mono in &monos {
                let mut x = Self::zero(flavor, m, group);
                x.add_term(b, mono.clone(), S::one());
                if !x.is_zero() {
                    out.push(x);
                }
            }
        }
        out
    }
}

/// Exponent vectors of length `m` with sum at most `max_deg`.
pub(crate) fn monomials(m: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, max_deg, &mut Vec::new(), &mut out);
    out
}

impl<S: Scalar> fmt::Display for HeckeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((b, mono), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", b.display(&self.group))?;
            for (k, &e) in mono.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " {}{}", self.flavor.var(), k + 1)?,
                    _ => write!(f, " {}{}^{e}", self.flavor.var(), k + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for HeckeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A parsed Hecke expression: sums of products of tokens
/// `g[a,b,..]`, `s1`, `x1^2`, `u3`, `e2`, `t[1,2]`, rook literals and rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeWord {
    text: String,
    flavor: HeckeFlavor,
    m: usize,
}

impl HeckeWord {
    pub fn new(text: &str, flavor: HeckeFlavor, m: usize) -> Self {
        HeckeWord { text: text.to_string(), flavor, m }
    }

    /// Evaluates the expression, which rewrites it into normal form.
    pub fn normal_form<S: Scalar>(&self, group: &Arc<Group>) -> Result<HeckeElement<S>, HeckeError> {
        let mut p = Parser { cur: Cursor::new(&self.text), flavor: self.flavor, m: self.m, group };
        let x = p.expr()?;
        p.cur.skip_ws();
        if !p.cur.at_end() {
            return Err(p.err("unexpected input"));
        }
        Ok(x)
    }
}

struct Parser<'a> {
    cur: Cursor<'a>,
    flavor: HeckeFlavor,
    m: usize,
    group: &'a Arc<Group>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> HeckeError {
        HeckeError::Parse(format!("at byte {}: {msg}", self.cur.pos()))
    }

    fn one<S: Scalar>(&self) -> HeckeElement<S> {
        HeckeElement::one(self.flavor, self.m, self.group)
    }

    fn expr<S: Scalar>(&mut self) -> Result<HeckeElement<S>, HeckeError> {
        self.cur.skip_ws();
        let mut neg = self.cur.eat('-');
        let mut acc = HeckeElement::zero(self.flavor, self.m, self.group);
        loop {
            let t: HeckeElement<S> = self.term()?;
            acc = if neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            self.cur.skip_ws();
            if self.cur.eat('+') {
                neg = false;
            } else if self.cur.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<HeckeElement<S>, HeckeError> {
        let mut acc = self.factor()?;
        loop {
            self.cur.skip_ws();
            let explicit = self.cur.eat('*');
            self.cur.skip_ws();
            match self.cur.peek() {
                Some(c) if explicit || is_factor_start(c) => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn index(&mut self) -> Result<usize, HeckeError> {
        self.cur.number().ok_or_else(|| self.err("expected an index"))
    }

    fn power<S: Scalar>(&mut self, x: HeckeElement<S>) -> Result<HeckeElement<S>, HeckeError> {
        if self.cur.eat('^') {
            let e = self.index()?;
            return Ok(x.pow(e as u32));
        }
        Ok(x)
    }

    fn factor<S: Scalar>(&mut self) -> Result<HeckeElement<S>, HeckeError> {
        self.cur.skip_ws();
        let c = self.cur.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        let m = self.m;
        let flavor = self.flavor;
        let group = self.group;
        match c {
            '-' => {
                self.cur.eat('-');
                let x: HeckeElement<S> = self.factor()?;
                Ok(x.scale(&-S::one()))
            }
            '(' => {
                self.cur.eat('(');
                let x = self.expr()?;
                self.cur.skip_ws();
                if !self.cur.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                self.power(x)
            }
            '{' => {
                let b = parse_rook_literal(&mut self.cur, m, group).map_err(|e| HeckeError::Parse(e.to_string()))?;
                HeckeElement::group_part(flavor, group, b)
            }
            '0'..='9' => {
                let text = self.cur.take_while(|c| c.is_ascii_digit() || c == '/');
                let s = S::parse(text).ok_or_else(|| self.err("bad number"))?;
                Ok(self.one().scale(&s))
            }
            'g' => {
                self.cur.eat('g');
                if !self.cur.eat('[') {
                    return Err(self.err("expected `[` after g"));
                }
                let inner = self.cur.take_while(|c| c != ']');
                if !self.cur.eat(']') {
                    return Err(self.err("expected `]`"));
                }
                let labels: Vec<usize> = inner
                    .split(',')
                    .map(|s| group.element_by_name(s.trim()))
                    .collect::<Option<_>>()
                    .ok_or_else(|| self.err("unknown group element"))?;
                if labels.len() != m {
                    return Err(self.err("g[...] needs one label per slot"));
                }
                HeckeElement::group_part(flavor, group, RookMatrix::diagonal(&labels))
            }
            's' => {
                self.cur.eat('s');
                let k = self.index()?;
                HeckeElement::s(flavor, m, group, k)
            }
            'e' => {
                self.cur.eat('e');
                let k = self.index()?;
                if flavor != HeckeFlavor::Semigroup {
                    return Err(self.err("e<k> exists only in the semigroup Hecke algebra"));
                }
                HeckeElement::eps(m, group, k)
            }
            'x' | 'u' => {
                self.cur.eat(c);
                if c != flavor.var() {
                    return Err(self.err("generator does not belong to this Hecke algebra"));
                }
                let k = self.index()?;
                let x = HeckeElement::generator(flavor, m, group, k)?;
                self.power(x)
            }
            't' => {
                self.cur.eat('t');
                if !self.cur.eat('[') {
                    return Err(self.err("expected `[` after t"));
                }
                let k = self.index()?;
                self.cur.skip_ws();
                if !self.cur.eat(',') {
                    return Err(self.err("expected `,`"));
                }
                self.cur.skip_ws();
                let l = self.index()?;
                if !self.cur.eat(']') {
                    return Err(self.err("expected `]`"));
                }
                HeckeElement::t(flavor, m, group, k, l)
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

fn is_factor_start(c: char) -> bool {
    matches!(c, '(' | '{' | '0'..='9' | 'g' | 's' | 'e' | 'x' | 'u' | 't')
}
