//! Text cursor and the element expression language.

/// Byte cursor over an input string.
pub struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let len = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    pub fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        match digits.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }
}

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraElement, Ambient, BasisKind, Scalar};
use crate::classdata::{c_omega_rho, class_sum, delta_omega_rho, delta_rho, eps_bar, eps_prod, OmegaEntry, OmegaMatrix, TypeFunction};
use crate::groups::Group;
use crate::hecke::{t_elem, u_elem, xi};
use crate::rook::{parse_rook_literal, RookMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at byte {pos}: {message}")]
pub struct ExprError {
    pub pos: usize,
    pub message: String,
}

/// Evaluates an element expression in `𝔽Ḡ_n` or `𝔽G_n`.
///
/// Sums and products (`+`, `-`, `*` or juxtaposition, `^k`, parentheses)
/// of rationals and the atoms `s1`, `e1`, `g[a,b,..]`, `{1->(2,a), ..}`,
/// `t[k,l]`, `xi[k]`, `u[k]`, `C[rho]`, `D[rho]`, `C[omega|rho]`,
/// `D[omega|rho]`, `E[1,2]` and `Ebar[1,2]`. Types are written `(1);(2)`,
/// Ω-matrices `{1->(1,a,z^1)}/m`.
pub fn evaluate<S: Scalar>(text: &str, ambient: &Ambient) -> Result<AlgebraElement<S>, ExprError> {
    let mut p = ExprParser { cur: Cursor::new(text), amb: ambient };
    let x = p.expr()?;
    p.cur.skip_ws();
    if !p.cur.at_end() {
        return Err(p.err("unexpected input"));
    }
    Ok(x)
}

struct ExprParser<'a> {
    cur: Cursor<'a>,
    amb: &'a Ambient,
}

impl ExprParser<'_> {
    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError { pos: self.cur.pos(), message: message.into() }
    }

    fn wrap<T, E: std::fmt::Display>(&self, r: Result<T, E>) -> Result<T, ExprError> {
        r.map_err(|e| self.err(e.to_string()))
    }

    fn group(&self) -> &Arc<Group> {
        &self.amb.group
    }

    fn semigroup_only(&self, what: &str) -> Result<(), ExprError> {
        if self.amb.kind != BasisKind::Semigroup {
            return Err(self.err(format!("{what} lives in the semigroup algebra")));
        }
        Ok(())
    }

    /// Brings an element computed in either ambient into ours.
    fn adopt<S: Scalar>(&self, x: AlgebraElement<S>) -> Result<AlgebraElement<S>, ExprError> {
        match (self.amb.kind, x.ambient().kind) {
            (BasisKind::Semigroup, BasisKind::Group) => Ok(x.to_semigroup()),
            (BasisKind::Group, BasisKind::Semigroup) => self.wrap(x.to_group()),
            _ => Ok(x),
        }
    }

    fn label<S: Scalar>(&self, x: RookMatrix) -> Result<AlgebraElement<S>, ExprError> {
        self.wrap(AlgebraElement::basis(self.amb, x))
    }

    fn expr<S: Scalar>(&mut self) -> Result<AlgebraElement<S>, ExprError> {
        self.cur.skip_ws();
        let mut neg = self.cur.eat('-');
        let mut acc = AlgebraElement::zero(self.amb);
        loop {
            let t: AlgebraElement<S> = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
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

    fn term<S: Scalar>(&mut self) -> Result<AlgebraElement<S>, ExprError> {
        let mut acc = self.power()?;
        loop {
            self.cur.skip_ws();
            let explicit = self.cur.eat('*');
            self.cur.skip_ws();
            match self.cur.peek() {
                Some(c) if explicit || starts_atom(c) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<S: Scalar>(&mut self) -> Result<AlgebraElement<S>, ExprError> {
        let x = self.atom()?;
        if self.cur.eat('^') {
            let e = self.cur.number().ok_or_else(|| self.err("expected an exponent"))?;
            return Ok(x.pow(e as u32));
        }
        Ok(x)
    }

    fn index(&mut self) -> Result<usize, ExprError> {
        self.cur.skip_ws();
        let v = self.cur.number().ok_or_else(|| self.err("expected an index"))?;
        self.cur.skip_ws();
        Ok(v)
    }

    fn bracket(&mut self) -> Result<&str, ExprError> {
        if !self.cur.eat('[') {
            return Err(self.err("expected `[`"));
        }
        // Brackets never nest in the grammar.
        let inner = self.cur.take_while(|c| c != ']');
        if !self.cur.eat(']') {
            return Err(self.err("expected `]`"));
        }
        Ok(inner)
    }

    fn index_list(&mut self) -> Result<Vec<usize>, ExprError> {
        let inner = self.bracket()?.to_string();
        inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| self.err(format!("bad index `{s}`"))))
            .collect()
    }

    fn type_fn(&self, text: &str) -> Result<TypeFunction, ExprError> {
        self.wrap(TypeFunction::parse(text, self.group().num_classes()))
    }

    fn omega(&self, text: &str) -> Result<OmegaMatrix, ExprError> {
        parse_omega(text, self.group()).map_err(|m| self.err(m))
    }

    fn atom<S: Scalar>(&mut self) -> Result<AlgebraElement<S>, ExprError> {
        self.cur.skip_ws();
        let n = self.amb.n;
        let c = self.cur.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        match c {
            '-' => {
                self.cur.eat('-');
                let x: AlgebraElement<S> = self.power()?;
                Ok(x.scale(&-S::one()))
            }
            '(' => {
                self.cur.eat('(');
                let x = self.expr()?;
                self.cur.skip_ws();
                if !self.cur.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(x)
            }
            '{' => {
                let g = self.group().clone();
                let r = parse_rook_literal(&mut self.cur, n, &g);
                let x = self.wrap(r)?;
                self.label(x)
            }
            '0'..='9' => {
                let text = self.cur.take_while(|c| c.is_ascii_digit() || c == '/');
                let s = S::parse(text).ok_or_else(|| self.err(format!("bad number `{text}`")))?;
                Ok(AlgebraElement::one(self.amb).scale(&s))
            }
            _ => {
                let start = self.cur.pos();
                let word = self.cur.take_while(|c| c.is_ascii_alphabetic());
                match word {
                    "s" => {
                        let k = self.index()?;
                        let x = self.wrap(RookMatrix::s(k, n))?;
                        self.label(x)
                    }
                    "e" => {
                        let k = self.index()?;
                        self.semigroup_only("e<k>")?;
                        let x = self.wrap(RookMatrix::epsilon(k, n))?;
                        self.label(x)
                    }
                    "g" => {
                        let inner = self.bracket()?.to_string();
                        let g = self.group().clone();
                        let labels: Vec<usize> = inner
                            .split(',')
                            .map(|s| g.element_by_name(s.trim()).ok_or_else(|| self.err(format!("unknown group element `{}`", s.trim()))))
                            .collect::<Result<_, _>>()?;
                        if labels.len() != n {
                            return Err(self.err(format!("g[...] needs {n} labels")));
                        }
                        self.label(RookMatrix::diagonal(&labels))
                    }
                    "t" => {
                        let idx = self.index_list()?;
                        let [k, l] = idx[..] else { return Err(self.err("t[k,l] needs two indices")) };
                        let x = self.wrap(t_elem::<S>(&self.amb.with_kind(BasisKind::Group), k, l))?;
                        self.adopt(x)
                    }
                    "xi" => {
                        let idx = self.index_list()?;
                        let [k] = idx[..] else { return Err(self.err("xi[k] needs one index")) };
                        let x = self.wrap(xi::<S>(&self.amb.with_kind(BasisKind::Group), k))?;
                        self.adopt(x)
                    }
                    "u" => {
                        let idx = self.index_list()?;
                        let [k] = idx[..] else { return Err(self.err("u[k] needs one index")) };
                        self.semigroup_only("u[k]")?;
                        self.wrap(u_elem::<S>(self.amb, k))
                    }
                    "E" | "Ebar" => {
                        let t = self.index_list()?;
                        self.semigroup_only(word)?;
                        let g = self.group().clone();
                        if word == "E" {
                            self.wrap(eps_prod::<S>(&g, n, &t))
                        } else {
                            self.wrap(eps_bar::<S>(&g, n, &t))
                        }
                    }
                    "C" | "D" => {
                        let inner = self.bracket()?.to_string();
                        let g = self.group().clone();
                        let (omega, rho) = match inner.split_once('|') {
                            Some((o, r)) => (Some(self.omega(o)?), self.type_fn(r)?),
                            None => (None, self.type_fn(&inner)?),
                        };
                        if word == "D" || omega.is_some() {
                            self.semigroup_only(&format!("{word}[...]"))?;
                        }
                        let x = match (word, omega) {
                            ("C", None) => self.wrap(class_sum::<S>(&g, n, &rho, None))?,
                            ("D", None) => self.wrap(delta_rho::<S>(&g, n, &rho))?,
                            ("C", Some(o)) => self.wrap(c_omega_rho::<S>(&g, n, &o, &rho))?,
                            (_, Some(o)) => self.wrap(delta_omega_rho::<S>(&g, n, &o, &rho))?,
                            _ => unreachable!(),
                        };
                        self.adopt(x)
                    }
                    "" => Err(self.err(format!("unexpected character `{c}`"))),
                    other => Err(ExprError { pos: start, message: format!("unknown atom `{other}`") }),
                }
            }
        }
    }
}

fn starts_atom(c: char) -> bool {
    c == '(' || c == '{' || c.is_ascii_alphanumeric()
}

/// Parses `{1->(1,a,z^1), 2->(2,1,z^0)}/m`; listed columns are nonzero.
pub fn parse_omega(text: &str, group: &Group) -> Result<OmegaMatrix, String> {
    let text = text.trim();
    let (body, m) = text.rsplit_once('/').ok_or("an Ω-matrix needs its size, as in `{...}/m`")?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad size `{m}`"))?;
    let inner = body
        .trim()
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or("an Ω-matrix is written in braces")?;
    let mut cols = vec![None; m];
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let (col, after) = rest.split_once("->").ok_or("expected `->`")?;
        let col: usize = col.trim().parse().map_err(|_| format!("bad column `{col}`"))?;
        let after = after.trim_start().strip_prefix('(').ok_or("expected `(`")?;
        let (entry, tail) = after.split_once(')').ok_or("expected `)`")?;
        let fields: Vec<&str> = entry.split(',').map(str::trim).collect();
        let [row, label, z] = fields[..] else { return Err(format!("entry `{entry}` needs (row,label,z^k)")) };
        let row: usize = row.parse().map_err(|_| format!("bad row `{row}`"))?;
        let label = group.element_by_name(label).ok_or_else(|| format!("unknown group element `{label}`"))?;
        let exp: usize = match z.strip_prefix("z^") {
            Some(e) => e.parse().map_err(|_| format!("bad exponent `{z}`"))?,
            None if z == "z" => 1,
            None if z == "1" => 0,
            None => return Err(format!("bad exponent `{z}`")),
        };
        if col == 0 || col > m || cols[col - 1].is_some() {
            return Err(format!("column {col} out of range or repeated"));
        }
        cols[col - 1] = Some(OmegaEntry { row, label, exp });
        rest = tail.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    OmegaMatrix::new(cols, group).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type Q = Rational;

    fn ev(text: &str, n: usize, g: Group) -> Result<AlgebraElement<Q>, ExprError> {
        evaluate(text, &Ambient::semigroup(n, &Arc::new(g)))
    }

    #[test]
    fn documented_expressions() {
        assert!(ev("xi[3]", 3, Group::cyclic(2).unwrap()).unwrap().is_zero());
        assert!(ev("e1*e1 - e1", 2, Group::trivial()).unwrap().is_zero());
        let c = ev("C[(1);(2)]", 3, Group::cyclic(2).unwrap()).unwrap();
        assert_eq!(c.len(), 6);
        assert!(ev("s1 s1 - 1", 3, Group::trivial()).unwrap().is_zero());
        assert!(ev("(1 - e1)^2 - Ebar[1]", 2, Group::trivial()).unwrap().is_zero());
        assert!(ev("D[{1->(1,1,z^0)}/1|] - 1", 1, Group::cyclic(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn printed_elements_reparse() {
        let g = Arc::new(Group::cyclic(3).unwrap());
        let amb = Ambient::semigroup(3, &g);
        let x: AlgebraElement<Q> = evaluate("1/2 u[1] - 3 D[(1);();()] + g[a,1,a^2] e2", &amb).unwrap();
        assert_eq!(evaluate::<Q>(&x.to_string(), &amb).unwrap(), x);
    }

    #[test]
    fn errors_carry_positions() {
        let g = Group::cyclic(2).unwrap();
        let e = ev("s1 + q2", 2, g.clone()).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(ev("s1 +", 2, g.clone()).is_err());
        assert!(evaluate::<Q>("e1", &Ambient::group_algebra(2, &Arc::new(g.clone()))).is_err());
        assert!(ev("t[2,1]", 2, g).is_err());
    }

    #[test]
    fn omega_literals() {
        let g = Group::cyclic(2).unwrap();
        let o = parse_omega("{1->(2,-1,z^1), 2->(1,1,z^0)}/2", &g).unwrap();
        assert_eq!(o.ord(), 1);
        assert_eq!(parse_omega(&o.display(&g).to_string(), &g).unwrap(), o);
        assert!(parse_omega("{1->(1,1,z^0)}", &g).is_err());
        assert!(parse_omega("{1->(3,1,z^0)}/2", &g).is_err());
    }
}
