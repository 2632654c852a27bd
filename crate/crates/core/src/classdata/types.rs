//! Partition-valued functions on conjugacy classes and the type of a wreath element.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::partition::{partitions, union};
use crate::groups::Group;
use crate::rook::{RookError, RookMatrix, MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("expected {expected} partitions (one per class), found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("malformed partition `{0}`")]
    Malformed(String),
    #[error("class index {class} out of range for {classes} classes")]
    ClassOutOfRange { class: usize, classes: usize },
    #[error(transparent)]
    Rook(#[from] RookError),
}

/// One partition per conjugacy class, in the group's class order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TypeFunction {
    parts: Vec<Vec<usize>>,
}

impl TypeFunction {
    /// The empty function on `classes` classes.
    pub fn empty(classes: usize) -> Self {
        TypeFunction { parts: vec![Vec::new(); classes] }
    }

    /// Builds from per-class part lists; parts are sorted and zeros dropped.
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        for p in parts.iter_mut() {
            p.retain(|&x| x > 0);
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        TypeFunction { parts }
    }

    /// The atom with the single part `k` on class `class`.
    pub fn atom(classes: usize, class: usize, k: usize) -> Result<Self, TypeError> {
        if class >= classes {
            return Err(TypeError::ClassOutOfRange { class, classes });
        }
        let mut t = TypeFunction::empty(classes);
        t.parts[class].push(k);
        Ok(t)
    }

    pub fn num_classes(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, class: usize) -> &[usize] {
        &self.parts[class]
    }

    /// `‖ρ‖ = Σ |ρ(C)|`.
    pub fn norm(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(Vec::is_empty)
    }

    /// Classwise union of parts.
    pub fn union(&self, other: &TypeFunction) -> TypeFunction {
        assert_eq!(self.parts.len(), other.parts.len());
        TypeFunction { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| union(a, b)).collect() }
    }

    /// Whether the identity class has a part equal to 1.
    pub fn has_unit_fixed_part(&self) -> bool {
        self.parts[0].contains(&1)
    }

    /// `Σ_{μ ∈ ρ(C_1), μ ≥ 2} μ + Σ_{k ≥ 2} |ρ(C_k)|`: the degree of its class sum.
    pub fn class_sum_degree(&self) -> usize {
        let first: usize = self.parts[0].iter().filter(|&&p| p >= 2).sum();
        first + self.parts[1..].iter().flatten().sum::<usize>()
    }

    /// `(length, class)` for each cycle slot, class by class.
    pub fn slots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, p) in self.parts.iter().enumerate() {
            for &mu in p {
                out.push((mu, c));
            }
        }
        out
    }

    /// Parses `(1);(2)` or `(2,1);()`; missing trailing classes are empty.
    pub fn parse(text: &str, classes: usize) -> Result<Self, TypeError> {
        let text = text.trim();
        let pieces: Vec<&str> = if text.is_empty() || text == "∅" { Vec::new() } else { text.split(';').collect() };
        if pieces.len() > classes {
            return Err(TypeError::WrongLength { expected: classes, found: pieces.len() });
        }
        let mut parts = vec![Vec::new(); classes];
        for (c, piece) in pieces.iter().enumerate() {
            let piece = piece.trim();
            if piece.is_empty() || piece == "∅" {
                continue;
            }
            let inner = piece
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| TypeError::Malformed(piece.to_string()))?;
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (base, mult) = match tok.split_once('^') {
                    Some((b, e)) => (b, e.parse::<usize>().map_err(|_| TypeError::Malformed(piece.to_string()))?),
                    None => (tok, 1),
                };
                let v: usize = base.parse().map_err(|_| TypeError::Malformed(piece.to_string()))?;
                if v == 0 {
                    return Err(TypeError::Malformed(piece.to_string()));
                }
                parts[c].extend(std::iter::repeat_n(v, mult));
            }
        }
        Ok(TypeFunction::new(parts))
    }

    /// Sort key: norm first, then the part lists class by class.
    pub fn sort_key(&self) -> (usize, &[Vec<usize>]) {
        (self.norm(), &self.parts)
    }
}

impl PartialOrd for TypeFunction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeFunction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for TypeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TypeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ[{self}]")
    }
}

/// Cycle decomposition of a total matrix: for each cycle, its length and
/// the class of its cycle product.
pub fn cycle_data(x: &RookMatrix, group: &Group) -> Result<Vec<(usize, usize)>, RookError> {
    if !x.is_group_element() {
        return Err(RookError::NotTotal);
    }
    Ok(cycles_on(x, group, &(0..x.n()).collect::<Vec<_>>()))
}

/// Cycles of `x` restricted to the given 0-based columns, which must be
/// closed under the column-to-row map.
pub(crate) fn cycles_on(x: &RookMatrix, group: &Group, cols: &[usize]) -> Vec<(usize, usize)> {
    let mut seen = [false; MAX_N];
    let mut out = Vec::new();
    for &start in cols {
        if seen[start] {
            continue;
        }
        let mut acc = 0usize;
        let mut len = 0;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            let (row, label) = x.col0(c).expect("column in a closed set is nonzero");
            acc = group.mul(label, acc);
            len += 1;
            c = row;
        }
        debug_assert_eq!(c, start);
        out.push((len, group.class_index(acc)));
    }
    out
}

/// The type of a wreath element given as a total rook matrix.
pub fn type_of(x: &RookMatrix, group: &Group) -> Result<TypeFunction, RookError> {
    let data = cycle_data(x, group)?;
    Ok(type_from_cycles(&data, group.num_classes()))
}

pub(crate) fn type_from_cycles(data: &[(usize, usize)], classes: usize) -> TypeFunction {
    let mut parts = vec![Vec::new(); classes];
    for &(len, c) in data {
        parts[c].push(len);
    }
    TypeFunction::new(parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Exact,
    AtMost,
}

/// All types of norm `bound` (exact) or at most `bound`, sorted by norm and
/// then classwise part lists.
pub fn enumerate_types(group: &Group, bound: usize, mode: BoundMode) -> Vec<TypeFunction> {
    let r = group.num_classes();
    let lo = match mode {
        BoundMode::Exact => bound,
        BoundMode::AtMost => 0,
    };
    let mut out = Vec::new();
    for norm in lo..=bound {
        let mut cur: Vec<Vec<usize>> = Vec::new();
        compositions(r, norm, &mut cur, &mut out);
    }
    out.sort();
    out
}

fn compositions(r: usize, rest: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<TypeFunction>) {
    if cur.len() == r {
        if rest == 0 {
            out.push(TypeFunction { parts: cur.clone() });
        }
        return;
    }
    let upto = if cur.len() + 1 == r { rest..=rest } else { 0..=rest };
    for k in upto {
        for p in partitions(k) {
            cur.push(p);
            compositions(r, rest - k, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rook::{enumerate_group, from_wreath, WreathElement};
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn type_examples() {
        let g = Group::cyclic(2).unwrap();
        let id = RookMatrix::identity(3);
        assert_eq!(type_of(&id, &g).unwrap(), TypeFunction::new(vec![vec![1, 1, 1], vec![]]));
        let x = from_wreath(&WreathElement::new(vec![0, 0, 1], vec![1, 3, 2]).unwrap());
        let t = type_of(&x, &g).unwrap();
        assert_eq!(t, TypeFunction::new(vec![vec![1], vec![2]]));
        assert_eq!(t.to_string(), "(1);(2)");
        assert_eq!(TypeFunction::parse("(1);(2)", 2).unwrap(), t);
        assert_eq!(TypeFunction::parse("(1^2)", 2).unwrap(), TypeFunction::new(vec![vec![1, 1], vec![]]));
        assert_eq!(TypeFunction::parse("", 2).unwrap(), TypeFunction::empty(2));
        assert!(TypeFunction::parse("(1);(2);(3)", 2).is_err());
        assert!(TypeFunction::parse("(a)", 2).is_err());
        assert!(type_of(&RookMatrix::epsilon(1, 2).unwrap(), &g).is_err());
    }

    #[test]
    fn type_enumeration_counts() {
        let c2 = Group::cyclic(2).unwrap();
        assert_eq!(enumerate_types(&c2, 0, BoundMode::Exact), vec![TypeFunction::empty(2)]);
        let two = enumerate_types(&c2, 2, BoundMode::Exact);
        assert_eq!(two.len(), 5);
        let expect: BTreeSet<String> =
            ["(2);()", "(1,1);()", "(1);(1)", "();(2)", "();(1,1)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(two.iter().map(|t| t.to_string()).collect::<BTreeSet<_>>(), expect);
        let counts: Vec<usize> = (0..=4).map(|k| enumerate_types(&c2, k, BoundMode::AtMost).len()).collect();
        assert_eq!(counts, vec![1, 3, 8, 18, 38]);
        let s3 = Group::symmetric(3).unwrap();
        let counts: Vec<usize> = (0..=2).map(|k| enumerate_types(&s3, k, BoundMode::Exact).len()).collect();
        assert_eq!(counts, vec![1, 3, 9]);
        let sorted = enumerate_types(&s3, 3, BoundMode::AtMost);
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }

    /// Brute-force conjugacy classes of `G_n` by closing orbits under conjugation.
    fn conjugacy_orbits(n: usize, g: &Group) -> Vec<BTreeSet<RookMatrix>> {
        let all: Vec<RookMatrix> = enumerate_group(n, g, 1 << 20).unwrap().collect();
        let mut assigned: BTreeSet<RookMatrix> = BTreeSet::new();
        let mut orbits = Vec::new();
        for x in &all {
            if assigned.contains(x) {
                continue;
            }
            let orbit: BTreeSet<RookMatrix> =
                all.iter().map(|b| b.mul(x, g).mul(&b.inverse(g).unwrap(), g)).collect();
            assigned.extend(orbit.iter().copied());
            orbits.push(orbit);
        }
        orbits
    }

    #[test]
    fn type_is_a_complete_conjugacy_invariant() {
        for (g, max_n) in [(Group::cyclic(2).unwrap(), 3), (Group::symmetric(3).unwrap(), 3), (Group::dihedral(4).unwrap(), 2)] {
            for n in 1..=max_n {
                let orbits = conjugacy_orbits(n, &g);
                let mut by_type: BTreeMap<TypeFunction, usize> = BTreeMap::new();
                for (i, orbit) in orbits.iter().enumerate() {
                    let types: BTreeSet<TypeFunction> = orbit.iter().map(|x| type_of(x, &g).unwrap()).collect();
                    assert_eq!(types.len(), 1, "type not constant on orbit");
                    let t = types.into_iter().next().unwrap();
                    assert!(by_type.insert(t, i).is_none(), "two orbits share a type");
                }
                assert_eq!(orbits.len(), enumerate_types(&g, n, BoundMode::Exact).len());
            }
        }
    }

    #[test]
    fn class_sum_degree_formula_examples() {
        let t = TypeFunction::new(vec![vec![2, 1], vec![3]]);
        assert_eq!(t.class_sum_degree(), 5);
        assert!(t.has_unit_fixed_part());
        assert_eq!(t.union(&TypeFunction::atom(2, 0, 1).unwrap()), TypeFunction::new(vec![vec![2, 1, 1], vec![3]]));
    }
}
