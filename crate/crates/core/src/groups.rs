//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`, with `0` the identity. Conjugacy classes
//! are ordered with the identity class first and the rest by their minimal
//! element index; every partition-valued function downstream is indexed by
//! this ordering.

use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Largest group order accepted; labels are stored in a byte.
pub const MAX_ORDER: usize = 255;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed Cayley table at line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("group order {0} outside supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("index 0 is not a two-sided identity: 0*{0} or {0}*0 differs from {0}")]
    MissingIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("unknown group descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// Index of a conjugacy class in the canonical class ordering.
pub type ConjClassIndex = usize;

/// A finite group backed by its full multiplication table.
#[derive(Clone)]
pub struct Group {
    label: String,
    order: usize,
    table: Vec<u8>,
    inverses: Vec<u8>,
    names: Vec<String>,
    generators: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("classes", &self.classes)
            .finish()
    }
}

impl Group {
    /// Validates a Cayley table and builds the group.
    ///
    /// `rows[a][b]` is the index of `a*b`. Index `0` must be the identity.
    pub fn from_table(
        label: impl Into<String>,
        rows: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(order));
        }
        let mut table = vec![0u8; order * order];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::Malformed {
                    line: a + 2,
                    message: format!("expected {order} entries, found {}", row.len()),
                });
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return Err(GroupError::IndexOutOfRange { index: c, order });
                }
                table[a * order + b] = c as u8;
            }
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::MissingIdentity(a));
            }
        }
        let mut inverses = vec![0u8; order];
        for a in 0..order {
            let inv = (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0);
            match inv {
                Some(b) => inverses[a] = b as u8,
                None => return Err(GroupError::MissingInverse(a)),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let names = match names {
            Some(names) => {
                if names.len() != order {
                    return Err(GroupError::Malformed {
                        line: order + 2,
                        message: format!("expected {order} names, found {}", names.len()),
                    });
                }
                names
            }
            None => (0..order).map(|i| format!("#{i}")).collect(),
        };
        let mut group = Group {
            label: label.into(),
            order,
            table,
            inverses,
            names,
            generators: Vec::new(),
            classes: Vec::new(),
            class_of: vec![0; order],
        };
        group.generators = group.greedy_generators();
        group.compute_classes();
        Ok(group)
    }

    fn with_generators(mut self, generators: Vec<usize>) -> Self {
        debug_assert_eq!(self.closure(&generators).len(), self.order);
        self.generators = generators;
        self
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Group::from_table("trivial", &[vec![0]], Some(vec!["1".into()])).expect("trivial group")
    }

    /// The cyclic group of order `r`. For `r = 2` the elements are named `1, -1`.
    pub fn cyclic(r: usize) -> Result<Self, GroupError> {
        if r == 0 || r > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(r));
        }
        let rows: Vec<Vec<usize>> = (0..r).map(|a| (0..r).map(|b| (a + b) % r).collect()).collect();
        let names = if r == 2 {
            vec!["1".to_string(), "-1".to_string()]
        } else {
            (0..r)
                .map(|i| match i {
                    0 => "1".to_string(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                })
                .collect()
        };
        let gens = if r == 1 { vec![0] } else { vec![1] };
        Ok(Group::from_table(format!("c{r}"), &rows, Some(names))?.with_generators(gens))
    }

    /// The symmetric group on `k` letters; elements are permutations in
    /// lexicographic order of their one-line notation, composed right to left.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > 5 {
            return Err(GroupError::UnknownDescriptor(format!("symmetric({k})")));
        }
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..k).map(|x| a[b[x]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
            .collect();
        let mut gens = Vec::new();
        if k >= 2 {
            let mut transposition: Vec<usize> = (0..k).collect();
            transposition.swap(0, 1);
            gens.push(index(&transposition));
            if k >= 3 {
                let cycle: Vec<usize> = (0..k).map(|x| (x + 1) % k).collect();
                gens.push(index(&cycle));
            }
        } else {
            gens.push(0);
        }
        Ok(Group::from_table(format!("s{k}"), &rows, Some(names))?.with_generators(gens))
    }

    /// The dihedral group of order `2k`; index `i + k*j` is `r^i s^j`.
    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k < 2 || 2 * k > MAX_ORDER {
            return Err(GroupError::UnknownDescriptor(format!("dihedral({k})")));
        }
        let decode = |x: usize| (x % k, x / k);
        let rows: Vec<Vec<usize>> = (0..2 * k)
            .map(|x| {
                (0..2 * k)
                    .map(|y| {
                        let (a, b) = decode(x);
                        let (c, d) = decode(y);
                        let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
                        rot + k * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        let names = (0..2 * k)
            .map(|x| {
                let (a, b) = decode(x);
                let r = match a {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{a}"),
                };
                match (r.is_empty(), b) {
                    (true, 0) => "1".to_string(),
                    (false, 0) => r,
                    (_, _) => format!("{r}s"),
                }
            })
            .collect();
        Ok(Group::from_table(format!("d{k}"), &rows, Some(names))?.with_generators(vec![1, k]))
    }

    /// Parses a Cayley-table file body.
    ///
    /// Line 1 holds the order `r`, the next `r` lines the table rows, and an
    /// optional final line holds `r` display names.
    pub fn parse_cayley(label: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(GroupError::Malformed {
            line: 1,
            message: "empty file".into(),
        })?;
        let order: usize = first.trim().parse().map_err(|_| GroupError::Malformed {
            line: 1,
            message: format!("expected group order, found `{}`", first.trim()),
        })?;
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(order));
        }
        let mut rows = Vec::with_capacity(order);
        for a in 0..order {
            let (lineno, line) = lines.next().ok_or(GroupError::Malformed {
                line: a + 2,
                message: "missing table row".into(),
            })?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| GroupError::Malformed {
                        line: lineno + 1,
                        message: format!("expected an element index, found `{tok}`"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let names = lines.next().map(|(_, line)| line.split_whitespace().map(str::to_string).collect());
        if let Some((lineno, _)) = lines.next() {
            return Err(GroupError::Malformed {
                line: lineno + 1,
                message: "unexpected trailing content".into(),
            });
        }
        Group::from_table(label, &rows, names)
    }

    /// Serializes to the Cayley-table file format (always with a names line).
    pub fn to_cayley_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&self.names.join(" "));
        out.push('\n');
        out
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by display name, or by `#index`.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        let idx: usize = name.strip_prefix('#')?.parse().ok()?;
        (idx < self.order).then_some(idx)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, identity class first, then by minimal element.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> Result<ConjClassIndex, GroupError> {
        self.class_of
            .get(g)
            .copied()
            .ok_or(GroupError::IndexOutOfRange { index: g, order: self.order })
    }

    #[inline]
    pub(crate) fn class_index(&self, g: usize) -> ConjClassIndex {
        self.class_of[g]
    }

    /// Subgroup generated by `gens` (always contains the identity).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for x in 1..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        if gens.is_empty() {
            gens.push(0);
        }
        gens
    }

    fn compute_classes(&mut self) {
        let mut assigned = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned[x] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut class: Vec<usize> = (0..self.order).map(|a| self.conjugate(a, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = idx;
            }
            classes.push(class);
        }
        self.classes = classes;
        self.class_of = assigned;
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Resolves a group descriptor: `trivial`, `c<r>`/`cyclic(r)`,
/// `s<k>`/`symmetric(k)`, `d<k>`/`dihedral(k)`, or a Cayley-table file path.
pub fn load_group(spec: &str) -> Result<Group, GroupError> {
    let s = spec.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "trivial" || lower == "1" {
        return Ok(Group::trivial());
    }
    let arg = |prefixes: &[&str]| -> Option<usize> {
        for p in prefixes {
            if let Some(rest) = lower.strip_prefix(p) {
                let rest = rest.trim_start_matches('(').trim_end_matches(')');
                if let Ok(v) = rest.parse() {
                    return Some(v);
                }
            }
        }
        None
    };
    if let Some(r) = arg(&["cyclic", "c"]) {
        return Group::cyclic(r);
    }
    if let Some(k) = arg(&["symmetric", "s"]) {
        return Group::symmetric(k);
    }
    if let Some(k) = arg(&["dihedral", "d"]) {
        return Group::dihedral(k);
    }
    let path = Path::new(s);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: s.to_string(),
            message: e.to_string(),
        })?;
        let label = path.file_stem().and_then(|x| x.to_str()).unwrap_or(s).to_string();
        return Group::parse_cayley(label, &text);
    }
    Err(GroupError::UnknownDescriptor(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_classes(g: &Group) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..g.order() {
            if classes.iter().any(|c| c.contains(&x)) {
                continue;
            }
            let mut orbit = Vec::new();
            for a in 0..g.order() {
                let y = g.mul(g.mul(a, x), g.inv(a));
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            orbit.sort();
            classes.push(orbit);
        }
        classes
    }

    #[test]
    fn builtin_orders_and_classes() {
        let c1 = Group::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.conjugacy_classes(), &[vec![0]]);

        let c2 = Group::cyclic(2).unwrap();
        assert_eq!(c2.conjugacy_classes(), &[vec![0], vec![1]]);
        assert_eq!(c2.class_of(1).unwrap(), 1);

        let c3 = Group::cyclic(3).unwrap();
        assert_eq!(c3.conjugacy_classes(), &[vec![0], vec![1], vec![2]]);

        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(s3.conjugacy_classes(), brute_force_classes(&s3).as_slice());
        let transposition = s3.element_by_name("213").unwrap();
        assert_eq!(s3.conjugacy_classes()[s3.class_of(transposition).unwrap()].len(), 3);
    }

    #[test]
    fn dihedral_is_nonabelian_with_expected_classes() {
        let d4 = Group::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.num_classes(), 5);
        assert_eq!(d4.conjugacy_classes(), brute_force_classes(&d4).as_slice());
        let d3 = Group::dihedral(3).unwrap();
        assert_eq!(d3.num_classes(), 3);
    }

    #[test]
    fn class_function_is_conjugation_invariant() {
        for g in [Group::symmetric(3).unwrap(), Group::dihedral(4).unwrap(), Group::symmetric(4).unwrap()] {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(g.class_of(g.conjugate(a, b)).unwrap(), g.class_of(b).unwrap());
                }
            }
            let total: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
            assert_eq!(total, g.order());
            assert_eq!(g.closure(g.generators()).len(), g.order());
        }
    }

    #[test]
    fn cayley_round_trip() {
        for g in [Group::symmetric(3).unwrap(), Group::cyclic(4).unwrap(), Group::dihedral(5).unwrap()] {
            let text = g.to_cayley_string();
            let h = Group::parse_cayley("again", &text).unwrap();
            assert_eq!(g, h);
            assert_eq!(h.to_cayley_string(), text);
            assert_eq!(h.names(), g.names());
        }
    }

    #[test]
    fn rejects_non_groups() {
        let err = Group::parse_cayley("bad", "2\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, GroupError::MissingInverse(1)), "{err:?}");

        let err = Group::parse_cayley("bad", "2\n1 0\n0 1\n").unwrap_err();
        assert_eq!(err, GroupError::MissingIdentity(0));

        let err = Group::parse_cayley("bad", "2\n0 1\n1\n").unwrap_err();
        assert!(matches!(err, GroupError::Malformed { line: 3, .. }), "{err:?}");

        let err = Group::parse_cayley("bad", "2\n0 1\n1 7\n").unwrap_err();
        assert_eq!(err, GroupError::IndexOutOfRange { index: 7, order: 2 });

        // A quasigroup with identity and inverses that fails associativity.
        let table = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        let err = Group::parse_cayley("loop", table).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn descriptors() {
        assert_eq!(load_group("trivial").unwrap().order(), 1);
        assert_eq!(load_group("c2").unwrap().order(), 2);
        assert_eq!(load_group("cyclic(5)").unwrap().order(), 5);
        assert_eq!(load_group("S3").unwrap().order(), 6);
        assert_eq!(load_group("dihedral(4)").unwrap().order(), 8);
        assert!(matches!(load_group("nonsense"), Err(GroupError::UnknownDescriptor(_))));
    }
}
