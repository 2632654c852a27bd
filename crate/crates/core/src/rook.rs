//! G-labeled rook matrices: the semigroup of n×n matrices over `G ∪ {0}`
//! with at most one nonzero entry in every row and column.
//!
//! Storage is column-major: each column is either empty or holds a row and a
//! label. The public API is 1-indexed in rows and columns.

use std::fmt;

use thiserror::Error;

use crate::groups::Group;

/// Largest supported matrix size.
pub const MAX_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RookError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size {0} exceeds the supported maximum {MAX_N}")]
    TooLarge(usize),
    #[error("corner size {m} exceeds matrix size {n}")]
    CornerTooLarge { m: usize, n: usize },
    #[error("two columns share row {0}")]
    RepeatedRow(usize),
    #[error("label {label} is not an element of a group of order {order}")]
    BadLabel { label: usize, order: usize },
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("element is not in the group part (some row or column is zero)")]
    NotTotal,
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

/// Element of the semigroup of G-labeled rook matrices.
///
/// Each column is encoded as `0` (zero column) or `((row + 1) << 8) | label`
/// with a 0-based row. The derived order is therefore lexicographic over
/// columns, the zero column sorting first, then by row, then by label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RookMatrix {
    n: u8,
    cols: [u16; MAX_N],
}

#[inline]
fn encode(row: usize, label: usize) -> u16 {
    (((row + 1) << 8) | label) as u16
}

#[inline]
fn decode(c: u16) -> Option<(usize, usize)> {
    if c == 0 {
        None
    } else {
        Some(((c >> 8) as usize - 1, (c & 0xff) as usize))
    }
}

/// Statistics attached to a rook matrix relative to a corner size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statistics {
    pub j: Vec<usize>,
    pub j_bar: Vec<usize>,
    pub deg: usize,
    pub rank: usize,
    pub j_m: Vec<usize>,
    pub deg_m: usize,
}

impl RookMatrix {
    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "size {n} exceeds {MAX_N}");
        let mut cols = [0u16; MAX_N];
        for (j, c) in cols.iter_mut().enumerate().take(n) {
            *c = encode(j, 0);
        }
        RookMatrix { n: n as u8, cols }
    }

    /// The zero matrix of size `n`.
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_N, "size {n} exceeds {MAX_N}");
        RookMatrix { n: n as u8, cols: [0; MAX_N] }
    }

    /// Builds a matrix from 1-indexed `(column, row, label)` triples.
    pub fn from_entries(
        n: usize,
        entries: &[(usize, usize, usize)],
        group: &Group,
    ) -> Result<Self, RookError> {
        if n > MAX_N {
            return Err(RookError::TooLarge(n));
        }
        let mut m = RookMatrix::zero(n);
        let mut used = [false; MAX_N];
        for &(j, i, g) in entries {
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(RookError::IndexOutOfRange { index: idx, n });
                }
            }
            if g >= group.order() {
                return Err(RookError::BadLabel { label: g, order: group.order() });
            }
            if used[i - 1] || m.cols[j - 1] != 0 {
                return Err(RookError::RepeatedRow(i));
            }
            used[i - 1] = true;
            m.cols[j - 1] = encode(i - 1, g);
        }
        Ok(m)
    }

    /// `ε_i`: the identity with the `(i, i)` entry set to zero.
    pub fn epsilon(i: usize, n: usize) -> Result<Self, RookError> {
        if i == 0 || i > n {
            return Err(RookError::IndexOutOfRange { index: i, n });
        }
        let mut m = RookMatrix::identity(n);
        m.cols[i - 1] = 0;
        Ok(m)
    }

    /// `ε_T = Π_{i∈T} ε_i`.
    pub fn epsilon_set(t: &[usize], n: usize) -> Result<Self, RookError> {
        let mut m = RookMatrix::identity(n);
        for &i in t {
            if i == 0 || i > n {
                return Err(RookError::IndexOutOfRange { index: i, n });
            }
            m.cols[i - 1] = 0;
        }
        Ok(m)
    }

    /// The permutation matrix `M(σ)` of the transposition `(i, j)`.
    pub fn transposition(i: usize, j: usize, n: usize) -> Result<Self, RookError> {
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(RookError::IndexOutOfRange { index: idx, n });
            }
        }
        let mut m = RookMatrix::identity(n);
        m.cols[i - 1] = encode(j - 1, 0);
        m.cols[j - 1] = encode(i - 1, 0);
        Ok(m)
    }

    /// `s_i = (i, i+1)`.
    pub fn s(i: usize, n: usize) -> Result<Self, RookError> {
        RookMatrix::transposition(i, i + 1, n)
    }

    /// `h^{(i)}`: the diagonal matrix with `h` in slot `i` and 1 elsewhere.
    pub fn slot(h: usize, i: usize, n: usize) -> Result<Self, RookError> {
        if i == 0 || i > n {
            return Err(RookError::IndexOutOfRange { index: i, n });
        }
        let mut m = RookMatrix::identity(n);
        m.cols[i - 1] = encode(i - 1, h);
        Ok(m)
    }

    /// `Δ(g)`: the diagonal matrix with labels `g_1, …, g_n`.
    pub fn diagonal(labels: &[usize]) -> Self {
        let mut m = RookMatrix::zero(labels.len());
        for (j, &g) in labels.iter().enumerate() {
            m.cols[j] = encode(j, g);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `(row, label)` of column `j` (1-indexed), or `None` for a zero column.
    #[inline]
    pub fn col(&self, j: usize) -> Option<(usize, usize)> {
        decode(self.cols[j - 1]).map(|(r, g)| (r + 1, g))
    }

    /// 0-indexed column access used by hot loops.
    #[inline]
    pub(crate) fn col0(&self, j: usize) -> Option<(usize, usize)> {
        decode(self.cols[j])
    }

    #[inline]
    pub(crate) fn set_col0(&mut self, j: usize, entry: Option<(usize, usize)>) {
        self.cols[j] = match entry {
            Some((r, g)) => encode(r, g),
            None => 0,
        };
    }

    /// The entry in row `i`, column `j` (1-indexed): `Some(label)` or `None` for 0.
    pub fn entry(&self, i: usize, j: usize) -> Option<usize> {
        match self.col(j) {
            Some((r, g)) if r == i => Some(g),
            _ => None,
        }
    }

    /// Nonzero entries as 1-indexed `(column, row, label)` triples, by column.
    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        (1..=self.n()).filter_map(|j| self.col(j).map(|(i, g)| (j, i, g))).collect()
    }

    /// Matrix product with `0` absorbing. Sizes must agree.
    #[inline]
    pub fn mul(&self, other: &RookMatrix, group: &Group) -> RookMatrix {
        debug_assert_eq!(self.n, other.n);
        let mut out = RookMatrix::zero(self.n());
        for j in 0..self.n() {
            if let Some((k, b)) = decode(other.cols[j]) {
                if let Some((i, a)) = decode(self.cols[k]) {
                    out.cols[j] = encode(i, group.mul(a, b));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &RookMatrix, group: &Group) -> Result<RookMatrix, RookError> {
        if self.n != other.n {
            return Err(RookError::SizeMismatch(self.n(), other.n()));
        }
        Ok(self.mul(other, group))
    }

    /// The inverse of a total matrix.
    pub fn inverse(&self, group: &Group) -> Result<RookMatrix, RookError> {
        if !self.is_group_element() {
            return Err(RookError::NotTotal);
        }
        let mut out = RookMatrix::zero(self.n());
        for j in 0..self.n() {
            let (i, g) = decode(self.cols[j]).expect("total");
            out.cols[i] = encode(j, group.inv(g));
        }
        Ok(out)
    }

    pub fn is_group_element(&self) -> bool {
        self.rank() == self.n()
    }

    /// Membership in the subsemigroup whose rows and columns `m+1..n` are nonzero.
    pub fn in_gamma_mn(&self, m: usize) -> bool {
        let n = self.n();
        let mut row_hit = [false; MAX_N];
        for j in 0..n {
            match decode(self.cols[j]) {
                Some((i, _)) => row_hit[i] = true,
                None if j >= m => return false,
                None => {}
            }
        }
        (m..n).all(|i| row_hit[i])
    }

    /// Whether row `i` (1-indexed) contains a nonzero entry.
    pub fn row_nonzero(&self, i: usize) -> bool {
        (0..self.n()).any(|j| matches!(decode(self.cols[j]), Some((r, _)) if r + 1 == i))
    }

    pub fn rank(&self) -> usize {
        self.cols[..self.n()].iter().filter(|&&c| c != 0).count()
    }

    /// Whether the diagonal entry `(k, k)` (1-indexed) is the identity label.
    #[inline]
    pub fn diag_is_one(&self, k: usize) -> bool {
        self.cols[k - 1] == encode(k - 1, 0)
    }

    pub fn deg(&self) -> usize {
        self.deg_m(0)
    }

    /// Number of indices `k > m` with `γ_kk ≠ 1`.
    pub fn deg_m(&self, m: usize) -> usize {
        (m + 1..=self.n()).filter(|&k| !self.diag_is_one(k)).count()
    }

    pub fn statistics(&self, m: usize) -> Result<Statistics, RookError> {
        let n = self.n();
        if m > n {
            return Err(RookError::CornerTooLarge { m, n });
        }
        let j: Vec<usize> = (1..=n).filter(|&k| !self.diag_is_one(k)).collect();
        let j_bar: Vec<usize> = (1..=n).filter(|&k| self.diag_is_one(k)).collect();
        let j_m: Vec<usize> = j.iter().copied().filter(|&k| k > m).collect();
        Ok(Statistics {
            deg: j.len(),
            rank: self.rank(),
            deg_m: j_m.len(),
            j,
            j_bar,
            j_m,
        })
    }

    /// The upper-left `m×m` corner.
    pub fn theta(&self, m: usize) -> Result<RookMatrix, RookError> {
        if m > self.n() {
            return Err(RookError::CornerTooLarge { m, n: self.n() });
        }
        let mut out = RookMatrix::zero(m);
        for j in 0..m {
            if let Some((i, g)) = decode(self.cols[j]) {
                if i < m {
                    out.cols[j] = encode(i, g);
                }
            }
        }
        Ok(out)
    }

    /// Places `self` in the upper-left corner of an `n×n` identity.
    pub fn embed(&self, n: usize) -> Result<RookMatrix, RookError> {
        if self.n() > n {
            return Err(RookError::CornerTooLarge { m: self.n(), n });
        }
        if n > MAX_N {
            return Err(RookError::TooLarge(n));
        }
        let mut out = RookMatrix::identity(n);
        out.cols[..self.n()].copy_from_slice(&self.cols[..self.n()]);
        Ok(out)
    }

    /// Places `self` in the lower-right corner of an `n×n` identity, i.e. on
    /// the last `self.n()` slots.
    pub fn embed_last(&self, n: usize) -> Result<RookMatrix, RookError> {
        let k = self.n();
        if k > n {
            return Err(RookError::CornerTooLarge { m: k, n });
        }
        if n > MAX_N {
            return Err(RookError::TooLarge(n));
        }
        let shift = n - k;
        let mut out = RookMatrix::identity(n);
        for j in 0..k {
            out.cols[shift + j] = match decode(self.cols[j]) {
                Some((i, g)) => encode(i + shift, g),
                None => 0,
            };
        }
        Ok(out)
    }

    /// Right multiplication by `ε_Q`: zeroes the columns in `Q` (1-indexed bitmask bit `q-1`).
    #[inline]
    pub fn zero_columns(&self, mask: u32) -> RookMatrix {
        let mut out = *self;
        for j in 0..self.n() {
            if mask & (1 << j) != 0 {
                out.cols[j] = 0;
            }
        }
        out
    }

    /// Left multiplication by `ε_Q`: zeroes the rows in `Q`.
    #[inline]
    pub fn zero_rows(&self, mask: u32) -> RookMatrix {
        let mut out = *self;
        for j in 0..self.n() {
            if let Some((i, _)) = decode(self.cols[j]) {
                if mask & (1 << i) != 0 {
                    out.cols[j] = 0;
                }
            }
        }
        out
    }

    /// Decomposes a total matrix as a wreath element.
    pub fn to_wreath(&self) -> Result<WreathElement, RookError> {
        if !self.is_group_element() {
            return Err(RookError::NotTotal);
        }
        let n = self.n();
        let mut g = vec![0; n];
        let mut sigma = vec![0; n];
        for j in 0..n {
            let (i, label) = decode(self.cols[j]).expect("total");
            sigma[j] = i + 1;
            g[i] = label;
        }
        Ok(WreathElement { g, sigma })
    }

    /// Formats with group element names, e.g. `{1->(2,1), 2->(1,-1)}`.
    pub fn display<'a>(&'a self, group: &'a Group) -> RookDisplay<'a> {
        RookDisplay { m: self, group }
    }

    /// Parses `{j->(i,g), ...}` with element names of `group`.
    pub fn parse(text: &str, n: usize, group: &Group) -> Result<RookMatrix, RookError> {
        let mut p = crate::expr::Cursor::new(text);
        let m = parse_rook_literal(&mut p, n, group)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(RookError::Parse { pos: p.pos(), message: "trailing input".into() });
        }
        Ok(m)
    }
}

pub(crate) fn parse_rook_literal(
    p: &mut crate::expr::Cursor<'_>,
    n: usize,
    group: &Group,
) -> Result<RookMatrix, RookError> {
    let perr = |pos: usize, message: &str| RookError::Parse { pos, message: message.into() };
    p.skip_ws();
    if !p.eat('{') {
        return Err(perr(p.pos(), "expected `{`"));
    }
    let mut entries = Vec::new();
    loop {
        p.skip_ws();
        if p.eat('}') {
            break;
        }
        let start = p.pos();
        let j = p.number().ok_or_else(|| perr(start, "expected a column index"))?;
        p.skip_ws();
        if !p.eat_str("->") {
            return Err(perr(p.pos(), "expected `->`"));
        }
        p.skip_ws();
        if !p.eat('(') {
            return Err(perr(p.pos(), "expected `(`"));
        }
        p.skip_ws();
        let at = p.pos();
        let i = p.number().ok_or_else(|| perr(at, "expected a row index"))?;
        p.skip_ws();
        if !p.eat(',') {
            return Err(perr(p.pos(), "expected `,`"));
        }
        p.skip_ws();
        let at = p.pos();
        let name = p.take_while(|c| c != ')' && !c.is_whitespace());
        let g = group
            .element_by_name(name)
            .ok_or_else(|| perr(at, &format!("unknown group element `{name}`")))?;
        p.skip_ws();
        if !p.eat(')') {
            return Err(perr(p.pos(), "expected `)`"));
        }
        entries.push((j, i, g));
        p.skip_ws();
        if p.eat(',') {
            continue;
        }
        p.skip_ws();
        if p.eat('}') {
            break;
        }
        return Err(perr(p.pos(), "expected `,` or `}`"));
    }
    RookMatrix::from_entries(n, &entries, group)
}

impl fmt::Debug for RookMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (j, i, g) in self.entries() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{j}->({i},#{g})")?;
        }
        write!(f, "}}/{}", self.n)
    }
}

pub struct RookDisplay<'a> {
    m: &'a RookMatrix,
    group: &'a Group,
}

impl fmt::Display for RookDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (j, i, g)) in self.m.entries().into_iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}->({i},{})", self.group.name(g))?;
        }
        write!(f, "}}")
    }
}

/// An element `(g, σ)` of the wreath product `G^n ⋊ S_n`.
///
/// `g[i-1]` is `g_i` and `sigma[j-1]` is `σ(j)`, both 1-indexed in value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub g: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl WreathElement {
    pub fn new(g: Vec<usize>, sigma: Vec<usize>) -> Result<Self, RookError> {
        if g.len() != sigma.len() {
            return Err(RookError::SizeMismatch(g.len(), sigma.len()));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if s == 0 || s > sigma.len() || seen[s - 1] {
                return Err(RookError::NotPermutation(sigma));
            }
            seen[s - 1] = true;
        }
        Ok(WreathElement { g, sigma })
    }

    pub fn identity(n: usize) -> Self {
        WreathElement { g: vec![0; n], sigma: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// `(g, σ)(h, τ) = (g · σ(h), στ)` with `σ(h)_i = h_{σ⁻¹(i)}`.
    pub fn mul(&self, other: &WreathElement, group: &Group) -> WreathElement {
        let n = self.n();
        let mut sigma_inv = vec![0; n];
        for (j, &s) in self.sigma.iter().enumerate() {
            sigma_inv[s - 1] = j;
        }
        let g = (0..n).map(|i| group.mul(self.g[i], other.g[sigma_inv[i]])).collect();
        let sigma = (0..n).map(|j| self.sigma[other.sigma[j] - 1]).collect();
        WreathElement { g, sigma }
    }

    /// `Δ(g)M(σ)`: column `j` carries label `g_{σ(j)}` in row `σ(j)`.
    pub fn to_rook(&self) -> RookMatrix {
        let mut m = RookMatrix::zero(self.n());
        for j in 0..self.n() {
            let i = self.sigma[j] - 1;
            m.cols[j] = encode(i, self.g[i]);
        }
        m
    }
}

/// `from_wreath`: the matrix `Δ(g)M(σ)`.
pub fn from_wreath(x: &WreathElement) -> RookMatrix {
    x.to_rook()
}

/// `Σ_t C(n,t)² t! |G|^t`.
pub fn semigroup_size(n: usize, order: usize) -> u128 {
    let mut total = 0u128;
    for t in 0..=n {
        let c = binomial(n, t);
        total += c * c * factorial(t) * (order as u128).pow(t as u32);
    }
    total
}

/// `n! |G|^n`.
pub fn group_size(n: usize, order: usize) -> u128 {
    factorial(n) * (order as u128).pow(n as u32)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Lazily enumerates all of `Ḡ_n` (or only total matrices) in canonical order.
pub struct RookEnumerator {
    n: usize,
    order: usize,
    total_only: bool,
    cur: Option<Vec<u16>>,
    started: bool,
}

impl RookEnumerator {
    fn first_completion(&self, prefix: &mut Vec<u16>) -> bool {
        while prefix.len() < self.n {
            match self.next_value(prefix, None) {
                Some(v) => prefix.push(v),
                None => return false,
            }
        }
        true
    }

    /// Smallest admissible value for the next column strictly above `after`.
    fn next_value(&self, prefix: &[u16], after: Option<u16>) -> Option<u16> {
        let mut used = [false; MAX_N];
        for &c in prefix {
            if let Some((i, _)) = decode(c) {
                used[i] = true;
            }
        }
        let mut candidates = std::iter::once(0u16)
            .filter(|_| !self.total_only)
            .chain((0..self.n).filter(|&i| !used[i]).flat_map(|i| (0..self.order).map(move |g| encode(i, g))));
        match after {
            None => candidates.next(),
            Some(a) => candidates.find(|&v| v > a),
        }
    }
}

impl Iterator for RookEnumerator {
    type Item = RookMatrix;

    fn next(&mut self) -> Option<RookMatrix> {
        if !self.started {
            self.started = true;
            let mut prefix = Vec::with_capacity(self.n);
            if self.first_completion(&mut prefix) {
                self.cur = Some(prefix);
            }
        } else {
            let mut state = self.cur.take()?;
            loop {
                let last = state.pop()?;
                if let Some(v) = self.next_value(&state, Some(last)) {
                    state.push(v);
                    if self.first_completion(&mut state) {
                        break;
                    }
                    // Unreachable in practice: every prefix extends.
                    return None;
                }
            }
            self.cur = Some(state);
        }
        let cols = self.cur.as_ref()?;
        let mut m = RookMatrix::zero(self.n);
        m.cols[..self.n].copy_from_slice(cols);
        Some(m)
    }
}

/// Streams every element of `Ḡ_n` exactly once, in canonical order.
pub fn enumerate_semigroup(n: usize, group: &Group, cap: u128) -> Result<RookEnumerator, RookError> {
    if n > MAX_N {
        return Err(RookError::TooLarge(n));
    }
    let size = semigroup_size(n, group.order());
    if size > cap {
        return Err(RookError::CapExceeded { size, cap });
    }
    Ok(RookEnumerator { n, order: group.order(), total_only: false, cur: None, started: false })
}

/// Streams every element of `G_n` exactly once, in canonical order.
pub fn enumerate_group(n: usize, group: &Group, cap: u128) -> Result<RookEnumerator, RookError> {
    if n > MAX_N {
        return Err(RookError::TooLarge(n));
    }
    let size = group_size(n, group.order());
    if size > cap {
        return Err(RookError::CapExceeded { size, cap });
    }
    Ok(RookEnumerator { n, order: group.order(), total_only: true, cur: None, started: false })
}
