//! Difference schemes `DS(m, s; x)`.
//!
//! An `m × m` array over an abelian group of order `s` is a difference
//! scheme if, for every two distinct columns, the entrywise differences hit
//! each group element exactly `x` times (so `m = xs`). Schemes are kept
//! normalized: first row and first column zero.
//!
//! File form: `DS m s x <cyclic|ea>` followed by `m` lines of `m`
//! space-separated group elements. Elements of the elementary abelian group
//! of order `p^e` are written as integers `c_0 + c_1 p + …` and added
//! digit-wise modulo `p`, matching the element indices of `GF(p^e)`.

use std::fmt;
use std::str::FromStr;

use super::field::{prime_power, FiniteField};
use crate::binmat::BinaryMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Cyclic(u32),
    /// `Z_p^e` with `e ≥ 2`.
    ElementaryAbelian { p: u32, e: u32 },
}

impl Group {
    /// `Z_p^e`; collapses to `Z_p` when `e = 1`.
    pub fn elementary_abelian(s: u32) -> Result<Self> {
        let (p, e) = prime_power(s as u64).ok_or(Error::NotPrimePower(s as u64))?;
        Ok(if e == 1 { Self::Cyclic(p as u32) } else { Self::ElementaryAbelian { p: p as u32, e } })
    }

    pub fn order(&self) -> u32 {
        match *self {
            Self::Cyclic(s) => s,
            Self::ElementaryAbelian { p, e } => p.pow(e),
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match *self {
            Self::Cyclic(s) => (a + b) % s,
            Self::ElementaryAbelian { p, e } => self.digitwise(a, b, e, |x, y| (x + y) % p),
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        match *self {
            Self::Cyclic(s) => (a + s - b) % s,
            Self::ElementaryAbelian { p, e } => self.digitwise(a, b, e, |x, y| (x + p - y) % p),
        }
    }

    fn digitwise(&self, mut a: u32, mut b: u32, e: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let p = match *self {
            Self::ElementaryAbelian { p, .. } => p,
            Self::Cyclic(s) => s,
        };
        let (mut out, mut scale) = (0, 1);
        for _ in 0..e {
            out += op(a % p, b % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Cyclic(_) => "cyclic",
            Self::ElementaryAbelian { .. } => "ea",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Cyclic(s) => write!(f, "Z_{s}"),
            Self::ElementaryAbelian { p, e } => write!(f, "Z_{p}^{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceScheme {
    m: usize,
    x: usize,
    group: Group,
    entries: Vec<Vec<u32>>,
}

impl DifferenceScheme {
    /// Wrap entries after the full census; they must already be normalized.
    pub fn new(group: Group, entries: Vec<Vec<u32>>) -> Result<Self> {
        let report = ds_census(group, &entries);
        if !report.is_clean() {
            return Err(Error::Verification(format!("difference scheme over {group}: {report}")));
        }
        let m = entries.len();
        let x = if m == 1 { 0 } else { m / group.order() as usize };
        Ok(Self { m, x, group, entries })
    }

    /// Normalize (first row and column to zero) and then wrap.
    pub fn normalized(group: Group, entries: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(group, normalize(group, &entries))
    }

    /// The `1 × 1` zero scheme, neutral for [`ds_compose`].
    pub fn trivial(group: Group) -> Self {
        Self { m: 1, x: 0, group, entries: vec![vec![0]] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.group.order() as usize
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("DS {} {} {} {}\n", self.m, self.s(), self.x, self.group.kind());
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Rows and columns sorted, for comparing schemes up to reordering.
    pub fn sorted_canonical(&self) -> Vec<Vec<u32>> {
        let mut rows = self.entries.clone();
        rows.sort();
        let m = self.m;
        let mut cols: Vec<Vec<u32>> = (0..m).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        cols.sort();
        (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }
}

/// Subtract the first row from every row and the first column from every column.
pub fn normalize(group: Group, entries: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = entries.len();
    (0..m)
        .map(|i| {
            (0..entries[i].len())
                .map(|j| {
                    let a = group.sub(entries[i][j], entries[0][j]);
                    let b = group.sub(entries[i][0], entries[0][0]);
                    group.sub(a, b)
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DsReport {
    pub shape: Option<String>,
    /// 1-based column pairs whose difference census is unbalanced.
    pub unbalanced: Vec<(usize, usize)>,
    pub normalized: bool,
}

impl DsReport {
    pub fn is_clean(&self) -> bool {
        self.shape.is_none() && self.unbalanced.is_empty() && self.normalized
    }
}

impl fmt::Display for DsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "clean");
        }
        let mut parts = Vec::new();
        if let Some(s) = &self.shape {
            parts.push(s.clone());
        }
        if !self.unbalanced.is_empty() {
            let pairs: Vec<String> = self.unbalanced.iter().map(|(a, b)| format!("({a},{b})")).collect();
            parts.push(format!("unbalanced column pairs {}", pairs.join(" ")));
        }
        if !self.normalized {
            parts.push("first row/column not zero".into());
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Full census of an arbitrary array against the difference-scheme conditions.
pub fn ds_census(group: Group, entries: &[Vec<u32>]) -> DsReport {
    let s = group.order() as usize;
    let m = entries.len();
    let mut report = DsReport { normalized: true, ..Default::default() };
    if m == 0 || entries.iter().any(|r| r.len() != m) {
        report.shape = Some("array is not square".into());
        return report;
    }
    if entries.iter().flatten().any(|&v| v as usize >= s) {
        report.shape = Some(format!("entries outside the group of order {s}"));
        return report;
    }
    if m > 1 && m % s != 0 {
        report.shape = Some(format!("m = {m} is not a multiple of s = {s}"));
        return report;
    }
    let x = m / s;
    for j in 0..m {
        for k in (j + 1)..m {
            let mut count = vec![0usize; s];
            for row in entries {
                count[group.sub(row[j], row[k]) as usize] += 1;
            }
            if count.iter().any(|&c| c != x) {
                report.unbalanced.push((j + 1, k + 1));
            }
        }
    }
    report.normalized = entries[0].iter().all(|&v| v == 0) && entries.iter().all(|r| r[0] == 0);
    report
}

pub fn ds_verify(d: &DifferenceScheme) -> DsReport {
    ds_census(d.group, &d.entries)
}

/// `DS(q, q; 1)`: the multiplication table of `GF(q)`, over `Z_q` for prime
/// `q` and the additive group `Z_p^e` otherwise.
pub fn ds_field(q: u64) -> Result<DifferenceScheme> {
    let f = FiniteField::new(q)?;
    let group = Group::elementary_abelian(q as u32)?;
    let n = q as u16;
    let entries = (0..n).map(|i| (0..n).map(|j| f.mul(i, j) as u32).collect()).collect();
    DifferenceScheme::new(group, entries)
}

/// `DS(2^k, 2; 2^{k−1})` over `Z_2` with entries `popcount(i & j) mod 2`.
pub fn ds_sylvester(k: u32) -> Result<DifferenceScheme> {
    if k == 0 || k > 10 {
        return Err(Error::InvalidDimension(format!("Sylvester scheme exponent {k} outside 1..=10")));
    }
    let m = 1usize << k;
    let entries = (0..m).map(|i| (0..m).map(|j| (i & j).count_ones() % 2).collect()).collect();
    DifferenceScheme::new(Group::Cyclic(2), entries)
}

/// Kronecker sum: `e[(i1,i2)][(j1,j2)] = a[i1][j1] + b[i2][j2]`.
pub fn ds_compose(a: &DifferenceScheme, b: &DifferenceScheme) -> Result<DifferenceScheme> {
    if a.group != b.group {
        return Err(Error::Precondition(format!("cannot compose schemes over {} and {}", a.group, b.group)));
    }
    let g = a.group;
    let m = a.m * b.m;
    let entries = (0..m)
        .map(|i| (0..m).map(|j| g.add(a.entries[i / b.m][j / b.m], b.entries[i % b.m][j % b.m])).collect())
        .collect();
    DifferenceScheme::new(g, entries)
}

/// Permutation matrix of translation by `e`: `P[a][a + e] = 1`.
///
/// For `Z_s` this is the `e`-th power of the basic circulant.
pub fn group_permutation(e: u32, group: Group) -> Result<BinaryMatrix> {
    let s = group.order() as usize;
    if e as usize >= s {
        return Err(Error::InvalidParams(format!("{e} is not an element of {group}")));
    }
    BinaryMatrix::from_fn(s, s, |a, c| group.add(a as u32, e) as usize == c)
}

/// Search for a normalized `DS(m, s; x)` over `group`.
///
/// Cells are filled column by column, top to bottom, trying values in
/// increasing order; partial column pairs may never exceed `x` occurrences of
/// any difference. Row and column permutations are factored out by requiring
/// rows and columns to be lexicographically nondecreasing (every matrix has
/// such a doubly lexical ordering, and the all-zero first row and column stay
/// first). The first complete scheme in this order is returned.
pub fn ds_search(m: usize, s: usize, x: usize, group: Group) -> Result<Option<DifferenceScheme>> {
    if group.order() as usize != s {
        return Err(Error::Precondition(format!("group {group} has order {}, not {s}", group.order())));
    }
    if m != x * s || m < 2 {
        return Err(Error::Precondition(format!("need m = x·s >= 2, got m={m}, s={s}, x={x}")));
    }
    if m > 12 {
        return Err(Error::UnsupportedOrder(format!("difference-scheme search limited to m <= 12, got {m}")));
    }
    let mut st = SearchState::new(m, s, x, group);
    if st.fill(0, true) {
        return DifferenceScheme::new(group, st.e).map(Some);
    }
    Ok(None)
}

struct SearchState {
    m: usize,
    s: usize,
    x: usize,
    group: Group,
    e: Vec<Vec<u32>>,
    /// `count[(k * m + j) * s + d]`: rows so far with `e[i][j] − e[i][k] = d`, for `k < j`.
    count: Vec<usize>,
    /// `row_tie[j][i]`: row `i` equals row `i − 1` on columns `0..j`.
    row_tie: Vec<Vec<bool>>,
    diff: Vec<Vec<u32>>,
}

impl SearchState {
    fn new(m: usize, s: usize, x: usize, group: Group) -> Self {
        let mut count = vec![0usize; m * m * s];
        for j in 0..m {
            for k in 0..j {
                count[(k * m + j) * s] = 1; // row 0
            }
        }
        let mut row_tie = vec![vec![false; m]; m + 1];
        for t in row_tie[1].iter_mut().skip(1) {
            *t = true;
        }
        let diff = (0..s as u32).map(|a| (0..s as u32).map(|b| group.sub(a, b)).collect()).collect();
        Self { m, s, x, group, e: vec![vec![0; m]; m], count, row_tie, diff }
    }

    /// Fill cell number `pos` (column-major over rows/columns `1..m`).
    fn fill(&mut self, pos: usize, col_tie: bool) -> bool {
        let w = self.m - 1;
        if pos == w * w {
            return true;
        }
        let (i, j) = (pos % w + 1, pos / w + 1);
        if i == 1 && j > 1 {
            // column j−1 is complete: extend the row ties through it
            let prev = j - 1;
            let next: Vec<bool> = (0..self.m)
                .map(|r| r >= 1 && self.row_tie[prev][r] && self.e[r][prev] == self.e[r - 1][prev])
                .collect();
            self.row_tie[j] = next;
        }
        let col_tie = if i == 1 { true } else { col_tie };
        let mut lo = 0u32;
        if self.row_tie[j][i] {
            lo = lo.max(self.e[i - 1][j]);
        }
        if col_tie {
            lo = lo.max(self.e[i][j - 1]);
        }
        for v in lo..self.s as u32 {
            if !self.place(i, j, v) {
                continue;
            }
            let tie = col_tie && v == self.e[i][j - 1];
            if self.fill(pos + 1, tie) {
                return true;
            }
            self.unplace(i, j, v);
        }
        self.e[i][j] = 0;
        false
    }

    fn place(&mut self, i: usize, j: usize, v: u32) -> bool {
        let (m, s, x) = (self.m, self.s, self.x);
        for k in 0..j {
            let d = self.diff[v as usize][self.e[i][k] as usize] as usize;
            if self.count[(k * m + j) * s + d] >= x {
                for k2 in 0..k {
                    let d2 = self.diff[v as usize][self.e[i][k2] as usize] as usize;
                    self.count[(k2 * m + j) * s + d2] -= 1;
                }
                return false;
            }
            self.count[(k * m + j) * s + d] += 1;
        }
        self.e[i][j] = v;
        true
    }

    fn unplace(&mut self, i: usize, j: usize, v: u32) {
        let (m, s) = (self.m, self.s);
        for k in 0..j {
            let d = self.diff[v as usize][self.e[i][k] as usize] as usize;
            self.count[(k * m + j) * s + d] -= 1;
        }
        let _ = self.group;
    }
}

impl FromStr for DifferenceScheme {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 5 || f[0] != "DS" {
            return Err(Error::Parse { line: 1, msg: format!("expected \"DS m s x <cyclic|ea>\", got {header:?}") });
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse { line: 1, msg: format!("bad number {t:?}") });
        let (m, s, x) = (num(f[1])?, num(f[2])?, num(f[3])?);
        let group = match f[4] {
            "cyclic" => Group::Cyclic(s as u32),
            "ea" => Group::elementary_abelian(s as u32)?,
            other => return Err(Error::Parse { line: 1, msg: format!("unknown group kind {other:?}") }),
        };
        if m != x * s || s < 2 {
            return Err(Error::Parse { line: 1, msg: format!("header needs m = x·s with s >= 2, got m={m}, s={s}, x={x}") });
        }
        let mut entries = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: entries.len() + 2, msg: "too few rows".into() })?;
            let row = l
                .split_whitespace()
                .map(|t| match t.parse::<u32>() {
                    Ok(v) if (v as usize) < s => Ok(v),
                    _ => Err(Error::Parse { line: ln, msg: format!("bad group element {t:?}") }),
                })
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != m {
                return Err(Error::Parse { line: ln, msg: format!("expected {m} entries, got {}", row.len()) });
            }
            entries.push(row);
        }
        if let Some((ln, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse { line: ln, msg: format!("trailing content {l:?}") });
        }
        DifferenceScheme::normalized(group, entries)
    }
}
