//! Exact dense matrices over the integers.
//!
//! [`BinaryMatrix`] holds incidence matrices and the permutation and
//! circulant blocks they are assembled from. [`IntMatrix`] holds products
//! such as `N Nᵀ`. Every arithmetic operation is overflow-checked; there is
//! no floating point anywhere in this module.
//!
//! The plain-text form of a [`BinaryMatrix`] is a header line `"<rows> <cols>"`
//! followed by one line of `0`/`1` characters per row:
//!
//! ```
//! use rectdesign::binmat::BinaryMatrix;
//!
//! let w = BinaryMatrix::circulant(&[0, 1, 0]).unwrap();
//! assert_eq!(w.to_text(), "3 3\n010\n001\n100\n");
//! assert_eq!(w.to_text().parse::<BinaryMatrix>().unwrap(), w);
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Read access shared by both matrix kinds so products can mix them.
pub trait MatrixView {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> i64;
}

/// Dense 0/1 matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = self.row(i).iter().map(|&x| if x == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDimension(format!("{rows}x{cols}")));
    }
    Ok(())
}

impl BinaryMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(Self { rows, cols, data: vec![0; rows * cols] })
    }

    /// `I_n`.
    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// `J_{t×u}`.
    pub fn ones(t: usize, u: usize) -> Result<Self> {
        check_dims(t, u)?;
        Ok(Self { rows: t, cols: u, data: vec![1; t * u] })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.as_ref().len()).unwrap_or(0);
        check_dims(r, c)?;
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::InvalidShape(format!("row {i} has length {} (expected {c})", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::InvalidShape(format!("entry ({i},{j}) = {x} is not 0/1")));
                }
                data.push(x);
            }
        }
        Ok(Self { rows: r, cols: c, data })
    }

    /// Matrix whose `(i, j)` entry is `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_dims(rows, cols)?;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) as u8);
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Circulant whose row `i` is `first_row` cyclically shifted right by `i`.
    pub fn circulant(first_row: &[u8]) -> Result<Self> {
        let n = first_row.len();
        if n == 0 {
            return Err(Error::InvalidDimension("empty circulant row".into()));
        }
        if let Some(&x) = first_row.iter().find(|&&x| x > 1) {
            return Err(Error::InvalidShape(format!("circulant entry {x} is not 0/1")));
        }
        Self::from_fn(n, n, |i, j| first_row[(j + n - i) % n] == 1)
    }

    /// `α^e` where `α = circ(0,1,0,…,0)` is the basic circulant of order `n`.
    pub fn basic_circulant_power(n: usize, e: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| j == (i + e) % n)
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn is_set(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == 1
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `A^c = J − A`.
    pub fn complement(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| 1 - x).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] · other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![0u8; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) == 0 {
                    continue;
                }
                for p in 0..other.rows {
                    let base = (i * other.rows + p) * cols + j * other.cols;
                    data[base..base + other.cols].copy_from_slice(other.row(p));
                }
            }
        }
        Self { rows, cols, data }
    }

    /// Concatenate a rectangular grid of blocks.
    pub fn block_grid(blocks: &[Vec<BinaryMatrix>]) -> Result<Self> {
        let grid_rows = blocks.len();
        let grid_cols = blocks.first().map(Vec::len).unwrap_or(0);
        if grid_rows == 0 || grid_cols == 0 {
            return Err(Error::InvalidShape("empty block grid".into()));
        }
        if let Some((i, _)) = blocks.iter().enumerate().find(|(_, r)| r.len() != grid_cols) {
            return Err(Error::InvalidShape(format!("grid row {i} has a different number of blocks")));
        }
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.rows != heights[i] || b.cols != widths[j] {
                    return Err(Error::InvalidShape(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[i], widths[j]
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in blocks.iter().enumerate() {
            for p in 0..heights[i] {
                for b in row {
                    data.extend_from_slice(b.row(p));
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Block circulant: grid row `i` is `blocks` cyclically shifted right by `i`.
    pub fn block_circulant(blocks: &[BinaryMatrix]) -> Result<Self> {
        let first = blocks.first().ok_or_else(|| Error::InvalidShape("empty block list".into()))?;
        let n = first.rows;
        if blocks.iter().any(|b| !b.is_square() || b.rows != n) {
            return Err(Error::InvalidShape("block circulant needs square blocks of one order".into()));
        }
        let len = blocks.len();
        let grid: Vec<Vec<BinaryMatrix>> =
            (0..len).map(|i| (0..len).map(|j| blocks[(j + len - i) % len].clone()).collect()).collect();
        Self::block_grid(&grid)
    }

    /// Entrywise sum of two matrices whose supports are disjoint.
    ///
    /// Returns the first overlapping position otherwise.
    pub fn disjoint_sum(&self, other: &Self) -> std::result::Result<Self, (usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "disjoint_sum shape");
        let mut data = self.data.clone();
        for (idx, (d, &o)) in data.iter_mut().zip(&other.data).enumerate() {
            if *d == 1 && o == 1 {
                return Err((idx / self.cols, idx % self.cols));
            }
            *d |= o;
        }
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| x as usize).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut s = vec![0usize; self.cols];
        for i in 0..self.rows {
            for (acc, &x) in s.iter_mut().zip(self.row(i)) {
                *acc += x as usize;
            }
        }
        s
    }

    /// Copy of the rectangular window `rows × cols`.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Result<Self> {
        if rows.end > self.rows || cols.end > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "window {rows:?}x{cols:?} exceeds {}x{}",
                self.rows, self.cols
            )));
        }
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j) == 1)
    }

    /// Matrix built from the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Result<Self> {
        check_dims(idx.len(), self.cols)?;
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            if i >= self.rows {
                return Err(Error::DimensionMismatch(format!("row {i} out of range")));
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(Self { rows: idx.len(), cols: self.cols, data })
    }

    pub fn is_permutation(&self) -> bool {
        self.is_square() && self.row_sums().iter().all(|&s| s == 1) && self.col_sums().iter().all(|&s| s == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|&x| x as usize).sum()
    }

    /// `N Nᵀ`.
    pub fn gram(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros_unchecked(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let s: i64 = self.row(i).iter().zip(self.row(j)).map(|(&a, &b)| (a & b) as i64).sum();
                out.data[i * self.rows + j] = s;
                out.data[j * self.rows + i] = s;
            }
        }
        out
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x as i64).collect() }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            s.extend(self.row(i).iter().map(|&x| if x == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    /// Parse the text format from a sequence of lines; `first_line` is the
    /// 1-based number of the header line, used in error messages.
    pub(crate) fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>, first_line: usize) -> Result<Self> {
        let header = lines.next().ok_or(Error::Parse { line: first_line, msg: "missing matrix header".into() })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::Parse { line: first_line, msg: format!("bad matrix header {header:?}") };
        if dims.len() != 2 {
            return Err(bad_header());
        }
        let rows: usize = dims[0].parse().map_err(|_| bad_header())?;
        let cols: usize = dims[1].parse().map_err(|_| bad_header())?;
        if rows == 0 || cols == 0 {
            return Err(bad_header());
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line_no = first_line + 1 + i;
            let line =
                lines.next().ok_or(Error::Parse { line: line_no, msg: format!("expected {rows} matrix rows") })?;
            if line.len() != cols {
                return Err(Error::Parse { line: line_no, msg: format!("row has {} characters, expected {cols}", line.len()) });
            }
            for ch in line.chars() {
                match ch {
                    '0' => data.push(0),
                    '1' => data.push(1),
                    other => return Err(Error::Parse { line: line_no, msg: format!("unexpected character {other:?}") }),
                }
            }
        }
        Ok(Self { rows, cols, data })
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if !s.ends_with('\n') {
            return Err(Error::Parse { line: s.lines().count().max(1), msg: "missing trailing newline".into() });
        }
        let mut lines = s.split('\n');
        let m = Self::parse_lines(&mut lines, 1)?;
        // After the final row only the empty remainder of the trailing newline may follow.
        let rest: Vec<&str> = lines.collect();
        if rest != [""] {
            return Err(Error::Parse { line: m.rows + 2, msg: "trailing content after matrix".into() });
        }
        Ok(m)
    }
}

impl MatrixView for BinaryMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> i64 {
        self.get(i, j) as i64
    }
}

/// Dense integer matrix with overflow-checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    fn zeros_unchecked(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(Self::zeros_unchecked(rows, cols))
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        check_dims(r, c)?;
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidShape("ragged integer matrix".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.concat() })
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros_unchecked(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, what: &'static str, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix addition", i64::checked_add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix subtraction", i64::checked_sub)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("matrix scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `self − c·I`.
    pub fn shift_diagonal(&self, c: i64) -> Result<Self> {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let x = &mut out.data[i * self.cols + i];
            *x = x.checked_sub(c).ok_or(Error::Overflow("diagonal shift"))?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<i64> {
        (0..self.rows.min(self.cols)).try_fold(0i64, |acc, i| acc.checked_add(self.get(i, i)).ok_or(Error::Overflow("trace")))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.data
    }
}

impl MatrixView for IntMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> i64 {
        self.get(i, j)
    }
}

/// Exact integer product of any two matrix kinds.
pub fn matmul<A: MatrixView + ?Sized, B: MatrixView + ?Sized>(a: &A, b: &B) -> Result<IntMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = IntMatrix::zeros_unchecked(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a.entry(i, k);
            if x == 0 {
                continue;
            }
            for j in 0..b.cols() {
                let p = x.checked_mul(b.entry(k, j)).ok_or(Error::Overflow("matrix product"))?;
                let cell = &mut out.data[i * b.cols() + j];
                *cell = cell.checked_add(p).ok_or(Error::Overflow("matrix product"))?;
            }
        }
    }
    Ok(out)
}

/// `a·I_n + b·(J_n − I_n)` as an integer matrix.
pub fn two_valued(n: usize, diag: i64, off: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros_unchecked(n, n);
    for i in 0..n {
        for j in 0..n {
            m.data[i * n + j] = if i == j { diag } else { off };
        }
    }
    m
}

/// If `m` is square of the form `a·I + b·(J − I)`, return `(a, b)`; otherwise the
/// first position that breaks the pattern.
pub fn as_two_valued(m: &IntMatrix) -> std::result::Result<(i64, i64), (usize, usize)> {
    if m.rows != m.cols {
        return Err((0, 0));
    }
    let n = m.rows;
    let diag = m.get(0, 0);
    let off = if n > 1 { m.get(0, 1) } else { 0 };
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { diag } else { off };
            if m.get(i, j) != want {
                return Err((i, j));
            }
        }
    }
    Ok((diag, off))
}
