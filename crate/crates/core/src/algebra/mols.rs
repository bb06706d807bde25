//! Mutually orthogonal Latin squares over symbols `1..=n`.
//!
//! File form: a header `MOLS n count`, then `count` blocks of `n` lines of
//! `n` space-separated symbols, blocks separated by a blank line.

use std::fmt::Write as _;
use std::str::FromStr;

use super::field::FiniteField;
use crate::error::{Error, Result};

pub type Square = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolsSet {
    n: usize,
    squares: Vec<Square>,
}

impl MolsSet {
    /// Wrap squares after checking Latinness and pairwise orthogonality.
    pub fn new(n: usize, squares: Vec<Square>) -> Result<Self> {
        let set = Self { n, squares };
        let problems = set.check();
        if !problems.is_empty() {
            return Err(Error::Verification(problems.join("; ")));
        }
        Ok(set)
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Every violated property: shape, symbol range, Latinness, orthogonality.
    pub fn check(&self) -> Vec<String> {
        let n = self.n;
        let mut out = Vec::new();
        if n < 2 {
            out.push(format!("side {n} < 2"));
            return out;
        }
        for (s, sq) in self.squares.iter().enumerate() {
            if sq.len() != n || sq.iter().any(|row| row.len() != n) {
                out.push(format!("square {} is not {n}x{n}", s + 1));
                continue;
            }
            if sq.iter().flatten().any(|&x| x == 0 || x as usize > n) {
                out.push(format!("square {} has symbols outside 1..={n}", s + 1));
                continue;
            }
            for i in 0..n {
                let mut row_seen = vec![false; n + 1];
                let mut col_seen = vec![false; n + 1];
                for j in 0..n {
                    row_seen[sq[i][j] as usize] = true;
                    col_seen[sq[j][i] as usize] = true;
                }
                if row_seen[1..].iter().any(|b| !b) {
                    out.push(format!("square {} row {} repeats a symbol", s + 1, i + 1));
                }
                if col_seen[1..].iter().any(|b| !b) {
                    out.push(format!("square {} column {} repeats a symbol", s + 1, i + 1));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..self.squares.len() {
            for b in (a + 1)..self.squares.len() {
                if !orthogonal(&self.squares[a], &self.squares[b]) {
                    out.push(format!("squares {} and {} are not orthogonal", a + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("MOLS {} {}\n", self.n, self.squares.len());
        for (k, sq) in self.squares.iter().enumerate() {
            if k > 0 {
                s.push('\n');
            }
            for row in sq {
                let line: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", line.join(" "));
            }
        }
        s
    }
}

/// The join of `a` and `b` contains every ordered pair exactly once.
pub fn orthogonal(a: &Square, b: &Square) -> bool {
    let n = a.len();
    let mut seen = vec![false; (n + 1) * (n + 1)];
    for i in 0..n {
        for j in 0..n {
            let key = a[i][j] as usize * (n + 1) + b[i][j] as usize;
            if seen[key] {
                return false;
            }
            seen[key] = true;
        }
    }
    true
}

/// The `q − 1` squares `L_a[x][y] = a·x + y` over `GF(q)`, `a` running over
/// the nonzero elements in index order; symbol `s` stands for element `s − 1`,
/// so every first row is `(1, 2, …, q)`.
pub fn mols(q: u64) -> Result<MolsSet> {
    if q < 3 {
        return Err(Error::Precondition(format!("MOLS need q >= 3, got {q}")));
    }
    let f = FiniteField::new(q)?;
    let n = q as usize;
    let squares = (1..n as u16)
        .map(|a| {
            (0..n as u16)
                .map(|x| (0..n as u16).map(|y| f.add(f.mul(a, x), y) as u32 + 1).collect())
                .collect()
        })
        .collect();
    MolsSet::new(n, squares)
}

impl FromStr for MolsSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "MOLS" {
            return Err(Error::Parse { line: 1, msg: format!("expected \"MOLS n count\", got {header:?}") });
        }
        let num = |f: &str| f.parse::<usize>().map_err(|_| Error::Parse { line: 1, msg: format!("bad number {f:?}") });
        let (n, count) = (num(fields[1])?, num(fields[2])?);
        let mut squares = Vec::with_capacity(count);
        for k in 0..count {
            if k > 0 {
                match lines.next() {
                    Some((_, l)) if l.trim().is_empty() => {}
                    Some((ln, _)) => return Err(Error::Parse { line: ln, msg: "expected blank line between squares".into() }),
                    None => return Err(Error::Parse { line: 0, msg: format!("missing square {}", k + 1) }),
                }
            }
            let mut sq = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, l) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("square {} is short", k + 1) })?;
                let row = l
                    .split_whitespace()
                    .map(|x| x.parse::<u32>().map_err(|_| Error::Parse { line: ln, msg: format!("bad symbol {x:?}") }))
                    .collect::<Result<Vec<u32>>>()?;
                if row.len() != n {
                    return Err(Error::Parse { line: ln, msg: format!("expected {n} symbols, got {}", row.len()) });
                }
                sq.push(row);
            }
            squares.push(sq);
        }
        if let Some((ln, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse { line: ln, msg: format!("trailing content {l:?}") });
        }
        MolsSet::new(n, squares)
    }
}
