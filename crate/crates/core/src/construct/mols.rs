//! Constructions from mutually orthogonal Latin squares and circulant powers.

use crate::algebra::field::is_prime;
use crate::algebra::mols::{mols, MolsSet};
use crate::binmat::BinaryMatrix;
use crate::design::{complement_design, Design, RDParams};
use crate::error::{Error, Result};

/// Resolvable design from `m` MOLS of side `n`, each with first row `(1, …, n)`.
///
/// The first row of every square is dropped; row `x` of square `L_i` becomes
/// the `n × n` permutation block `N_{i,x}` whose column `c` has its 1 in row
/// `L_i[x][c]`. Blocks are laid out with squares as block rows and `x = 2..n`
/// as block columns. Parameters: `v = mn`, `b = n(n−1)`, `r = n − 1`,
/// `k = m`, `λ = (0, 0, 1)`.
pub fn thm7_from_mols(set: &MolsSet, m: usize) -> Result<Design> {
    let n = set.side();
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} < 2")));
    }
    if set.len() < m {
        return Err(Error::Precondition(format!("need {m} squares, only {} given", set.len())));
    }
    let first: Vec<u32> = (1..=n as u32).collect();
    for (i, sq) in set.squares().iter().take(m).enumerate() {
        if sq[0] != first {
            return Err(Error::Precondition(format!("square {} does not start with row (1, ..., {n})", i + 1)));
        }
    }
    let grid = set.squares()[..m]
        .iter()
        .map(|sq| {
            (1..n)
                .map(|x| BinaryMatrix::from_fn(n, n, |sym, c| sq[x][c] as usize == sym + 1))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let (mm, nn) = (m as u64, n as u64);
    let params = RDParams::new(mm * nn, nn * (nn - 1), nn - 1, mm, 0, 0, 1, mm, nn);
    Design::new(BinaryMatrix::block_grid(&grid)?, params)
}

/// [`thm7_from_mols`] with all `q − 1` field MOLS: `v = q² − q`, `k = q − 1`, `λ = (0, 0, 1)`.
pub fn cor8(q: u64) -> Result<Design> {
    let set = mols(q)?;
    thm7_from_mols(&set, set.len())
}

/// Replace every `n × n` block `N_ij` of a [`thm7_from_mols`] design by `I + N_ij`.
///
/// Each block must have zero diagonal. Parameters: `r = 2(n−1)`, `k = 2m`,
/// `λ = (2, n − 1, 3)`.
pub fn cor9_shifted(d: &Design) -> Result<Design> {
    let p = *d.params();
    let n = p.n as usize;
    let inc = d.incidence();
    if inc.n_cols() % n != 0 {
        return Err(Error::Precondition(format!("{} blocks do not split into groups of {n}", inc.n_cols())));
    }
    for row in 0..inc.n_rows() {
        for col in 0..inc.n_cols() {
            if row % n == col % n && inc.is_set(row, col) {
                return Err(Error::ConstructionConflict(format!(
                    "block ({}, {}) has a fixed point at treatment {}",
                    row / n + 1,
                    col / n + 1,
                    row + 1
                )));
            }
        }
    }
    let shifted = BinaryMatrix::from_fn(inc.n_rows(), inc.n_cols(), |r, c| inc.is_set(r, c) || r % n == c % n)?;
    let params = RDParams::new(p.v, p.b, 2 * (p.n - 1), 2 * p.m, 2, p.n - 1, 3, p.m, p.n);
    Design::new(shifted, params)
}

/// [`cor9_shifted`] applied to [`cor8`]: `v = q² − q`, `k = 2(q − 1)`, `λ = (2, q − 1, 3)`.
pub fn cor9(q: u64) -> Result<Design> {
    cor9_shifted(&cor8(q)?)
}

/// Complement of [`cor8`]: `k = (q−1)²`, `λ = ((q−1)(q−2), (q−1)(q−2), (q−1)(q−2) + 1)`.
pub fn cor10(q: u64) -> Result<Design> {
    let d = complement_design(&cor8(q)?)?;
    let a = (q - 1) * (q - 2);
    let want = RDParams::symmetric(q - 1, q, (q - 1) * (q - 1), (a, a, a + 1));
    if *d.params() != want {
        return Err(Error::ConstructionConflict(format!("complement has {}, expected {want}", d.params())));
    }
    Ok(d)
}

/// `[C^{ij}]` (or `[I + C^{ij}]` when `shifted`) for `i, j = 1..p−1`, `C` the basic circulant of prime order `p`.
pub fn cor11_circulant(p: u64, shifted: bool) -> Result<Design> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let n = p as usize;
    let grid = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    let c = BinaryMatrix::basic_circulant_power(n, (i * j) % n)?;
                    if shifted {
                        c.disjoint_sum(&BinaryMatrix::identity(n)?)
                            .map_err(|_| Error::ConstructionConflict(format!("C^{} has a fixed point", i * j)))
                    } else {
                        Ok(c)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let params = if shifted {
        RDParams::symmetric(p - 1, p, 2 * (p - 1), (2, p - 1, 3))
    } else {
        RDParams::symmetric(p - 1, p, p - 1, (0, 0, 1))
    };
    Design::new(BinaryMatrix::block_grid(&grid)?, params)
}
