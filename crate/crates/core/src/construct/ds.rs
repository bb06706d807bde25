//! Designs from difference schemes `DS(m, s; x)`, `m = xs`.
//!
//! Each entry `e` of the scheme becomes the `s × s` permutation matrix of
//! translation by `e`. Treatment `(j, a)` (scheme column `j`, group element
//! `a`) is row `j·s + a`; block `(i, c)` (scheme row `i`) is column `i·s + c`,
//! and contains `(j, a)` exactly when `c = a + e[i][j]`. The scheme columns
//! are the treatment groups (array rows) and the scheme rows the resolution
//! classes.

use crate::algebra::ds::{group_permutation, DifferenceScheme};
use crate::binmat::BinaryMatrix;
use crate::design::{Design, RDParams};
use crate::error::{Error, Result};

fn check_scheme(ds: &DifferenceScheme) -> Result<(u64, u64)> {
    if ds.x() == 0 {
        return Err(Error::Precondition("the 1 × 1 scheme gives no design".into()));
    }
    Ok((ds.x() as u64, ds.s() as u64))
}

fn substituted(ds: &DifferenceScheme) -> Result<BinaryMatrix> {
    let g = ds.group();
    let grid = (0..ds.m())
        .map(|j| (0..ds.m()).map(|i| group_permutation(ds.get(i, j), g)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    BinaryMatrix::block_grid(&grid)
}

/// The resolvable group divisible design `(xs², xs², xs, xs; 0, x, x)` with `m = xs`, `n = s`.
pub fn thm9_gdd(ds: &DifferenceScheme) -> Result<Design> {
    let (x, s) = check_scheme(ds)?;
    let m = x * s;
    let params = RDParams::new(m * s, m * s, m, m, 0, x, x, m, s);
    Design::new(substituted(ds)?, params)
}

/// [`thm9_gdd`] without the resolution class of the all-zero scheme row:
/// `(xs², s(xs−1), xs−1, xs; 0, x−1, x)`, a latin semi-regular design.
pub fn thm10_lsr(ds: &DifferenceScheme) -> Result<Design> {
    let (x, s) = check_scheme(ds)?;
    let m = x * s;
    if ds.entries()[0].iter().any(|&e| e != 0) {
        return Err(Error::Precondition("scheme row 1 is not all zero".into()));
    }
    let full = substituted(ds)?;
    let inc = full.submatrix(0..full.n_rows(), s as usize..full.n_cols())?;
    let params = RDParams::new(m * s, s * (m - 1), m - 1, m, 0, x - 1, x, m, s);
    Design::new(inc, params)
}

/// [`thm10_lsr`] with the last `t` treatment groups removed, `1 ≤ t ≤ xs − 2`:
/// `(s(xs−t), s(xs−1), xs−1, xs−t; 0, x−1, x)` with `m = xs − t`.
pub fn cor12_truncated(ds: &DifferenceScheme, t: u64) -> Result<Design> {
    let lsr = thm10_lsr(ds)?;
    let (x, s) = check_scheme(ds)?;
    let m = x * s;
    if t == 0 || t + 2 > m {
        return Err(Error::Precondition(format!("t = {t} outside 1..={}", m.saturating_sub(2))));
    }
    let keep = ((m - t) * s) as usize;
    let inc = lsr.incidence().submatrix(0..keep, 0..lsr.incidence().n_cols())?;
    let params = RDParams::new(s * (m - t), s * (m - 1), m - 1, m - t, 0, x - 1, x, m - t, s);
    Design::new(inc, params)
}
