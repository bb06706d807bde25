//! Block-circulant constructions.

use crate::algebra::skew::skew_hadamard_design;
use crate::binmat::BinaryMatrix;
use crate::design::{complement_design, Design, RDParams};
use crate::error::{Error, Result};

/// 5 × 5 block matrix with `I` on the diagonal and `N` / `Nᵀ` placed by the
/// quadratic character of `GF(5)`, `N` the skew-Hadamard design of order `4t − 1`.
///
/// Parameters: `v = 5(4t−1)`, `k = 8t − 3`, `λ = (4(t−1), 2t−1, 3t−1)`, `m = 5`, `n = 4t − 1`.
pub fn thm6(t: usize) -> Result<Design> {
    let sh = skew_hadamard_design(t)?;
    let n = sh.incidence().clone();
    let nt = n.transpose();
    let i = BinaryMatrix::identity(sh.order())?;
    // 0 → I, 1 → N, 2 → Nᵀ
    const PATTERN: [[u8; 5]; 5] =
        [[0, 1, 1, 2, 2], [1, 0, 2, 2, 1], [1, 2, 0, 1, 2], [2, 2, 1, 0, 1], [2, 1, 2, 1, 0]];
    let grid: Vec<Vec<BinaryMatrix>> = PATTERN
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| match c {
                    0 => i.clone(),
                    1 => n.clone(),
                    _ => nt.clone(),
                })
                .collect()
        })
        .collect();
    let t = t as u64;
    let params = RDParams::symmetric(5, 4 * t - 1, 8 * t - 3, (4 * (t - 1), 2 * t - 1, 3 * t - 1));
    Design::new(BinaryMatrix::block_grid(&grid)?, params)
}

/// Complement of [`thm6`]: `k = 2(6t−1)`, `λ = (8t−3, 6t, 7t)`.
pub fn remark7(t: usize) -> Result<Design> {
    let d = complement_design(&thm6(t)?)?;
    let t = t as u64;
    let want = RDParams::symmetric(5, 4 * t - 1, 2 * (6 * t - 1), (8 * t - 3, 6 * t, 7 * t));
    if *d.params() != want {
        return Err(Error::ConstructionConflict(format!("complement has {}, expected {want}", d.params())));
    }
    Ok(d)
}

/// `α^i + α^{p−i}` for the basic circulant `α` of order `p`.
fn symmetric_pair(p: usize, i: usize) -> Result<BinaryMatrix> {
    let a = BinaryMatrix::basic_circulant_power(p, i)?;
    let b = BinaryMatrix::basic_circulant_power(p, p - i)?;
    a.disjoint_sum(&b).map_err(|_| Error::ConstructionConflict(format!("α^{i} and α^{} overlap", p - i)))
}

fn plus_identity(a: &BinaryMatrix) -> Result<BinaryMatrix> {
    a.disjoint_sum(&BinaryMatrix::identity(a.n_rows())?)
        .map_err(|_| Error::ConstructionConflict("I + A overlaps".into()))
}

/// `circ(A1, A2, A3)` with `A_i = α^i + α^{7−i}` of order 7.
///
/// The block rows form a `3 × 7` array; transposing it gives the
/// `m = 7, n = 3` design with `λ = (0, 1, 2)`.
pub fn example2() -> Result<Design> {
    let blocks = (1..=3).map(|i| symmetric_pair(7, i)).collect::<Result<Vec<_>>>()?;
    let natural = Design::new(
        BinaryMatrix::block_circulant(&blocks)?,
        RDParams::symmetric(3, 7, 6, (1, 0, 2)),
    )?;
    natural.transpose_array()
}

/// `circ(I + A1, I + A2, I + A3)` with `A_i = α^i + α^{7−i}`: `m = 3, n = 7`, `λ = (3, 3, 4)`.
pub fn example3() -> Result<Design> {
    let blocks = (1..=3).map(|i| plus_identity(&symmetric_pair(7, i)?)).collect::<Result<Vec<_>>>()?;
    Design::new(BinaryMatrix::block_circulant(&blocks)?, RDParams::symmetric(3, 7, 9, (3, 3, 4)))
}

/// `[[A1 A2 A3 A4 A5], [A2 A4 A5 A3 A1]]` with `A_i = α^i + α^{11−i}` of order 11.
///
/// The two block rows form a `2 × 11` array; transposing it gives the
/// `m = 11, n = 2` design with `b = 55`, `r = 10`, `k = 4`, `λ = (0, 1, 2)`.
pub fn example4() -> Result<Design> {
    let a = (1..=5).map(|i| symmetric_pair(11, i)).collect::<Result<Vec<_>>>()?;
    let rows = vec![a.clone(), vec![a[1].clone(), a[3].clone(), a[4].clone(), a[2].clone(), a[0].clone()]];
    let natural = Design::new(BinaryMatrix::block_grid(&rows)?, RDParams::new(22, 55, 10, 4, 1, 0, 2, 2, 11))?;
    natural.transpose_array()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::params_from_matrix;

    #[test]
    fn thm6_small() {
        let d = thm6(1).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(5, 3, 5, (0, 1, 2)));
        let d = thm6(2).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(5, 7, 13, (4, 3, 5)));
        assert_eq!(d.incidence().transpose().gram(), d.incidence().gram());
    }

    #[test]
    fn remark7_small() {
        let d = remark7(1).unwrap();
        assert_eq!((d.params().k, d.params().lambdas()), (10, (5, 6, 7)));
    }

    #[test]
    fn examples() {
        let d = example2().unwrap();
        assert_eq!(params_from_matrix(d.incidence(), 7, 3).unwrap(), RDParams::symmetric(7, 3, 6, (0, 1, 2)));
        let d = example3().unwrap();
        assert_eq!(params_from_matrix(d.incidence(), 3, 7).unwrap(), RDParams::symmetric(3, 7, 9, (3, 3, 4)));
        let d = example4().unwrap();
        assert_eq!(params_from_matrix(d.incidence(), 11, 2).unwrap(), RDParams::new(22, 55, 10, 4, 0, 1, 2, 11, 2));
    }
}
