//! Kronecker-type constructions from 2-designs and skew-Hadamard designs.

use crate::algebra::skew::{skew_hadamard_design, SkewHadamardDesign};
use crate::binmat::{as_two_valued, matmul, BinaryMatrix};
use crate::design::{Design, RDParams};
use crate::error::{Error, Result};

/// Parameters `(v, b, r, k, λ)` of a 2-design incidence matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BibdParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

impl BibdParams {
    pub fn is_symmetric(&self) -> bool {
        self.v == self.b
    }
}

/// Check that `n` is the incidence matrix of a 2-design and return its parameters.
pub fn bibd_params(n: &BinaryMatrix) -> Result<BibdParams> {
    let rows = n.row_sums();
    let cols = n.col_sums();
    if rows.iter().any(|&r| r != rows[0]) {
        return Err(Error::Ineligible("2-design has unequal replications".into()));
    }
    if cols.iter().any(|&c| c != cols[0]) {
        return Err(Error::Ineligible("2-design has unequal block sizes".into()));
    }
    let g = n.gram();
    let (diag, off) = as_two_valued(&g).map_err(|(i, j)| {
        Error::Ineligible(format!(
            "not a 2-design: treatments {} and {} concur {} times",
            i + 1,
            j + 1,
            g.get(i, j)
        ))
    })?;
    debug_assert_eq!(diag as usize, rows[0]);
    Ok(BibdParams {
        v: n.n_rows() as u64,
        b: n.n_cols() as u64,
        r: rows[0] as u64,
        k: cols[0] as u64,
        lambda: off as u64,
    })
}

/// Like [`bibd_params`], additionally requiring `v = b`.
pub fn sbibd_params(n: &BinaryMatrix) -> Result<BibdParams> {
    let p = bibd_params(n)?;
    if !p.is_symmetric() {
        return Err(Error::Ineligible(format!("2-design with v = {} and b = {} is not symmetric", p.v, p.b)));
    }
    Ok(p)
}

/// `N1 × N2` for symmetric 2-designs: `m = v1`, `n = v2`,
/// `r = k = k1 k2`, `λ = (k1 λ2, λ1 k2, λ1 λ2)`.
pub fn lemma1_kronecker(n1: &BinaryMatrix, n2: &BinaryMatrix) -> Result<Design> {
    let a = sbibd_params(n1)?;
    let b = sbibd_params(n2)?;
    if a.v < 2 || b.v < 2 {
        return Err(Error::Precondition("Kronecker factors need at least 2 treatments each".into()));
    }
    let params = RDParams::symmetric(a.v, b.v, a.k * b.k, (a.k * b.lambda, a.lambda * b.k, a.lambda * b.lambda));
    Design::new(n1.kronecker(n2), params)
}

/// `N = N1 × N2 + (J − N1) × I` with `N2` the skew-Hadamard design of order `4t − 1`.
///
/// `N1` may be any 2-design `(v1, b1, r1, k1, λ')`; the result has
/// `v = (4t−1)v1`, `b = (4t−1)b1`, `r = 2r1(t−1) + b1`, `k = 2k1(t−1) + v1`,
/// `λ = ((t−1)r1, b1 − 2r1 + 2tλ', r1 + λ'(t−2))`, `m = v1`, `n = 4t − 1`.
pub fn thm3(n1: &BinaryMatrix, sh: &SkewHadamardDesign) -> Result<Design> {
    let p = bibd_params(n1)?;
    if p.v < 2 {
        return Err(Error::Precondition("N1 needs at least 2 treatments".into()));
    }
    let t = sh.t() as u64;
    let n = sh.order();
    let n2 = sh.incidence();
    let identity = BinaryMatrix::identity(n)?;
    let left = n1.kronecker(n2);
    let right = n1.complement().kronecker(&identity);
    let incidence = left
        .disjoint_sum(&right)
        .map_err(|(i, j)| Error::ConstructionConflict(format!("overlapping entries at ({}, {})", i + 1, j + 1)))?;
    let lambda2 = (p.b + 2 * t * p.lambda)
        .checked_sub(2 * p.r)
        .ok_or_else(|| Error::Ineligible(format!("λ2 = b1 − 2r1 + 2tλ' is negative for {p:?}")))?;
    let lambda3 = (p.r + p.lambda * t).checked_sub(2 * p.lambda).expect("r1 >= λ'");
    let params = RDParams::new(
        p.v * n as u64,
        p.b * n as u64,
        2 * p.r * (t - 1) + p.b,
        2 * p.k * (t - 1) + p.v,
        (t - 1) * p.r,
        lambda2,
        lambda3,
        p.v,
        n as u64,
    );
    Design::new(incidence, params)
}

/// [`thm3`] with the built-in skew-Hadamard design for `t`.
pub fn thm3_t(n1: &BinaryMatrix, t: usize) -> Result<Design> {
    thm3(n1, &skew_hadamard_design(t)?)
}

/// `N = I_m × N1 + I_mᶜ × N2` for symmetric 2-designs `N1`, `N2` on `n`
/// treatments with `N1 N2ᵀ + N2 N1ᵀ = μ1 I + μ2 Iᶜ`.
///
/// Parameters: `r = k = k1 + (m−1)k2`,
/// `λ = (λ1 + (m−1)λ2, (m−2)k2 + μ1, (m−2)λ2 + μ2)`.
pub fn thm4(n1: &BinaryMatrix, n2: &BinaryMatrix, m: usize) -> Result<Design> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} < 2")));
    }
    let a = sbibd_params(n1)?;
    let b = sbibd_params(n2)?;
    if a.v != b.v {
        return Err(Error::Precondition(format!("N1 has order {} but N2 has order {}", a.v, b.v)));
    }
    let cross = matmul(n1, &n2.transpose())?.checked_add(&matmul(n2, &n1.transpose())?)?;
    let (mu1, mu2) = as_two_valued(&cross).map_err(|(i, j)| {
        Error::Precondition(format!(
            "N1 N2ᵀ + N2 N1ᵀ is not of the form μ1 I + μ2 Iᶜ: entry ({}, {}) is {}",
            i + 1,
            j + 1,
            cross.get(i, j)
        ))
    })?;
    let mm = m as u64;
    let grid: Vec<Vec<BinaryMatrix>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { n1.clone() } else { n2.clone() }).collect()).collect();
    let incidence = BinaryMatrix::block_grid(&grid)?;
    let params = RDParams::symmetric(
        mm,
        a.v,
        a.k + (mm - 1) * b.k,
        (a.lambda + (mm - 1) * b.lambda, (mm - 2) * b.k + mu1 as u64, (mm - 2) * b.lambda + mu2 as u64),
    );
    let d = Design::new(incidence, params)?;
    let nt = d.incidence().transpose();
    if nt.gram() != d.incidence().gram() {
        return Err(Error::Verification("N Nᵀ ≠ Nᵀ N".into()));
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// `(N, I)`
    C1,
    /// `(I + N, I)`
    C2,
    /// `(I, N)`
    C3,
    /// `(I, w)` with `w = circ(0, 1, 0)`: the `t = 1` case of `C3`.
    C4,
    /// `(N, Nᵀ)`
    C5,
    /// `(I + N, I + Nᵀ)`
    C6,
    /// `(I + N, Nᵀ)`
    C7,
}

impl Corollary {
    pub fn from_number(k: u32) -> Option<Self> {
        Some(match k {
            1 => Self::C1,
            2 => Self::C2,
            3 => Self::C3,
            4 => Self::C4,
            5 => Self::C5,
            6 => Self::C6,
            7 => Self::C7,
            _ => return None,
        })
    }

    /// Closed-form `(k, λ1, λ2, λ3)` of the series.
    pub fn closed_form(self, m: u64, t: u64) -> (u64, (u64, u64, u64)) {
        let t = if self == Self::C4 { 1 } else { t };
        match self {
            Self::C1 => (m + 2 * t - 2, (t - 1, m - 2, 1)),
            Self::C2 => (m + 2 * t - 1, (t, m, 1)),
            Self::C3 | Self::C4 => (
                (m - 1) * (2 * t - 1) + 1,
                ((m - 1) * (t - 1), (m - 2) * (2 * t - 1), (m - 2) * (t - 1) + 1),
            ),
            Self::C5 => (m * (2 * t - 1), (m * (t - 1), (m - 2) * (2 * t - 1), m * (t - 1) + 1)),
            Self::C6 => (2 * m * t, (m * t, 2 * t * (m - 2) + 2, m * t + 1)),
            Self::C7 => (m * (2 * t - 1) + 1, (m * (t - 1) + 1, (m - 2) * (2 * t - 1), m * (t - 1) + 2)),
        }
    }
}

/// One of the [`thm4`] series built from the skew-Hadamard design `N` of order `4t − 1`.
pub fn corollary_preset(which: Corollary, m: usize, t: usize) -> Result<Design> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} < 2")));
    }
    let t = if which == Corollary::C4 { 1 } else { t };
    let sh = skew_hadamard_design(t)?;
    let n = sh.incidence().clone();
    let nt = n.transpose();
    let i = BinaryMatrix::identity(sh.order())?;
    let plus_i = |a: &BinaryMatrix| -> Result<BinaryMatrix> {
        a.disjoint_sum(&i).map_err(|_| Error::ConstructionConflict("I + N overlaps".into()))
    };
    let (n1, n2) = match which {
        Corollary::C1 => (n.clone(), i.clone()),
        Corollary::C2 => (plus_i(&n)?, i.clone()),
        Corollary::C3 | Corollary::C4 => (i.clone(), n.clone()),
        Corollary::C5 => (n.clone(), nt.clone()),
        Corollary::C6 => (plus_i(&n)?, plus_i(&nt)?),
        Corollary::C7 => (plus_i(&n)?, nt.clone()),
    };
    let d = thm4(&n1, &n2, m)?;
    let (k, lambdas) = which.closed_form(m as u64, t as u64);
    if (d.params().k, d.params().lambdas()) != (k, lambdas) {
        return Err(Error::ConstructionConflict(format!(
            "{which:?} closed form k={k} λ={lambdas:?} disagrees with {}",
            d.params()
        )));
    }
    Ok(d)
}

/// `N = M × I_nᶜ` for a 2-design `M` with `(n − 1)² = kr / (r − λ)`; a Latin regular design.
pub fn thm5_latin_regular(mdesign: &BinaryMatrix, n: usize) -> Result<Design> {
    let p = bibd_params(mdesign)?;
    if n < 2 || p.v < 2 {
        return Err(Error::Precondition("need n >= 2 and v >= 2".into()));
    }
    let nn = n as u64;
    if p.r <= p.lambda || (nn - 1) * (nn - 1) * (p.r - p.lambda) != p.k * p.r {
        return Err(Error::Ineligible(format!(
            "(n−1)² = {} but kr/(r−λ) = {}/{}",
            (nn - 1) * (nn - 1),
            p.k * p.r,
            p.r.saturating_sub(p.lambda)
        )));
    }
    let ic = BinaryMatrix::identity(n)?.complement();
    let params = RDParams::new(
        p.v * nn,
        p.b * nn,
        p.r * (nn - 1),
        p.k * (nn - 1),
        (nn - 2) * p.r,
        p.lambda * (nn - 1),
        p.lambda * (nn - 2),
        p.v,
        nn,
    );
    Design::new(mdesign.kronecker(&ic), params)
}

/// The Fano plane, 2-(7, 3, 1), as the order-7 skew-Hadamard design.
pub fn fano() -> BinaryMatrix {
    skew_hadamard_design(2).expect("order 7 is a prime").incidence().clone()
}

/// The affine plane of order 3, 2-(9, 3, 1): point `(x, y)` is treatment
/// `3x + y`; lines in parallel classes `x = c`, `y = c`, `y = x + c`, `y = 2x + c`.
pub fn ag23() -> BinaryMatrix {
    let on_line = |pt: usize, line: usize| {
        let (x, y) = (pt / 3, pt % 3);
        let (class, c) = (line / 3, line % 3);
        match class {
            0 => x == c,
            1 => y == c,
            2 => y == (x + c) % 3,
            _ => y == (2 * x + c) % 3,
        }
    };
    BinaryMatrix::from_fn(9, 12, on_line).expect("nonzero size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{params_from_matrix, ClassTag};

    #[test]
    fn fano_squared() {
        let d = lemma1_kronecker(&fano(), &fano()).unwrap();
        let p = params_from_matrix(d.incidence(), 7, 7).unwrap();
        assert_eq!((p.r, p.k, p.lambdas()), (9, 9, (3, 3, 1)));
    }

    #[test]
    fn fano_times_w() {
        let w = BinaryMatrix::circulant(&[0, 1, 0]).unwrap();
        let d = lemma1_kronecker(&fano(), &w).unwrap();
        let p = params_from_matrix(d.incidence(), 7, 3).unwrap();
        assert_eq!((p.r, p.k, p.lambdas()), (3, 3, (0, 1, 0)));
    }

    #[test]
    fn thm3_with_identity() {
        let i2 = BinaryMatrix::identity(2).unwrap();
        let d = thm3_t(&i2, 3).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(2, 11, 6, (2, 0, 1)));
        let d = thm3_t(&i2, 4).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(2, 15, 8, (3, 0, 1)));
    }

    #[test]
    fn thm3_with_fano_t1() {
        let d = thm3_t(&fano(), 1).unwrap();
        let p = params_from_matrix(d.incidence(), 7, 3).unwrap();
        assert_eq!(p, *d.params());
        assert_eq!((p.k, p.lambda1), (7, 0));
    }

    #[test]
    fn thm3_with_nonsymmetric_design() {
        let d = thm3_t(&ag23(), 2).unwrap();
        let p = d.params();
        assert_eq!((p.v, p.b, p.r, p.k), (63, 84, 20, 15));
    }

    #[test]
    fn thm4_examples() {
        let sh = skew_hadamard_design(2).unwrap();
        let n = sh.incidence();
        let i7 = BinaryMatrix::identity(7).unwrap();
        let d = thm4(n, &i7, 2).unwrap();
        assert_eq!((d.params().k, d.params().lambdas()), (4, (1, 0, 1)));
        let d = thm4(&n.disjoint_sum(&i7).unwrap(), &i7, 2).unwrap();
        assert_eq!((d.params().k, d.params().lambdas()), (5, (2, 2, 1)));
        let d = thm4(n, &n.transpose(), 2).unwrap();
        assert_eq!((d.params().k, d.params().lambdas()), (6, (2, 0, 3)));
    }

    #[test]
    fn thm4_rejects_unbalanced_cross_product() {
        // Fano with two blocks swapped is still a 2-design, but the cross product is not two-valued
        let fano = fano();
        let swapped = BinaryMatrix::from_fn(7, 7, |i, j| fano.is_set(i, [1, 0, 2, 3, 4, 5, 6][j])).unwrap();
        assert!(matches!(thm4(&fano, &swapped, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn corollaries_match_closed_forms() {
        for which in [Corollary::C1, Corollary::C2, Corollary::C3, Corollary::C5, Corollary::C6, Corollary::C7] {
            for m in 2..=4 {
                for t in 1..=3 {
                    let d = corollary_preset(which, m, t).unwrap();
                    assert_eq!(d.params().n, 4 * t as u64 - 1);
                }
            }
        }
        let d = corollary_preset(Corollary::C6, 2, 2).unwrap();
        assert_eq!((d.params().k, d.params().lambdas()), (8, (4, 2, 5)));
        let d = corollary_preset(Corollary::C4, 3, 1).unwrap();
        assert_eq!((d.params().v, d.params().k, d.params().lambdas()), (9, 3, (0, 1, 1)));
        let d = corollary_preset(Corollary::C3, 2, 1).unwrap();
        assert!(d.classify().unwrap().tag.is_semi_regular());
    }

    #[test]
    fn thm5_affine_plane() {
        let d = thm5_latin_regular(&ag23(), 3).unwrap();
        assert_eq!(*d.params(), RDParams::new(27, 36, 8, 6, 4, 2, 1, 9, 3));
        assert_eq!(d.classify().unwrap().tag, ClassTag::LatinRegular);
        assert!(matches!(thm5_latin_regular(&fano(), 3), Err(Error::Ineligible(_))));
        assert!(matches!(thm5_latin_regular(&ag23(), 4), Err(Error::Ineligible(_))));
    }

    #[test]
    fn builtin_designs() {
        let p = bibd_params(&ag23()).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (9, 12, 4, 3, 1));
        let p = sbibd_params(&fano()).unwrap();
        assert_eq!((p.v, p.k, p.lambda), (7, 3, 1));
        assert!(sbibd_params(&ag23()).is_err());
    }
}
