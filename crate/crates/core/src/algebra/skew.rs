//! Skew-Hadamard designs: `(4t−1, 2t−1, t−1)` designs with `N + Nᵀ = J − I`.
//!
//! When `4t − 1` is a prime power the design is the Paley one: `N[i][j] = 1`
//! iff `x_j − x_i` is a nonzero square in `GF(4t−1)`. Otherwise a skew
//! Hadamard matrix of order `4t` is built by repeated doubling
//! `[[H, H], [−Hᵀ, Hᵀ]]` from a Paley matrix (or the order-2 matrix), and `N`
//! is read off its normalized core.

use super::field::{prime_power, FiniteField};
use crate::binmat::{matmul, two_valued, BinaryMatrix, IntMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewHadamardDesign {
    t: usize,
    incidence: BinaryMatrix,
}

impl SkewHadamardDesign {
    /// Wrap an incidence matrix (e.g. loaded from a file) after checking every identity.
    pub fn from_incidence(incidence: BinaryMatrix) -> Result<Self> {
        let n = incidence.n_rows();
        if !incidence.is_square() || n % 4 != 3 {
            return Err(Error::InvalidShape(format!(
                "skew-Hadamard design needs a square matrix of order 4t-1, got {}x{}",
                n,
                incidence.n_cols()
            )));
        }
        let d = Self { t: (n + 1) / 4, incidence };
        let problems = d.check_identities()?;
        if !problems.is_empty() {
            return Err(Error::Verification(problems.join("; ")));
        }
        Ok(d)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> usize {
        4 * self.t - 1
    }

    pub fn incidence(&self) -> &BinaryMatrix {
        &self.incidence
    }

    /// The four identities
    /// `N + Nᵀ = Iᶜ`, `N Nᵀ = Nᵀ N = (2t−1)I + (t−1)Iᶜ`,
    /// `N² + N = (Nᵀ)² + Nᵀ = t Iᶜ`, `N² + (Nᵀ)² = (2t−1) Iᶜ`;
    /// returns a description of each failure.
    pub fn check_identities(&self) -> Result<Vec<String>> {
        let n = self.order();
        let t = self.t as i64;
        let nm = self.incidence.to_int();
        let nt = self.incidence.transpose().to_int();
        let i_c = two_valued(n, 0, 1);
        let mut out = Vec::new();
        let mut expect = |name: &str, got: IntMatrix, want: &IntMatrix| {
            if &got != want {
                out.push(format!("{name} fails"));
            }
        };
        expect("N + Nᵀ = Iᶜ", nm.checked_add(&nt)?, &i_c);
        let gram = two_valued(n, 2 * t - 1, t - 1);
        expect("N Nᵀ", matmul(&nm, &nt)?, &gram);
        expect("Nᵀ N", matmul(&nt, &nm)?, &gram);
        let n2 = matmul(&nm, &nm)?;
        let nt2 = matmul(&nt, &nt)?;
        let t_ic = two_valued(n, 0, t);
        expect("N² + N = tIᶜ", n2.checked_add(&nm)?, &t_ic);
        expect("(Nᵀ)² + Nᵀ = tIᶜ", nt2.checked_add(&nt)?, &t_ic);
        expect("N² + (Nᵀ)² = (2t−1)Iᶜ", n2.checked_add(&nt2)?, &two_valued(n, 0, 2 * t - 1));
        Ok(out)
    }
}

/// The skew-Hadamard design of order `4t − 1`.
pub fn skew_hadamard_design(t: usize) -> Result<SkewHadamardDesign> {
    if t == 0 {
        return Err(Error::InvalidDimension("t = 0".into()));
    }
    let n = 4 * t - 1;
    let incidence = if prime_power(n as u64).is_some() {
        paley_incidence(n)?
    } else {
        let h = skew_hadamard_matrix(4 * t).ok_or_else(|| {
            Error::UnsupportedOrder(format!("no built-in skew-Hadamard design of order {n}; load one from a file"))
        })?;
        core_incidence(&h)?
    };
    let d = SkewHadamardDesign { t, incidence };
    let problems = d.check_identities()?;
    if !problems.is_empty() {
        return Err(Error::Verification(format!("skew-Hadamard design t={t}: {}", problems.join("; "))));
    }
    Ok(d)
}

fn paley_incidence(n: usize) -> Result<BinaryMatrix> {
    let f = FiniteField::new(n as u64)?;
    let sq = f.square_table();
    BinaryMatrix::from_fn(n, n, |i, j| sq[f.sub(j as u16, i as u16) as usize])
}

type SignMatrix = Vec<Vec<i8>>;

/// A skew Hadamard matrix (`H Hᵀ = nI`, `H − I` skew-symmetric) of order `n`, if one of the built-in families covers it.
fn skew_hadamard_matrix(n: usize) -> Option<SignMatrix> {
    if n == 2 {
        return Some(vec![vec![1, 1], vec![-1, 1]]);
    }
    if n % 4 != 0 {
        return None;
    }
    if let Some((_, _)) = prime_power(n as u64 - 1) {
        return paley_matrix(n - 1).ok();
    }
    let half = skew_hadamard_matrix(n / 2)?;
    Some(double(&half))
}

/// Paley type I skew Hadamard matrix of order `q + 1` for `q ≡ 3 (mod 4)`.
fn paley_matrix(q: usize) -> Result<SignMatrix> {
    let f = FiniteField::new(q as u64)?;
    let sq = f.square_table();
    let n = q + 1;
    let mut h = vec![vec![0i8; n]; n];
    for j in 0..n {
        h[0][j] = 1;
    }
    for i in 1..n {
        h[i][0] = -1;
        for j in 1..n {
            h[i][j] = if i == j {
                1
            } else if sq[f.sub(j as u16 - 1, i as u16 - 1) as usize] {
                1
            } else {
                -1
            };
        }
    }
    Ok(h)
}

fn double(h: &SignMatrix) -> SignMatrix {
    let n = h.len();
    let mut k = vec![vec![0i8; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            k[i][j] = h[i][j];
            k[i][n + j] = h[i][j];
            k[n + i][j] = -h[j][i];
            k[n + i][n + j] = h[j][i];
        }
    }
    k
}

/// Normalize `D H D` with `D = diag(H[0][·])` so the first row is all ones,
/// then take the off-diagonal `+1` entries of the core.
fn core_incidence(h: &SignMatrix) -> Result<BinaryMatrix> {
    let n = h.len();
    let d: Vec<i8> = h[0].clone();
    let g = |i: usize, j: usize| d[i] * h[i][j] * d[j];
    BinaryMatrix::from_fn(n - 1, n - 1, |i, j| i != j && g(i + 1, j + 1) == 1)
}
