//! Strongly regular graphs `srg(v, k, λ, μ)` given by adjacency matrices.

use super::field::FiniteField;
use crate::binmat::{matmul, BinaryMatrix, MatrixView};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrgGraph {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
    adjacency: BinaryMatrix,
}

impl SrgGraph {
    /// Wrap an adjacency matrix claimed to be `srg(v, k, λ, μ)` after verification.
    pub fn new(adjacency: BinaryMatrix, k: usize, lambda: usize, mu: usize) -> Result<Self> {
        let g = Self { v: adjacency.n_rows(), k, lambda, mu, adjacency };
        let problems = srg_verify(&g);
        if !problems.is_empty() {
            return Err(Error::Verification(problems.join("; ")));
        }
        Ok(g)
    }

    /// Read `(k, λ, μ)` off an adjacency matrix and verify.
    pub fn from_adjacency(adjacency: BinaryMatrix) -> Result<Self> {
        let v = adjacency.n_rows();
        let k = adjacency.row_sums().first().copied().unwrap_or(0);
        let a2 = matmul(&adjacency, &adjacency)?;
        let (mut lambda, mut mu) = (None, None);
        for i in 0..v {
            for j in (i + 1)..v {
                let slot = if adjacency.is_set(i, j) { &mut lambda } else { &mut mu };
                slot.get_or_insert(a2.get(i, j) as usize);
            }
        }
        Self::new(adjacency, k, lambda.unwrap_or(0), mu.unwrap_or(0))
    }

    pub fn adjacency(&self) -> &BinaryMatrix {
        &self.adjacency
    }

    /// The second association matrix `J − I − A`.
    pub fn complement_adjacency(&self) -> BinaryMatrix {
        let a = &self.adjacency;
        BinaryMatrix::from_fn(self.v, self.v, |i, j| i != j && !a.is_set(i, j)).expect("v >= 1")
    }
}

/// Symmetry, zero diagonal, `0 < k < v − 1`, degree regularity and
/// `A² = kI + λA + μ(J − I − A)`; returns every violation.
pub fn srg_verify(g: &SrgGraph) -> Vec<String> {
    let a = &g.adjacency;
    let v = a.n_rows();
    let mut out = Vec::new();
    if !a.is_square() {
        out.push(format!("adjacency is {}x{}", a.n_rows(), a.n_cols()));
        return out;
    }
    if g.v != v {
        out.push(format!("claimed v = {} but adjacency has order {v}", g.v));
    }
    if !(0 < g.k && g.k + 1 < v) {
        out.push(format!("degree k = {} outside 0 < k < v - 1 = {}", g.k, v.saturating_sub(1)));
    }
    for i in 0..v {
        if a.is_set(i, i) {
            out.push(format!("loop at vertex {}", i + 1));
        }
        for j in (i + 1)..v {
            if a.get(i, j) != a.get(j, i) {
                out.push(format!("asymmetric pair ({}, {})", i + 1, j + 1));
            }
        }
    }
    for (i, d) in a.row_sums().into_iter().enumerate() {
        if d != g.k {
            out.push(format!("vertex {} has degree {d}, expected {}", i + 1, g.k));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let a2 = match matmul(a, a) {
        Ok(m) => m,
        Err(e) => return vec![e.to_string()],
    };
    for i in 0..v {
        for j in 0..v {
            let want = if i == j {
                g.k
            } else if a.is_set(i, j) {
                g.lambda
            } else {
                g.mu
            };
            if a2.entry(i, j) != want as i64 {
                out.push(format!(
                    "vertices ({}, {}) have {} common neighbours, expected {want}",
                    i + 1,
                    j + 1,
                    a2.entry(i, j)
                ));
            }
        }
    }
    out
}

/// The Paley graph on `GF(q)`, `q ≡ 1 (mod 4)`: `srg(q, (q−1)/2, (q−5)/4, (q−1)/4)`.
pub fn paley_srg(q: u64) -> Result<SrgGraph> {
    if q % 4 != 1 {
        return Err(Error::Precondition(format!("Paley graph needs q ≡ 1 (mod 4), got {q}")));
    }
    let f = FiniteField::new(q)?;
    let sq = f.square_table();
    let n = q as usize;
    let adjacency = BinaryMatrix::from_fn(n, n, |i, j| sq[f.sub(i as u16, j as u16) as usize])?;
    SrgGraph::new(adjacency, (n - 1) / 2, (n - 5) / 4, (n - 1) / 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon() {
        let g = paley_srg(5).unwrap();
        assert_eq!((g.v, g.k, g.lambda, g.mu), (5, 2, 0, 1));
        assert_eq!(*g.adjacency(), BinaryMatrix::circulant(&[0, 1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn paley_family() {
        for (q, k, l, m) in [(9, 4, 1, 2), (13, 6, 2, 3), (17, 8, 3, 4), (25, 12, 5, 6)] {
            let g = paley_srg(q).unwrap();
            assert_eq!((g.k, g.lambda, g.mu), (k, l, m));
            assert_eq!(g.mu, g.lambda + 1);
            assert!(srg_verify(&g).is_empty());
        }
        assert!(paley_srg(7).is_err());
    }

    #[test]
    fn complete_graph_rejected() {
        let k4 = BinaryMatrix::identity(4).unwrap().complement();
        assert!(SrgGraph::new(k4, 3, 2, 0).is_err());
    }

    #[test]
    fn path_fails_regularity() {
        let p3 = BinaryMatrix::from_rows(&[[0u8, 1, 0], [1, 0, 1], [0, 1, 0]]).unwrap();
        let problems = srg_verify(&SrgGraph { v: 3, k: 1, lambda: 0, mu: 1, adjacency: p3 });
        assert!(problems.iter().any(|p| p.contains("degree 2")));
    }

    #[test]
    fn recovers_parameters() {
        let g = paley_srg(13).unwrap();
        let h = SrgGraph::from_adjacency(g.adjacency().clone()).unwrap();
        assert_eq!((h.k, h.lambda, h.mu), (6, 2, 3));
    }
}
