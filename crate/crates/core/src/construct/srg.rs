//! Constructions from strongly regular graphs with `μ = λ + 1`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::srg::SrgGraph;
use crate::binmat::BinaryMatrix;
use crate::design::{Design, RDParams};
use crate::error::{Error, Result};

/// Which block pattern to build from the two association matrices `A1`, `A2 = J − I − A1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `[[A1, A2], [A2, A1]]`
    I,
    /// `[[I + A1, I + A2], [I + A2, I + A1]]`
    Ii,
    /// `[[I, A1, A2], [A2, I, A1], [A1, A2, I]]`
    Iii,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "1" => Ok(Variant::I),
            "ii" | "2" => Ok(Variant::Ii),
            "iii" | "3" => Ok(Variant::Iii),
            _ => Err(Error::Recipe(format!("unknown variant `{s}` (expected i, ii or iii)"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "i",
            Variant::Ii => "ii",
            Variant::Iii => "iii",
        })
    }
}

/// Predicted parameters for `srg(v, k, λ, λ + 1)`.
pub fn thm8_params(v: u64, k: u64, lambda: u64, variant: Variant) -> Result<RDParams> {
    let bad = || Error::Ineligible(format!("srg({v}, {k}, {lambda}, {}) gives negative λ", lambda + 1));
    let d = k.checked_sub(lambda).ok_or_else(bad)?;
    Ok(match variant {
        Variant::I => {
            // concurrence within a row is A1² + A2² off the diagonal: v − 2(k − λ)
            let l1 = v.checked_sub(2 * d).ok_or_else(bad)?;
            let l3 = 2 * d.checked_sub(1).ok_or_else(bad)?;
            RDParams::symmetric(2, v, v - 1, (l1, 0, l3))
        }
        Variant::Ii => {
            let l1 = (v + 2).checked_sub(2 * d).ok_or_else(bad)?;
            RDParams::symmetric(2, v, v + 1, (l1, 2, 2 * d))
        }
        Variant::Iii => {
            let l1 = v.checked_sub(2 * d).ok_or_else(bad)?;
            RDParams::symmetric(3, v, v, (l1, 0, d))
        }
    })
}

/// Rectangular design from an `srg(v, k, λ, μ)` with `μ = λ + 1`.
pub fn thm8(g: &SrgGraph, variant: Variant) -> Result<Design> {
    if g.mu != g.lambda + 1 {
        return Err(Error::Ineligible(format!(
            "srg({}, {}, {}, {}) does not have μ = λ + 1",
            g.v, g.k, g.lambda, g.mu
        )));
    }
    let a1 = g.adjacency().clone();
    let a2 = g.complement_adjacency();
    let i = BinaryMatrix::identity(g.v)?;
    let plus_i = |a: &BinaryMatrix| {
        a.disjoint_sum(&i).map_err(|_| Error::ConstructionConflict("adjacency has a loop".into()))
    };
    let grid = match variant {
        Variant::I => vec![vec![a1.clone(), a2.clone()], vec![a2, a1]],
        Variant::Ii => {
            let (b1, b2) = (plus_i(&a1)?, plus_i(&a2)?);
            vec![vec![b1.clone(), b2.clone()], vec![b2, b1]]
        }
        Variant::Iii => vec![
            vec![i.clone(), a1.clone(), a2.clone()],
            vec![a2.clone(), i.clone(), a1.clone()],
            vec![a1, a2, i],
        ],
    };
    let params = thm8_params(g.v as u64, g.k as u64, g.lambda as u64, variant)?;
    Design::new(BinaryMatrix::block_grid(&grid)?, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::srg::paley_srg;
    use crate::design::params_from_matrix;

    #[test]
    fn pentagon_variants() {
        let g = paley_srg(5).unwrap();
        let d = thm8(&g, Variant::I).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(2, 5, 4, (1, 0, 2)));
        let d = thm8(&g, Variant::Ii).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(2, 5, 6, (3, 2, 4)));
        let d = thm8(&g, Variant::Iii).unwrap();
        assert_eq!(*d.params(), RDParams::symmetric(3, 5, 5, (1, 0, 2)));
    }

    #[test]
    fn paley9_matches_recomputed() {
        let g = paley_srg(9).unwrap();
        for v in [Variant::I, Variant::Ii, Variant::Iii] {
            let d = thm8(&g, v).unwrap();
            let m = d.params().m;
            assert_eq!(params_from_matrix(d.incidence(), m, 9).unwrap(), *d.params());
        }
    }

    #[test]
    fn rejects_mu_mismatch() {
        // 4 × 4 rook's graph: srg(16, 6, 2, 2)
        let n = 16;
        let adj = BinaryMatrix::from_fn(n, n, |a, b| a != b && (a / 4 == b / 4 || a % 4 == b % 4)).unwrap();
        let g = SrgGraph::from_adjacency(adj).unwrap();
        assert_eq!((g.k, g.lambda, g.mu), (6, 2, 2));
        assert!(matches!(thm8(&g, Variant::I), Err(Error::Ineligible(_))));
    }

    #[test]
    fn variant_parse() {
        assert_eq!("ii".parse::<Variant>().unwrap(), Variant::Ii);
        assert!("iv".parse::<Variant>().is_err());
    }
}
