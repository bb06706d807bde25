//! Shared corpus for the integration tests.
#![allow(dead_code)]

use rectdesign::construct::{build_str, RecipeContext};
use rectdesign::tables::{bundled, Source, Table};
use rectdesign::{BinaryMatrix, Design, RDParams};

/// Constructions outside the bundled tables, covering every method at small orders.
pub const EXTRA_RECIPES: &[&str] = &[
    "lemma1 n1=fano n2=fano",
    "lemma1 n1=fano n2=w",
    "lemma1 n1=fano n2=I+sh1",
    "thm3 n1=fano t=1",
    "thm3 n1=I2 t=2",
    "thm3 n1=I3 t=3",
    "cor1 m=2 t=1",
    "cor1 m=3 t=2",
    "cor2 m=3 t=1",
    "cor3 m=3 t=2",
    "cor4 m=3 t=2",
    "cor5 m=3 t=2",
    "cor6 m=3 t=1",
    "cor7 m=3 t=2",
    "thm4 n1=I+sh1 n2=I3 m=2",
    "thm5 d=ag23 n=3",
    "thm6 t=1",
    "thm6 t=2",
    "remark7 t=1",
    "remark7 t=2",
    "ex1 n=3",
    "ex1 n=4",
    "ex2",
    "thm7 q=4 m=3",
    "thm7 q=5 m=4",
    "cor8 q=7",
    "cor9 q=4",
    "cor9 q=7",
    "cor10 q=5",
    "cor11 p=5",
    "cor11 p=5 shifted=1",
    "thm8 q=5 variant=i",
    "thm8 q=5 variant=iii",
    "thm8 q=9 variant=i",
    "thm8 q=9 variant=iii",
    "thm8 q=13 variant=ii",
    "thm9 ds=field:3",
    "thm9 ds=field:4",
    "thm9 ds=sylvester:2",
    "thm10 ds=field:4",
    "thm10 ds=field:5",
    "cor12 ds=field:5 t=2",
    "cor12 ds=field:7 t=3",
];

/// Every recipe in the bundled tables followed by [`EXTRA_RECIPES`].
pub fn corpus_recipes() -> Vec<String> {
    let mut out: Vec<String> = [Table::T4, Table::T5]
        .into_iter()
        .flat_map(bundled)
        .filter_map(|row| match row.source {
            Some(Source::Recipe(r)) => Some(r.to_string()),
            _ => None,
        })
        .collect();
    out.extend(EXTRA_RECIPES.iter().map(|s| s.to_string()));
    out
}

pub fn build(recipe: &str) -> Design {
    build_str(recipe, &RecipeContext::default()).unwrap_or_else(|e| panic!("{recipe}: {e}"))
}

pub fn corpus() -> Vec<(String, Design)> {
    corpus_recipes().into_iter().map(|r| {
        let d = build(&r);
        (r, d)
    }).collect()
}

/// Parameters read off the matrix by direct counting, with the associate
/// relation written out from the row-major array layout.
pub fn naive_params(inc: &BinaryMatrix, m: u64, n: u64) -> Option<RDParams> {
    let (v, b) = (inc.n_rows(), inc.n_cols());
    let row_sum = |i: usize| (0..b).filter(|&j| inc.get(i, j) == 1).count() as u64;
    let col_sum = |j: usize| (0..v).filter(|&i| inc.get(i, j) == 1).count() as u64;
    let r = row_sum(0);
    let k = col_sum(0);
    if (0..v).any(|i| row_sum(i) != r) || (0..b).any(|j| col_sum(j) != k) {
        return None;
    }
    let mut lambda: [Option<u64>; 3] = [None; 3];
    for x in 0..v {
        for y in x + 1..v {
            let same_row = x / n as usize == y / n as usize;
            let same_col = x % n as usize == y % n as usize;
            let class = match (same_row, same_col) {
                (true, false) => 0,
                (false, true) => 1,
                _ => 2,
            };
            let c = (0..b).filter(|&j| inc.get(x, j) == 1 && inc.get(y, j) == 1).count() as u64;
            match lambda[class] {
                None => lambda[class] = Some(c),
                Some(l) if l == c => {}
                Some(_) => return None,
            }
        }
    }
    let l = lambda.map(|x| x.unwrap_or(0));
    Some(RDParams::new(v as u64, b as u64, r, k, l[0], l[1], l[2], m, n))
}
