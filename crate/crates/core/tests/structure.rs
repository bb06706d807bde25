//! Identity suites for the algebraic inputs and the structure of the constructed designs.

mod common;

use rectdesign::algebra::ds::{ds_field, ds_search, ds_sylvester, ds_verify, DifferenceScheme, Group};
use rectdesign::algebra::{mols, paley_srg, skew_hadamard_design, srg_verify};
use rectdesign::analyze::{global_decomposition_check, semi_regular_suite};
use rectdesign::{BinaryMatrix, ClassTag, Design};

const PRIME_POWERS: &[u64] = &[3, 4, 5, 7, 8, 9, 11, 13, 16];

#[test]
fn skew_hadamard_identities() {
    for t in [1, 2, 3, 5, 6] {
        let sh = skew_hadamard_design(t).unwrap();
        assert_eq!(sh.order(), 4 * t - 1);
        assert!(sh.check_identities().unwrap().is_empty(), "t={t}");
        // direct: S + Sᵀ = J − I on the incidence
        let s = sh.incidence();
        let n = s.n_rows();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(s.get(i, j) + s.get(j, i), u8::from(i != j), "t={t} ({i},{j})");
            }
        }
    }
}

#[test]
fn mols_orthogonality_census() {
    for &q in PRIME_POWERS {
        let set = mols(q).unwrap();
        assert_eq!(set.len() as u64, q - 1);
        assert!(set.check().is_empty(), "q={q}");
        let sq = set.squares();
        for a in 0..sq.len() {
            for b in a + 1..sq.len() {
                let mut seen = std::collections::HashSet::new();
                for i in 0..q as usize {
                    for j in 0..q as usize {
                        seen.insert((sq[a][i][j], sq[b][i][j]));
                    }
                }
                assert_eq!(seen.len() as u64, q * q, "q={q} squares {a},{b}");
            }
        }
    }
}

#[test]
fn paley_quadratic_identity() {
    for q in [5u64, 9, 13, 17] {
        let g = paley_srg(q).unwrap();
        assert!(srg_verify(&g).is_empty(), "q={q}");
        assert_eq!((g.v as u64, g.k as u64, g.lambda as u64, g.mu as u64), (q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4));
        // A² = kI + λA + μ(J − I − A), entry by entry
        let a = g.adjacency();
        let v = g.v;
        for x in 0..v {
            for y in 0..v {
                let walks = (0..v).filter(|&z| a.get(x, z) == 1 && a.get(z, y) == 1).count();
                let want = if x == y {
                    g.k
                } else if a.get(x, y) == 1 {
                    g.lambda
                } else {
                    g.mu
                };
                assert_eq!(walks, want, "q={q} ({x},{y})");
            }
        }
    }
}

fn direct_difference_census(ds: &DifferenceScheme) {
    let g = ds.group();
    let (m, s) = (ds.m(), ds.s());
    for j in 0..m {
        for k in j + 1..m {
            let mut count = vec![0usize; s];
            for i in 0..m {
                count[g.sub(ds.get(i, j), ds.get(i, k)) as usize] += 1;
            }
            assert!(count.iter().all(|&c| c == m / s), "columns {j},{k}: {count:?}");
        }
    }
}

#[test]
fn difference_scheme_census() {
    let mut all: Vec<DifferenceScheme> = PRIME_POWERS.iter().map(|&q| ds_field(q).unwrap()).collect();
    all.extend((1..=4).map(|k| ds_sylvester(k).unwrap()));
    all.push(ds_search(8, 4, 2, Group::elementary_abelian(4).unwrap()).unwrap().unwrap());
    all.push(ds_search(10, 5, 2, Group::Cyclic(5)).unwrap().unwrap());
    for ds in &all {
        assert!(ds_verify(ds).is_clean(), "{}", ds.to_text());
        direct_difference_census(ds);
    }
}

#[test]
fn no_cyclic_difference_scheme_of_order_eight() {
    assert!(ds_search(8, 4, 2, Group::Cyclic(4)).unwrap().is_none());
}

const GLOBAL_RECIPES: &[&str] = &[
    "lemma1 n1=fano n2=fano",
    "lemma1 n1=fano n2=I+sh1",
    "thm3 n1=fano t=2",
    "thm3 n1=fano t=3",
    "thm3 n1=I2 t=2",
    "thm3 n1=I3 t=3",
    "cor1 m=2 t=1",
    "cor1 m=3 t=2",
    "cor2 m=2 t=2",
    "cor2 m=3 t=1",
    "cor3 m=2 t=1",
    "cor3 m=3 t=2",
    "cor4 m=2 t=1",
    "cor4 m=3 t=2",
    "cor5 m=2 t=1",
    "cor5 m=3 t=2",
    "cor6 m=2 t=2",
    "cor6 m=3 t=1",
    "cor7 m=2 t=1",
    "cor7 m=3 t=2",
    "thm6 t=1",
    "thm6 t=2",
];

#[test]
fn global_decomposition_holds() {
    for r in GLOBAL_RECIPES {
        let d = common::build(r);
        let n = d.params().n as usize;
        let report = global_decomposition_check(&d, n).unwrap();
        assert!(report.is_clean(), "{r}: {:?}", report.failures);
    }
}

#[test]
fn global_decomposition_rejects_shuffled_blocks() {
    // same design with its blocks reordered: still an RD, no longer block structured
    let d = common::build("cor2 m=2 t=2");
    let inc = d.incidence();
    let b = inc.n_cols();
    let perm: Vec<usize> = (0..b).map(|j| (j * 5 + 1) % b).collect();
    let shuffled = BinaryMatrix::from_fn(inc.n_rows(), b, |i, j| inc.is_set(i, perm[j])).unwrap();
    let e = Design::new(shuffled, *d.params()).unwrap();
    assert!(e.verify().is_clean());
    let report = global_decomposition_check(&e, d.params().n as usize).unwrap();
    assert!(!report.is_clean());
}

#[test]
fn semi_regular_corpus_structure() {
    let mut checked = 0;
    for (recipe, d) in common::corpus() {
        let tag = d.classify().unwrap().tag;
        if !matches!(tag, ClassTag::SemiRegularI | ClassTag::SemiRegularII) {
            continue;
        }
        let rep = semi_regular_suite(&d).unwrap();
        assert!(rep.passed(), "{recipe}: {:?}", rep.failures());
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} semi-regular designs in the corpus");
}
