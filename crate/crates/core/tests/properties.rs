//! Property tests over admissible parameter sets and constructed designs.

mod common;

use proptest::prelude::*;
use rectdesign::analyze::{alpha_resolvability, e_optimal_class, efficiency, EOptimalClass};
use rectdesign::binmat::matmul;
use rectdesign::design::{classify, params_from_matrix, spectrum};
use rectdesign::search::{diophantine_lambdas, feasibility_filter, Candidate, Verdict};
use rectdesign::{ClassTag, RDParams};

/// Every symmetric `(m, n, k, λ)` the search can produce, for `v = mn ≤ max_v`.
fn admissible(max_v: u64) -> Vec<RDParams> {
    let mut out = Vec::new();
    for m in 2..=max_v / 2 {
        for n in 2..=max_v / m {
            for k in 2..=m * n {
                for l in diophantine_lambdas(m, n, k) {
                    out.push(RDParams::symmetric(m, n, k, l));
                }
            }
        }
    }
    out
}

fn arb_params() -> impl Strategy<Value = RDParams> {
    (2u64..=6, 2u64..=6)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 2..=m * n))
        .prop_filter_map("no λ triple", |(m, n, k)| {
            let ls = diophantine_lambdas(m, n, k);
            (!ls.is_empty()).then(|| (m, n, k, ls))
        })
        .prop_flat_map(|(m, n, k, ls)| (0..ls.len()).prop_map(move |i| RDParams::symmetric(m, n, k, ls[i])))
}

fn transposed(p: &RDParams) -> RDParams {
    RDParams::new(p.v, p.b, p.r, p.k, p.lambda2, p.lambda1, p.lambda3, p.n, p.m)
}

proptest! {
    #[test]
    fn array_transpose_swaps_theta1_and_theta2(p in arb_params()) {
        let (s, t) = (spectrum(&p).unwrap(), spectrum(&transposed(&p)).unwrap());
        prop_assert_eq!((s.theta1, s.theta2, s.theta3), (t.theta2, t.theta1, t.theta3));
        match (classify(&p), classify(&transposed(&p))) {
            (Ok(a), Ok(b)) => {
                let swapped = match a.tag {
                    ClassTag::SemiRegularI => ClassTag::SemiRegularII,
                    ClassTag::SemiRegularII => ClassTag::SemiRegularI,
                    other => other,
                };
                prop_assert_eq!(swapped, b.tag);
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn class_constrains_lambdas(p in arb_params()) {
        let (l1, l2, l3) = (p.lambda1 as i64, p.lambda2 as i64, p.lambda3 as i64);
        let (m, n) = (p.m as i64, p.n as i64);
        if let Ok(c) = classify(&p) {
            match c.tag {
                ClassTag::SemiRegularI | ClassTag::SemiRegularII => prop_assert!(l3 > l1 || l3 > l2),
                ClassTag::LatinRegular => {
                    prop_assert_eq!(m * (l3 - l2), n * (l3 - l1));
                    prop_assert!((l3 - l2).signum() == (l3 - l1).signum());
                }
                ClassTag::LatinSemiRegular => prop_assert!(l3 > l1 && l3 > l2),
                ClassTag::Singular => prop_assert!(l3 <= l1 && l3 <= l2),
                ClassTag::Regular => {}
            }
        }
    }

    #[test]
    fn efficiency_is_a_proportion(p in arb_params()) {
        if let Ok(e) = efficiency(&p) {
            prop_assert!(e.e > 0.into() && e.e <= 1.into(), "{}", e.e);
        }
    }
}

#[test]
fn classify_is_total_on_nonnegative_spectra() {
    for p in admissible(40) {
        let s = spectrum(&p).unwrap();
        let nonneg = s.theta1 >= 0 && s.theta2 >= 0 && s.theta3 >= 0;
        assert_eq!(classify(&p).is_ok(), nonneg, "{p}");
        let c = feasibility_filter(Candidate::new(p));
        let any_zero = s.theta1 == 0 || s.theta2 == 0 || s.theta3 == 0;
        if any_zero {
            assert!(!c.class.is_some_and(|c| c.tag.is_regular()), "{p} labelled regular");
        }
        assert_eq!(matches!(c.verdict, Verdict::Nonexistent(_)), !nonneg, "{p}");
    }
}

#[test]
fn e_optimal_patterns() {
    for p in admissible(30).into_iter().filter(|p| p.m == 2) {
        let (l1, l2, l3) = (p.lambda1, p.lambda2, p.lambda3);
        let want = if l1 == l2 && l2 + 1 == l3 && p.v > 12 {
            EOptimalClass::Type1
        } else if l1 + 1 == l3 && l2 == l3 + 1 && p.v >= 10 {
            EOptimalClass::Type2
        } else {
            EOptimalClass::None
        };
        assert_eq!(e_optimal_class(&p).unwrap(), want, "{p}");
    }
}

#[test]
fn resolution_certificates_recount() {
    for (recipe, d) in common::corpus() {
        let Some(cert) = alpha_resolvability(&d) else { continue };
        let inc = d.incidence();
        assert_eq!(cert.classes.len(), cert.class_count, "{recipe}");
        let mut covered = 0;
        for class in &cert.classes {
            covered += class.len();
            for i in 0..inc.n_rows() {
                let hits = class.clone().filter(|&c| inc.get(i, c) == 1).count();
                assert_eq!(hits, cert.alpha, "{recipe}: treatment {i}");
            }
        }
        assert_eq!(covered, inc.n_cols(), "{recipe}");
    }
}

#[test]
fn thm4_outputs_are_self_dual() {
    for r in ["thm4 n1=I+sh1 n2=I3 m=2", "thm4 n1=I+sh1 n2=I3 m=3", "thm4 n1=sh2 n2=I7 m=2"] {
        let d = common::build(r);
        let n = d.incidence().to_int();
        let nt = d.incidence().transpose().to_int();
        assert_eq!(matmul(&n, &nt).unwrap(), matmul(&nt, &n).unwrap(), "{r}");
    }
}

#[test]
fn thm7_blocks_are_permutations() {
    for (q, m) in [(4u64, 3usize), (5, 4), (7, 3)] {
        let d = common::build(&format!("thm7 q={q} m={m}"));
        let inc = d.incidence();
        let n = q as usize;
        let block = |i: usize, j: usize| inc.submatrix(i * n..(i + 1) * n, j * n..(j + 1) * n).unwrap();
        let cols = inc.n_cols() / n;
        for i in 0..m {
            for j in 0..cols {
                assert!(block(i, j).is_permutation(), "q={q} block ({i},{j})");
            }
        }
        // Σ_j N_ij N_kjᵀ is (n − 1)I for i = k and J − I otherwise
        for i in 0..m {
            for k in 0..m {
                for x in 0..n {
                    for y in 0..n {
                        let s: i64 = (0..cols).map(|j| matmul(&block(i, j), &block(k, j).transpose()).unwrap().get(x, y)).sum();
                        let want = match (i == k, x == y) {
                            (true, true) => n as i64 - 1,
                            (true, false) | (false, true) => 0,
                            (false, false) => 1,
                        };
                        assert_eq!(s, want, "q={q} rows {i},{k} ({x},{y})");
                    }
                }
            }
        }
    }
}

#[test]
fn thm9_is_affine_with_intersections_zero_and_x() {
    for spec in ["field:3", "field:4", "field:5", "sylvester:2"] {
        let d = common::build(&format!("thm9 ds={spec}"));
        let cert = alpha_resolvability(&d).expect("resolvable");
        let inc = d.incidence();
        let class_of = |c: usize| cert.classes.iter().position(|r| r.contains(&c)).unwrap();
        let mut within = std::collections::BTreeSet::new();
        let mut across = std::collections::BTreeSet::new();
        for a in 0..inc.n_cols() {
            for b in a + 1..inc.n_cols() {
                let meet = (0..inc.n_rows()).filter(|&i| inc.get(i, a) == 1 && inc.get(i, b) == 1).count();
                if class_of(a) == class_of(b) { within.insert(meet) } else { across.insert(meet) };
            }
        }
        assert_eq!(within.into_iter().collect::<Vec<_>>(), vec![0], "{spec}");
        assert_eq!(across.len(), 1, "{spec}: {across:?}");
        assert_eq!(cert.affine, Some((0, *across.iter().next().unwrap())), "{spec}");
    }
}

#[test]
fn thm6_truncations() {
    let d = common::build("thm6 t=1");
    let p = *d.params();
    let alpha = p.k / p.m;
    for s in 1..=3 {
        let t = d.drop_array_rows(s).unwrap();
        let q = params_from_matrix(t.incidence(), p.m - s, p.n).unwrap();
        assert_eq!(q, *t.params());
        assert_eq!((q.v, q.k), ((p.m - s) * p.n, alpha * (p.m - s)));
        assert_eq!(q.lambdas(), p.lambdas());
    }
}
