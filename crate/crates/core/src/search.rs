//! Parameter feasibility search for symmetric rectangular designs (`b = v`, `r = k`).
//!
//! For each factorization `v = mn` and block size `k`, enumerate the `λ`
//! triples solving `(n−1)λ1 + (m−1)λ2 + (n−1)(m−1)λ3 = k(k−1)`, discard
//! those with a negative eigenvalue, classify the rest, and for regular
//! candidates test the perfect-square condition on `det(N Nᵀ)`.

use std::fmt;
use std::ops::RangeInclusive;

use crate::analyze::{square_condition, SquareCondition};
use crate::design::{classify, spectrum_unchecked, DesignClass, RDParams, Spectrum};
use crate::error::{Error, Result};

/// Every `(λ1, λ2, λ3)` with `λ_i ≤ k` solving the concurrence identity, in lexicographic order.
pub fn diophantine_lambdas(m: u64, n: u64, k: u64) -> Vec<(u64, u64, u64)> {
    let (a, b, c) = (n - 1, m - 1, (n - 1) * (m - 1));
    let target = k * k.saturating_sub(1);
    let mut out = Vec::new();
    for l1 in 0..=k {
        if a * l1 > target {
            break;
        }
        for l2 in 0..=k {
            let used = a * l1 + b * l2;
            if used > target {
                break;
            }
            let rest = target - used;
            if rest % c == 0 && rest / c <= k {
                out.push((l1, l2, rest / c));
            }
        }
    }
    out
}

/// How many triples the `λ_i ≤ k` bound removed (compared with `λ_i ≤ k(k−1)`).
pub fn pruned_by_concurrence_bound(m: u64, n: u64, k: u64) -> usize {
    let (a, b, c) = (n - 1, m - 1, (n - 1) * (m - 1));
    let target = k * k.saturating_sub(1);
    let mut all = 0;
    for l1 in 0..=target / a {
        for l2 in 0..=(target - a * l1) / b {
            if (target - a * l1 - b * l2) % c == 0 {
                all += 1;
            }
        }
    }
    all - diophantine_lambdas(m, n, k).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareStatus {
    Holds(SquareCondition),
    Fails(SquareCondition),
    NotRequired,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A negative eigenvalue rules the parameters out.
    Nonexistent(String),
    /// Passes every necessary condition checked here.
    Possible,
    /// Regular, but `det(N Nᵀ)` is not a perfect square.
    FailsSquare,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub params: RDParams,
    pub spectrum: Spectrum,
    pub class: Option<DesignClass>,
    pub square: SquareStatus,
    pub verdict: Verdict,
}

impl Candidate {
    pub fn new(params: RDParams) -> Self {
        let spectrum = spectrum_unchecked(&params);
        Self { params, spectrum, class: None, square: SquareStatus::NotRequired, verdict: Verdict::Possible }
    }

    /// GDD-type: `λ1 = λ3` or `λ2 = λ3`.
    pub fn is_gdd_type(&self) -> bool {
        self.params.lambda1 == self.params.lambda3 || self.params.lambda2 == self.params.lambda3
    }

    /// `v m n k l1 l2 l3 θ1 θ2 θ3 class verdict`
    pub fn line(&self) -> String {
        let p = &self.params;
        let s = &self.spectrum;
        let class = match &self.class {
            Some(c) => c.nature().replace(' ', "-"),
            None => "-".into(),
        };
        let verdict = match (&self.verdict, &self.square) {
            (Verdict::Nonexistent(_), _) => "nonexistent".to_string(),
            (Verdict::FailsSquare, SquareStatus::Fails(c)) => format!("fails-square({c})"),
            (_, SquareStatus::Holds(c)) if c.factors.is_empty() => "possible(square-trivial)".to_string(),
            (_, SquareStatus::Holds(_)) => "possible(square)".to_string(),
            _ => "possible".to_string(),
        };
        format!(
            "{} {} {} {} {} {} {} {} {} {} {class} {verdict}",
            p.v, p.m, p.n, p.k, p.lambda1, p.lambda2, p.lambda3, s.theta1, s.theta2, s.theta3
        )
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

/// Classify a candidate and attach its verdict.
pub fn feasibility_filter(mut c: Candidate) -> Candidate {
    let p = c.params;
    match classify(&p) {
        Err(e) => {
            c.class = None;
            c.verdict = Verdict::Nonexistent(e.to_string());
        }
        Ok(class) => {
            c.class = Some(class);
            c.verdict = Verdict::Possible;
            if class.tag.is_regular() {
                if let Ok(Some(sq)) = square_condition(&p) {
                    if sq.holds {
                        c.square = SquareStatus::Holds(sq);
                    } else {
                        c.verdict = Verdict::FailsSquare;
                        c.square = SquareStatus::Fails(sq);
                    }
                }
            }
        }
    }
    c
}

/// Filtered candidates for one `(m, n, k)` cell.
pub fn candidates_for(m: u64, n: u64, k: u64) -> Vec<Candidate> {
    diophantine_lambdas(m, n, k)
        .into_iter()
        .map(|l| feasibility_filter(Candidate::new(RDParams::symmetric(m, n, k, l))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub v: u64,
    pub candidates: Vec<Candidate>,
    pub pruned: usize,
}

impl SearchResult {
    /// Candidates that pass every check.
    pub fn possible(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.verdict == Verdict::Possible)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# v m n k l1 l2 l3 θ1 θ2 θ3 class verdict\n");
        for c in &self.candidates {
            out.push_str(&c.line());
            if c.is_gdd_type() && c.class.is_some() {
                out.push_str(" gdd-type");
            }
            out.push('\n');
        }
        out.push_str(&format!("# pruned: concurrence bound {}\n", self.pruned));
        out
    }
}

/// All symmetric candidates on `v = mn` treatments (`m, n ≥ 2`) with `k` in `k_range`,
/// ordered by `(m, n, k, λ1, λ2, λ3)`.
pub fn enumerate_candidates(v: u64, k_range: RangeInclusive<u64>) -> Result<SearchResult> {
    let factors: Vec<(u64, u64)> = (2..v).filter(|m| v % m == 0 && v / m >= 2).map(|m| (m, v / m)).collect();
    if factors.is_empty() {
        return Err(Error::InvalidParams(format!("v = {v} has no factorization m·n with m, n ≥ 2")));
    }
    let mut candidates = Vec::new();
    let mut pruned = 0;
    for (m, n) in factors {
        for k in k_range.clone().filter(|&k| k >= 2 && k <= v) {
            pruned += pruned_by_concurrence_bound(m, n, k);
            candidates.extend(candidates_for(m, n, k));
        }
    }
    Ok(SearchResult { v, candidates, pruned })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every solution with `λ_i ≤ k(k−1)`, unfiltered.
    fn brute(m: u64, n: u64, k: u64) -> Vec<(u64, u64, u64)> {
        let t = k * k.saturating_sub(1);
        let mut out = Vec::new();
        for a in 0..=t {
            for b in 0..=t {
                for c in 0..=t {
                    if (n - 1) * a + (m - 1) * b + (n - 1) * (m - 1) * c == t {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn lambdas_match_brute_force() {
        for (m, n) in [(2, 2), (2, 3), (3, 6), (4, 9), (5, 8), (13, 2)] {
            for k in 1..=8 {
                let all = brute(m, n, k);
                let bounded: Vec<_> = all.iter().copied().filter(|&(a, b, c)| a <= k && b <= k && c <= k).collect();
                assert_eq!(diophantine_lambdas(m, n, k), bounded, "m={m} n={n} k={k}");
                assert_eq!(pruned_by_concurrence_bound(m, n, k), all.len() - bounded.len(), "m={m} n={n} k={k}");
            }
        }
        assert_eq!(diophantine_lambdas(2, 3, 1), vec![(0, 0, 0)]);
        assert!(diophantine_lambdas(3, 6, 5).contains(&(2, 0, 1)));
    }

    #[test]
    fn two_by_two() {
        let got = diophantine_lambdas(2, 2, 2);
        assert_eq!(got.len(), 6);
        assert!(got.contains(&(0, 1, 1)) && got.contains(&(2, 0, 0)));
    }

    #[test]
    fn feasibility_table_examples() {
        let c = feasibility_filter(Candidate::new(RDParams::symmetric(4, 9, 9, (6, 0, 1))));
        assert_eq!(c.class.unwrap().nature(), "SR RD");
        let c = feasibility_filter(Candidate::new(RDParams::symmetric(5, 8, 7, (2, 0, 1))));
        assert_eq!(c.verdict, Verdict::Possible);
        match c.square {
            SquareStatus::Holds(sq) => assert_eq!(sq.factors, vec![1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn enumeration() {
        let r = enumerate_candidates(18, 5..=5).unwrap();
        assert!(r.possible().any(|c| c.params == RDParams::symmetric(3, 6, 5, (2, 0, 1))));
        let r = enumerate_candidates(26, 9..=9).unwrap();
        assert!(r.possible().any(|c| c.params == RDParams::symmetric(13, 2, 9, (0, 3, 3))));
        assert!(enumerate_candidates(7, 2..=10).is_err());
        let r = enumerate_candidates(8, 3..=3).unwrap();
        let shapes: std::collections::BTreeSet<(u64, u64)> =
            r.candidates.iter().map(|c| (c.params.m, c.params.n)).collect();
        assert_eq!(shapes.into_iter().collect::<Vec<_>>(), vec![(2, 4), (4, 2)]);
    }

    #[test]
    fn negative_theta_rejected() {
        let r = enumerate_candidates(14, 5..=5).unwrap();
        assert!(r.candidates.iter().any(|c| matches!(c.verdict, Verdict::Nonexistent(_))));
    }
}
