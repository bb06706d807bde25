//! Rectangular designs: parameters, spectrum, classification and verification.
//!
//! Treatments `1..=mn` are laid out row-major in an `m × n` array: treatment
//! `t` sits in array row `⌈t/n⌉` and column `((t − 1) mod n) + 1`. Every
//! construction in this crate emits incidence matrices in this labeling, so
//! incidence row `i` (0-based) is treatment `i + 1`.
//!
//! For an incidence matrix `N` the concurrence matrix is
//!
//! ```text
//! N Nᵀ = r(I_m × I_n) + λ1(I_m × I_nᶜ) + λ2(I_mᶜ × I_n) + λ3(I_mᶜ × I_nᶜ)
//! ```
//!
//! whose non-trivial eigenvalues `θ1, θ2, θ3` (multiplicities `n − 1`, `m − 1`,
//! `(m − 1)(n − 1)`) drive the classification into regular, Latin regular,
//! semi-regular, Latin semi-regular and singular designs.

use std::fmt;
use std::str::FromStr;

use crate::binmat::{matmul, BinaryMatrix, IntMatrix};
use crate::error::{Error, Result};

/// The parameter tuple `(v, b, r, k, λ1, λ2, λ3, m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RDParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub lambda3: u64,
    pub m: u64,
    pub n: u64,
}

impl RDParams {
    #[allow(clippy::too_many_arguments)]
    pub const fn new(v: u64, b: u64, r: u64, k: u64, lambda1: u64, lambda2: u64, lambda3: u64, m: u64, n: u64) -> Self {
        Self { v, b, r, k, lambda1, lambda2, lambda3, m, n }
    }

    /// Symmetric parameters (`b = v`, `r = k`) on an `m × n` array.
    pub const fn symmetric(m: u64, n: u64, k: u64, lambdas: (u64, u64, u64)) -> Self {
        Self::new(m * n, m * n, k, k, lambdas.0, lambdas.1, lambdas.2, m, n)
    }

    pub fn lambdas(&self) -> (u64, u64, u64) {
        (self.lambda1, self.lambda2, self.lambda3)
    }

    pub fn is_symmetric(&self) -> bool {
        self.v == self.b && self.r == self.k
    }

    /// Concurrence count for an associate class.
    pub fn lambda(&self, class: Associate) -> u64 {
        match class {
            Associate::First => self.lambda1,
            Associate::Second => self.lambda2,
            Associate::Third => self.lambda3,
        }
    }
}

impl fmt::Display for RDParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} b={} r={} k={} λ=({},{},{}) m={} n={}",
            self.v, self.b, self.r, self.k, self.lambda1, self.lambda2, self.lambda3, self.m, self.n
        )
    }
}

/// One failed admissibility condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamViolation {
    /// `m < 2` or `n < 2`.
    DegenerateArray { m: u64, n: u64 },
    VNotMn { v: u64, mn: u64 },
    /// `b·k ≠ v·r`.
    BlockCount { bk: u64, vr: u64 },
    /// `(n−1)λ1 + (m−1)λ2 + (n−1)(m−1)λ3 ≠ r(k−1)`.
    Concurrence { lhs: u64, rhs: u64 },
    BlockSize { k: u64, v: u64 },
    ZeroReplication,
    ZeroBlocks,
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DegenerateArray { m, n } => write!(f, "array {m}x{n} is degenerate (need m, n >= 2)"),
            Self::VNotMn { v, mn } => write!(f, "v = {v} but m*n = {mn}"),
            Self::BlockCount { bk, vr } => write!(f, "bk = {bk} but vr = {vr}"),
            Self::Concurrence { lhs, rhs } => {
                write!(f, "(n-1)l1 + (m-1)l2 + (n-1)(m-1)l3 = {lhs} but r(k-1) = {rhs}")
            }
            Self::BlockSize { k, v } => write!(f, "block size k = {k} outside 1..={v}"),
            Self::ZeroReplication => write!(f, "r = 0"),
            Self::ZeroBlocks => write!(f, "b = 0"),
        }
    }
}

/// Every violated invariant of `p`; empty means admissible.
pub fn check_params(p: &RDParams) -> Vec<ParamViolation> {
    let mut out = Vec::new();
    if p.m < 2 || p.n < 2 {
        out.push(ParamViolation::DegenerateArray { m: p.m, n: p.n });
    }
    if p.v != p.m * p.n {
        out.push(ParamViolation::VNotMn { v: p.v, mn: p.m * p.n });
    }
    if p.b * p.k != p.v * p.r {
        out.push(ParamViolation::BlockCount { bk: p.b * p.k, vr: p.v * p.r });
    }
    let lhs = p.n.saturating_sub(1) * p.lambda1
        + p.m.saturating_sub(1) * p.lambda2
        + p.n.saturating_sub(1) * p.m.saturating_sub(1) * p.lambda3;
    let rhs = p.r * p.k.saturating_sub(1);
    if lhs != rhs {
        out.push(ParamViolation::Concurrence { lhs, rhs });
    }
    if p.k < 1 || p.k > p.v {
        out.push(ParamViolation::BlockSize { k: p.k, v: p.v });
    }
    if p.r == 0 {
        out.push(ParamViolation::ZeroReplication);
    }
    if p.b == 0 {
        out.push(ParamViolation::ZeroBlocks);
    }
    out
}

fn require_admissible(p: &RDParams) -> Result<()> {
    let v = check_params(p);
    if v.is_empty() {
        Ok(())
    } else {
        let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
        Err(Error::InvalidParams(format!("{p}: {}", msg.join("; "))))
    }
}

/// Eigenvalues of `N Nᵀ`: `θ0 = rk` once, then `θ1, θ2, θ3` with their multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spectrum {
    pub theta0: i64,
    pub theta1: i64,
    pub theta2: i64,
    pub theta3: i64,
    pub mult1: u64,
    pub mult2: u64,
    pub mult3: u64,
}

impl Spectrum {
    pub fn thetas(&self) -> (i64, i64, i64) {
        (self.theta1, self.theta2, self.theta3)
    }

    /// `(eigenvalue, multiplicity)` for the three non-trivial eigenvalues.
    pub fn nontrivial(&self) -> [(i64, u64); 3] {
        [(self.theta1, self.mult1), (self.theta2, self.mult2), (self.theta3, self.mult3)]
    }

    /// Distinct eigenvalues including `rk`, with coinciding multiplicities merged;
    /// zero-multiplicity entries are dropped.
    pub fn distinct(&self) -> Vec<(i64, u64)> {
        let mut out: Vec<(i64, u64)> = Vec::new();
        for (t, mu) in std::iter::once((self.theta0, 1)).chain(self.nontrivial()) {
            if mu == 0 {
                continue;
            }
            match out.iter_mut().find(|(x, _)| *x == t) {
                Some(e) => e.1 += mu,
                None => out.push((t, mu)),
            }
        }
        out
    }
}

/// Spectrum from the closed forms
/// `θ1 = r − λ1 + (m−1)(λ2 − λ3)`, `θ2 = r − λ2 + (n−1)(λ1 − λ3)`, `θ3 = r − λ1 − λ2 + λ3`.
pub fn spectrum(p: &RDParams) -> Result<Spectrum> {
    require_admissible(p)?;
    Ok(spectrum_unchecked(p))
}

pub(crate) fn spectrum_unchecked(p: &RDParams) -> Spectrum {
    let (r, l1, l2, l3) = (p.r as i64, p.lambda1 as i64, p.lambda2 as i64, p.lambda3 as i64);
    let (m, n) = (p.m as i64, p.n as i64);
    Spectrum {
        theta0: r * p.k as i64,
        theta1: r - l1 + (m - 1) * (l2 - l3),
        theta2: r - l2 + (n - 1) * (l1 - l3),
        theta3: r - l1 - l2 + l3,
        mult1: p.n - 1,
        mult2: p.m - 1,
        mult3: (p.m - 1) * (p.n - 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Regular,
    /// Regular with `θ1 = θ2`.
    LatinRegular,
    SemiRegularI,
    SemiRegularII,
    LatinSemiRegular,
    Singular,
}

impl ClassTag {
    pub fn is_regular(self) -> bool {
        matches!(self, Self::Regular | Self::LatinRegular)
    }

    pub fn is_semi_regular(self) -> bool {
        matches!(self, Self::SemiRegularI | Self::SemiRegularII)
    }

    /// Short label: `R`, `LR`, `SR`, `LSR` or `S`.
    pub fn abbrev(self) -> &'static str {
        match self {
            Self::Regular => "R",
            Self::LatinRegular => "LR",
            Self::SemiRegularI | Self::SemiRegularII => "SR",
            Self::LatinSemiRegular => "LSR",
            Self::Singular => "S",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Regular => "Regular",
            Self::LatinRegular => "LatinRegular",
            Self::SemiRegularI => "SemiRegularI",
            Self::SemiRegularII => "SemiRegularII",
            Self::LatinSemiRegular => "LatinSemiRegular",
            Self::Singular => "Singular",
        };
        f.write_str(s)
    }
}

/// Sub-design a rectangular design collapses to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    None,
    RegularGDD,
    SemiRegularGDD,
    SingularGDD,
    L2Type,
    BIBD,
    CompleteDesign,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::None => "None",
            Self::RegularGDD => "RegularGDD",
            Self::SemiRegularGDD => "SemiRegularGDD",
            Self::SingularGDD => "SingularGDD",
            Self::L2Type => "L2Type",
            Self::BIBD => "BIBD",
            Self::CompleteDesign => "CompleteDesign",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignClass {
    pub tag: ClassTag,
    pub reduction: Reduction,
}

impl DesignClass {
    /// Label in the style `R RD`, `R GDD`, `SR RD`.
    pub fn nature(&self) -> String {
        let kind = match self.reduction {
            Reduction::RegularGDD | Reduction::SemiRegularGDD | Reduction::SingularGDD => "GDD",
            _ => "RD",
        };
        format!("{} {kind}", self.tag.abbrev())
    }
}

impl fmt::Display for DesignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (reduction {})", self.tag, self.reduction)
    }
}

/// Classify by the signs and coincidences of `θ1, θ2, θ3`.
///
/// A negative eigenvalue means no design with these parameters exists.
pub fn classify(p: &RDParams) -> Result<DesignClass> {
    let s = spectrum(p)?;
    classify_spectrum(p, &s)
}

pub(crate) fn classify_spectrum(p: &RDParams, s: &Spectrum) -> Result<DesignClass> {
    let (t1, t2, t3) = s.thetas();
    if t1 < 0 || t2 < 0 || t3 < 0 {
        return Err(Error::Nonexistent(format!("{p}: negative eigenvalue in θ = ({t1}, {t2}, {t3})")));
    }
    let latin_square = p.m == p.n && p.lambda1 == p.lambda2;
    let class = if t3 == 0 {
        let reduction = if t1 == 0 && t2 == 0 {
            Reduction::CompleteDesign
        } else if t1 == 0 || t2 == 0 {
            Reduction::SingularGDD
        } else {
            Reduction::None
        };
        DesignClass { tag: ClassTag::Singular, reduction }
    } else if t1 == 0 && t2 == 0 {
        let reduction = if latin_square { Reduction::L2Type } else { Reduction::None };
        DesignClass { tag: ClassTag::LatinSemiRegular, reduction }
    } else if t1 == 0 {
        let reduction = if t2 == t3 { Reduction::SemiRegularGDD } else { Reduction::None };
        DesignClass { tag: ClassTag::SemiRegularI, reduction }
    } else if t2 == 0 {
        let reduction = if t1 == t3 { Reduction::SemiRegularGDD } else { Reduction::None };
        DesignClass { tag: ClassTag::SemiRegularII, reduction }
    } else {
        let tag = if t1 == t2 { ClassTag::LatinRegular } else { ClassTag::Regular };
        let reduction = if t1 == t2 && t2 == t3 {
            Reduction::BIBD
        } else if t1 == t3 || t2 == t3 {
            Reduction::RegularGDD
        } else if latin_square {
            Reduction::L2Type
        } else {
            Reduction::None
        };
        DesignClass { tag, reduction }
    };
    Ok(class)
}

/// Association of a pair of distinct treatments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Associate {
    /// Same array row.
    First,
    /// Same array column.
    Second,
    Third,
}

impl fmt::Display for Associate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::First => "first",
            Self::Second => "second",
            Self::Third => "third",
        })
    }
}

/// Associate class of 1-based treatments `t1`, `t2` on an `m × n` array.
pub fn associate_class(t1: u64, t2: u64, m: u64, n: u64) -> Result<Associate> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParams(format!("degenerate array {m}x{n}")));
    }
    let v = m * n;
    if t1 == 0 || t2 == 0 || t1 > v || t2 > v {
        return Err(Error::InvalidParams(format!("treatments ({t1}, {t2}) out of range 1..={v}")));
    }
    if t1 == t2 {
        return Err(Error::InvalidParams(format!("treatment {t1} paired with itself")));
    }
    Ok(associate_index(t1 as usize - 1, t2 as usize - 1, n as usize))
}

#[inline]
fn associate_index(i: usize, j: usize, n: usize) -> Associate {
    if i / n == j / n {
        Associate::First
    } else if i % n == j % n {
        Associate::Second
    } else {
        Associate::Third
    }
}

/// A discrepancy between an incidence matrix and claimed parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deviation {
    Params(ParamViolation),
    Shape { expected: (u64, u64), found: (usize, usize) },
    /// 1-based treatment.
    RowSum { treatment: usize, expected: u64, found: usize },
    /// 1-based block.
    ColSum { block: usize, expected: u64, found: usize },
    /// 1-based treatments.
    Concurrence { t1: usize, t2: usize, class: Associate, expected: u64, found: i64 },
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Params(p) => write!(f, "parameters: {p}"),
            Self::Shape { expected, found } => {
                write!(f, "incidence is {}x{}, expected {}x{}", found.0, found.1, expected.0, expected.1)
            }
            Self::RowSum { treatment, expected, found } => {
                write!(f, "treatment {treatment} occurs in {found} blocks, expected r = {expected}")
            }
            Self::ColSum { block, expected, found } => {
                write!(f, "block {block} has size {found}, expected k = {expected}")
            }
            Self::Concurrence { t1, t2, class, expected, found } => write!(
                f,
                "treatments {t1},{t2} ({class} associates) concur {found} times, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub deviations: Vec<Deviation>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.deviations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "clean");
        }
        for (i, d) in self.deviations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Check `incidence` against `params`: admissibility, shape, row and column
/// sums, and every off-diagonal entry of `N Nᵀ` against its associate class.
pub fn verify_incidence(incidence: &BinaryMatrix, params: &RDParams) -> VerificationReport {
    let mut deviations: Vec<Deviation> = check_params(params).into_iter().map(Deviation::Params).collect();
    if incidence.n_rows() as u64 != params.v || incidence.n_cols() as u64 != params.b {
        deviations.push(Deviation::Shape {
            expected: (params.v, params.b),
            found: (incidence.n_rows(), incidence.n_cols()),
        });
        return VerificationReport { deviations };
    }
    for (i, s) in incidence.row_sums().into_iter().enumerate() {
        if s as u64 != params.r {
            deviations.push(Deviation::RowSum { treatment: i + 1, expected: params.r, found: s });
        }
    }
    for (j, s) in incidence.col_sums().into_iter().enumerate() {
        if s as u64 != params.k {
            deviations.push(Deviation::ColSum { block: j + 1, expected: params.k, found: s });
        }
    }
    if params.n >= 1 {
        let g = incidence.gram();
        let n = params.n as usize;
        for i in 0..incidence.n_rows() {
            for j in (i + 1)..incidence.n_rows() {
                let class = associate_index(i, j, n);
                let expected = params.lambda(class);
                if g.get(i, j) != expected as i64 {
                    deviations.push(Deviation::Concurrence { t1: i + 1, t2: j + 1, class, expected, found: g.get(i, j) });
                }
            }
        }
    }
    VerificationReport { deviations }
}

/// A verified rectangular design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    incidence: BinaryMatrix,
    params: RDParams,
}

impl Design {
    /// Wrap `incidence` after checking it against `params`.
    pub fn new(incidence: BinaryMatrix, params: RDParams) -> Result<Self> {
        let report = verify_incidence(&incidence, &params);
        if !report.is_clean() {
            let first: Vec<String> = report.deviations.iter().take(3).map(ToString::to_string).collect();
            return Err(Error::Verification(format!(
                "{params}: {} deviation(s), first: {}",
                report.deviations.len(),
                first.join("; ")
            )));
        }
        Ok(Self { incidence, params })
    }

    /// Recover the parameters from `incidence` and wrap it.
    pub fn from_matrix(incidence: BinaryMatrix, m: u64, n: u64) -> Result<Self> {
        let params = params_from_matrix(&incidence, m, n)?;
        Self::new(incidence, params)
    }

    pub fn incidence(&self) -> &BinaryMatrix {
        &self.incidence
    }

    pub fn params(&self) -> &RDParams {
        &self.params
    }

    pub fn into_parts(self) -> (BinaryMatrix, RDParams) {
        (self.incidence, self.params)
    }

    pub fn verify(&self) -> VerificationReport {
        verify_incidence(&self.incidence, &self.params)
    }

    pub fn spectrum(&self) -> Spectrum {
        spectrum_unchecked(&self.params)
    }

    pub fn classify(&self) -> Result<DesignClass> {
        classify(&self.params)
    }

    /// Relabel treatments by transposing the `m × n` array: `m ↔ n`, `λ1 ↔ λ2`.
    pub fn transpose_array(&self) -> Result<Self> {
        let (m, n) = (self.params.m as usize, self.params.n as usize);
        // new treatment (j, i) on the n×m array is old treatment (i, j)
        let order: Vec<usize> = (0..n).flat_map(|j| (0..m).map(move |i| i * n + j)).collect();
        let incidence = self.incidence.select_rows(&order)?;
        let p = self.params;
        let params = RDParams { lambda1: p.lambda2, lambda2: p.lambda1, m: p.n, n: p.m, ..p };
        Self::new(incidence, params)
    }

    /// Drop the last `s` array rows (`s·n` treatments).
    pub fn drop_array_rows(&self, s: u64) -> Result<Self> {
        let p = self.params;
        if s == 0 || s + 2 > p.m {
            return Err(Error::Precondition(format!("cannot drop {s} of {} array rows", p.m)));
        }
        let keep: Vec<usize> = (0..((p.m - s) * p.n) as usize).collect();
        let incidence = self.incidence.select_rows(&keep)?;
        Self::from_matrix(incidence, p.m - s, p.n)
    }
}

/// Recover `(r, k, λ1, λ2, λ3)` from an incidence matrix with `mn` rows.
pub fn params_from_matrix(incidence: &BinaryMatrix, m: u64, n: u64) -> Result<RDParams> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParams(format!("degenerate array {m}x{n}")));
    }
    let v = incidence.n_rows() as u64;
    if v != m * n {
        return Err(Error::DimensionMismatch(format!("{v} rows but m*n = {}", m * n)));
    }
    let rows = incidence.row_sums();
    if let Some(i) = rows.iter().position(|&s| s != rows[0]) {
        return Err(Error::NotEquireplicate(format!(
            "treatment 1 occurs {} times, treatment {} occurs {}",
            rows[0],
            i + 1,
            rows[i]
        )));
    }
    let cols = incidence.col_sums();
    if let Some(j) = cols.iter().position(|&s| s != cols[0]) {
        return Err(Error::NotProper(format!("block 1 has size {}, block {} has size {}", cols[0], j + 1, cols[j])));
    }
    let g = incidence.gram();
    let mut lambdas: [Option<(i64, usize, usize)>; 3] = [None; 3];
    for i in 0..v as usize {
        for j in (i + 1)..v as usize {
            let class = associate_index(i, j, n as usize);
            let slot = &mut lambdas[class as usize];
            match slot {
                None => *slot = Some((g.get(i, j), i, j)),
                Some((val, a, b)) if *val != g.get(i, j) => {
                    return Err(Error::NotAnRd(format!(
                        "{class} associates ({},{}) concur {} times but ({},{}) concur {}",
                        *a + 1,
                        *b + 1,
                        val,
                        i + 1,
                        j + 1,
                        g.get(i, j)
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let lam = |c: usize| lambdas[c].map(|x| x.0 as u64).unwrap_or(0);
    Ok(RDParams {
        v,
        b: incidence.n_cols() as u64,
        r: rows[0] as u64,
        k: cols[0] as u64,
        lambda1: lam(0),
        lambda2: lam(1),
        lambda3: lam(2),
        m,
        n,
    })
}

/// The complementary design `Nᶜ`.
pub fn complement_design(d: &Design) -> Result<Design> {
    let p = d.params;
    if p.k == p.v || p.r == p.b {
        return Err(Error::NotAnRd(format!("complement of {p} has empty blocks")));
    }
    let params = RDParams {
        v: p.v,
        b: p.b,
        r: p.b - p.r,
        k: p.v - p.k,
        lambda1: p.b + p.lambda1 - 2 * p.r,
        lambda2: p.b + p.lambda2 - 2 * p.r,
        lambda3: p.b + p.lambda3 - 2 * p.r,
        m: p.m,
        n: p.n,
    };
    Design::new(d.incidence.complement(), params)
}

/// Parameters of the dual design (incidence `Nᵀ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
}

impl DualParams {
    pub fn self_dual_compatible(&self) -> bool {
        self.v == self.b && self.r == self.k
    }
}

pub fn dual_params(p: &RDParams) -> DualParams {
    DualParams { v: p.b, b: p.v, r: p.k, k: p.r }
}

/// Outcome of the exact eigenvalue check of `N Nᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumCheck {
    Matches,
    /// `∏ (N Nᵀ − θ I)` over the claimed distinct eigenvalues is not zero.
    MinimalPolynomialFails,
    /// `tr((N Nᵀ)^j)` disagrees with the power sum of the claimed spectrum.
    TraceMismatch { power: u32, trace: i64, expected: i64 },
}

/// Exact check that the eigenvalues of `N Nᵀ` are `{rk, θ1^(n−1), θ2^(m−1), θ3^((m−1)(n−1))}`.
///
/// `N Nᵀ` is symmetric, so it is diagonalisable: if the product of
/// `(N Nᵀ − θ I)` over the claimed distinct values vanishes, every eigenvalue
/// is among them, and the power sums `tr((N Nᵀ)^j)` for `j < #distinct` then
/// pin the multiplicities (Vandermonde system). Everything is integer arithmetic.
pub fn check_spectrum_exact(incidence: &BinaryMatrix, params: &RDParams) -> Result<SpectrumCheck> {
    let s = spectrum(params)?;
    let g = incidence.gram();
    if g.n_rows() as u64 != params.v {
        return Err(Error::DimensionMismatch(format!("{} rows for v = {}", g.n_rows(), params.v)));
    }
    let distinct = s.distinct();
    let mut prod: Option<IntMatrix> = None;
    for &(theta, _) in &distinct {
        let factor = g.shift_diagonal(theta)?;
        prod = Some(match prod {
            None => factor,
            Some(p) => matmul(&p, &factor)?,
        });
    }
    if !prod.map(|p| p.is_zero()).unwrap_or(false) {
        return Ok(SpectrumCheck::MinimalPolynomialFails);
    }
    let mut power = g.clone();
    for j in 1..distinct.len() as u32 {
        if j > 1 {
            power = matmul(&power, &g)?;
        }
        let trace = power.trace()?;
        let expected = distinct.iter().try_fold(0i64, |acc, &(t, mu)| {
            t.checked_pow(j).and_then(|x| x.checked_mul(mu as i64)).and_then(|x| acc.checked_add(x))
        });
        let expected = expected.ok_or(Error::Overflow("spectrum power sum"))?;
        if trace != expected {
            return Ok(SpectrumCheck::TraceMismatch { power: j, trace, expected });
        }
    }
    Ok(SpectrumCheck::Matches)
}

/// A design file as read from disk: claimed parameters plus a matrix that has
/// not been checked against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignDescriptor {
    pub params: RDParams,
    pub incidence: BinaryMatrix,
}

impl DesignDescriptor {
    pub fn to_text(&self) -> String {
        let p = &self.params;
        format!(
            "RD {} {} {} {} {} {} {} {} {}\n{}",
            p.v,
            p.b,
            p.r,
            p.k,
            p.lambda1,
            p.lambda2,
            p.lambda3,
            p.m,
            p.n,
            self.incidence.to_text()
        )
    }

    pub fn verify(&self) -> VerificationReport {
        verify_incidence(&self.incidence, &self.params)
    }
}

impl From<&Design> for DesignDescriptor {
    fn from(d: &Design) -> Self {
        Self { params: d.params, incidence: d.incidence.clone() }
    }
}

impl FromStr for DesignDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if !s.ends_with('\n') {
            return Err(Error::Parse { line: s.lines().count().max(1), msg: "missing trailing newline".into() });
        }
        let mut lines = s.split('\n');
        let header = lines.next().unwrap_or_default();
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 10 || fields[0] != "RD" {
            return Err(Error::Parse { line: 1, msg: format!("expected \"RD v b r k l1 l2 l3 m n\", got {header:?}") });
        }
        let nums = fields[1..]
            .iter()
            .map(|f| f.parse::<u64>().map_err(|_| Error::Parse { line: 1, msg: format!("bad number {f:?}") }))
            .collect::<Result<Vec<u64>>>()?;
        let params = RDParams::new(nums[0], nums[1], nums[2], nums[3], nums[4], nums[5], nums[6], nums[7], nums[8]);
        let incidence = BinaryMatrix::parse_lines(&mut lines, 2)?;
        let rest: Vec<&str> = lines.collect();
        if rest != [""] {
            return Err(Error::Parse { line: incidence.n_rows() + 3, msg: "trailing content after matrix".into() });
        }
        if incidence.n_rows() as u64 != params.v || incidence.n_cols() as u64 != params.b {
            return Err(Error::Parse {
                line: 2,
                msg: format!(
                    "matrix is {}x{} but header claims v = {}, b = {}",
                    incidence.n_rows(),
                    incidence.n_cols(),
                    params.v,
                    params.b
                ),
            });
        }
        Ok(Self { params, incidence })
    }
}

/// The design whose blocks are the rows and the columns of an `n × n` array
/// (`v = n², b = 2n, r = 2, k = n, λ = (1, 1, 0)`): singular but not group divisible.
pub fn rows_and_columns_design(n: u64) -> Result<Design> {
    if n < 2 {
        return Err(Error::Precondition(format!("array side {n} < 2")));
    }
    let nn = n as usize;
    let incidence = BinaryMatrix::from_fn(nn * nn, 2 * nn, |t, blk| {
        if blk < nn {
            t / nn == blk
        } else {
            t % nn == blk - nn
        }
    })?;
    Design::new(incidence, RDParams::new(n * n, 2 * n, 2, n, 1, 1, 0, n, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_params_examples() {
        assert!(check_params(&RDParams::new(27, 36, 8, 6, 4, 2, 1, 9, 3)).is_empty());
        let bad = check_params(&RDParams::new(6, 6, 3, 3, 3, 3, 3, 2, 3));
        assert_eq!(bad, vec![ParamViolation::Concurrence { lhs: 15, rhs: 6 }]);
        assert!(check_params(&RDParams::new(4, 1, 1, 4, 1, 1, 1, 2, 2)).is_empty());
    }

    #[test]
    fn check_params_reports_everything() {
        let v = check_params(&RDParams::new(5, 0, 0, 9, 0, 0, 0, 1, 4));
        assert!(v.contains(&ParamViolation::DegenerateArray { m: 1, n: 4 }));
        assert!(v.contains(&ParamViolation::VNotMn { v: 5, mn: 4 }));
        assert!(v.contains(&ParamViolation::BlockSize { k: 9, v: 5 }));
        assert!(v.contains(&ParamViolation::ZeroReplication));
        assert!(v.contains(&ParamViolation::ZeroBlocks));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&RDParams::new(12, 12, 3, 3, 0, 0, 1, 3, 4)).unwrap();
        assert_eq!(s.thetas(), (1, 0, 4));
        assert_eq!((s.mult1, s.mult2, s.mult3), (3, 2, 6));
        assert_eq!(spectrum(&RDParams::new(9, 6, 2, 3, 1, 1, 0, 3, 3)).unwrap().thetas(), (3, 3, 0));
        assert_eq!(spectrum(&RDParams::new(15, 15, 5, 5, 0, 1, 2, 5, 3)).unwrap().thetas(), (1, 0, 6));
        assert!(spectrum(&RDParams::new(6, 6, 3, 3, 3, 3, 3, 2, 3)).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&RDParams::new(12, 12, 3, 3, 0, 0, 1, 3, 4)).unwrap();
        assert_eq!(c, DesignClass { tag: ClassTag::SemiRegularII, reduction: Reduction::None });
        let c = classify(&RDParams::new(27, 36, 8, 6, 4, 2, 1, 9, 3)).unwrap();
        assert_eq!(c.tag, ClassTag::LatinRegular);
        assert!(c.tag.is_regular());
        let c = classify(&RDParams::new(9, 6, 2, 3, 1, 1, 0, 3, 3)).unwrap();
        assert_eq!(c, DesignClass { tag: ClassTag::Singular, reduction: Reduction::None });
        let c = classify(&RDParams::new(4, 1, 1, 4, 1, 1, 1, 2, 2)).unwrap();
        assert_eq!(c, DesignClass { tag: ClassTag::Singular, reduction: Reduction::CompleteDesign });
    }

    #[test]
    fn classify_rejects_negative_eigenvalues() {
        // v=14, m=2, n=7, k=5, λ=(0,2,3): θ2 = 5 − 2 + 6·(0 − 3) < 0
        let p = RDParams::symmetric(2, 7, 5, (0, 2, 3));
        assert!(check_params(&p).is_empty());
        assert!(matches!(classify(&p), Err(Error::Nonexistent(_))));
    }

    #[test]
    fn associate_examples() {
        assert_eq!(associate_class(1, 2, 2, 3).unwrap(), Associate::First);
        assert_eq!(associate_class(1, 4, 2, 3).unwrap(), Associate::Second);
        assert_eq!(associate_class(1, 5, 2, 3).unwrap(), Associate::Third);
        assert!(associate_class(2, 2, 2, 3).is_err());
        assert!(associate_class(1, 7, 2, 3).is_err());
        assert!(associate_class(0, 1, 2, 3).is_err());
    }

    #[test]
    fn identity_is_not_an_rd_with_positive_lambda() {
        let i4 = BinaryMatrix::identity(4).unwrap();
        let report = verify_incidence(&i4, &RDParams::new(4, 4, 1, 1, 0, 0, 0, 2, 2));
        assert!(report.is_clean());
        let report = verify_incidence(&i4, &RDParams::new(4, 4, 1, 1, 1, 0, 0, 2, 2));
        assert!(!report.is_clean());
    }

    #[test]
    fn params_from_complete_design() {
        let p = params_from_matrix(&BinaryMatrix::ones(4, 4).unwrap(), 2, 2).unwrap();
        assert_eq!(p, RDParams::new(4, 4, 4, 4, 4, 4, 4, 2, 2));
    }

    #[test]
    fn params_from_matrix_errors() {
        let m = BinaryMatrix::from_rows(&[[1u8, 0], [1, 1], [0, 1], [1, 0]]).unwrap();
        assert!(matches!(params_from_matrix(&m, 2, 2), Err(Error::NotEquireplicate(_))));
        let m = BinaryMatrix::from_rows(&[[1u8, 0], [1, 0], [0, 1], [1, 0]]).unwrap();
        assert!(matches!(params_from_matrix(&m, 2, 2), Err(Error::NotProper(_))));
        // equireplicate and proper, but the two first-associate pairs concur differently
        let m = BinaryMatrix::from_rows(&[[1u8, 0], [1, 0], [0, 1], [0, 1]]).unwrap();
        assert!(params_from_matrix(&m, 2, 2).is_ok());
        let m = BinaryMatrix::from_rows(&[[1u8, 0], [0, 1], [1, 0], [0, 1]]).unwrap();
        let p = params_from_matrix(&m, 2, 2).unwrap();
        assert_eq!(p.lambdas(), (0, 1, 0));
        let m = BinaryMatrix::from_rows(&[[1u8, 0], [1, 0], [0, 1], [1, 0]]).unwrap().complement();
        assert!(params_from_matrix(&m, 2, 2).is_err());
        let m = BinaryMatrix::from_rows(&[[1u8, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 0]]).unwrap();
        assert!(matches!(params_from_matrix(&m, 2, 2), Err(Error::NotProper(_)) | Err(Error::NotAnRd(_))));
    }

    #[test]
    fn rows_and_columns_design_is_singular_not_gdd() {
        let d = rows_and_columns_design(3).unwrap();
        assert_eq!(*d.params(), RDParams::new(9, 6, 2, 3, 1, 1, 0, 3, 3));
        assert_eq!(d.classify().unwrap(), DesignClass { tag: ClassTag::Singular, reduction: Reduction::None });
        assert_eq!(check_spectrum_exact(d.incidence(), d.params()).unwrap(), SpectrumCheck::Matches);
    }

    #[test]
    fn dual_params_examples() {
        let d = dual_params(&RDParams::new(22, 55, 10, 4, 0, 1, 2, 11, 2));
        assert_eq!((d.v, d.b, d.r, d.k), (55, 22, 4, 10));
        assert!(!d.self_dual_compatible());
        let d = dual_params(&RDParams::new(12, 28, 7, 3, 0, 1, 2, 3, 4));
        assert_eq!((d.v, d.b, d.r, d.k), (28, 12, 3, 7));
        let p = RDParams::symmetric(2, 7, 5, (2, 2, 1));
        let d = dual_params(&p);
        assert_eq!((d.v, d.b, d.r, d.k), (p.v, p.b, p.r, p.k));
        assert!(d.self_dual_compatible());
    }

    #[test]
    fn descriptor_round_trip_and_errors() {
        let d = rows_and_columns_design(2).unwrap();
        let text = DesignDescriptor::from(&d).to_text();
        assert!(text.starts_with("RD 4 4 2 2 1 1 0 2 2\n4 4\n"));
        let back: DesignDescriptor = text.parse().unwrap();
        assert_eq!(back.incidence, *d.incidence());
        assert!(back.verify().is_clean());
        assert!("RD 4 4 2 2 1 1 0 2 2\n3 4\n1100\n0011\n1010\n".parse::<DesignDescriptor>().is_err());
        assert!("RX 4 4 2 2 1 1 0 2 2\n".parse::<DesignDescriptor>().is_err());
    }

    #[test]
    fn transpose_array_swaps_roles() {
        let d = rows_and_columns_design(3).unwrap();
        let t = d.transpose_array().unwrap();
        assert_eq!(t.params().lambdas(), (1, 1, 0));
        let c = RDParams::new(12, 12, 3, 3, 0, 0, 1, 3, 4);
        let s = spectrum(&c).unwrap();
        let swapped = RDParams { lambda1: c.lambda2, lambda2: c.lambda1, m: c.n, n: c.m, ..c };
        let st = spectrum(&swapped).unwrap();
        assert_eq!((st.theta1, st.theta2, st.theta3), (s.theta2, s.theta1, s.theta3));
    }
}
