//! Post-construction analysis: resolvability, self-duality, decompositions,
//! canonical efficiency and the structural checks for semi-regular and
//! regular designs.

use std::fmt;
use std::ops::Range;

use num_rational::Ratio;

use crate::binmat::{as_two_valued, matmul, two_valued, BinaryMatrix, IntMatrix};
use crate::design::{classify, spectrum, verify_incidence, ClassTag, Design, RDParams};
use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Witness that the blocks split into `r / α` classes of `β = vα / k`
/// consecutive blocks, each class containing every treatment `α` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionCertificate {
    pub alpha: usize,
    pub class_count: usize,
    pub class_size: usize,
    pub classes: Vec<Range<usize>>,
    /// `(q1, q2)`: constant block intersections within and across classes.
    pub affine: Option<(usize, usize)>,
}

fn class_is_resolution(inc: &BinaryMatrix, cols: Range<usize>, alpha: usize) -> bool {
    (0..inc.n_rows()).all(|i| cols.clone().filter(|&c| inc.is_set(i, c)).count() == alpha)
}

/// Smallest proper divisor `α < r` whose contiguous column partition is an
/// `α`-resolution. `None` means no contiguous certificate was found.
pub fn alpha_resolvability(d: &Design) -> Option<ResolutionCertificate> {
    let p = d.params();
    let (v, b, r, k) = (p.v as usize, p.b as usize, p.r as usize, p.k as usize);
    let inc = d.incidence();
    for alpha in (1..r).filter(|a| r % a == 0) {
        if (v * alpha) % k != 0 {
            continue;
        }
        let beta = v * alpha / k;
        if beta == 0 || b % beta != 0 {
            continue;
        }
        let classes: Vec<Range<usize>> = (0..b / beta).map(|c| c * beta..(c + 1) * beta).collect();
        if classes.iter().all(|cl| class_is_resolution(inc, cl.clone(), alpha)) {
            let affine = affine_pair(inc, beta);
            return Some(ResolutionCertificate { alpha, class_count: b / beta, class_size: beta, classes, affine });
        }
    }
    None
}

fn affine_pair(inc: &BinaryMatrix, beta: usize) -> Option<(usize, usize)> {
    let gram = inc.transpose().gram();
    let (mut q1, mut q2) = (None, None);
    for a in 0..gram.n_rows() {
        for c in (a + 1)..gram.n_cols() {
            let slot = if a / beta == c / beta { &mut q1 } else { &mut q2 };
            let x = gram.get(a, c) as usize;
            if *slot.get_or_insert(x) != x {
                return None;
            }
        }
    }
    Some((q1.unwrap_or(0), q2?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualReport {
    /// First reason the dual differs, if any.
    pub deviation: Option<String>,
}

impl SelfDualReport {
    pub fn passed(&self) -> bool {
        self.deviation.is_none()
    }
}

/// `v = b`, `r = k`, and `Nᵀ` is an RD with the same parameters.
pub fn self_dual_check(d: &Design) -> SelfDualReport {
    let p = d.params();
    let deviation = if p.v != p.b {
        Some(format!("v = {} but b = {}", p.v, p.b))
    } else if p.r != p.k {
        Some(format!("r = {} but k = {}", p.r, p.k))
    } else {
        let report = verify_incidence(&d.incidence().transpose(), p);
        report.deviations.first().map(|dev| format!("dual: {dev}"))
    };
    SelfDualReport { deviation }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GlobalReport {
    pub failures: Vec<String>,
}

impl GlobalReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

fn block(inc: &BinaryMatrix, i: usize, j: usize, n: usize) -> Result<BinaryMatrix> {
    inc.submatrix(i * n..(i + 1) * n, j * n..(j + 1) * n)
}

/// Split `N` into square blocks of order `n` and check that each block is a
/// symmetric 2-design (or empty) and that the block rows satisfy
/// `Σ_k N_ik N_ikᵀ = kI + λ1 Iᶜ` and `Σ_k N_ik N_jkᵀ = λ2 I + λ3 Iᶜ` (`i ≠ j`).
pub fn global_decomposition_check(d: &Design, block_order: usize) -> Result<GlobalReport> {
    let p = d.params();
    let inc = d.incidence();
    let n = block_order;
    if p.v != p.b || n == 0 || p.v % n as u64 != 0 || n as u64 != p.n {
        return Err(Error::InvalidShape(format!(
            "cannot split a {}x{} design with n = {} into blocks of order {n}",
            p.v, p.b, p.n
        )));
    }
    let m = p.m as usize;
    let blocks: Vec<Vec<BinaryMatrix>> =
        (0..m).map(|i| (0..m).map(|j| block(inc, i, j, n)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if b.count_ones() > 0 && as_two_valued(&b.gram()).is_err() {
                failures.push(format!("block ({}, {}) is not a symmetric 2-design", i + 1, j + 1));
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            let mut sum = IntMatrix::zeros(n, n)?;
            for k in 0..m {
                sum = sum.checked_add(&matmul(&blocks[i][k], &blocks[j][k].transpose())?)?;
            }
            let want = if i == j {
                two_valued(n, p.k as i64, p.lambda1 as i64)
            } else {
                two_valued(n, p.lambda2 as i64, p.lambda3 as i64)
            };
            if sum != want {
                let cond = if i == j { "(i)" } else { "(ii)" };
                failures.push(format!("block rows {}, {} fail condition {cond}", i + 1, j + 1));
            }
        }
    }
    Ok(GlobalReport { failures })
}

/// Row and column sums of the blocks of a partition of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TacticalDecomposition {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
    /// `r_ij` when every row of block `(i, j)` has the same sum.
    pub row_sums: Vec<Vec<Option<usize>>>,
    /// `k_ij` when every column of block `(i, j)` has the same sum.
    pub col_sums: Vec<Vec<Option<usize>>>,
    pub uniform_row: bool,
    pub uniform_col: bool,
    /// Common order when every block is square of one size.
    pub std_n: Option<usize>,
}

impl TacticalDecomposition {
    pub fn row_tactical(&self) -> bool {
        self.row_sums.iter().flatten().all(Option::is_some)
    }

    pub fn col_tactical(&self) -> bool {
        self.col_sums.iter().flatten().all(Option::is_some)
    }
}

fn constant(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

fn uniform(table: &[Vec<Option<usize>>]) -> bool {
    constant(table.iter().flatten().map(|x| x.unwrap_or(usize::MAX))).is_some_and(|x| x != usize::MAX)
}

fn offsets(sizes: &[usize], total: usize, what: &str) -> Result<Vec<usize>> {
    if sizes.contains(&0) || sizes.iter().sum::<usize>() != total {
        return Err(Error::InvalidShape(format!("{what} group sizes {sizes:?} do not partition {total}")));
    }
    Ok(std::iter::once(0).chain(sizes.iter().scan(0, |acc, s| {
        *acc += s;
        Some(*acc)
    })).collect())
}

/// Tabulate `r_ij`, `k_ij` for contiguous row groups and column groups of the given sizes.
pub fn tactical_decomposition(d: &Design, row_groups: &[usize], col_groups: &[usize]) -> Result<TacticalDecomposition> {
    let inc = d.incidence();
    let ro = offsets(row_groups, inc.n_rows(), "row")?;
    let co = offsets(col_groups, inc.n_cols(), "column")?;
    let mut row_sums = vec![vec![None; col_groups.len()]; row_groups.len()];
    let mut col_sums = row_sums.clone();
    for i in 0..row_groups.len() {
        for j in 0..col_groups.len() {
            let rows = ro[i]..ro[i + 1];
            let cols = co[j]..co[j + 1];
            row_sums[i][j] = constant(rows.clone().map(|r| cols.clone().filter(|&c| inc.is_set(r, c)).count()));
            col_sums[i][j] = constant(cols.clone().map(|c| rows.clone().filter(|&r| inc.is_set(r, c)).count()));
        }
    }
    let std_n = constant(row_groups.iter().chain(col_groups).copied());
    Ok(TacticalDecomposition {
        row_sizes: row_groups.to_vec(),
        col_sizes: col_groups.to_vec(),
        uniform_row: uniform(&row_sums),
        uniform_col: uniform(&col_sums),
        row_sums,
        col_sums,
        std_n,
    })
}

/// `m_ij = |P_i ∩ B_j|` for the array rows `P_i` and blocks `B_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIntersectionMatrix {
    pub entries: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIntersectionReport {
    pub matrix: RowIntersectionMatrix,
    /// `Σ_j m_ij = nr` for every `i`.
    pub sums_hold: bool,
    /// `Σ_j m_ij² = nr + n(n−1)λ1` for every `i`.
    pub squares_hold: bool,
    /// For semi-regular (II) designs: every `m_ij = k/m`. `None` for other classes.
    pub constant_alpha: Option<bool>,
}

pub fn row_intersections(d: &Design) -> RowIntersectionMatrix {
    let p = d.params();
    let (m, n) = (p.m as usize, p.n as usize);
    let inc = d.incidence();
    let entries = (0..m)
        .map(|i| (0..inc.n_cols()).map(|j| (i * n..(i + 1) * n).filter(|&t| inc.is_set(t, j)).count()).collect())
        .collect();
    RowIntersectionMatrix { entries }
}

pub fn row_intersection_check(d: &Design) -> RowIntersectionReport {
    let p = d.params();
    let (n, r, l1) = (p.n as usize, p.r as usize, p.lambda1 as usize);
    let matrix = row_intersections(d);
    let sums_hold = matrix.entries.iter().all(|row| row.iter().sum::<usize>() == n * r);
    let squares_hold = matrix.entries.iter().all(|row| row.iter().map(|x| x * x).sum::<usize>() == n * r + n * (n - 1) * l1);
    let constant_alpha = match classify(p) {
        Ok(c) if c.tag == ClassTag::SemiRegularII => Some(
            p.k % p.m == 0 && matrix.entries.iter().flatten().all(|&x| x as u64 * p.m == p.k),
        ),
        _ => None,
    };
    RowIntersectionReport { matrix, sums_hold, squares_hold, constant_alpha }
}

/// Canonical efficiency factor and the eigenvalues of `C = rI − N Nᵀ / k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficiencyReport {
    pub e: Rational,
    /// Non-trivial eigenvalues `r − θ_i / k` with multiplicities.
    pub c_eigenvalues: Vec<(Rational, u64)>,
    pub connected: bool,
}

impl EfficiencyReport {
    /// `E` rounded half-up to `digits` decimals.
    pub fn rounded(&self, digits: u32) -> String {
        round_half_up(self.e, digits)
    }
}

/// Decimal rendering of a non-negative rational, rounded half-up.
pub fn round_half_up(x: Rational, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let scaled = x * Rational::from_integer(scale);
    let units = (scaled + Rational::new(1, 2)).floor().to_integer();
    if digits == 0 {
        return units.to_string();
    }
    format!("{}.{:0width$}", units / scale, units % scale, width = digits as usize)
}

/// `E = (v − 1) / Σ mult_i · rk / (rk − θ_i)`, the harmonic mean of `1 − θ_i / (rk)`.
pub fn efficiency(p: &RDParams) -> Result<EfficiencyReport> {
    let s = spectrum(p)?;
    let rk = s.theta0 as i128;
    let (r, k) = (p.r as i128, p.k as i128);
    let mut c_eigenvalues = Vec::new();
    let mut denom = Rational::from_integer(0);
    let mut connected = true;
    for (theta, mult) in s.nontrivial() {
        if mult == 0 {
            continue;
        }
        let theta = theta as i128;
        c_eigenvalues.push((Rational::new(r * k - theta, k), mult));
        if theta >= rk {
            connected = false;
            continue;
        }
        denom += Rational::new(rk * mult as i128, rk - theta);
    }
    if !connected {
        return Err(Error::NotApplicable(format!("{p} is disconnected; no efficiency factor")));
    }
    let e = Rational::from_integer(p.v as i128 - 1) / denom;
    Ok(EfficiencyReport { e, c_eigenvalues, connected })
}

/// Which eigenvalue product has to be a perfect square for a symmetric regular design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCondition {
    /// Indices (1..=3) of the `θ_i` whose exponent is odd.
    pub factors: Vec<u8>,
    pub product: u128,
    pub holds: bool,
}

impl fmt::Display for SquareCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "square: trivial (all exponents even)");
        }
        let names: Vec<String> = self.factors.iter().map(|i| format!("θ{i}")).collect();
        write!(f, "{} = {} {}", names.join("·"), self.product, if self.holds { "square" } else { "not square" })
    }
}

fn is_square(x: u128) -> bool {
    let r = x.isqrt();
    r * r == x
}

/// `θ1^{n−1} θ2^{m−1} θ3^{(m−1)(n−1)}` is a square iff the product of the
/// `θ_i` with odd exponent is. `None` when some `θ_i` is not positive.
pub fn square_condition(p: &RDParams) -> Result<Option<SquareCondition>> {
    let s = spectrum(p)?;
    let mut factors = Vec::new();
    let mut product: u128 = 1;
    for (i, (theta, mult)) in s.nontrivial().into_iter().enumerate() {
        if theta <= 0 {
            return Ok(None);
        }
        if mult % 2 == 1 {
            factors.push(i as u8 + 1);
            product = product.checked_mul(theta as u128).ok_or(Error::Overflow("eigenvalue product"))?;
        }
    }
    Ok(Some(SquareCondition { holds: is_square(product), factors, product }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularChecks {
    pub regular: bool,
    /// Determinant condition, symmetric regular designs only.
    pub square: Option<SquareCondition>,
    /// `b ≥ v + r − 1`, regular designs claimed resolvable only.
    pub fisher_bound: Option<bool>,
    /// A symmetric regular design claimed resolvable with `r > 1`.
    pub resolvable_impossible: bool,
}

/// Necessary conditions on regular designs: perfect-square determinant when
/// symmetric; `b ≥ v + r − 1` when resolvable; symmetric and resolvable only if `r = 1`.
pub fn symmetric_regular_checks(p: &RDParams, claimed_resolvable: bool) -> Result<RegularChecks> {
    let class = classify(p)?;
    let regular = class.tag.is_regular();
    let symmetric = p.is_symmetric();
    Ok(RegularChecks {
        regular,
        square: if regular && symmetric { square_condition(p)? } else { None },
        fisher_bound: (regular && claimed_resolvable).then(|| p.b + 1 >= p.v + p.r),
        resolvable_impossible: regular && symmetric && claimed_resolvable && p.r != 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EOptimalClass {
    /// `λ1 = λ2 = λ3 − 1`, `v > 12`.
    Type1,
    /// `λ1 + 1 = λ2 − 1 = λ3`, `v ≥ 10`.
    Type2,
    None,
}

/// The two balance patterns for `m = 2` designs.
pub fn e_optimal_class(p: &RDParams) -> Result<EOptimalClass> {
    if p.m != 2 {
        return Err(Error::NotApplicable(format!("E-optimality classes need m = 2, got m = {}", p.m)));
    }
    let (l1, l2, l3) = p.lambdas();
    Ok(if l1 == l2 && l2 + 1 == l3 && p.v > 12 {
        EOptimalClass::Type1
    } else if l1 + 1 == l3 && l2 == l3 + 1 && p.v >= 10 {
        EOptimalClass::Type2
    } else {
        EOptimalClass::None
    })
}

/// Structural consequences checked on one semi-regular design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiRegularReport {
    /// The design was semi-regular (I) and was checked with its array transposed.
    pub transposed: bool,
    pub alpha: u64,
    pub m_divides_k: bool,
    pub intersections_constant: bool,
    pub uniform_column_tactical: bool,
    pub dual_resolvable: bool,
    /// `(s, outcome)` for each truncation `s = 1..m−2`.
    pub truncations: Vec<(u64, std::result::Result<(), String>)>,
}

impl SemiRegularReport {
    pub fn passed(&self) -> bool {
        self.m_divides_k
            && self.intersections_constant
            && self.uniform_column_tactical
            && self.dual_resolvable
            && self.truncations.iter().all(|(_, r)| r.is_ok())
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.m_divides_k {
            out.push("m does not divide k".to_string());
        }
        if !self.intersections_constant {
            out.push(format!("some row intersection differs from α = {}", self.alpha));
        }
        if !self.uniform_column_tactical {
            out.push("not uniform column tactical".to_string());
        }
        if !self.dual_resolvable {
            out.push("dual is not α-resolvable by array rows".to_string());
        }
        for (s, r) in &self.truncations {
            if let Err(e) = r {
                out.push(format!("truncation s = {s}: {e}"));
            }
        }
        out
    }
}

/// Run the semi-regular structure checks on a semi-regular (II) design, or on
/// the array transpose of a semi-regular (I) design.
///
/// The checks: `m | k`; every `m_ij = α = k/m`; the `m` groups of `n` rows give
/// a uniform column-tactical decomposition; `Nᵀ`, cut into `m` column groups
/// of `n`, has all row sums `α`; dropping the last `s` array rows
/// (`1 ≤ s ≤ m − 2`) leaves an RD with `k' = α(m − s)` and the same `λ`s.
pub fn semi_regular_suite(d: &Design) -> Result<SemiRegularReport> {
    let tag = d.classify()?.tag;
    let (d, transposed) = match tag {
        ClassTag::SemiRegularII => (d.clone(), false),
        ClassTag::SemiRegularI => (d.transpose_array()?, true),
        other => return Err(Error::NotApplicable(format!("design is {other}, not semi-regular"))),
    };
    let p = *d.params();
    let m_divides_k = p.k % p.m == 0;
    let alpha = p.k / p.m;
    let rim = row_intersection_check(&d);
    let intersections_constant = rim.constant_alpha == Some(true);
    let n = p.n as usize;
    let td = tactical_decomposition(&d, &vec![n; p.m as usize], &[p.b as usize])?;
    let uniform_column_tactical = td.uniform_col && td.col_sums.iter().flatten().all(|&k| k == Some(alpha as usize));
    let nt = d.incidence().transpose();
    let dual_resolvable = (0..nt.n_rows()).all(|row| {
        (0..p.m as usize).all(|g| (g * n..(g + 1) * n).filter(|&c| nt.is_set(row, c)).count() as u64 == alpha)
    });
    let truncations = (1..p.m.saturating_sub(1))
        .map(|s| {
            let out = d.drop_array_rows(s).map_err(|e| e.to_string()).and_then(|t| {
                let q = t.params();
                if q.k != alpha * (p.m - s) {
                    Err(format!("k' = {}, expected {}", q.k, alpha * (p.m - s)))
                } else if q.lambdas() != p.lambdas() {
                    Err(format!("λ' = {:?}, expected {:?}", q.lambdas(), p.lambdas()))
                } else {
                    Ok(())
                }
            });
            (s, out)
        })
        .collect();
    Ok(SemiRegularReport {
        transposed,
        alpha,
        m_divides_k,
        intersections_constant,
        uniform_column_tactical,
        dual_resolvable,
        truncations,
    })
}

/// Line-oriented `FIELD\tVALUE` analysis of a design.
pub fn analysis_report(d: &Design) -> String {
    let p = d.params();
    let mut out = String::new();
    let mut field = |k: &str, v: String| {
        out.push_str(k);
        out.push('\t');
        out.push_str(&v);
        out.push('\n');
    };
    field("params", format!("{} {} {} {} {} {} {} {} {}", p.v, p.b, p.r, p.k, p.lambda1, p.lambda2, p.lambda3, p.m, p.n));
    let s = d.spectrum();
    field("theta", format!("{} {} {}", s.theta1, s.theta2, s.theta3));
    match d.classify() {
        Ok(c) => {
            field("class", c.tag.to_string());
            field("reduction", c.reduction.to_string());
            field("nature", c.nature());
        }
        Err(e) => field("class", format!("error: {e}")),
    }
    match efficiency(p) {
        Ok(e) => field("efficiency", e.rounded(4)),
        Err(_) => field("efficiency", "none (disconnected)".into()),
    }
    match alpha_resolvability(d) {
        Some(c) => {
            field("alpha", c.alpha.to_string());
            field("classes", format!("{} x {}", c.class_count, c.class_size));
            if let Some((q1, q2)) = c.affine {
                field("affine", format!("{q1} {q2}"));
            }
        }
        None => field("alpha", "none found (contiguous)".into()),
    }
    let sd = self_dual_check(d);
    field("self_dual", sd.deviation.unwrap_or_else(|| "yes".into()));
    if let Ok(Some(sq)) = square_condition(p) {
        if p.is_symmetric() {
            field("square_condition", sq.to_string());
        }
    }
    if let Ok(c) = e_optimal_class(p) {
        field("e_optimal", format!("{c:?}"));
    }
    out
}
