//! Bundled parameter tables and the runner that rebuilds each row from its recipe.
//!
//! The tables live as plain text under `data/`, one row per line:
//! expected values, then `;` and the recipe (or `skip: reason`).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::analyze::{alpha_resolvability, efficiency, Rational};
use crate::construct::recipe::{build, Recipe, RecipeContext};
use crate::design::RDParams;
use crate::error::{Error, Result};
use crate::search::{feasibility_filter, Candidate, Verdict};

pub const TABLE4: &str = include_str!("../data/table4.txt");
pub const TABLE5: &str = include_str!("../data/table5.txt");
pub const SECTION6: &str = include_str!("../data/section6.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    /// Symmetric designs, `2 ≤ r, k ≤ 10`.
    T4,
    /// Designs with `λ3 > λ1, λ2`.
    T5,
    /// Symmetric parameter sets passing the feasibility filter.
    S6,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t4" => Ok(Table::T4),
            "t5" => Ok(Table::T5),
            "s6" => Ok(Table::S6),
            _ => Err(Error::Recipe(format!("unknown table `{s}` (expected t4, t5 or s6)"))),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::T4 => "T4",
            Table::T5 => "T5",
            Table::S6 => "S6",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Recipe(Recipe),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub id: u32,
    /// `b` and `r` are only listed for non-symmetric tables; symmetric rows fill them from `v`, `k`.
    pub params: RDParams,
    pub efficiency: Option<Rational>,
    pub alpha: Option<usize>,
    pub nature: String,
    pub source: Option<Source>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn hundredths(s: &str, line: usize) -> Result<Rational> {
    let (int, frac) = s.split_once('.').ok_or_else(|| parse_err(line, format!("`{s}` is not a decimal")))?;
    let scale = 10i128.pow(frac.len() as u32);
    let num = format!("{int}{frac}").parse::<i128>().map_err(|_| parse_err(line, format!("bad decimal `{s}`")))?;
    Ok(Ratio::new(num, scale))
}

/// Parse one of the bundled table files.
pub fn parse_table(table: Table, text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (fields, source) = match line.split_once(';') {
            Some((f, s)) => (f, Some(s.trim())),
            None => (line, None),
        };
        let w: Vec<&str> = fields.split_whitespace().collect();
        let num = |i: usize| -> Result<u64> {
            w.get(i)
                .ok_or_else(|| parse_err(line_no, "too few fields"))?
                .parse()
                .map_err(|_| parse_err(line_no, format!("field {} is not a number", i + 1)))
        };
        let (params, rest) = match table {
            Table::T4 => (RDParams::symmetric(num(6)?, num(7)?, num(2)?, (num(3)?, num(4)?, num(5)?)), 8),
            Table::T5 => (
                RDParams::new(num(1)?, num(2)?, num(3)?, num(4)?, num(5)?, num(6)?, num(7)?, num(8)?, num(9)?),
                10,
            ),
            Table::S6 => (RDParams::symmetric(num(2)?, num(3)?, num(4)?, (num(5)?, num(6)?, num(7)?)), 8),
        };
        if params.v != num(1)? {
            return Err(parse_err(line_no, format!("v = {} but m·n = {}", num(1)?, params.v)));
        }
        let id = num(0)? as u32;
        let row = if table == Table::S6 {
            let nature = w[rest..].join(" ");
            if nature.is_empty() {
                return Err(parse_err(line_no, "missing nature"));
            }
            TableRow { id, params, efficiency: None, alpha: None, nature, source: None }
        } else {
            if w.len() != rest + 3 {
                return Err(parse_err(line_no, format!("expected {} fields, found {}", rest + 3, w.len())));
            }
            let efficiency = Some(hundredths(w[rest], line_no)?);
            let alpha = match w[rest + 1] {
                "-" => None,
                a => Some(a.parse().map_err(|_| parse_err(line_no, format!("bad alpha `{a}`")))?),
            };
            let source = match source {
                Some(s) if s.starts_with("skip:") => Source::Skip(s["skip:".len()..].trim().to_string()),
                Some(s) => Source::Recipe(s.parse()?),
                None => return Err(parse_err(line_no, "missing recipe")),
            };
            TableRow { id, params, efficiency, alpha, nature: w[rest + 2].to_string(), source: Some(source) }
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn bundled(table: Table) -> Vec<TableRow> {
    let text = match table {
        Table::T4 => TABLE4,
        Table::T5 => TABLE5,
        Table::S6 => SECTION6,
    };
    parse_table(table, text).expect("bundled tables parse")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Vec<String>),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOutcome {
    pub table: Table,
    pub id: u32,
    pub status: Status,
    /// What was computed, for the report line.
    pub observed: String,
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = format!("{} row {}", self.table, self.id);
        match &self.status {
            Status::Pass => write!(f, "{head}: PASS {}", self.observed),
            Status::Fail(why) => write!(f, "{head}: FAIL {} [{}]", self.observed, why.join("; ")),
            Status::Skip(why) => write!(f, "{head}: SKIP {why}"),
        }
    }
}

/// Use the context's scheme in place of a `search:` argument with the same shape.
fn with_override(recipe: &Recipe, ctx: &RecipeContext) -> Recipe {
    let mut r = recipe.clone();
    if let (Some(ds), Some(spec)) = (&ctx.ds, recipe.args.get("ds")) {
        if let Some(shape) = spec.strip_prefix("search:") {
            let want: Vec<&str> = shape.split(',').take(3).collect();
            let have = [ds.m().to_string(), ds.s().to_string(), ds.x().to_string()];
            if want == have.iter().map(String::as_str).collect::<Vec<_>>() {
                r.args.remove("ds");
            }
        }
    }
    r
}

/// Build one row's design and compare every listed field.
pub fn run_row(table: Table, row: &TableRow, ctx: &RecipeContext) -> RowOutcome {
    let outcome = |status, observed| RowOutcome { table, id: row.id, status, observed };
    if table == Table::S6 {
        return run_feasibility_row(row);
    }
    let recipe = match &row.source {
        Some(Source::Recipe(r)) => with_override(r, ctx),
        Some(Source::Skip(why)) => return outcome(Status::Skip(why.clone()), String::new()),
        None => return outcome(Status::Skip("no recipe".into()), String::new()),
    };
    let d = match build(&recipe, ctx) {
        Ok(d) => d,
        Err(Error::UnsupportedOrder(why)) if recipe.args.get("ds").is_some_and(|s| s.starts_with("search:")) => {
            return outcome(Status::Skip(format!("{why}; supply the scheme with --ds")), String::new())
        }
        Err(e) => return outcome(Status::Fail(vec![format!("`{recipe}`: {e}")]), String::new()),
    };
    let p = *d.params();
    let want = row.params;
    let mut why = Vec::new();
    let shape = |q: &RDParams| (q.v, q.k, q.lambdas(), q.m, q.n);
    if shape(&p) != shape(&want) {
        why.push(format!("params {p}, expected {want}"));
    }
    if table == Table::T5 && (p.b, p.r) != (want.b, want.r) {
        why.push(format!("(b, r) = ({}, {}), expected ({}, {})", p.b, p.r, want.b, want.r));
    }
    let tag = d.classify().map(|c| c.tag.abbrev().to_string()).unwrap_or_else(|e| e.to_string());
    if tag != row.nature {
        why.push(format!("nature {tag}, expected {}", row.nature));
    }
    let e = efficiency(&p).ok().map(|e| e.e);
    if let (Some(expected), got) = (row.efficiency, e) {
        match got {
            Some(g) if (g - expected) <= Ratio::new(1, 200) && (expected - g) <= Ratio::new(1, 200) => {}
            Some(g) => {
                let truncated = (g * 100).floor() / 100 == expected;
                why.push(format!(
                    "E = {}, expected {}{}",
                    crate::analyze::round_half_up(g, 4),
                    crate::analyze::round_half_up(expected, 2),
                    if truncated { " (listed value is E truncated, not rounded)" } else { "" }
                ))
            }
            None => why.push("no efficiency (disconnected)".into()),
        }
    }
    let alpha = alpha_resolvability(&d).map(|c| c.alpha);
    if let Some(expected) = row.alpha {
        if alpha != Some(expected) {
            why.push(format!("α = {}, expected {expected}", alpha.map_or("none".into(), |a| a.to_string())));
        }
    }
    let observed = format!(
        "({} {} {} {} {} {} {} {} {}) E={} α={} {tag}",
        p.v,
        p.b,
        p.r,
        p.k,
        p.lambda1,
        p.lambda2,
        p.lambda3,
        p.m,
        p.n,
        e.map_or("-".into(), |e| crate::analyze::round_half_up(e, 4)),
        alpha.map_or("-".into(), |a| a.to_string()),
    );
    outcome(if why.is_empty() { Status::Pass } else { Status::Fail(why) }, observed)
}

fn run_feasibility_row(row: &TableRow) -> RowOutcome {
    let c = feasibility_filter(Candidate::new(row.params));
    let mut why = Vec::new();
    match &c.verdict {
        Verdict::Possible => {}
        Verdict::Nonexistent(e) => why.push(format!("rejected: {e}")),
        Verdict::FailsSquare => why.push("fails the perfect-square condition".into()),
    }
    let nature = c.class.map(|k| k.nature()).unwrap_or_else(|| "-".into());
    if nature != row.nature {
        why.push(format!("nature {nature}, expected {}", row.nature));
    }
    RowOutcome {
        table: Table::S6,
        id: row.id,
        status: if why.is_empty() { Status::Pass } else { Status::Fail(why) },
        observed: c.line(),
    }
}

/// Run every row of a bundled table, in row order.
pub fn run_table(table: Table, ctx: &RecipeContext) -> Vec<RowOutcome> {
    bundled(table).iter().map(|row| run_row(table, row, ctx)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

pub fn summarize(outcomes: &[RowOutcome]) -> Summary {
    let mut s = Summary::default();
    for o in outcomes {
        match o.status {
            Status::Pass => s.pass += 1,
            Status::Fail(_) => s.fail += 1,
            Status::Skip(_) => s.skip += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_parse() {
        assert_eq!(bundled(Table::T4).len(), 28);
        assert_eq!(bundled(Table::T5).len(), 14);
        assert_eq!(bundled(Table::S6).len(), 10);
    }

    #[test]
    fn rejects_inconsistent_rows() {
        assert!(parse_table(Table::S6, "1 19 3 6 5 2 0 1 R RD\n").is_err());
        assert!(parse_table(Table::T4, "1 6 4 2 2 3 2 3 0.89 2 SR\n").is_err());
        assert!(parse_table(Table::T4, "1 6 4 2 2 3 2 3 x 2 SR ; ex3\n").is_err());
    }

    #[test]
    fn first_rows() {
        let ctx = RecipeContext::default();
        let rows = bundled(Table::T4);
        assert_eq!(run_row(Table::T4, &rows[0], &ctx).status, Status::Pass);
        assert!(matches!(run_row(Table::T4, &rows[3], &ctx).status, Status::Skip(_)));
        let rows = bundled(Table::T5);
        assert_eq!(run_row(Table::T5, &rows[8], &ctx).status, Status::Pass);
    }

    #[test]
    fn wrong_expectation_fails() {
        let ctx = RecipeContext::default();
        let mut row = bundled(Table::T4).remove(2);
        row.efficiency = Some(Ratio::new(70, 100));
        assert!(matches!(run_row(Table::T4, &row, &ctx).status, Status::Fail(_)));
    }
}
