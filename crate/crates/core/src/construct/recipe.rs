//! Text recipes: `<method> key=value …`, e.g. `thm6 t=2` or `cor12 ds=sylvester:3 t=5`.
//!
//! Matrix arguments accept `@file`, `fano`, `ag23`, `w`, `I<n>` and `sh<t>`
//! (the skew-Hadamard design of order `4t − 1`), optionally prefixed by `I+`
//! and suffixed by `^T`. Difference-scheme arguments accept `@file`,
//! `field:<q>`, `sylvester:<k>` and `search:<m>,<s>,<x>[,cyclic|ea|any]`.
//! Every recipe also takes `complement=1` and `transpose=1`, applied in that
//! order after the construction.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{circulant, ds, method1, mols, srg};
use crate::algebra::ds::{ds_field, ds_search, ds_sylvester, DifferenceScheme, Group};
use crate::algebra::mols::{mols as field_mols, MolsSet};
use crate::algebra::skew::skew_hadamard_design;
use crate::algebra::srg::{paley_srg, SrgGraph};
use crate::binmat::BinaryMatrix;
use crate::design::{complement_design, rows_and_columns_design, Design};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub method: String,
    pub args: BTreeMap<String, String>,
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let method = words.next().ok_or_else(|| Error::Recipe("empty recipe".into()))?.to_ascii_lowercase();
        let mut args = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Recipe(format!("argument `{w}` is not key=value")))?;
            if args.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Recipe(format!("argument `{k}` given twice")));
            }
        }
        Ok(Self { method, args })
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.method)?;
        for (k, v) in &self.args {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Where `@file` arguments are resolved, plus optional command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct RecipeContext {
    pub base_dir: PathBuf,
    /// Used when a scheme-based recipe has no `ds=` argument.
    pub ds: Option<DifferenceScheme>,
    /// Used when `thm7` has no `mols=` / `q=` argument.
    pub mols: Option<MolsSet>,
}

impl RecipeContext {
    pub fn new(base_dir: impl Into<PathBuf>) -> Self {
        Self { base_dir: base_dir.into(), ..Self::default() }
    }

    fn read(&self, file: &str) -> Result<String> {
        let path = if Path::new(file).is_absolute() { PathBuf::from(file) } else { self.base_dir.join(file) };
        std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

struct Args<'a> {
    recipe: &'a Recipe,
    used: Vec<&'static str>,
}

impl<'a> Args<'a> {
    fn raw(&mut self, key: &'static str) -> Option<&'a str> {
        self.used.push(key);
        self.recipe.args.get(key).map(String::as_str)
    }

    fn req(&mut self, key: &'static str) -> Result<&'a str> {
        self.raw(key)
            .ok_or_else(|| Error::Recipe(format!("`{}` needs `{key}=`", self.recipe.method)))
    }

    fn num<T: FromStr>(&mut self, key: &'static str) -> Result<T> {
        let v = self.req(key)?;
        v.parse().map_err(|_| Error::Recipe(format!("`{key}={v}` is not a number")))
    }

    fn flag(&mut self, key: &'static str) -> Result<bool> {
        match self.raw(key) {
            None | Some("0") | Some("false") => Ok(false),
            Some("1") | Some("true") => Ok(true),
            Some(v) => Err(Error::Recipe(format!("`{key}={v}` is not 0 or 1"))),
        }
    }

    fn finish(&self) -> Result<()> {
        for k in self.recipe.args.keys() {
            if !self.used.contains(&k.as_str()) {
                return Err(Error::Recipe(format!("`{}` does not take `{k}=`", self.recipe.method)));
            }
        }
        Ok(())
    }
}

/// Resolve a matrix argument (see the module docs).
pub fn parse_matrix_spec(spec: &str, ctx: &RecipeContext) -> Result<BinaryMatrix> {
    let (plus_i, rest) = match spec.strip_prefix("I+") {
        Some(r) => (true, r),
        None => (false, spec),
    };
    let (transpose, core) = match rest.strip_suffix("^T") {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let count = |s: &str| s.parse::<usize>().map_err(|_| Error::Recipe(format!("bad matrix `{spec}`")));
    let mut m = if let Some(file) = core.strip_prefix('@') {
        ctx.read(file)?.parse::<BinaryMatrix>()?
    } else if core == "fano" {
        method1::fano()
    } else if core == "ag23" {
        method1::ag23()
    } else if core == "w" {
        BinaryMatrix::circulant(&[0, 1, 0])?
    } else if let Some(n) = core.strip_prefix("sh") {
        skew_hadamard_design(count(n)?)?.incidence().clone()
    } else if let Some(n) = core.strip_prefix('I') {
        BinaryMatrix::identity(count(n)?)?
    } else {
        return Err(Error::Recipe(format!("unknown matrix `{spec}`")));
    };
    if transpose {
        m = m.transpose();
    }
    if plus_i {
        if !m.is_square() {
            return Err(Error::Recipe(format!("`{spec}`: I + A needs a square matrix")));
        }
        let i = BinaryMatrix::identity(m.n_rows())?;
        m = m
            .disjoint_sum(&i)
            .map_err(|(r, _)| Error::ConstructionConflict(format!("`{spec}`: diagonal entry {} already set", r + 1)))?;
    }
    Ok(m)
}

/// Resolve a difference-scheme argument (see the module docs).
pub fn parse_ds_spec(spec: &str, ctx: &RecipeContext) -> Result<DifferenceScheme> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| Error::Recipe(format!("bad scheme `{spec}`")));
    if let Some(file) = spec.strip_prefix('@') {
        return ctx.read(file)?.parse();
    }
    if let Some(q) = spec.strip_prefix("field:") {
        return ds_field(num(q)? as u64);
    }
    if let Some(k) = spec.strip_prefix("sylvester:") {
        return ds_sylvester(num(k)?);
    }
    if let Some(rest) = spec.strip_prefix("search:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Recipe(format!("`{spec}` should be search:m,s,x[,group]")));
        }
        let (m, s, x) = (num(parts[0])? as usize, num(parts[1])?, num(parts[2])? as usize);
        let groups = match parts.get(3).copied().unwrap_or("any") {
            "cyclic" => vec![Group::Cyclic(s)],
            "ea" => vec![Group::elementary_abelian(s)?],
            "any" => {
                let mut g = vec![Group::Cyclic(s)];
                if let Ok(ea) = Group::elementary_abelian(s) {
                    if ea != g[0] {
                        g.push(ea);
                    }
                }
                g
            }
            other => return Err(Error::Recipe(format!("unknown group kind `{other}`"))),
        };
        for g in groups {
            if let Some(d) = ds_search(m, s as usize, x, g)? {
                return Ok(d);
            }
        }
        return Err(Error::UnsupportedOrder(format!("no DS({m}, {s}; {x}) found by search")));
    }
    Err(Error::Recipe(format!("unknown scheme `{spec}`")))
}

fn scheme(a: &mut Args, ctx: &RecipeContext) -> Result<DifferenceScheme> {
    match (a.raw("ds"), &ctx.ds) {
        (Some(spec), _) => parse_ds_spec(spec, ctx),
        (None, Some(d)) => Ok(d.clone()),
        (None, None) => Err(Error::Recipe(format!("`{}` needs `ds=` or a scheme file", a.recipe.method))),
    }
}

fn graph(a: &mut Args, ctx: &RecipeContext) -> Result<SrgGraph> {
    match (a.raw("q"), a.raw("g")) {
        (Some(q), None) => paley_srg(q.parse().map_err(|_| Error::Recipe(format!("`q={q}` is not a number")))?),
        (None, Some(g)) => SrgGraph::from_adjacency(parse_matrix_spec(g, ctx)?),
        _ => Err(Error::Recipe("`thm8` needs exactly one of `q=` and `g=`".into())),
    }
}

fn corollary_number(method: &str) -> Option<method1::Corollary> {
    method.strip_prefix("cor")?.parse().ok().and_then(method1::Corollary::from_number)
}

/// Build and verify the design a recipe describes.
pub fn build(recipe: &Recipe, ctx: &RecipeContext) -> Result<Design> {
    let mut a = Args { recipe, used: Vec::new() };
    let complement = a.flag("complement")?;
    let transpose = a.flag("transpose")?;
    let method = recipe.method.as_str();
    let d = match method {
        "lemma1" => {
            let n1 = parse_matrix_spec(a.req("n1")?, ctx)?;
            method1::lemma1_kronecker(&n1, &parse_matrix_spec(a.req("n2")?, ctx)?)?
        }
        "thm3" => method1::thm3_t(&parse_matrix_spec(a.req("n1")?, ctx)?, a.num("t")?)?,
        "thm4" => {
            let n1 = parse_matrix_spec(a.req("n1")?, ctx)?;
            let n2 = parse_matrix_spec(a.req("n2")?, ctx)?;
            method1::thm4(&n1, &n2, a.num("m")?)?
        }
        "thm5" => method1::thm5_latin_regular(&parse_matrix_spec(a.req("d")?, ctx)?, a.num("n")?)?,
        c if corollary_number(c).is_some() => {
            let which = corollary_number(c).expect("checked");
            let t = if which == method1::Corollary::C4 && a.recipe.args.get("t").is_none() { 1 } else { a.num("t")? };
            method1::corollary_preset(which, a.num("m")?, t)?
        }
        "thm6" => circulant::thm6(a.num("t")?)?,
        "remark7" => circulant::remark7(a.num("t")?)?,
        "ex1" => rows_and_columns_design(a.num("n")?)?,
        "ex2" => circulant::example2()?,
        "ex3" => circulant::example3()?,
        "ex4" => circulant::example4()?,
        "thm7" => {
            let set = match (a.raw("q"), a.raw("mols"), &ctx.mols) {
                (Some(q), None, _) => field_mols(q.parse().map_err(|_| Error::Recipe(format!("`q={q}` is not a number")))?)?,
                (None, Some(f), _) => {
                    let f = f.strip_prefix('@').unwrap_or(f);
                    ctx.read(f)?.parse()?
                }
                (None, None, Some(set)) => set.clone(),
                _ => return Err(Error::Recipe("`thm7` needs one of `q=`, `mols=` or a MOLS file".into())),
            };
            mols::thm7_from_mols(&set, a.num("m")?)?
        }
        "cor8" => mols::cor8(a.num("q")?)?,
        "cor9" => mols::cor9(a.num("q")?)?,
        "cor10" => mols::cor10(a.num("q")?)?,
        "cor11" => mols::cor11_circulant(a.num("p")?, a.flag("shifted")?)?,
        "thm8" => {
            let g = graph(&mut a, ctx)?;
            srg::thm8(&g, a.req("variant")?.parse()?)?
        }
        "thm9" => ds::thm9_gdd(&scheme(&mut a, ctx)?)?,
        "thm10" => ds::thm10_lsr(&scheme(&mut a, ctx)?)?,
        "cor12" => {
            let d = scheme(&mut a, ctx)?;
            ds::cor12_truncated(&d, a.num("t")?)?
        }
        _ => return Err(Error::Recipe(format!("unknown method `{method}`"))),
    };
    a.finish()?;
    let d = if complement { complement_design(&d)? } else { d };
    if transpose {
        d.transpose_array()
    } else {
        Ok(d)
    }
}

/// Parse and build in one step.
pub fn build_str(recipe: &str, ctx: &RecipeContext) -> Result<Design> {
    build(&recipe.parse()?, ctx)
}
