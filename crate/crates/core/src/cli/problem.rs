//! Problem files: an INI-like text with `[polynomial]`, `[group]` and
//! `[options]` sections.
//!
//! ```text
//! [polynomial]
//! 1; 5 0 0 0 0
//! E(3)^2; 0 5 0 0 0
//! # or: fermat = 5 5 5 5 5
//! [group]
//! J
//! c = perm(2 3 4 5 1)
//! d = diag(E(5), E(5)^4, 1, 1, 1)
//! m = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], ...]
//! [options]
//! cap = 200000
//! oracle_bound = 10000000
//! assert_nondegenerate = true
//! ```

use std::fmt;

use crate::cyclo::{parse_cyc, CycNum};
use crate::grp::DEFAULT_GROUP_CAP;
use crate::linalg::Matrix;
use crate::oracle::DEFAULT_ORACLE_BOUND;
use crate::polyform::{PolyError, QHPoly};

use super::presets::named_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemOptions {
    pub cap: usize,
    pub oracle_bound: u64,
    pub assert_nondegenerate: bool,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions { cap: DEFAULT_GROUP_CAP, oracle_bound: DEFAULT_ORACLE_BOUND, assert_nondegenerate: false }
    }
}

#[derive(Clone, Debug)]
pub enum GeneratorSpec {
    /// The grading operator of the polynomial.
    Grading,
    Matrix(Matrix),
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub nvars: usize,
    pub monomials: Vec<(CycNum, Vec<u32>)>,
    pub generators: Vec<(String, GeneratorSpec)>,
    pub options: ProblemOptions,
}

/// A fully resolved problem: polynomial plus concrete generator matrices.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub poly: QHPoly,
    pub generators: Vec<(String, Matrix)>,
    pub options: ProblemOptions,
}

impl Instance {
    pub fn matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|(_, m)| m.clone()).collect()
    }
}

impl ProblemFile {
    pub fn resolve(&self, name: &str) -> Result<Instance, PolyError> {
        let poly = QHPoly::new(self.nvars, self.monomials.clone())?;
        let generators = self
            .generators
            .iter()
            .map(|(n, g)| match g {
                GeneratorSpec::Grading => (n.clone(), poly.grading_operator()),
                GeneratorSpec::Matrix(m) => (n.clone(), m.clone()),
            })
            .collect();
        Ok(Instance { name: name.to_string(), poly, generators, options: self.options })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Polynomial,
    Group,
    Options,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Splits at commas that are not nested in brackets, returning (offset, piece).
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn trimmed(offset: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (offset + lead, s.trim())
}

fn entry(line: usize, col: usize, s: &str) -> Result<CycNum, ParseError> {
    parse_cyc(s).map_err(|e| err(line, col + e.column - 1, e.message))
}

fn parse_matrix_spec(line: usize, col: usize, s: &str, nvars: Option<usize>) -> Result<Matrix, ParseError> {
    if let Some(inner) = s.strip_prefix("perm(").and_then(|r| r.strip_suffix(')')) {
        let images = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err(line, col, "perm expects positive integers"))?;
        return Matrix::permutation(&images).ok_or_else(|| err(line, col, "perm is not a permutation"));
    }
    if let Some(inner) = s.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let base = col + 5;
        let entries = split_top(inner)
            .into_iter()
            .map(|(o, p)| {
                let (o, p) = trimmed(o, p);
                entry(line, base + o, p)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Matrix::diagonal(entries));
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let base = col + 1;
        let mut rows = Vec::new();
        for (o, r) in split_top(inner) {
            let (o, r) = trimmed(o, r);
            let row = r
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| err(line, base + o, "expected a bracketed row"))?;
            let mut vals = Vec::new();
            for (eo, e) in split_top(row) {
                let (eo, e) = trimmed(eo, e);
                vals.push(entry(line, base + o + 1 + eo, e)?);
            }
            rows.push(vals);
        }
        return Matrix::from_rows(rows).ok_or_else(|| err(line, col, "matrix must be square"));
    }
    if let Some(m) = named_matrix(s) {
        if nvars.is_some_and(|n| n != m.dim()) {
            return Err(err(line, col, format!("{s} is a {0}x{0} matrix", m.dim())));
        }
        return Ok(m);
    }
    Err(err(line, col, format!("unrecognized generator `{s}`")))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut section = Section::None;
    let mut nvars: Option<usize> = None;
    let mut monomials = Vec::new();
    let mut generators: Vec<(String, GeneratorSpec)> = Vec::new();
    let mut saw_fermat = false;
    let mut options = ProblemOptions::default();
    let mut seen_sections = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let (col0, body) = trimmed(1, content);
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|r| r.strip_suffix(']')).filter(|n| !n.starts_with('[')) {
            section = match name.trim() {
                "polynomial" => Section::Polynomial,
                "group" => Section::Group,
                "options" => Section::Options,
                other => return Err(err(line, col0, format!("unknown section [{other}]"))),
            };
            if seen_sections.contains(&name.trim().to_string()) {
                return Err(err(line, col0, format!("duplicate section [{}]", name.trim())));
            }
            seen_sections.push(name.trim().to_string());
            continue;
        }
        match section {
            Section::None => return Err(err(line, col0, "content outside of a section")),
            Section::Polynomial => {
                if let Some(rest) = body.strip_prefix("fermat").map(str::trim_start).and_then(|r| r.strip_prefix('=')) {
                    if !monomials.is_empty() {
                        return Err(err(line, col0, "`fermat =` cannot be combined with other monomials"));
                    }
                    saw_fermat = true;
                    let exps = rest
                        .split_whitespace()
                        .map(|t| t.parse::<u32>().ok().filter(|&a| a >= 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| err(line, col0, "fermat expects positive exponents"))?;
                    check_arity(&mut nvars, exps.len(), line, col0)?;
                    for (i, &a) in exps.iter().enumerate() {
                        let mut e = vec![0; exps.len()];
                        e[i] = a;
                        monomials.push((CycNum::one(), e));
                    }
                    continue;
                }
                if saw_fermat {
                    return Err(err(line, col0, "`fermat =` cannot be combined with other monomials"));
                }
                let (coef, exps) = body.split_once(';').ok_or_else(|| err(line, col0, "expected `coeff; e1 ... en`"))?;
                let c = entry(line, col0, coef.trim())?;
                let exps_col = col0 + coef.len() + 1;
                let e = exps
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().ok())
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err(line, exps_col, "exponents must be nonnegative integers"))?;
                check_arity(&mut nvars, e.len(), line, exps_col)?;
                monomials.push((c, e));
            }
            Section::Group => {
                let (name, spec, col) = match body.split_once('=') {
                    Some((n, s)) => {
                        let (c, s) = trimmed(col0 + n.len() + 1, s);
                        (n.trim().to_string(), s, c)
                    }
                    None => (body.to_string(), body, col0),
                };
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(line, col0, "generator name must be a single word"));
                }
                if generators.iter().any(|(n, _)| *n == name) {
                    return Err(err(line, col0, format!("duplicate generator `{name}`")));
                }
                let g = if spec == "J" {
                    GeneratorSpec::Grading
                } else {
                    let m = parse_matrix_spec(line, col, spec, nvars)?;
                    if nvars.is_some_and(|n| n != m.dim()) {
                        return Err(err(
                            line,
                            col,
                            format!("generator has size {}, polynomial has {} variables", m.dim(), nvars.unwrap_or(0)),
                        ));
                    }
                    GeneratorSpec::Matrix(m)
                };
                generators.push((name, g));
            }
            Section::Options => {
                let (key, value) = body.split_once('=').ok_or_else(|| err(line, col0, "expected `key = value`"))?;
                let (key, value) = (key.trim(), value.trim());
                let vcol = col0 + body.find('=').unwrap_or(0) + 1;
                let bad = || err(line, vcol, format!("invalid value for {key}"));
                match key {
                    "cap" => options.cap = value.parse().ok().filter(|&c| c > 0).ok_or_else(bad)?,
                    "oracle_bound" => options.oracle_bound = value.parse().map_err(|_| bad())?,
                    "assert_nondegenerate" => options.assert_nondegenerate = value.parse().map_err(|_| bad())?,
                    other => return Err(err(line, col0, format!("unknown option `{other}`"))),
                }
            }
        }
    }
    let nvars = nvars.ok_or_else(|| err(text.lines().count().max(1), 1, "no monomials given"))?;
    Ok(ProblemFile { nvars, monomials, generators, options })
}

fn check_arity(nvars: &mut Option<usize>, n: usize, line: usize, col: usize) -> Result<(), ParseError> {
    match *nvars {
        Some(m) if m != n => Err(err(line, col, format!("expected {m} exponents, found {n}"))),
        _ if n == 0 => Err(err(line, col, "monomial without variables")),
        _ => {
            *nvars = Some(n);
            Ok(())
        }
    }
}
