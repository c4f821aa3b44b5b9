//! Command-line front end. [`run`] takes the argument list and returns the
//! exit code with the rendered output, so it can be driven from tests.

pub mod presets;
pub mod problem;

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::grp::MatGroup;
use crate::oracle::FermatOracle;
use crate::poincare::{
    fraction, hodge_diamond_shape_check, mirror_relation_check, poincare_polynomial, witten_index, BigradedTable, PoincareError,
    PoincareOptions, PoincareResult, Q,
};
use crate::polyform::Certification;

pub use presets::{an_instance, diagonal_sl_overgroups, named_matrix, preset, preset_names};
pub use problem::{parse_problem, Instance, ParseError, ProblemFile, ProblemOptions};

#[derive(Parser, Debug)]
#[command(name = "lgorb", version, about = "Hodge numbers of Landau-Ginzburg orbifolds")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Group order cap, overriding the problem file.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Multiply all displayed exponents by this factor.
    #[arg(long, global = true, default_value_t = 1)]
    scale: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, charges, central charge and Calabi-Yau flags.
    Weights { problem: String },
    /// Group order, class count and SL membership.
    Group { problem: String },
    /// Per-class sector data.
    Sectors { problem: String },
    /// The Poincaré polynomial.
    Poincare { problem: String },
    /// Hodge numbers as a table.
    Hodge { problem: String },
    /// Symmetry, duality, shape and index checks.
    Verify { problem: String },
    /// Check h^{p,q}(W,G) = h^{c-p,q} against a geometric p,q,h table.
    Compare {
        problem: String,
        #[arg(long)]
        geometry: PathBuf,
    },
    /// Compare the main computation with brute-force enumeration.
    OracleCompare { problem: String },
    /// List built-in problems.
    Presets,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Compute(String),
}

type Res<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

/// Loads `preset:NAME` or a problem file path.
pub fn load_problem(spec: &str) -> Result<Instance, String> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return preset(name).ok_or_else(|| format!("unknown preset `{name}`"));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    let file = parse_problem(&text).map_err(|e| format!("{spec}:{e}"))?;
    file.resolve(spec).map_err(|e| format!("{spec}: {e}"))
}

struct Session {
    inst: Instance,
    cap: usize,
    scale: i64,
    format: Format,
}

impl Session {
    fn certify(&self) -> Res<Certification> {
        self.inst.poly.certify(self.inst.options.assert_nondegenerate).map_err(input)
    }

    fn group(&self) -> Res<MatGroup> {
        MatGroup::generate(self.inst.poly.nvars(), &self.inst.matrices(), self.cap).map_err(compute)
    }

    fn poincare(&self, group: &MatGroup) -> Res<PoincareResult> {
        self.certify()?;
        poincare_polynomial(&self.inst.poly, group, PoincareOptions::default()).map_err(|e| match e {
            PoincareError::NotInvariant(_) | PoincareError::DimensionMismatch => input(e),
            e => compute(e),
        })
    }

    fn table_out(&self, t: &BigradedTable) -> String {
        match self.format {
            Format::Text => t.to_text(self.scale),
            Format::Csv => t.to_csv(self.scale),
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.workers).build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("{e}\n") },
    };
    let mut out = String::new();
    let result = pool.install(|| dispatch(&args, &mut out));
    match result {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(Failure::Input(m)) => Outcome { code: EXIT_INPUT, stdout: out, stderr: format!("error: {m}\n") },
        Err(Failure::Compute(m)) => Outcome { code: EXIT_COMPUTE, stdout: out, stderr: format!("error: {m}\n") },
    }
}

fn dispatch(args: &Args, out: &mut String) -> Res<i32> {
    let problem = match &args.command {
        Command::Presets => {
            for (name, about) in preset_names() {
                writeln!(out, "{name:<16} {about}").unwrap();
            }
            return Ok(EXIT_OK);
        }
        Command::Weights { problem }
        | Command::Group { problem }
        | Command::Sectors { problem }
        | Command::Poincare { problem }
        | Command::Hodge { problem }
        | Command::Verify { problem }
        | Command::Compare { problem, .. }
        | Command::OracleCompare { problem } => problem,
    };
    let inst = load_problem(problem).map_err(Failure::Input)?;
    let cap = args.cap.unwrap_or(inst.options.cap);
    let s = Session { inst, cap, scale: args.scale, format: args.format };
    match &args.command {
        Command::Weights { .. } => weights(&s, out),
        Command::Group { .. } => group(&s, out),
        Command::Sectors { .. } => sectors(&s, out),
        Command::Poincare { .. } => {
            let r = s.poincare(&s.group()?)?;
            writeln!(out, "{}", r.table.render(s.scale)).unwrap();
            Ok(EXIT_OK)
        }
        Command::Hodge { .. } => {
            let r = s.poincare(&s.group()?)?;
            out.push_str(&s.table_out(&r.table));
            Ok(EXIT_OK)
        }
        Command::Verify { .. } => verify(&s, out),
        Command::Compare { geometry, .. } => compare(&s, geometry, out),
        Command::OracleCompare { .. } => oracle_compare(&s, out),
        Command::Presets => unreachable!(),
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn weights(s: &Session, out: &mut String) -> Res<i32> {
    let p = &s.inst.poly;
    let cc = p.central_charge();
    writeln!(out, "weights: {}", join(p.weights())).unwrap();
    writeln!(out, "degree: {}", p.degree()).unwrap();
    writeln!(out, "charges: {}", join(p.charges().into_iter().map(fraction))).unwrap();
    writeln!(out, "c_hat: {}", fraction(cc.c_hat)).unwrap();
    writeln!(out, "calabi_yau: {}", cc.cy).unwrap();
    writeln!(out, "generalized_calabi_yau: {}", cc.generalized_cy).unwrap();
    let above = p.charges_above_half();
    if !above.is_empty() {
        writeln!(out, "note: charges above 1/2 at variables {}", join(above.iter().map(|i| i + 1))).unwrap();
    }
    match s.certify()? {
        Certification::Invertible(atoms) => writeln!(out, "nondegenerate: invertible {}", join(atoms)).unwrap(),
        Certification::Asserted => writeln!(out, "nondegenerate: asserted").unwrap(),
    }
    Ok(EXIT_OK)
}

fn group(s: &Session, out: &mut String) -> Res<i32> {
    let g = s.group()?;
    writeln!(out, "order: {}", g.len()).unwrap();
    writeln!(out, "classes: {}", g.classes().len()).unwrap();
    writeln!(out, "exponent: {}", g.exponent()).unwrap();
    writeln!(out, "abelian: {}", g.is_abelian()).unwrap();
    writeln!(out, "special_linear: {}", g.is_special_linear().map_err(compute)?).unwrap();
    let j = s.inst.poly.grading_operator();
    writeln!(out, "contains_j: {}", g.find(&j).is_some()).unwrap();
    Ok(EXIT_OK)
}

fn sectors(s: &Session, out: &mut String) -> Res<i32> {
    let g = s.group()?;
    let w = s.inst.poly.weights();
    let d = s.inst.poly.degree();
    let mut rows = Vec::new();
    for c in 0..g.classes().len() {
        let sec = crate::sectors::build_sector(&g, c, w, d).map_err(compute)?;
        rows.push([
            c.to_string(),
            sec.n_g.to_string(),
            fraction(sec.age_g),
            fraction(sec.age_ginv),
            sec.class_size.to_string(),
            sec.centralizer.len().to_string(),
            g.element(sec.rep).mat.to_string(),
        ]);
    }
    let header = ["class", "n_g", "age", "age_inv", "size", "centralizer", "rep"];
    match s.format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{}",
                    r.iter().map(|x| if x.contains(',') { format!("\"{x}\"") } else { x.clone() }).collect::<Vec<_>>().join(",")
                )
                .unwrap();
            }
        }
        Format::Text => {
            let mut width = header.map(str::len);
            for r in &rows {
                for (w, x) in width.iter_mut().zip(r) {
                    *w = (*w).max(x.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let mut l = String::new();
                for (i, x) in cells.iter().enumerate() {
                    if i + 1 == cells.len() {
                        l.push_str(x);
                    } else {
                        write!(l, "{:>w$}  ", x, w = width[i]).unwrap();
                    }
                }
                l
            };
            writeln!(out, "{}", line(header.to_vec())).unwrap();
            for r in &rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
            }
        }
    }
    Ok(EXIT_OK)
}

fn status(out: &mut String, name: &str, r: &Result<String, String>) {
    match r {
        Ok(detail) if detail.is_empty() => writeln!(out, "PASS {name}").unwrap(),
        Ok(detail) => writeln!(out, "PASS {name}: {detail}").unwrap(),
        Err(e) => writeln!(out, "FAIL {name}: {e}").unwrap(),
    }
}

fn verify(s: &Session, out: &mut String) -> Res<i32> {
    let g = s.group()?;
    let r = s.poincare(&g)?;
    let mut ok = true;
    let mut record = |out: &mut String, name: &str, res: Result<String, String>| {
        ok &= res.is_ok();
        status(out, name, &res);
    };
    let age_ok = match g.age_relation_violation().map_err(compute)? {
        None => Ok(String::new()),
        Some(i) => Err(format!("element {i}")),
    };
    record(out, "age relation", age_ok);
    record(
        out,
        "class equation",
        if g.class_equation_holds() { Ok(String::new()) } else { Err("class sizes do not add up".into()) },
    );
    record(out, "nonnegativity", crate::poincare::positivity_check(&r.table).map(|_| String::new()).map_err(|v| v.to_string()));
    record(
        out,
        "hodge symmetry",
        crate::poincare::hodge_symmetry_check(&r.table).map(|_| String::new()).map_err(|v| v.to_string()),
    );
    record(
        out,
        "serre duality",
        crate::poincare::serre_duality_check(&r.table, r.c_hat).map(|_| String::new()).map_err(|v| v.to_string()),
    );
    let sl = g.is_special_linear().map_err(compute)?;
    let has_j = g.find(&s.inst.poly.grading_operator()).is_some();
    if sl && has_j && r.c_hat.is_integer() {
        record(
            out,
            "diamond shape",
            hodge_diamond_shape_check(&r.table, r.c_hat).map(|_| String::new()).map_err(|v| v.to_string()),
        );
    } else {
        writeln!(out, "SKIP diamond shape: group is not between <J> and SL or c_hat is fractional").unwrap();
    }
    match witten_index(&r.table) {
        Ok(w) => writeln!(out, "witten index: {w}").unwrap(),
        Err(e) => writeln!(out, "witten index: undefined ({e})").unwrap(),
    }
    if r.c_hat.is_integer() && r.c_hat >= Q::from(2) {
        writeln!(out, "h11: {}", r.table.at(1, 1)).unwrap();
        if r.c_hat == Q::from(3) {
            writeln!(out, "h21: {}", r.table.at(2, 1)).unwrap();
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn compare(s: &Session, geometry: &PathBuf, out: &mut String) -> Res<i32> {
    let text = std::fs::read_to_string(geometry).map_err(|e| Failure::Input(format!("{}: {e}", geometry.display())))?;
    let geo = BigradedTable::from_csv(&text).map_err(|e| Failure::Input(format!("{}: {e}", geometry.display())))?;
    let r = s.poincare(&s.group()?)?;
    match mirror_relation_check(&r.table, &geo, r.c_hat) {
        Ok(()) => {
            writeln!(out, "PASS h^(p,q)(W,G) = h^({}-p,q)(X)", fraction(r.c_hat)).unwrap();
            Ok(EXIT_OK)
        }
        Err(v) => {
            writeln!(out, "FAIL {v}").unwrap();
            Ok(EXIT_VIOLATION)
        }
    }
}

fn oracle_compare(s: &Session, out: &mut String) -> Res<i32> {
    let oracle = FermatOracle::new(&s.inst.poly, &s.inst.matrices(), s.cap).map_err(input)?;
    let expected = oracle.table(s.inst.options.oracle_bound).map_err(compute)?;
    let r = s.poincare(&s.group()?)?;
    writeln!(out, "group order: {} (oracle {})", r.group_order, oracle.order()).unwrap();
    let mut keys: Vec<(Q, Q)> = expected.iter().chain(r.table.iter()).map(|(p, q, _)| (p, q)).collect();
    keys.sort();
    keys.dedup();
    let mut ok = oracle.order() == r.group_order;
    for (p, q) in keys {
        let (a, b) = (r.table.get(p, q), expected.get(p, q));
        if a != b {
            ok = false;
            writeln!(out, "DIFF ({},{}): formula {a}, oracle {b}", fraction(p), fraction(q)).unwrap();
        }
    }
    writeln!(out, "{} {} bidegrees", if ok { "MATCH" } else { "MISMATCH" }, expected.len()).unwrap();
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}
