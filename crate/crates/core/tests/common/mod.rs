#![allow(dead_code)]

use lg_orbifold::cli::presets::preset;
use lg_orbifold::cli::problem::Instance;
use lg_orbifold::cyclo::CycNum;
use lg_orbifold::grp::{MatGroup, DEFAULT_GROUP_CAP};
use lg_orbifold::linalg::Matrix;
use lg_orbifold::oracle::{FermatOracle, DEFAULT_ORACLE_BOUND};
use lg_orbifold::poincare::{poincare_polynomial, BigradedTable, PoincareOptions, PoincareResult, Q};
use lg_orbifold::polyform::QHPoly;

pub fn z(m: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(m, k)
}

pub fn diag_roots(m: u32, exps: &[u32]) -> Matrix {
    Matrix::diagonal(exps.iter().map(|&e| z(m, e as i64)).collect())
}

pub fn q(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

pub fn instance(name: &str) -> Instance {
    preset(name).unwrap_or_else(|| panic!("preset {name}"))
}

pub fn group_of(inst: &Instance) -> MatGroup {
    MatGroup::generate(inst.poly.nvars(), &inst.matrices(), DEFAULT_GROUP_CAP).expect("finite group")
}

pub fn solve(poly: &QHPoly, group: &MatGroup) -> PoincareResult {
    poincare_polynomial(poly, group, PoincareOptions::default()).expect("poincare polynomial")
}

pub fn solve_preset(name: &str) -> (MatGroup, PoincareResult) {
    let inst = instance(name);
    let g = group_of(&inst);
    let r = solve(&inst.poly, &g);
    (g, r)
}

pub fn oracle_table(poly: &QHPoly, gens: &[Matrix]) -> BigradedTable {
    FermatOracle::new(poly, gens, DEFAULT_GROUP_CAP).expect("oracle").table(DEFAULT_ORACLE_BOUND).expect("oracle table")
}

/// Parses "c p q" triples separated by commas, with p and q given as fractions.
pub fn table(spec: &str) -> BigradedTable {
    BigradedTable::from_entries(spec.split(',').filter(|s| !s.trim().is_empty()).map(|item| {
        let parts: Vec<&str> = item.split_whitespace().collect();
        let f = |s: &str| lg_orbifold::poincare::parse_fraction(s).expect("fraction");
        (f(parts[1]), f(parts[2]), parts[0].parse::<i64>().unwrap())
    }))
}
