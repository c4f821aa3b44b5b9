//! Poincaré polynomials of LG orbifolds from the sector-sum formula.
//!
//! Each sector g contributes
//! `u^age(g) v^age(g^-1) (uv)^(-moved) / |C(g)| * sum_h prod (λ - t^(1-q)) / (1 - λ t^q)`
//! with the product over the eigenvalues λ of h on V^g. The sum over h is a
//! polynomial in `s = t^(1/d)` of degree at most `sum (d - 2 w_i)` over the fixed
//! coordinates, so each term is expanded as a truncated power series.
//! Coefficients live in the unreduced group ring `Z[C_M]` (M the group exponent)
//! and are reduced modulo the cyclotomic polynomial only after summing.

mod checks;
mod table;

pub use checks::{
    e_polynomial_pq, hodge_diamond_shape_check, hodge_symmetry_check, mirror_relation_check, positivity_check,
    serre_duality_check, witten_index, CheckResult, IllDefinedIndex, Violation,
};
pub use table::{fraction, parse_fraction, BigradedTable, Q};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclo::{CycNum, CycloError};
use crate::grp::{Age, GroupError, MatGroup};
use crate::polyform::QHPoly;
use crate::sectors::{build_sector, restricted_eigenvalues, SectorData, SectorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("group dimension does not match the number of variables")]
    DimensionMismatch,
    #[error("generator {0} does not preserve the polynomial")]
    NotInvariant(usize),
    #[error("weights must satisfy 0 < w_i < d")]
    BadWeights,
    #[error("sector {class_index}: coefficient of s^{degree} is not a nonnegative integer")]
    NonIntegralCoefficient { class_index: usize, degree: usize },
    #[error("sector {class_index}: series coefficients overflowed")]
    TruncationOverflow { class_index: usize },
    #[error("sector {class_index}: truncated series disagrees with the rational function at s = {point}")]
    SpotCheckFailed { class_index: usize, point: String },
    #[error(transparent)]
    Sector(#[from] SectorError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Copy, Debug)]
pub struct PoincareOptions {
    /// Re-evaluate each sector sum as an exact rational function at a few points.
    pub spot_check: bool,
}

impl Default for PoincareOptions {
    fn default() -> Self {
        PoincareOptions { spot_check: true }
    }
}

#[derive(Clone, Debug)]
pub struct SectorContribution {
    pub class_index: usize,
    pub rep: usize,
    pub n_g: usize,
    pub age_g: Age,
    pub age_ginv: Age,
    pub moved_charge_sum: Q,
    pub class_size: usize,
    pub centralizer_size: usize,
    /// Coefficients of s^k, s = t^(1/d), after averaging over the centralizer.
    pub series: Vec<i64>,
    pub table: BigradedTable,
}

#[derive(Clone, Debug)]
pub struct PoincareResult {
    pub nvars: usize,
    pub degree: u32,
    pub c_hat: Q,
    pub group_order: usize,
    pub sectors: Vec<SectorContribution>,
    pub table: BigradedTable,
}

impl PoincareResult {
    /// Sum of the sector polynomials weighted by (-1)^(n - n_g).
    pub fn e_polynomial_z2(&self) -> BigradedTable {
        let mut out = BigradedTable::new();
        for s in &self.sectors {
            let sign = if (self.nvars - s.n_g) % 2 == 0 { 1 } else { -1 };
            out.add_table(&s.table, sign);
        }
        out
    }

    /// Hodge symmetry, Serre duality and nonnegativity, in that order.
    pub fn structural_checks(&self) -> Vec<Violation> {
        [positivity_check(&self.table), hodge_symmetry_check(&self.table), serre_duality_check(&self.table, self.c_hat)]
            .into_iter()
            .filter_map(Result::err)
            .collect()
    }
}

type EigenKey = Vec<(u32, u32)>;

const SPOT_POINTS: [(i64, i64); 3] = [(2, 1), (1, 3), (-3, 2)];

/// P(W, G) for a polynomial and a group whose generators preserve it.
pub fn poincare_polynomial(poly: &QHPoly, group: &MatGroup, opts: PoincareOptions) -> Result<PoincareResult, PoincareError> {
    if group.dim() != poly.nvars() {
        return Err(PoincareError::DimensionMismatch);
    }
    for (i, &g) in group.generators().iter().enumerate() {
        if !poly.check_invariance(&group.element(g).mat)? {
            return Err(PoincareError::NotInvariant(i));
        }
    }
    poincare_for_weights(poly.weights(), poly.degree(), group, opts)
}

/// The sector sum for given weights, without reference to a polynomial.
pub fn poincare_for_weights(
    weights: &[u32],
    degree: u32,
    group: &MatGroup,
    opts: PoincareOptions,
) -> Result<PoincareResult, PoincareError> {
    if group.dim() != weights.len() {
        return Err(PoincareError::DimensionMismatch);
    }
    if weights.iter().any(|&w| w == 0 || w >= degree) {
        return Err(PoincareError::BadWeights);
    }
    let sectors = (0..group.classes().len())
        .into_par_iter()
        .map(|c| {
            let sector = build_sector(group, c, weights, degree)?;
            sector_contribution(group, &sector, opts)
        })
        .collect::<Result<Vec<_>, PoincareError>>()?;
    let mut table = BigradedTable::new();
    for s in &sectors {
        table.add_table(&s.table, 1);
    }
    let c_hat = weights.iter().map(|&w| Q::from(1) - Q::new(2 * w as i64, degree as i64)).sum();
    Ok(PoincareResult { nvars: weights.len(), degree, c_hat, group_order: group.len(), sectors, table })
}

pub fn sector_contribution(
    group: &MatGroup,
    sector: &SectorData,
    opts: PoincareOptions,
) -> Result<SectorContribution, PoincareError> {
    let series = sector_series(group, sector, opts)?;
    let d = sector.degree as i64;
    let p0 = sector.age_g - sector.moved_charge_sum;
    let q0 = sector.age_ginv - sector.moved_charge_sum;
    let table = BigradedTable::from_entries(
        series.iter().enumerate().map(|(k, &c)| (p0 + Q::new(k as i64, d), q0 + Q::new(k as i64, d), c)),
    );
    Ok(SectorContribution {
        class_index: sector.class_index,
        rep: sector.rep,
        n_g: sector.n_g,
        age_g: sector.age_g,
        age_ginv: sector.age_ginv,
        moved_charge_sum: sector.moved_charge_sum,
        class_size: sector.class_size,
        centralizer_size: sector.centralizer.len(),
        series,
        table,
    })
}

/// Degree bound of the sector polynomial in units of t^(1/d).
pub fn truncation_bound(sector: &SectorData) -> usize {
    let d = sector.degree as i64;
    let b: i64 = sector.fixed_weights().iter().map(|&w| d - 2 * w as i64).sum();
    b.max(0) as usize
}

/// Centralizer-averaged series of one sector, as integer coefficients of s^k.
pub fn sector_series(group: &MatGroup, sector: &SectorData, opts: PoincareOptions) -> Result<Vec<i64>, PoincareError> {
    let m = group.exponent();
    let keys = sector
        .centralizer
        .par_iter()
        .map(|&h| {
            let mut key: EigenKey =
                restricted_eigenvalues(group, sector, h)?.into_iter().map(|(r, w)| (r.exponent_in(m), w)).collect();
            key.sort_unstable();
            Ok(key)
        })
        .collect::<Result<Vec<_>, SectorError>>()?;
    let mut counts: BTreeMap<EigenKey, i64> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_insert(0) += 1;
    }
    let bound = truncation_bound(sector);
    let d = sector.degree;
    let overflow = PoincareError::TruncationOverflow { class_index: sector.class_index };
    let partials = counts
        .par_iter()
        .map(|(key, &count)| {
            let s = key_series(key, d, bound, m as usize)?;
            s.into_iter().map(|x| x.checked_mul(count)).collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| overflow.clone())?;
    let mut total = vec![0i64; (bound + 1) * m as usize];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p) {
            *t = t.checked_add(x).ok_or_else(|| overflow.clone())?;
        }
    }
    let size = BigInt::from(sector.centralizer.len());
    let mut out = Vec::with_capacity(bound + 1);
    for (k, chunk) in total.chunks(m as usize).enumerate() {
        let bad = PoincareError::NonIntegralCoefficient { class_index: sector.class_index, degree: k };
        let r = CycNum::from_group_ring(m, chunk).to_rational().ok_or_else(|| bad.clone())?;
        if !r.is_integer() {
            return Err(bad);
        }
        let (q, rem) = num_integer::Integer::div_rem(&r.to_integer(), &size);
        if !rem.is_zero() || q < BigInt::zero() {
            return Err(bad);
        }
        out.push(q.to_i64().ok_or(overflow.clone())?);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    if opts.spot_check {
        spot_check(&counts, d, m, &out, sector)?;
    }
    Ok(out)
}

/// prod over the key of (z^a - s^(d-w)) / (1 - z^a s^w), as a power series in s
/// truncated after s^bound, with coefficients in Z[C_m] (row k holds s^k).
fn key_series(key: &[(u32, u32)], d: u32, bound: usize, m: usize) -> Option<Vec<i64>> {
    let len = bound + 1;
    let mut s = vec![0i64; len * m];
    let mut t = vec![0i64; len * m];
    s[0] = 1;
    for &(a, w) in key {
        let (a, w, c) = (a as usize, w as usize, (d - w) as usize);
        for k in 0..len {
            for j in 0..m {
                let mut x = s[k * m + j];
                if k >= w {
                    x = x.checked_add(t[(k - w) * m + (j + m - a) % m])?;
                }
                t[k * m + j] = x;
            }
        }
        for k in 0..len {
            for j in 0..m {
                let mut x = t[k * m + (j + m - a) % m];
                if k >= c {
                    x = x.checked_sub(t[(k - c) * m + j])?;
                }
                s[k * m + j] = x;
            }
        }
    }
    Some(s)
}

/// Value at s0 of prod (z^a - s0^(d-w)) / (1 - z^a s0^w) as a vector in Q[C_m],
/// using 1/(1 - z^a r) = (sum_{j<o} z^(aj) r^j) / (1 - r^o) with o the order of z^a.
fn eval_key(key: &[(u32, u32)], d: u32, m: usize, s0: &BigRational) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); m];
    acc[0] = BigRational::one();
    for &(a, w) in key {
        let a = a as usize;
        let o = m / num_integer::gcd(a, m).max(1);
        let r = s0.pow(w as i32);
        let scale = (BigRational::one() - r.pow(o as i32)).recip();
        let mut factor = vec![BigRational::zero(); m];
        let mut rj = scale;
        let c = s0.pow((d - w) as i32);
        for j in 0..o {
            // (z^a - c) * z^(aj) r^j
            factor[(a * (j + 1)) % m] += &rj;
            factor[(a * j) % m] -= &c * &rj;
            rj *= &r;
        }
        let mut next = vec![BigRational::zero(); m];
        for (i, x) in acc.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in factor.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                next[(i + j) % m] += x * y;
            }
        }
        acc = next;
    }
    acc
}

fn spot_check(counts: &BTreeMap<EigenKey, i64>, d: u32, m: u32, poly: &[i64], sector: &SectorData) -> Result<(), PoincareError> {
    let size = BigRational::from_integer(BigInt::from(sector.centralizer.len()));
    for (a, b) in SPOT_POINTS {
        let s0 = BigRational::new(BigInt::from(a), BigInt::from(b));
        let total = counts
            .par_iter()
            .map(|(key, &count)| {
                let c = BigRational::from_integer(BigInt::from(count));
                eval_key(key, d, m as usize, &s0).into_iter().map(|x| x * &c).collect::<Vec<_>>()
            })
            .reduce(|| vec![BigRational::zero(); m as usize], |x, y| x.into_iter().zip(y).map(|(a, b)| a + b).collect());
        let exact = CycNum::from_dense(m, total);
        let mut value = BigRational::zero();
        let mut x = BigRational::one();
        for &c in poly {
            value += &x * BigInt::from(c);
            x *= &s0;
        }
        if exact != CycNum::from_rational(value * &size) {
            return Err(PoincareError::SpotCheckFailed { class_index: sector.class_index, point: s0.to_string() });
        }
    }
    Ok(())
}
