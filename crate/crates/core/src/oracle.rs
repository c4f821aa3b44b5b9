//! Brute-force cross-check for Fermat polynomials with diagonal groups:
//! explicit monomial bases of the Jacobi rings, counted invariant by invariant.
//! Shares no code with the main path beyond the table type.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::poincare::{BigradedTable, Q};
use crate::polyform::QHPoly;

pub const DEFAULT_ORACLE_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("polynomial is not a Fermat sum")]
    NotFermat,
    #[error("generator {0} is not diagonal with root-of-unity entries")]
    NotDiagonal(usize),
    #[error("group order exceeds {0}")]
    OrderCapExceeded(usize),
    #[error("enumeration needs {needed} character evaluations, above the bound {bound}")]
    BoundExceeded { needed: u64, bound: u64 },
    #[error("quotient is not a polynomial")]
    NonPolynomialQuotient,
    #[error("{l} does not divide {n} (n must be at least 2)")]
    InvalidDivisor { n: u32, l: u32 },
}

/// A Fermat polynomial with a diagonal group, elements stored as exponent
/// vectors over zeta_m.
#[derive(Clone, Debug)]
pub struct FermatOracle {
    exponents: Vec<u32>,
    m: u32,
    elements: Vec<Vec<u32>>,
}

fn fermat_exponents(poly: &QHPoly) -> Result<Vec<u32>, OracleError> {
    let n = poly.nvars();
    let mut a = vec![0u32; n];
    for mono in poly.monomials() {
        let nz: Vec<usize> = (0..n).filter(|&i| mono.exponents[i] > 0).collect();
        match nz[..] {
            [i] if a[i] == 0 && mono.exponents[i] >= 2 => a[i] = mono.exponents[i],
            _ => return Err(OracleError::NotFermat),
        }
    }
    if a.contains(&0) {
        return Err(OracleError::NotFermat);
    }
    Ok(a)
}

impl FermatOracle {
    pub fn new(poly: &QHPoly, generators: &[Matrix], cap: usize) -> Result<Self, OracleError> {
        let exponents = fermat_exponents(poly)?;
        let n = exponents.len();
        let mut roots = Vec::new();
        let mut m = 1u32;
        for (gi, g) in generators.iter().enumerate() {
            if g.dim() != n || !g.is_diagonal() {
                return Err(OracleError::NotDiagonal(gi));
            }
            let mut row = Vec::with_capacity(n);
            for i in 0..n {
                let r = g.get(i, i).as_root_of_unity().ok_or(OracleError::NotDiagonal(gi))?;
                m = m.lcm(&r.order());
                row.push(r);
            }
            roots.push(row);
        }
        let gens: Vec<Vec<u32>> = roots.iter().map(|row| row.iter().map(|r| r.exponent_in(m)).collect()).collect();
        let identity = vec![0u32; n];
        let mut seen: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y: Vec<u32> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
                if seen.insert(y.clone()) {
                    if elements.len() >= cap {
                        return Err(OracleError::OrderCapExceeded(cap));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        elements.sort();
        Ok(FermatOracle { exponents, m, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Group elements as exponent vectors over zeta_m.
    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    fn fixed(&self, g: &[u32]) -> Vec<usize> {
        (0..g.len()).filter(|&i| g[i] == 0).collect()
    }

    /// Character evaluations needed for the whole table.
    pub fn work(&self) -> u64 {
        let per_sector: u64 =
            self.elements.iter().map(|g| self.fixed(g).iter().map(|&i| (self.exponents[i] - 1) as u64).product::<u64>()).sum();
        per_sector * self.order() as u64
    }

    /// Bigraded dimensions of the projected sector of g: monomials of the
    /// Jacobi ring of the restriction, times the volume form, fixed by every h.
    pub fn sector_dimensions(&self, g: &[u32]) -> BigradedTable {
        let m = self.m as i64;
        let q = |i: usize| Q::new(1, self.exponents[i] as i64);
        let fixed = self.fixed(g);
        let age = |v: &[u32]| -> Q { v.iter().map(|&e| Q::new(e as i64, m)).sum() };
        let inv: Vec<u32> = g.iter().map(|&e| (self.m - e) % self.m).collect();
        let moved: Q = (0..g.len()).filter(|i| !fixed.contains(i)).map(q).sum();
        let p0 = age(g) - moved;
        let q0 = age(&inv) - moved;
        let mut table = BigradedTable::new();
        let mut e = vec![0u32; fixed.len()];
        loop {
            let invariant = self.elements.iter().all(|h| {
                let s: u64 = fixed.iter().zip(&e).map(|(&i, &ei)| h[i] as u64 * (ei as u64 + 1)).sum();
                s % self.m as u64 == 0
            });
            if invariant {
                let charge: Q = fixed.iter().zip(&e).map(|(&i, &ei)| q(i) * ei as i64).sum();
                table.add(p0 + charge, q0 + charge, 1);
            }
            // odometer over the box 0..=a_i-2
            let mut k = 0;
            loop {
                if k == e.len() {
                    return table;
                }
                e[k] += 1;
                if e[k] + 1 < self.exponents[fixed[k]] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }

    /// Sum of all sector tables (every class is a singleton).
    pub fn table(&self, bound: u64) -> Result<BigradedTable, OracleError> {
        let needed = self.work();
        if needed > bound {
            return Err(OracleError::BoundExceeded { needed, bound });
        }
        let mut out = BigradedTable::new();
        for g in &self.elements {
            out.add_table(&self.sector_dimensions(g), 1);
        }
        Ok(out)
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// prod (1 - s^(d-w_i)) / (1 - s^(w_i)) in s = t^(1/d), by exact division.
pub fn milnor_hilbert_series(weights: &[u32], d: u32) -> Result<Vec<i64>, OracleError> {
    if weights.iter().any(|&w| w == 0 || w >= d) {
        return Err(OracleError::NonPolynomialQuotient);
    }
    let binomial = |e: u32| {
        let mut p = vec![0i64; e as usize + 1];
        p[0] = 1;
        p[e as usize] -= 1;
        p
    };
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for &w in weights {
        num = poly_mul(&num, &binomial(d - w));
        den = poly_mul(&den, &binomial(w));
    }
    // den has constant term 1, so long division from the top stays integral
    let dl = den.len() - 1;
    if num.len() < den.len() {
        return Err(OracleError::NonPolynomialQuotient);
    }
    let lead = den[dl];
    let mut rem = num;
    let mut quot = vec![0i64; rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl];
        if c % lead != 0 {
            return Err(OracleError::NonPolynomialQuotient);
        }
        let f = c / lead;
        quot[i] = f;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= f * dj;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(OracleError::NonPolynomialQuotient);
    }
    Ok(quot)
}

/// Closed form for x^n with G generated by zeta_n^l:
/// (uv)^(1-1/n) sum_{i=1}^{l} (uv)^(-i/l) + sum_{i=1}^{n/l} u^((li-1)/n) v^((n-li-1)/n)
/// - (uv)^(-1/n) - u^((n-1)/n) v^(-1/n).
pub fn an_closed_form(n: u32, l: u32) -> Result<BigradedTable, OracleError> {
    if n < 2 || l == 0 || n % l != 0 {
        return Err(OracleError::InvalidDivisor { n, l });
    }
    let (n, l) = (n as i64, l as i64);
    let mut t = BigradedTable::new();
    for i in 1..=l {
        let e = Q::new(n - 1, n) - Q::new(i, l);
        t.add(e, e, 1);
    }
    for i in 1..=n / l {
        t.add(Q::new(l * i - 1, n), Q::new(n - l * i - 1, n), 1);
    }
    t.add(Q::new(-1, n), Q::new(-1, n), -1);
    t.add(Q::new(n - 1, n), Q::new(-1, n), -1);
    Ok(t)
}
