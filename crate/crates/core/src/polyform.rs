//! Quasihomogeneous polynomials: weights, charges, central charge, the
//! exponential grading operator, nondegeneracy checks and invertible
//! (Fermat / chain / loop) decomposition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclo::{CycNum, CycloError};
use crate::linalg::Matrix;

pub type Charge = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial has no monomials")]
    Empty,
    #[error("monomial {index} has {found} exponents, expected {expected}")]
    Arity { index: usize, found: usize, expected: usize },
    #[error("weights are not uniquely determined by the monomials")]
    NoUniqueWeights,
    #[error("necessary nondegeneracy condition fails at x{}: no monomial of the form x{}^a x_j", .variable + 1, .variable + 1)]
    Degenerate { variable: usize },
    #[error("polynomial is not invertible (Fermat/chain/loop sum)")]
    NotInvertible,
    #[error("nondegeneracy could not be certified; the polynomial is not invertible (set assert_nondegenerate to accept it)")]
    Uncertified,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: CycNum,
    pub exponents: Vec<u32>,
}

/// A quasihomogeneous polynomial with its (unique) weights.
#[derive(Clone, Debug)]
pub struct QHPoly {
    n: usize,
    monomials: Vec<Monomial>,
    weights: Vec<u32>,
    degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralChargeData {
    pub c_hat: Charge,
    pub cy: bool,
    pub generalized_cy: bool,
}

/// Solves sum_i e_i w_i = d over all monomials for the unique primitive
/// positive solution, normalized so gcd(w) = 1.
pub fn solve_weights(exponents: &[Vec<u32>], n: usize) -> Result<(Vec<u32>, u32), PolyError> {
    if exponents.is_empty() {
        return Err(PolyError::Empty);
    }
    // unknowns w_1..w_n, d
    let cols = n + 1;
    let mut rows: Vec<Vec<BigRational>> = exponents
        .iter()
        .map(|e| {
            let mut r: Vec<BigRational> = e.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            r.push(-BigRational::one());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(p, row);
        let inv = rows[row][col].recip();
        for x in rows[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(PolyError::NoUniqueWeights);
    }
    let f = free[0];
    let mut v = vec![BigRational::zero(); cols];
    v[f] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[r][f].clone();
    }
    let den_lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den_lcm.clone())).to_integer()).collect();
    if ints.iter().all(|x| !x.is_positive()) {
        ints.iter_mut().for_each(|x| *x = -x.clone());
    }
    if ints.iter().any(|x| !x.is_positive()) {
        return Err(PolyError::NoUniqueWeights);
    }
    let g = ints[..n].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<u32> = ints.iter().map(|x| (x / &g).to_u32().ok_or(PolyError::NoUniqueWeights)).collect::<Result<_, _>>()?;
    Ok((ints[..n].to_vec(), ints[n]))
}

/// Outcome of the monomial-support test for nondegeneracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportCheck {
    Pass,
    /// 0-based index of the first variable with no monomial x_i^a x_j.
    Fail(usize),
}

fn serves_variable(e: &[u32], i: usize) -> bool {
    let support: Vec<usize> = (0..e.len()).filter(|&k| e[k] > 0).collect();
    match support.as_slice() {
        [k] => *k == i && e[i] >= 2,
        [a, b] if *a == i || *b == i => {
            let j = if *a == i { *b } else { *a };
            e[i] >= 1 && e[j] == 1
        }
        _ => false,
    }
}

/// For every variable x_i there must be a monomial x_i^a x_j (j may equal i).
/// Necessary for an isolated critical point, not sufficient.
pub fn necessary_nondegeneracy_check(exponents: &[Vec<u32>], n: usize) -> SupportCheck {
    for i in 0..n {
        if !exponents.iter().any(|e| serves_variable(e, i)) {
            return SupportCheck::Fail(i);
        }
    }
    SupportCheck::Pass
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

/// One invertible atom: the variables it uses in order and their leading exponents.
/// A chain runs x_{v0}^{a0} x_{v1} + ... + x_{vk}^{ak}; a loop closes back onto v0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AtomKind::Fermat => "Fermat",
            AtomKind::Chain => "Chain",
            AtomKind::Loop => "Loop",
        };
        let ex: Vec<String> = self.exponents.iter().map(|a| a.to_string()).collect();
        let vars: Vec<String> = self.variables.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "{name}({}) on {}", ex.join(","), vars.join(","))
    }
}

/// Decomposes an invertible polynomial (as many monomials as variables) into
/// Fermat, chain and loop atoms.
pub fn invertible_decomposition(exponents: &[Vec<u32>], n: usize) -> Result<Vec<Atom>, PolyError> {
    if exponents.len() != n {
        return Err(PolyError::NotInvertible);
    }
    // leader[i] = (exponent, target) of the monomial led by x_i
    let mut led: Vec<Option<(u32, Option<usize>)>> = vec![None; n];
    for e in exponents {
        let support: Vec<usize> = (0..n).filter(|&k| e[k] > 0).collect();
        let (lead, a, target) = match support.as_slice() {
            [i] if e[*i] >= 2 => (*i, e[*i], None),
            [i, j] if e[*i] >= 2 && e[*j] == 1 => (*i, e[*i], Some(*j)),
            [i, j] if e[*j] >= 2 && e[*i] == 1 => (*j, e[*j], Some(*i)),
            _ => return Err(PolyError::NotInvertible),
        };
        if led[lead].replace((a, target)).is_some() {
            return Err(PolyError::NotInvertible);
        }
    }
    let led: Vec<(u32, Option<usize>)> = led.into_iter().collect::<Option<_>>().ok_or(PolyError::NotInvertible)?;
    let mut indeg = vec![0usize; n];
    for (_, t) in &led {
        if let Some(t) = t {
            indeg[*t] += 1;
        }
    }
    if indeg.iter().any(|&d| d > 1) {
        return Err(PolyError::NotInvertible);
    }
    let mut used = vec![false; n];
    let mut atoms = Vec::new();
    // chains start at in-degree zero and end at a Fermat-type leader
    for start in (0..n).filter(|&i| indeg[i] == 0) {
        let mut vars = Vec::new();
        let mut exps = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            vars.push(cur);
            exps.push(led[cur].0);
            match led[cur].1 {
                Some(next) => cur = next,
                None => break,
            }
        }
        let kind = if vars.len() == 1 { AtomKind::Fermat } else { AtomKind::Chain };
        atoms.push(Atom { kind, variables: vars, exponents: exps });
    }
    // whatever remains lies on cycles
    for start in 0..n {
        if used[start] {
            continue;
        }
        let mut vars = Vec::new();
        let mut exps = Vec::new();
        let mut cur = start;
        while !used[cur] {
            used[cur] = true;
            vars.push(cur);
            exps.push(led[cur].0);
            cur = led[cur].1.ok_or(PolyError::NotInvertible)?;
        }
        atoms.push(Atom { kind: AtomKind::Loop, variables: vars, exponents: exps });
    }
    atoms.sort_by_key(|a| a.variables[0]);
    Ok(atoms)
}

/// How nondegeneracy of an accepted polynomial was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Invertible(Vec<Atom>),
    Asserted,
}

type PolyMap = BTreeMap<Vec<u32>, CycNum>;

fn poly_mul(a: &PolyMap, b: &PolyMap) -> Result<PolyMap, CycloError> {
    let mut out = PolyMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let prod = ca.try_mul(cb)?;
            let slot = out.entry(e).or_insert_with(CycNum::zero);
            *slot = slot.try_add(&prod)?;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

impl QHPoly {
    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging repeated
    /// exponent vectors and solving for the weights.
    pub fn new(n: usize, terms: Vec<(CycNum, Vec<u32>)>) -> Result<Self, PolyError> {
        let mut map = PolyMap::new();
        for (index, (c, e)) in terms.into_iter().enumerate() {
            if e.len() != n {
                return Err(PolyError::Arity { index, found: e.len(), expected: n });
            }
            let slot = map.entry(e).or_insert_with(CycNum::zero);
            *slot = slot.try_add(&c)?;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(PolyError::Empty);
        }
        let monomials: Vec<Monomial> = map.into_iter().map(|(exponents, coeff)| Monomial { coeff, exponents }).collect();
        let exps: Vec<Vec<u32>> = monomials.iter().map(|m| m.exponents.clone()).collect();
        let (weights, degree) = solve_weights(&exps, n)?;
        Ok(QHPoly { n, monomials, weights, degree })
    }

    /// Sum of x_i^{a_i} with unit coefficients.
    pub fn fermat(exponents: &[u32]) -> Result<Self, PolyError> {
        let n = exponents.len();
        let terms = exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut e = vec![0; n];
                e[i] = a;
                (CycNum::one(), e)
            })
            .collect();
        Self::new(n, terms)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn charges(&self) -> Vec<Charge> {
        self.weights.iter().map(|&w| Charge::new(w as i64, self.degree as i64)).collect()
    }

    fn exponent_lists(&self) -> Vec<Vec<u32>> {
        self.monomials.iter().map(|m| m.exponents.clone()).collect()
    }

    pub fn central_charge(&self) -> CentralChargeData {
        let qs = self.charges();
        let total: Charge = qs.iter().sum();
        let c_hat = qs.iter().map(|q| Charge::one() - q * 2).sum();
        CentralChargeData { c_hat, cy: total == Charge::one(), generalized_cy: total.is_integer() && total >= Charge::zero() }
    }

    /// diag(zeta_d^{w_1}, ..., zeta_d^{w_n}).
    pub fn grading_operator(&self) -> Matrix {
        Matrix::diagonal(self.weights.iter().map(|&w| CycNum::root_of_unity(self.degree, w as i64)).collect())
    }

    pub fn support_check(&self) -> SupportCheck {
        necessary_nondegeneracy_check(&self.exponent_lists(), self.n)
    }

    pub fn invertible_decomposition(&self) -> Result<Vec<Atom>, PolyError> {
        invertible_decomposition(&self.exponent_lists(), self.n)
    }

    /// Indices whose charge exceeds 1/2. Reported only; never enforced.
    pub fn charges_above_half(&self) -> Vec<usize> {
        let half = Charge::new(1, 2);
        self.charges().iter().enumerate().filter(|(_, q)| **q > half).map(|(i, _)| i).collect()
    }

    /// Acceptance policy: the support check must pass, then the polynomial must
    /// be invertible unless nondegeneracy is asserted by the caller.
    pub fn certify(&self, assert_nondegenerate: bool) -> Result<Certification, PolyError> {
        if let SupportCheck::Fail(variable) = self.support_check() {
            return Err(PolyError::Degenerate { variable });
        }
        match self.invertible_decomposition() {
            Ok(atoms) => Ok(Certification::Invertible(atoms)),
            Err(_) if assert_nondegenerate => Ok(Certification::Asserted),
            Err(_) => Err(PolyError::Uncertified),
        }
    }

    /// True when g respects the weight blocks and (g.W)(x) = W(x) with x_i -> sum_j g_ij x_j.
    pub fn check_invariance(&self, g: &Matrix) -> Result<bool, CycloError> {
        let n = self.n;
        if g.dim() != n {
            return Ok(false);
        }
        for i in 0..n {
            for j in 0..n {
                if self.weights[i] != self.weights[j] && !g.get(i, j).is_zero() {
                    return Ok(false);
                }
            }
        }
        let linear: Vec<PolyMap> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !g.get(i, j).is_zero())
                    .map(|j| {
                        let mut e = vec![0u32; n];
                        e[j] = 1;
                        (e, g.get(i, j).clone())
                    })
                    .collect()
            })
            .collect();
        let mut image = PolyMap::new();
        for m in &self.monomials {
            let mut term: PolyMap = [(vec![0u32; n], m.coeff.clone())].into_iter().collect();
            for (i, &e) in m.exponents.iter().enumerate() {
                for _ in 0..e {
                    term = poly_mul(&term, &linear[i])?;
                }
            }
            for (e, c) in term {
                let slot = image.entry(e).or_insert_with(CycNum::zero);
                *slot = slot.try_add(&c)?;
            }
        }
        image.retain(|_, c| !c.is_zero());
        let original: PolyMap = self.monomials.iter().map(|m| (m.exponents.clone(), m.coeff.clone())).collect();
        Ok(image == original)
    }
}

impl fmt::Display for QHPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if !m.coeff.is_one() {
                write!(f, "({})*", m.coeff)?;
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}
