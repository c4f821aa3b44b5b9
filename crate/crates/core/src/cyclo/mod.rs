//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! A [`CycNum`] is stored as a polynomial in zeta_N of degree below phi(N),
//! reduced modulo the N-th cyclotomic polynomial, so equality over a common
//! conductor is equality of coefficient lists. Mixed-conductor arithmetic
//! embeds both operands into Q(zeta_lcm).

mod expr;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use expr::{parse_cyc, ExprError};
pub use poly::{cyclotomic_polynomial, euler_phi};

/// Largest conductor any computation may reach.
pub const MAX_CONDUCTOR: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {0} exceeds the limit {MAX_CONDUCTOR}")]
    InputTooLarge(u64),
}

/// An element of Q(zeta_N).
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    // (exponent, coefficient), sorted by exponent, exponent < phi(N), no zero coefficients
    terms: Vec<(u32, BigRational)>,
}

/// zeta_m^k with k in [0, m) and k/m in lowest terms (so `order` is the true
/// multiplicative order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(m: u32, k: i64) -> Self {
        assert!(m >= 1, "root of unity needs a positive order");
        let k = k.rem_euclid(m as i64) as u32;
        let g = k.gcd(&m);
        if k == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        RootOfUnity { order: m / g, exponent: k / g }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The branch value log(z)/(2 pi i) in [0, 1).
    pub fn log_fraction(&self) -> Ratio<i64> {
        Ratio::new(self.exponent as i64, self.order as i64)
    }

    /// Exponent of this root as a power of zeta_big; `big` must be a multiple of the order.
    pub fn exponent_in(&self, big: u32) -> u32 {
        assert!(big % self.order == 0, "order {} does not divide {}", self.order, big);
        self.exponent * (big / self.order)
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::root_of_unity(self.order, self.exponent as i64)
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }
}

pub(crate) fn lcm_checked(a: u32, b: u32) -> Result<u32, CycloError> {
    let l = (a as u64).lcm(&(b as u64));
    if l > MAX_CONDUCTOR as u64 {
        Err(CycloError::InputTooLarge(l))
    } else {
        Ok(l as u32)
    }
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycNum { conductor: 1, terms: vec![(0, q)] }
    }

    /// zeta_m^k, living in Q(zeta_m).
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!((1..=MAX_CONDUCTOR).contains(&m), "root of unity order {m} out of range");
        let e = k.rem_euclid(m as i64) as usize;
        let mut buf = vec![BigRational::zero(); m as usize];
        buf[e] = BigRational::one();
        Self::reduce_dense(m, buf)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Coefficients on the power basis 1, zeta, ..., zeta^(phi(N)-1).
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    /// Some(q) when the number is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    /// Builds sum_e coeffs[e] zeta_m^e from any-length dense input (exponents read mod m).
    pub fn from_dense(m: u32, coeffs: Vec<BigRational>) -> Self {
        let mut folded = vec![BigRational::zero(); m as usize];
        for (e, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[e % m as usize] += c;
            }
        }
        Self::reduce_dense(m, folded)
    }

    /// Builds sum_e coeffs[e] zeta_m^e from integer coefficients (exponents read mod m).
    pub fn from_group_ring(m: u32, coeffs: &[i64]) -> Self {
        let dense = coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        Self::from_dense(m, dense)
    }

    // Reduce a dense vector of length <= conductor (or any length < 2*conductor after folding)
    fn reduce_dense(conductor: u32, mut buf: Vec<BigRational>) -> Self {
        let phi_poly = poly::cyclotomic_shared(conductor);
        let deg = phi_poly.len() - 1;
        let nonzero: Vec<(usize, i64)> =
            phi_poly[..deg].iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect();
        for i in (deg..buf.len()).rev() {
            if buf[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut buf[i], BigRational::zero());
            for &(j, pj) in &nonzero {
                buf[i - deg + j] -= &c * BigInt::from(pj);
            }
        }
        buf.truncate(deg);
        let terms = buf.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u32, c)).collect::<Vec<_>>();
        let conductor = if terms.is_empty() { 1 } else { conductor };
        let mut out = CycNum { conductor, terms };
        out.shrink_if_rational();
        out
    }

    fn shrink_if_rational(&mut self) {
        if self.terms.len() <= 1 && self.terms.first().is_none_or(|(e, _)| *e == 0) {
            self.conductor = 1;
        }
    }

    /// Re-expresses this number in Q(zeta_target); `target` must be a multiple of the conductor.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target % self.conductor == 0, "cannot embed Q(zeta_{}) into Q(zeta_{target})", self.conductor);
        if target == self.conductor || self.terms.is_empty() {
            return self.clone();
        }
        let k = target / self.conductor;
        if self.to_rational().is_some() {
            return self.clone();
        }
        let mut buf = vec![BigRational::zero(); target as usize];
        for (e, c) in &self.terms {
            buf[(*e * k) as usize] = c.clone();
        }
        Self::reduce_dense(target, buf)
    }

    fn common(a: &Self, b: &Self) -> Result<u32, CycloError> {
        lcm_checked(a.conductor, b.conductor)
    }

    fn dense(&self, conductor: u32, len: usize) -> Vec<BigRational> {
        let me = self.embed(conductor);
        let mut buf = vec![BigRational::zero(); len];
        for (e, c) in me.terms {
            buf[e as usize] = c;
        }
        buf
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let n = Self::common(self, other)?;
        let len = euler_phi(n) as usize;
        let mut a = self.dense(n, len);
        for (e, c) in other.embed(n).terms {
            a[e as usize] += c;
        }
        Ok(Self::reduce_dense(n, a))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(q) = self.to_rational() {
            return Ok(other.scale(&q));
        }
        if let Some(q) = other.to_rational() {
            return Ok(self.scale(&q));
        }
        let n = Self::common(self, other)?;
        let a = self.embed(n);
        let b = other.embed(n);
        let len = 2 * euler_phi(n) as usize;
        let mut buf = vec![BigRational::zero(); len.max(1)];
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                buf[(i + j) as usize] += x * y;
            }
        }
        Ok(Self::reduce_dense(n, buf))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycNum { conductor: self.conductor, terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect() }
    }

    /// Multiplication by zeta_m^k.
    pub fn mul_root(&self, root: RootOfUnity) -> Result<Self, CycloError> {
        self.try_mul(&root.to_cyc())
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.conductor;
        let modulus = poly::from_int_poly(&poly::cyclotomic_shared(n));
        let mut a: poly::RatPoly = self.dense(n, euler_phi(n) as usize);
        poly::trim(&mut a);
        let inv = poly::inverse_mod(&a, &modulus).ok_or(CycloError::DivisionByZero)?;
        Ok(Self::reduce_dense(n, inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self, CycloError> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Complex conjugate (zeta -> zeta^-1).
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        let mut buf = vec![BigRational::zero(); n as usize];
        for (e, c) in &self.terms {
            buf[((n - e) % n) as usize] += c;
        }
        Self::reduce_dense(n, buf)
    }

    /// Returns the root of unity this number equals, or None.
    ///
    /// Any root of unity in Q(zeta_N) has order dividing lcm(N, 2), so the test
    /// is a^M = 1 for that M followed by locating the exponent.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() {
            return None;
        }
        let m = (self.conductor as u64).lcm(&2) as u32;
        if !self.pow(m as i64).ok()?.is_one() {
            return None;
        }
        (0..m as i64).map(|k| RootOfUnity::new(m, k)).find(|r| &r.to_cyc() == self)
    }

    /// Numerical value at zeta_N = exp(2 pi i / N). Only for cross-checking.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (*e as f64) / n;
            (re + v * ang.cos(), im + v * ang.sin())
        })
    }

    /// Deterministic byte encoding, meaningful for comparing numbers of one conductor.
    pub fn canonical_bytes(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.terms.len() as u32).to_be_bytes());
        for (e, c) in &self.terms {
            out.extend_from_slice(&e.to_be_bytes());
            for part in [c.numer(), c.denom()] {
                let (sign, mag) = part.to_bytes_be();
                out.push(match sign {
                    num_bigint::Sign::Minus => 0,
                    num_bigint::Sign::NoSign => 1,
                    num_bigint::Sign::Plus => 2,
                });
                out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
                out.extend_from_slice(&mag);
            }
        }
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.terms == other.terms;
        }
        match Self::common(self, other) {
            Ok(n) => self.embed(n).terms == other.embed(n).terms,
            Err(_) => false,
        }
    }
}

impl Eq for CycNum {}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic tie-breaking; it has no field meaning.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = Self::common(self, other).unwrap_or(self.conductor.max(other.conductor));
        if n % self.conductor != 0 || n % other.conductor != 0 {
            return self.conductor.cmp(&other.conductor);
        }
        self.embed(n).terms.cmp(&other.embed(n).terms)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics if the common conductor exceeds [`MAX_CONDUCTOR`].
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic conductor limit exceeded")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::one()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders in the input syntax, e.g. `1 + 2*E(3) - 1/2*E(3)^2`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let root = match *e {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                k => format!("E({})^{}", self.conductor, k),
            };
            match (root.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&mag))?,
                (false, true) => write!(f, "{root}")?,
                (false, false) => write!(f, "{}*{root}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k)
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn zeta3_relation() {
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from_int(-1));
    }

    #[test]
    fn zero_is_additive_identity() {
        let a = z(7, 3) + CycNum::from_int(5);
        assert_eq!(CycNum::zero() + a.clone(), a);
    }

    #[test]
    fn sqrt2_from_zeta8() {
        let s = z(8, 1) + z(8, 7);
        assert_eq!(&s * &s, CycNum::from_int(2));
        assert!(s.to_rational().is_none());
    }

    #[test]
    fn products_and_inverses() {
        assert!((z(5, 1) * z(5, 4)).is_one());
        let s = z(8, 1) + z(8, -1);
        assert!((s.inv().unwrap() * s).is_one());
        assert_eq!(CycNum::zero().inv(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn product_matches_float_shadow() {
        // (2 + 4 zeta_3^2)(2 + 4 zeta_3) = 4 + 8(zeta_3 + zeta_3^2) + 16 = 12
        let a = CycNum::from_int(2) + CycNum::from_int(4) * z(3, 2);
        let b = CycNum::from_int(2) + CycNum::from_int(4) * z(3, 1);
        let p = &a * &b;
        assert_eq!(p, CycNum::from_int(12));
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        assert!(close(p.to_complex(), (ar * br - ai * bi, ar * bi + ai * br)));
    }

    #[test]
    fn roots_of_unity_detected() {
        assert_eq!(CycNum::one().as_root_of_unity(), Some(RootOfUnity::new(1, 0)));
        let m1 = CycNum::from_int(-1).as_root_of_unity().unwrap();
        assert_eq!((m1.order(), m1.exponent()), (2, 1));
        assert_eq!((z(8, 1) + z(8, 7)).as_root_of_unity(), None);
        // -zeta_3 is a primitive 6th root living in Q(zeta_3)
        let r = (-z(3, 1)).as_root_of_unity().unwrap();
        assert_eq!((r.order(), r.exponent()), (6, 5));
        assert_eq!(z(12, 9).as_root_of_unity().unwrap().log_fraction(), Ratio::new(3, 4));
    }

    #[test]
    fn mixed_conductors_embed() {
        let a = z(3, 1) * z(4, 1);
        assert_eq!(a.conductor(), 12);
        assert_eq!(a, z(12, 7));
        assert_eq!(z(4, 2), CycNum::from_int(-1));
    }

    #[test]
    fn conductor_cap() {
        let a = z(9973, 1);
        let b = z(7, 1);
        assert!(matches!(a.try_mul(&b), Err(CycloError::InputTooLarge(_))));
    }

    #[test]
    fn display_round_trips() {
        let a = CycNum::from_int(1) + CycNum::from_int(2) * z(5, 1) - z(5, 3).scale(&BigRational::new(1.into(), 2.into()));
        let s = a.to_string();
        assert_eq!(parse_cyc(&s).unwrap(), a);
    }
}
