//! Cyclotomic polynomials and the small dense rational-polynomial helpers
//! used for reduction and inversion modulo them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact division of `num` by the monic polynomial `den`, both dense low-to-high.
/// Panics if the division leaves a remainder; callers only divide by known factors.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn cyclotomic_shared(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = phi_cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let poly = if n == 1 {
        vec![-1, 1]
    } else {
        let mut acc = vec![0i64; n as usize + 1];
        acc[0] = -1;
        acc[n as usize] = 1;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            acc = div_exact_monic(&acc, &cyclotomic_shared(d));
        }
        acc
    };
    let mut w = phi_cache().write().expect("cyclotomic cache poisoned");
    Arc::clone(w.entry(n).or_insert_with(|| Arc::new(poly)))
}

/// The n-th cyclotomic polynomial, dense coefficients from the constant term up.
///
/// Computed by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
/// Results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    cyclotomic_shared(n).as_ref().clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

// Dense polynomials over Q, low-to-high, no trailing zeros.
pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn from_int_poly(p: &[i64]) -> RatPoly {
    let mut out: RatPoly = p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
    trim(&mut out);
    out
}

fn poly_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().expect("division by zero polynomial").recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[shift + j] -= &c * bj;
            }
        }
        quot[shift] = c;
        // the leading term cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
/// Returns None when gcd(a, modulus) is not a unit.
pub(crate) fn inverse_mod(a: &RatPoly, modulus: &RatPoly) -> Option<RatPoly> {
    let (mut r0, mut r1) = (modulus.clone(), a.clone());
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut inv: RatPoly = s0.into_iter().map(|x| x * &c).collect();
    trim(&mut inv);
    let (_, inv) = poly_divrem(&inv, modulus);
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi8_divides_x8_minus_one() {
        // x^8 - 1 = Phi_1 Phi_2 Phi_4 Phi_8
        let mut prod = vec![1i64];
        for d in [1, 2, 4, 8] {
            let f = cyclotomic_polynomial(d);
            let mut out = vec![0i64; prod.len() + f.len() - 1];
            for (i, a) in prod.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            prod = out;
        }
        assert_eq!(prod, vec![-1, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(105).len() as u32 - 1, euler_phi(105));
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(97), 96);
    }
}
