//! Reduction of cyclotomic matrices modulo a large prime.
//!
//! For a prime p = 1 mod N the map Z[zeta_N][1/m] -> F_p sending zeta_N to a
//! primitive N-th root of unity is a ring homomorphism. p is unramified in
//! Q(zeta_N), so the kernel of GL_n(O_P) -> GL_n(F_p) is a torsion-free pro-p
//! group and the reduction is injective on every finite matrix group with
//! p-integral entries. Group enumeration therefore indexes elements by their
//! images here and keeps the exact matrices alongside.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::CycNum;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct ModField {
    p: u64,
    conductor: u32,
    // root^k for k in 0..conductor
    powers: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModField {
    /// Picks the largest prime p < 2^61 with p = 1 mod `conductor`.
    pub fn new(conductor: u32) -> Self {
        let n = conductor.max(1) as u64;
        let mut k = ((1u64 << 61) - 1) / n;
        let p = loop {
            let cand = k * n + 1;
            if is_prime(cand) {
                break cand;
            }
            k -= 1;
        };
        let factors = prime_factors(n);
        let root = (2..)
            .map(|x| powmod(x, (p - 1) / n, p))
            .find(|&r| factors.iter().all(|&q| powmod(r, n / q, p) != 1))
            .expect("primitive root exists");
        let mut powers = Vec::with_capacity(n as usize);
        let mut acc = 1u64;
        for _ in 0..n {
            powers.push(acc);
            acc = mulmod(acc, root, p);
        }
        ModField { p, conductor: n as u32, powers }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    fn reduce_int(&self, x: &BigInt) -> u64 {
        let r = x % BigInt::from(self.p);
        let r = if r < BigInt::zero() { r + BigInt::from(self.p) } else { r };
        r.to_u64().expect("residue fits")
    }

    /// Image of a cyclotomic number; its conductor must divide the field conductor.
    /// Returns None if a denominator vanishes mod p.
    pub fn reduce(&self, x: &CycNum) -> Option<u64> {
        let c = x.conductor();
        assert!(self.conductor % c == 0, "conductor {c} does not divide {}", self.conductor);
        let step = (self.conductor / c) as usize;
        let mut acc = 0u64;
        for (e, q) in x.terms() {
            let den = self.reduce_int(q.denom());
            if den == 0 {
                return None;
            }
            let num = self.reduce_int(q.numer());
            let v = mulmod(num, powmod(den, self.p - 2, self.p), self.p);
            acc = (acc + mulmod(v, self.powers[*e as usize * step], self.p)) % self.p;
        }
        Some(acc)
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Option<ModMat> {
        let data = m.entries().iter().map(|e| self.reduce(e)).collect::<Option<Vec<_>>>()?;
        Some(ModMat { n: m.dim(), data })
    }

    pub fn mul(&self, a: &ModMat, b: &ModMat) -> ModMat {
        let n = a.n;
        let p = self.p;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a.data[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = b.data[k * n + j];
                    if y != 0 {
                        let cell = &mut data[i * n + j];
                        *cell = (*cell + mulmod(x, y, p)) % p;
                    }
                }
            }
        }
        ModMat { n, data }
    }

    pub fn identity(&self, n: usize) -> ModMat {
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        ModMat { n, data }
    }
}

/// A matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMat {
    n: usize,
    data: Vec<u64>,
}

impl ModMat {
    pub fn dim(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_has_primitive_root() {
        for n in [1u32, 2, 5, 8, 24, 120] {
            let f = ModField::new(n);
            assert_eq!((f.prime() - 1) % n as u64, 0);
            assert!(is_prime(f.prime()));
            let z = f.reduce(&CycNum::root_of_unity(n, 1)).unwrap();
            assert_eq!(powmod(z, n as u64, f.prime()), 1);
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = ModField::new(24);
        let a = CycNum::root_of_unity(8, 1) + CycNum::root_of_unity(3, 2);
        let b = CycNum::from_int(3) - CycNum::root_of_unity(24, 5);
        let p = f.prime();
        assert_eq!(f.reduce(&(&a * &b)).unwrap(), mulmod(f.reduce(&a).unwrap(), f.reduce(&b).unwrap(), p));
        assert_eq!(f.reduce(&(&a + &b)).unwrap(), (f.reduce(&a).unwrap() + f.reduce(&b).unwrap()) % p);
        let half = crate::cyclo::parse_cyc("1/2").unwrap();
        assert_eq!(mulmod(f.reduce(&half).unwrap(), 2, p), 1);
    }
}
