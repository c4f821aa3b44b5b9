use std::fmt;

use num_traits::Zero;

use super::table::{fraction, BigradedTable, Q};

/// A failed identity, with the first bidegree where it breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub bidegree: Option<(Q, Q)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bidegree {
            Some((p, q)) => write!(f, "{} violated at ({},{}): {}", self.check, fraction(p), fraction(q), self.detail),
            None => write!(f, "{} violated: {}", self.check, self.detail),
        }
    }
}

impl std::error::Error for Violation {}

pub type CheckResult = Result<(), Violation>;

fn compare(check: &'static str, a: &BigradedTable, b: &BigradedTable) -> CheckResult {
    let mut keys: Vec<(Q, Q)> = a.iter().chain(b.iter()).map(|(p, q, _)| (p, q)).collect();
    keys.sort();
    keys.dedup();
    for (p, q) in keys {
        let (x, y) = (a.get(p, q), b.get(p, q));
        if x != y {
            return Err(Violation { check, bidegree: Some((p, q)), detail: format!("{x} != {y}") });
        }
    }
    Ok(())
}

/// h^{p,q} = h^{q,p}.
pub fn hodge_symmetry_check(t: &BigradedTable) -> CheckResult {
    compare("hodge symmetry", t, &t.map_keys(|p, q| (q, p)))
}

/// h^{p,q} = h^{c-p,c-q}.
pub fn serre_duality_check(t: &BigradedTable, c_hat: Q) -> CheckResult {
    compare("serre duality", t, &t.map_keys(|p, q| (c_hat - p, c_hat - q)))
}

/// h^{p,q}(A) = h^{c-p,q}(B).
pub fn mirror_relation_check(a: &BigradedTable, b: &BigradedTable, c_hat: Q) -> CheckResult {
    compare("mirror relation", a, &b.map_keys(|p, q| (c_hat - p, q)))
}

/// Every dimension a positive integer.
pub fn positivity_check(t: &BigradedTable) -> CheckResult {
    match t.iter().find(|&(_, _, c)| c < 0) {
        Some((p, q, c)) => Err(Violation { check: "nonnegativity", bidegree: Some((p, q)), detail: format!("coefficient {c}") }),
        None => Ok(()),
    }
}

/// Diamond of a c-dimensional Calabi-Yau: integral bidegrees in [0,c]^2, the
/// four corners equal to 1, and nothing else on the boundary of the square.
pub fn hodge_diamond_shape_check(t: &BigradedTable, c_hat: Q) -> CheckResult {
    let check = "hodge diamond shape";
    if !c_hat.is_integer() || c_hat < Q::zero() {
        return Err(Violation {
            check,
            bidegree: None,
            detail: format!("central charge {} is not a nonnegative integer", fraction(c_hat)),
        });
    }
    let c = c_hat.to_integer();
    for (p, q, h) in t.iter() {
        let fail = |detail: String| Err(Violation { check, bidegree: Some((p, q)), detail });
        if !p.is_integer() || !q.is_integer() {
            return fail(format!("non-integral bidegree carries {h}"));
        }
        let (a, b) = (p.to_integer(), q.to_integer());
        if a < 0 || b < 0 || a > c || b > c {
            return fail(format!("bidegree outside [0,{c}]^2 carries {h}"));
        }
        let corner = (a == 0 || a == c) && (b == 0 || b == c);
        let edge = a == 0 || a == c || b == 0 || b == c;
        if corner && h != 1 {
            return fail(format!("corner value {h}, expected 1"));
        }
        if edge && !corner {
            return fail(format!("boundary value {h}, expected 0"));
        }
    }
    for (a, b) in [(0, 0), (c, 0), (0, c), (c, c)] {
        if t.at(a, b) != 1 {
            return Err(Violation { check, bidegree: Some((Q::from(a), Q::from(b))), detail: "corner missing".into() });
        }
    }
    Ok(())
}

fn integral_difference(t: &BigradedTable) -> Result<(), IllDefinedIndex> {
    match t.iter().find(|(p, q, _)| !(p - q).is_integer()) {
        Some((p, q, _)) => Err(IllDefinedIndex { p, q }),
        None => Ok(()),
    }
}

/// Raised when some supported bidegree has p - q outside the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IllDefinedIndex {
    pub p: Q,
    pub q: Q,
}

impl fmt::Display for IllDefinedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index is ill-defined: p - q is not an integer at ({},{})", fraction(self.p), fraction(self.q))
    }
}

impl std::error::Error for IllDefinedIndex {}

fn sign(p: Q, q: Q) -> i64 {
    if (p - q).to_integer().rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// P(-1,-1) = sum (-1)^{p-q} h^{p,q}.
pub fn witten_index(t: &BigradedTable) -> Result<i64, IllDefinedIndex> {
    integral_difference(t)?;
    Ok(t.iter().map(|(p, q, h)| sign(p, q) * h).sum())
}

/// P(-u,-v), with the sign of each term read as (-1)^{p-q}.
pub fn e_polynomial_pq(t: &BigradedTable) -> Result<BigradedTable, IllDefinedIndex> {
    integral_difference(t)?;
    Ok(BigradedTable::from_entries(t.iter().map(|(p, q, h)| (p, q, sign(p, q) * h))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elliptic() -> BigradedTable {
        BigradedTable::from_entries([(0, 0), (1, 0), (0, 1), (1, 1)].map(|(p, q)| (Q::from(p), Q::from(q), 1)))
    }

    #[test]
    fn elliptic_curve_diamond() {
        let t = elliptic();
        assert!(hodge_symmetry_check(&t).is_ok());
        assert!(serre_duality_check(&t, Q::from(1)).is_ok());
        assert!(hodge_diamond_shape_check(&t, Q::from(1)).is_ok());
        assert_eq!(witten_index(&t), Ok(0));
    }

    #[test]
    fn perturbed_tables_fail() {
        let mut t = elliptic();
        t.add(Q::from(1), Q::from(0), 1);
        assert_eq!(hodge_symmetry_check(&t).unwrap_err().bidegree, Some((Q::from(0), Q::from(1))));
        let e = hodge_diamond_shape_check(&t, Q::from(1)).unwrap_err();
        assert_eq!(e.bidegree, Some((Q::from(1), Q::from(0))));
        assert!(mirror_relation_check(&t, &elliptic(), Q::from(1)).is_err());
        assert!(hodge_diamond_shape_check(&elliptic(), Q::new(1, 2)).is_err());
    }

    #[test]
    fn fractional_bidegrees() {
        let t = BigradedTable::from_entries([(Q::new(2, 3), Q::new(1, 3), 2), (Q::new(1, 3), Q::new(2, 3), 2)]);
        assert!(hodge_symmetry_check(&t).is_ok());
        assert_eq!(witten_index(&t), Err(IllDefinedIndex { p: Q::new(1, 3), q: Q::new(2, 3) }));
        assert!(e_polynomial_pq(&t).is_err());
        assert!(hodge_diamond_shape_check(&t, Q::from(1)).is_err());
    }

    #[test]
    fn signs_follow_p_minus_q() {
        let t = BigradedTable::from_entries([(Q::from(2), Q::from(1), 3), (Q::from(1), Q::from(1), 5)]);
        let e = e_polynomial_pq(&t).unwrap();
        assert_eq!(e.at(2, 1), -3);
        assert_eq!(e.at(1, 1), 5);
        assert_eq!(witten_index(&t), Ok(2));
    }
}
