//! Built-in problems and named generator matrices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;

use crate::cyclo::CycNum;
use crate::linalg::Matrix;
use crate::polyform::QHPoly;

use super::problem::{Instance, ProblemOptions};

fn z(m: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(m, k)
}

fn int(v: i64) -> CycNum {
    CycNum::from_int(v)
}

fn diag(entries: Vec<CycNum>) -> Matrix {
    Matrix::diagonal(entries)
}

fn perm(images: &[usize]) -> Matrix {
    Matrix::permutation(images).expect("valid permutation")
}

fn rows(r: Vec<Vec<i64>>) -> Matrix {
    Matrix::from_rows(r.into_iter().map(|row| row.into_iter().map(int).collect()).collect()).expect("square")
}

/// The five-variable matrices A1..A5 used for quintic symmetry groups.
pub fn named_matrix(name: &str) -> Option<Matrix> {
    let one = CycNum::one();
    let zero = CycNum::zero();
    let m = match name {
        "A1" => Matrix::from_rows(vec![
            vec![z(8, 3), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), z(8, 1), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), one.clone()],
        ])?,
        "A2" => {
            rows(vec![vec![0, 1, 0, 0, 0], vec![-1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]])
        }
        "A3" => {
            // 1/sqrt(2) = (zeta_8 + zeta_8^7) / 2
            let r = (z(8, 1) + z(8, 7)) * CycNum::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
            let a = &r * &z(8, 1);
            let b = &r * &z(8, 3);
            Matrix::from_rows(vec![
                vec![-a.clone(), a, zero.clone(), zero.clone(), zero.clone()],
                vec![b.clone(), b, zero.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), z(3, 1), zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), zero.clone(), z(3, 2), zero.clone()],
                vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), one.clone()],
            ])?
        }
        "A4" => Matrix::from_rows(vec![
            vec![zero.clone(), one.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone()],
            vec![one.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), z(3, 1), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), z(3, 2)],
        ])?,
        "A5" => Matrix::from_rows(vec![
            vec![z(3, 2), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), z(3, 1), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone()],
        ])?,
        _ => return None,
    };
    Some(m)
}

fn instance(name: &str, poly: QHPoly, extra: Vec<(&str, Matrix)>) -> Instance {
    let mut generators = vec![("J".to_string(), poly.grading_operator())];
    generators.extend(extra.into_iter().map(|(n, m)| (n.to_string(), m)));
    Instance { name: name.to_string(), poly, generators, options: ProblemOptions::default() }
}

fn fermat(exps: &[u32]) -> QHPoly {
    QHPoly::fermat(exps).expect("Fermat polynomial")
}

/// x^n with the group generated by zeta_n^l.
pub fn an_instance(n: u32, l: u32) -> Option<Instance> {
    if n < 2 || l == 0 || n % l != 0 {
        return None;
    }
    let poly = fermat(&[n]);
    Some(Instance {
        name: format!("an-{n}-{l}"),
        poly,
        generators: vec![("g".to_string(), diag(vec![z(n, l as i64)]))],
        options: ProblemOptions::default(),
    })
}

const FIXED: &[(&str, &str)] = &[
    ("cubic-j", "x1^3 + x2^3 + x3^3 with <J>"),
    ("cubic-j-cycle", "x1^3 + x2^3 + x3^3 with J and the cyclic permutation"),
    ("cubic-diag-sl", "x1^3 + x2^3 + x3^3 with all diagonal symmetries of determinant 1"),
    ("cubic-nonsl", "x1^3 + x2^3 + x3^3 with diag(E(3), 1, 1)"),
    ("quartic-j", "Fermat quartic in four variables with <J>"),
    ("quartic-diag-sl", "Fermat quartic with all diagonal symmetries of determinant 1"),
    ("quartic-alt", "Fermat quartic with J and the alternating group A4 permuting coordinates"),
    ("quartic-alt-printed", "Fermat quartic with J, a 4-cycle and a 3-cycle (generates S4, not in SL)"),
    ("quintic-j", "Fermat quintic with <J>"),
    ("quintic-j-cycle", "Fermat quintic with J and (12345)"),
    ("quintic-diag-sl", "Fermat quintic with all diagonal symmetries of determinant 1"),
    ("octic-1", "x1^8 + x2^8 + x3^4 + x4^4 + x5^4 with <J>"),
    ("octic-2", "x1^8 + x2^8 + x3^4 + x4^4 + x5^4 with J and four diagonal generators"),
    ("octic-3", "x1^8 + x2^8 + x3^4 + x4^4 + x5^4 with J and a 3-cycle on x3, x4, x5"),
    ("octic-4", "x1^8 + x2^8 + x3^4 + x4^4 + x5^4 with J and a signed swap"),
    ("nonic-cubic-j", "sum of nine cubes with <J>"),
    ("w14-j", "x1^4 x2 + x2^4 x3 + x3^4 x1 + x4^5 + x5^5 with <J>"),
];

/// Names of the fixed presets plus the `an-N-L` family pattern.
pub fn preset_names() -> Vec<(&'static str, &'static str)> {
    let mut v = FIXED.to_vec();
    v.push(("an-N-L", "x^N with the group generated by E(N)^L, L dividing N"));
    v
}

pub fn preset(name: &str) -> Option<Instance> {
    if let Some(rest) = name.strip_prefix("an-") {
        let (n, l) = rest.split_once('-')?;
        return an_instance(n.parse().ok()?, l.parse().ok()?);
    }
    let one = CycNum::one();
    let inst = match name {
        "cubic-j" => instance(name, fermat(&[3; 3]), vec![]),
        "cubic-j-cycle" => instance(name, fermat(&[3; 3]), vec![("c", perm(&[1, 2, 0]))]),
        "cubic-diag-sl" => maximal_diagonal_sl(name, &[3; 3]),
        "cubic-nonsl" => Instance {
            name: name.to_string(),
            poly: fermat(&[3; 3]),
            generators: vec![("g".to_string(), diag(vec![z(3, 1), one.clone(), one]))],
            options: ProblemOptions::default(),
        },
        "quartic-j" => instance(name, fermat(&[4; 4]), vec![]),
        "quartic-diag-sl" => maximal_diagonal_sl(name, &[4; 4]),
        "quartic-alt" => instance(name, fermat(&[4; 4]), vec![("a", perm(&[0, 2, 3, 1])), ("b", perm(&[1, 0, 3, 2]))]),
        "quartic-alt-printed" => instance(name, fermat(&[4; 4]), vec![("a", perm(&[1, 2, 3, 0])), ("b", perm(&[0, 2, 3, 1]))]),
        "quintic-j" => instance(name, fermat(&[5; 5]), vec![]),
        "quintic-j-cycle" => instance(name, fermat(&[5; 5]), vec![("c", perm(&[1, 2, 3, 4, 0]))]),
        "quintic-diag-sl" => maximal_diagonal_sl(name, &[5; 5]),
        "octic-1" => instance(name, fermat(&[8, 8, 4, 4, 4]), vec![]),
        "octic-2" => {
            let d = |a: CycNum, i: usize, b: CycNum| {
                let mut e = vec![CycNum::one(); 5];
                e[0] = a;
                e[i] = b;
                diag(e)
            };
            instance(
                name,
                fermat(&[8, 8, 4, 4, 4]),
                vec![
                    ("d1", d(z(8, 1), 1, z(8, -1))),
                    ("d2", d(z(4, 1), 2, z(4, -1))),
                    ("d3", d(z(4, 1), 3, z(4, -1))),
                    ("d4", d(z(4, 1), 4, z(4, -1))),
                ],
            )
        }
        "octic-3" => instance(name, fermat(&[8, 8, 4, 4, 4]), vec![("c", perm(&[0, 1, 3, 4, 2]))]),
        "octic-4" => instance(
            name,
            fermat(&[8, 8, 4, 4, 4]),
            vec![(
                "s",
                rows(vec![
                    vec![0, -1, 0, 0, 0],
                    vec![-1, 0, 0, 0, 0],
                    vec![0, 0, -1, 0, 0],
                    vec![0, 0, 0, -1, 0],
                    vec![0, 0, 0, 0, -1],
                ]),
            )],
        ),
        "nonic-cubic-j" => instance(name, fermat(&[3; 9]), vec![]),
        "w14-j" => {
            let e = |v: [u32; 5]| (CycNum::one(), v.to_vec());
            let poly = QHPoly::new(
                5,
                vec![e([4, 1, 0, 0, 0]), e([0, 4, 1, 0, 0]), e([1, 0, 4, 0, 0]), e([0, 0, 0, 5, 0]), e([0, 0, 0, 0, 5])],
            )
            .expect("quasihomogeneous");
            instance(name, poly, vec![])
        }
        _ => return None,
    };
    Some(inst)
}

fn exps_to_matrix(v: &[u32], m: u32) -> Matrix {
    diag(v.iter().map(|&e| z(m, e as i64)).collect())
}

/// Diagonal symmetries of a Fermat sum with determinant 1, as exponent vectors
/// over zeta_m with m = lcm of the exponents.
fn diagonal_sl_elements(exps: &[u32]) -> (u32, Vec<Vec<u32>>) {
    let m = exps.iter().fold(1u32, |acc, &a| acc.lcm(&a));
    let steps: Vec<u32> = exps.iter().map(|&a| m / a).collect();
    let mut out = Vec::new();
    let mut v = vec![0u32; exps.len()];
    loop {
        if v.iter().sum::<u32>() % m == 0 {
            out.push(v.clone());
        }
        let mut k = 0;
        loop {
            if k == v.len() {
                return (m, out);
            }
            v[k] += steps[k];
            if v[k] < m {
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
}

fn maximal_diagonal_sl(name: &str, exps: &[u32]) -> Instance {
    let (m, elems) = diagonal_sl_elements(exps);
    // the elements e_0 - e_i (with step sizes) generate the whole group
    let n = exps.len();
    let mut extra = Vec::new();
    for i in 1..n {
        let mut v = vec![0u32; n];
        v[0] = m / exps[0];
        v[i] = (m - (m / exps[0]) % m) % m;
        if v[i] % (m / exps[i]) == 0 && elems.contains(&v) {
            extra.push((format!("d{i}"), exps_to_matrix(&v, m)));
        }
    }
    let poly = fermat(exps);
    let mut inst = instance(name, poly, vec![]);
    inst.generators.extend(extra);
    inst
}

/// Every diagonal group G with <J> <= G <= SL for a Fermat sum, each given by
/// a generator list starting with J. Groups are listed by increasing order.
pub fn diagonal_sl_overgroups(exps: &[u32]) -> Vec<Vec<Matrix>> {
    let (m, universe) = diagonal_sl_elements(exps);
    let j: Vec<u32> = exps.iter().map(|&a| m / a).collect();
    let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| (x + y) % m).collect::<Vec<u32>>();
    let close = |gens: &[Vec<u32>]| -> BTreeSet<Vec<u32>> {
        let mut set = BTreeSet::from([vec![0u32; exps.len()]]);
        let mut queue = VecDeque::from([vec![0u32; exps.len()]]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = add(&x, g);
                if set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        set
    };
    let start = vec![j.clone()];
    let mut seen: HashSet<BTreeSet<Vec<u32>>> = HashSet::from([close(&start)]);
    let mut found = vec![(close(&start).len(), start.clone())];
    let mut queue = VecDeque::from([(close(&start), start)]);
    while let Some((set, gens)) = queue.pop_front() {
        for u in &universe {
            if set.contains(u) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(u.clone());
            let s2 = close(&g2);
            if seen.insert(s2.clone()) {
                found.push((s2.len(), g2.clone()));
                queue.push_back((s2, g2));
            }
        }
    }
    found.sort_by_key(|(size, _)| *size);
    found.into_iter().map(|(_, gens)| gens.iter().map(|v| exps_to_matrix(v, m)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::MatGroup;

    #[test]
    fn named_matrices_are_quintic_symmetries() {
        let w1 = fermat(&[5; 5]);
        for name in ["A1", "A2", "A4", "A5"] {
            let m = named_matrix(name).unwrap();
            assert!(m.det().unwrap().is_one(), "{name}");
            assert!(m.order(100).unwrap().is_some(), "{name}");
        }
        assert!(!w1.check_invariance(&named_matrix("A2").unwrap()).unwrap());
        let a3 = named_matrix("A3").unwrap();
        assert_eq!(a3.order(1000).unwrap().map(|o| o % 3), Some(0));
    }

    #[test]
    fn presets_are_consistent() {
        for (name, _) in FIXED {
            let inst = preset(name).unwrap();
            for (g, m) in &inst.generators {
                assert!(inst.poly.check_invariance(m).unwrap(), "{name}: {g}");
            }
        }
        assert!(preset("an-6-4").is_none());
        assert_eq!(preset("an-6-3").unwrap().generators.len(), 1);
    }

    #[test]
    fn overgroups_of_j() {
        let cubic = diagonal_sl_overgroups(&[3; 3]);
        assert_eq!(cubic.len(), 2);
        let quartic = diagonal_sl_overgroups(&[4; 4]);
        let top = MatGroup::generate(4, quartic.last().unwrap(), 1000).unwrap();
        assert_eq!(top.len(), 64);
        let full = preset("quartic-diag-sl").unwrap();
        assert_eq!(MatGroup::generate(4, &full.matrices(), 1000).unwrap().len(), 64);
        let quintic = preset("quintic-diag-sl").unwrap();
        assert_eq!(MatGroup::generate(5, &quintic.matrices(), 1000).unwrap().len(), 625);
    }
}
