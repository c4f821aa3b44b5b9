mod common;

use std::collections::BTreeMap;

use lg_orbifold::cyclo::{CycNum, RootOfUnity};
use lg_orbifold::grp::{eigen_multiplicities, weight_blocks, MatGroup};
use lg_orbifold::linalg::Matrix;
use lg_orbifold::poincare::{poincare_for_weights, PoincareOptions};
use lg_orbifold::sectors::{build_sector, restricted_action, restricted_eigenvalues, SectorError};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn elementary(n: usize, i: usize, j: usize, c: i64) -> Matrix {
    Matrix::from_rows(
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|s| {
                        if r == s {
                            CycNum::one()
                        } else if r == i && s == j {
                            CycNum::from_int(c)
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

fn scaling(n: usize, i: usize, a: i64, b: i64) -> (Matrix, Matrix) {
    let entries =
        |x: i64, y: i64| {
            (0..n)
                .map(|k| {
                    if k == i {
                        CycNum::from_rational(BigRational::new(BigInt::from(x), BigInt::from(y)))
                    } else {
                        CycNum::one()
                    }
                })
                .collect()
        };
    (Matrix::diagonal(entries(a, b)), Matrix::diagonal(entries(b, a)))
}

/// A random product of elementary operations inside weight blocks, with its inverse.
fn random_change_of_coordinates(weights: &[u32], rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let n = weights.len();
    let mut p = Matrix::identity(n);
    let mut p_inv = Matrix::identity(n);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (step, inv) = if i != j && weights[i] == weights[j] {
            let c = rng.gen_range(-2..=2);
            (elementary(n, i, j, c), elementary(n, i, j, -c))
        } else {
            scaling(n, i, rng.gen_range(1..4), rng.gen_range(1..4))
        };
        p = p.try_mul(&step).unwrap();
        p_inv = inv.try_mul(&p_inv).unwrap();
    }
    assert!(p.try_mul(&p_inv).unwrap().is_identity());
    (p, p_inv)
}

#[test]
fn poincare_invariant_under_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["quintic-j-cycle", "octic-3", "octic-4", "cubic-nonsl", "quartic-alt"] {
        let inst = instance(name);
        let (w, d) = (inst.poly.weights().to_vec(), inst.poly.degree());
        let g = group_of(&inst);
        let base = poincare_for_weights(&w, d, &g, PoincareOptions::default()).unwrap();
        let (p, p_inv) = random_change_of_coordinates(&w, &mut rng);
        let conj: Vec<Matrix> = inst.matrices().iter().map(|m| p_inv.try_mul(m).unwrap().try_mul(&p).unwrap()).collect();
        let h = MatGroup::generate(w.len(), &conj, 10_000).unwrap();
        assert_eq!(h.len(), g.len());
        let moved = poincare_for_weights(&w, d, &h, PoincareOptions::default()).unwrap();
        assert_eq!(moved.table, base.table, "{name}");
        let profile = |r: &lg_orbifold::poincare::PoincareResult| {
            let mut v: Vec<_> = r.sectors.iter().map(|s| (s.n_g, s.age_g, s.age_ginv, s.class_size, s.table.clone())).collect();
            v.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
            v
        };
        assert_eq!(profile(&moved), profile(&base), "{name}");
    }
}

#[test]
fn sector_data_basics() {
    let inst = instance("quintic-j-cycle");
    let g = group_of(&inst);
    for c in 0..g.classes().len() {
        let s = build_sector(&g, c, inst.poly.weights(), inst.poly.degree()).unwrap();
        let mults = g.eigen_multiplicities(g.classes()[c].rep).unwrap();
        assert_eq!(s.n_g, *mults.get(&RootOfUnity::new(1, 0)).unwrap_or(&0));
        assert_eq!(s.centralizer, g.centralizer(c));
        assert_eq!(s.class_size * s.centralizer.len(), g.len());
        assert_eq!(s.age_g + s.age_ginv, q(5 - s.n_g as i64, 1));
        assert_eq!(s.fixed_weights().len(), s.n_g);
    }
    assert!(matches!(build_sector(&g, 99, inst.poly.weights(), 5), Err(SectorError::NoSuchClass(_))));
}

#[test]
fn restricted_eigenvalues_match_restricted_matrices() {
    for name in ["octic-3", "octic-4", "quartic-alt", "quintic-j-cycle"] {
        let inst = instance(name);
        let g = group_of(&inst);
        let blocks = weight_blocks(inst.poly.weights());
        assert!(blocks.windows(2).all(|b| b[0].0 < b[1].0));
        for c in 0..g.classes().len() {
            let s = build_sector(&g, c, inst.poly.weights(), inst.poly.degree()).unwrap();
            for &h in &s.centralizer {
                let mut expected: BTreeMap<(RootOfUnity, u32), u32> = BTreeMap::new();
                for (w, m) in restricted_action(&g, &s, h).unwrap() {
                    let order = g.element(h).order;
                    for (root, k) in eigen_multiplicities(&m, order).unwrap() {
                        *expected.entry((root, w)).or_default() += k as u32;
                    }
                }
                let got: BTreeMap<(RootOfUnity, u32), u32> =
                    restricted_eigenvalues(&g, &s, h).unwrap().into_iter().fold(BTreeMap::new(), |mut acc, e| {
                        *acc.entry(e).or_default() += 1;
                        acc
                    });
                assert_eq!(got, expected, "{name} class {c} element {h}");
            }
            if let Some(outside) = (0..g.len()).find(|x| !s.contains(*x)) {
                assert!(matches!(restricted_eigenvalues(&g, &s, outside), Err(SectorError::NotInCentralizer(_))));
            }
        }
    }
}
