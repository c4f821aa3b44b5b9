mod common;

use std::collections::BTreeSet;

use lg_orbifold::cyclo::{CycNum, RootOfUnity};
use lg_orbifold::grp::{eigen_multiplicities, fixed_subspace, GroupError, MatGroup};
use lg_orbifold::linalg::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn exact_inverse(g: &MatGroup, i: usize) -> Matrix {
    g.element(g.inverse(i)).mat.clone()
}

/// Conjugacy classes by conjugating every element by every element with exact matrices.
fn brute_force_classes(g: &MatGroup) -> BTreeSet<BTreeSet<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = BTreeSet::new();
    for x in 0..g.len() {
        if seen[x] {
            continue;
        }
        let mut class = BTreeSet::new();
        for y in 0..g.len() {
            let m = g.element(y).mat.try_mul(&g.element(x).mat).unwrap().try_mul(&exact_inverse(g, y)).unwrap();
            let idx = g.find(&m).expect("conjugate lies in the group");
            class.insert(idx);
            seen[idx] = true;
        }
        out.insert(class);
    }
    out
}

fn check_against_brute_force(name: &str) {
    let g = group_of(&instance(name));
    let expected = brute_force_classes(&g);
    let got: BTreeSet<BTreeSet<usize>> = g.classes().iter().map(|c| c.members.iter().copied().collect()).collect();
    assert_eq!(got, expected, "{name}");
    for (c, cls) in g.classes().iter().enumerate() {
        let r = &g.element(cls.rep).mat;
        let cent: Vec<usize> =
            (0..g.len()).filter(|&h| g.element(h).mat.try_mul(r).unwrap() == r.try_mul(&g.element(h).mat).unwrap()).collect();
        assert_eq!(g.centralizer(c), &cent[..], "{name} class {c}");
        assert!(cls.members.iter().all(|&m| g.class_of(m) == c));
    }
    assert!(g.class_equation_holds());
}

#[test]
fn conjugacy_classes_match_all_pairs_conjugation() {
    for name in ["quintic-j-cycle", "quartic-alt", "quartic-alt-printed", "cubic-j-cycle", "octic-3", "octic-4"] {
        check_against_brute_force(name);
    }
}

#[test]
fn multiplication_table_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["quartic-alt", "octic-2", "octic-4"] {
        let g = group_of(&instance(name));
        for _ in 0..200 {
            let (a, b) = (rng.gen_range(0..g.len()), rng.gen_range(0..g.len()));
            let prod = g.element(a).mat.try_mul(&g.element(b).mat).unwrap();
            assert_eq!(g.element(g.mul(a, b)).mat, prod, "{name}");
        }
        for i in 0..g.len() {
            assert!(g.element(i).mat.try_mul(&exact_inverse(&g, i)).unwrap().is_identity());
            let order = g.element(i).order;
            assert_eq!(g.element(i).mat.order(1000).unwrap(), Some(order));
            assert_eq!(g.pow(i, order), g.identity());
            assert_eq!(g.exponent() as usize % order, 0);
        }
    }
}

#[test]
fn orders_of_known_groups() {
    let cases = [
        ("cubic-j", 3, 3),
        ("cubic-j-cycle", 9, 9),
        ("cubic-diag-sl", 9, 9),
        ("quartic-alt", 48, 16),
        ("quartic-alt-printed", 96, 20),
        ("quartic-diag-sl", 64, 64),
        ("quintic-j-cycle", 25, 25),
        ("quintic-diag-sl", 625, 625),
    ];
    for (name, order, classes) in cases {
        let g = group_of(&instance(name));
        assert_eq!((g.len(), g.classes().len()), (order, classes), "{name}");
    }
}

#[test]
fn determinant_gate() {
    assert!(group_of(&instance("quartic-alt")).is_special_linear().unwrap());
    assert!(!group_of(&instance("quartic-alt-printed")).is_special_linear().unwrap());
    assert!(!group_of(&instance("cubic-nonsl")).is_special_linear().unwrap());
    for name in ["octic-1", "octic-2", "octic-3", "octic-4", "quintic-diag-sl"] {
        assert!(group_of(&instance(name)).is_special_linear().unwrap(), "{name}");
    }
}

#[test]
fn ages_and_relation() {
    for name in ["quintic-j", "octic-3", "cubic-nonsl", "quartic-alt-printed", "w14-j"] {
        let g = group_of(&instance(name));
        assert_eq!(g.age_relation_violation().unwrap(), None, "{name}");
    }
    let g = group_of(&instance("quintic-j"));
    let ages: BTreeSet<_> = (0..g.len()).map(|i| g.age(i).unwrap()).collect();
    assert_eq!(ages, [0, 1, 2, 3, 4].into_iter().map(|a| q(a, 1)).collect());
}

#[test]
fn permutation_eigenvalues_follow_cycle_type() {
    // a 3-cycle and a transposition: eigenvalues 1, w, w^2, 1, -1
    let p = Matrix::permutation(&[1, 2, 0, 4, 3]).unwrap();
    let m = eigen_multiplicities(&p, 6).unwrap();
    assert_eq!(m.get(&RootOfUnity::new(1, 0)), Some(&2));
    assert_eq!(m.get(&RootOfUnity::new(3, 1)), Some(&1));
    assert_eq!(m.get(&RootOfUnity::new(3, 2)), Some(&1));
    assert_eq!(m.get(&RootOfUnity::new(2, 1)), Some(&1));
    assert_eq!(m.values().sum::<usize>(), 5);
    let f = fixed_subspace(&p, &[1; 5]).unwrap();
    assert_eq!(f.dim(), 2);
    // mixed weights: a swap inside the weight-2 block only
    let s = Matrix::permutation(&[0, 1, 3, 2, 4]).unwrap();
    assert_eq!(fixed_subspace(&s, &[1, 1, 2, 2, 2]).unwrap().dim(), 4);
}

#[test]
fn infinite_groups_are_rejected() {
    let half = CycNum::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
    let shear = Matrix::from_rows(vec![vec![CycNum::one(), half], vec![CycNum::zero(), CycNum::one()]]).unwrap();
    assert!(matches!(MatGroup::generate(2, &[shear], 500), Err(GroupError::OrderCapExceeded(500))));
}

#[test]
fn group_independent_of_generator_order() {
    let inst = instance("quartic-alt");
    let mut gens = inst.matrices();
    let a = MatGroup::generate(4, &gens, 1000).unwrap();
    gens.reverse();
    let b = MatGroup::generate(4, &gens, 1000).unwrap();
    let keys = |g: &MatGroup| g.classes().iter().map(|c| g.element(c.rep).key.clone()).collect::<Vec<_>>();
    assert_eq!(keys(&a), keys(&b));
}

#[test]
fn diagonal_groups_use_given_exponents() {
    let g = MatGroup::generate(3, &[diag_roots(6, &[1, 2, 3])], 100).unwrap();
    assert_eq!(g.len(), 6);
    assert!(g.is_abelian());
    assert_eq!(g.exponent(), 6);
}
