//! Finite matrix groups over cyclotomic fields: closure from generators,
//! conjugacy classes, centralizers, orders, ages and eigenvalue multiplicities.
//!
//! Elements are indexed by their reduction modulo a large prime (see
//! [`crate::modp`]); every closure relation found that way is re-checked with
//! exact arithmetic before the group is accepted, so a group is only returned
//! once it is known to be finite, at which point the reduction is injective.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclo::{lcm_checked, CycNum, CycloError, RootOfUnity};
use crate::linalg::{kernel_basis, Kernel, Matrix};
use crate::modp::{ModField, ModMat};

pub const DEFAULT_GROUP_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {0} elements")]
    OrderCapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generators must be square matrices of one size")]
    DimensionMismatch,
    #[error("eigenvalue multiplicity is not a nonnegative integer (internal error)")]
    NonIntegerMultiplicity,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("entries are not integral at the working prime")]
    BadReduction,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

pub type Age = Ratio<i64>;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub mat: Matrix,
    pub order: usize,
    pub key: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MatGroup {
    n: usize,
    conductor: u32,
    field: ModField,
    elements: Vec<GroupElement>,
    images: Vec<ModMat>,
    index: HashMap<ModMat, usize>,
    generators: Vec<usize>,
    inverse: Vec<usize>,
    traces: Vec<CycNum>,
    diagonal: Vec<Option<Vec<RootOfUnity>>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    centralizers: Vec<Vec<usize>>,
    exponent: u32,
}

fn reduce(field: &ModField, m: &Matrix) -> Result<ModMat, GroupError> {
    field.reduce_matrix(m).ok_or(GroupError::BadReduction)
}

impl MatGroup {
    /// Enumerates the group generated by `generators` (n x n) by breadth-first
    /// closure, failing once more than `cap` elements appear.
    pub fn generate(n: usize, generators: &[Matrix], cap: usize) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.dim() != n) || n == 0 {
            return Err(GroupError::DimensionMismatch);
        }
        let mut conductor = 1u32;
        for g in generators {
            conductor = lcm_checked(conductor, g.conductor()?)?;
        }
        for (i, g) in generators.iter().enumerate() {
            if g.det()?.is_zero() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        let field = ModField::new(conductor);
        let gen_images = generators.iter().map(|g| reduce(&field, g)).collect::<Result<Vec<_>, _>>()?;

        let identity = Matrix::identity(n);
        let mut mats = vec![identity.clone()];
        let mut images = vec![field.identity(n)];
        let mut index: HashMap<ModMat, usize> = HashMap::new();
        index.insert(images[0].clone(), 0);
        // right-multiplication edges whose target was already known; checked exactly below
        let mut pending: Vec<(usize, usize, usize)> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (s, simg) in gen_images.iter().enumerate() {
                let img = field.mul(&images[e], simg);
                match index.get(&img) {
                    Some(&t) => pending.push((e, s, t)),
                    None => {
                        if mats.len() >= cap {
                            return Err(GroupError::OrderCapExceeded(cap));
                        }
                        let t = mats.len();
                        mats.push(mats[e].try_mul(&generators[s])?);
                        index.insert(img.clone(), t);
                        images.push(img);
                        queue.push_back(t);
                    }
                }
            }
        }
        // A nontrivial kernel of the reduction would show up as a failed relation.
        for (e, s, t) in pending {
            if mats[e].try_mul(&generators[s])? != mats[t] {
                return Err(GroupError::OrderCapExceeded(cap));
            }
        }
        let gens = gen_images.iter().map(|g| index[g]).collect();
        Self::assemble(n, conductor, field, mats, images, index, gens)
    }

    fn assemble(
        n: usize,
        conductor: u32,
        field: ModField,
        mats: Vec<Matrix>,
        images: Vec<ModMat>,
        index: HashMap<ModMat, usize>,
        generators: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let size = mats.len();
        let id_img = field.identity(n);
        let mut orders = vec![0usize; size];
        let mut inverse = vec![0usize; size];
        for i in 0..size {
            let mut acc = images[i].clone();
            let mut k = 1;
            let mut prev = 0usize; // index of g^{k-1}
            while acc != id_img {
                prev = index[&acc];
                acc = field.mul(&acc, &images[i]);
                k += 1;
            }
            orders[i] = k;
            inverse[i] = if k == 1 { i } else { prev };
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
        let exponent = u32::try_from(exponent).map_err(|_| CycloError::InputTooLarge(exponent))?;
        let elements: Vec<GroupElement> = mats
            .into_iter()
            .zip(&orders)
            .map(|(mat, &order)| {
                let key = mat.embed(conductor).canonical_key();
                GroupElement { mat, order, key }
            })
            .collect();
        let traces = elements.iter().map(|e| e.mat.trace()).collect();
        let diagonal = elements.iter().map(|e| diagonal_roots(&e.mat)).collect();
        let mut g = MatGroup {
            n,
            conductor,
            field,
            elements,
            images,
            index,
            generators,
            inverse,
            traces,
            diagonal,
            classes: Vec::new(),
            class_of: Vec::new(),
            centralizers: Vec::new(),
            exponent,
        };
        g.compute_classes();
        Ok(g)
    }

    /// Orbit algorithm under conjugation by the generators; the representative
    /// of each class is its member with the smallest canonical key.
    fn compute_classes(&mut self) {
        let size = self.len();
        let mut class_of = vec![usize::MAX; size];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let gens: Vec<(usize, usize)> = self.generators.iter().map(|&s| (s, self.inverse[s])).collect();
        for start in 0..size {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = raw.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut q = VecDeque::from([start]);
            while let Some(x) = q.pop_front() {
                for &(s, sinv) in &gens {
                    let y = self.mul(self.mul(sinv, x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                        q.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| {
                let rep = *members.iter().min_by(|&&a, &&b| self.elements[a].key.cmp(&self.elements[b].key)).unwrap();
                ConjugacyClass { rep, members }
            })
            .collect();
        // identity first, then by representative key
        classes.sort_by(|a, b| (a.rep != 0, &self.elements[a.rep].key).cmp(&(b.rep != 0, &self.elements[b.rep].key)));
        for (cid, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = cid;
            }
        }
        let abelian = self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        let all: Vec<usize> = (0..size).collect();
        let centralizers =
            classes
                .iter()
                .map(|c| {
                    if abelian {
                        all.clone()
                    } else {
                        (0..size).filter(|&h| self.mul(h, c.rep) == self.mul(c.rep, h)).collect()
                    }
                })
                .collect();
        self.classes = classes;
        self.class_of = class_of;
        self.centralizers = centralizers;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn trace(&self, i: usize) -> &CycNum {
        &self.traces[i]
    }

    /// Diagonal entries of element `i` as roots of unity, if it is diagonal.
    pub fn diagonal_roots(&self, i: usize) -> Option<&[RootOfUnity]> {
        self.diagonal[i].as_deref()
    }

    /// Index of the product a*b.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.field.mul(&self.images[a], &self.images[b])]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.elements[a].order;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Index of a matrix in the group, if present.
    pub fn find(&self, m: &Matrix) -> Option<usize> {
        if m.dim() != self.n || self.conductor % m.conductor().ok()? != 0 {
            return None;
        }
        let i = *self.index.get(&self.field.reduce_matrix(m)?)?;
        (self.elements[i].mat == *m).then_some(i)
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Centralizer of the representative of class `c`.
    pub fn centralizer(&self, c: usize) -> &[usize] {
        &self.centralizers[c]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.len()
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Eigenvalue multiplicities of element `i` from the traces of its powers.
    pub fn eigen_multiplicities(&self, i: usize) -> Result<BTreeMap<RootOfUnity, usize>, GroupError> {
        if let Some(roots) = &self.diagonal[i] {
            let mut out = BTreeMap::new();
            for r in roots {
                *out.entry(*r).or_insert(0) += 1;
            }
            return Ok(out);
        }
        let m = self.elements[i].order;
        let mut traces = Vec::with_capacity(m);
        let mut acc = 0usize;
        for _ in 0..m {
            traces.push(self.traces[acc].clone());
            acc = self.mul(acc, i);
        }
        multiplicities_from_traces(&traces, self.n)
    }

    pub fn age(&self, i: usize) -> Result<Age, GroupError> {
        Ok(age_of(&self.eigen_multiplicities(i)?))
    }

    /// First element violating age(g) + age(g^-1) = n - dim V^g, if any.
    pub fn age_relation_violation(&self) -> Result<Option<usize>, GroupError> {
        let bad = (0..self.len()).into_par_iter().map(|i| -> Result<bool, GroupError> {
            let m = self.eigen_multiplicities(i)?;
            let lhs = age_of(&m) + self.age(self.inverse(i))?;
            Ok(lhs != Age::from((self.n - fixed_dimension(&m)) as i64))
        });
        let flags = bad.collect::<Result<Vec<bool>, _>>()?;
        Ok(flags.iter().position(|&b| b))
    }

    /// Classes partition G and each has size |G| / |C(g)|.
    pub fn class_equation_holds(&self) -> bool {
        let total: usize = self.classes.iter().map(|c| c.members.len()).sum();
        total == self.len()
            && self.classes.iter().enumerate().all(|(c, cl)| cl.members.len() * self.centralizers[c].len() == self.len())
    }

    /// G is in SL_n iff every generator has determinant 1.
    pub fn is_special_linear(&self) -> Result<bool, GroupError> {
        for &g in &self.generators {
            if !self.elements[g].mat.det()?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Groups ⟨G', J⟩ for a central J of order `k` meeting G' trivially, without
    /// enumerating the product: classes are J^i times classes of G', and
    /// centralizers lift the same way.
    pub fn coset_lift(prime: &MatGroup, j: &Matrix, k: usize) -> Result<MatGroup, GroupError> {
        let n = prime.n;
        if j.dim() != n {
            return Err(GroupError::DimensionMismatch);
        }
        let mut jpow = vec![Matrix::identity(n)];
        for i in 1..=k {
            let next = jpow[i - 1].try_mul(j)?;
            if next.is_identity() != (i == k) {
                return Err(GroupError::PreconditionViolated(format!("J does not have order {k}")));
            }
            jpow.push(next);
        }
        jpow.pop();
        for &s in &prime.generators {
            let m = &prime.elements[s].mat;
            if m.try_mul(j)? != j.try_mul(m)? {
                return Err(GroupError::PreconditionViolated("J is not central over G'".into()));
            }
        }
        for (i, p) in jpow.iter().enumerate().skip(1) {
            if prime.find(p).is_some() {
                return Err(GroupError::PreconditionViolated(format!("J^{i} lies in G'")));
            }
        }
        let conductor = lcm_checked(prime.conductor, j.conductor()?)?;
        let field = ModField::new(conductor);
        let m = prime.len();
        let mut mats = Vec::with_capacity(k * m);
        for p in &jpow {
            for e in &prime.elements {
                mats.push(p.try_mul(&e.mat)?);
            }
        }
        let images = mats.iter().map(|x| reduce(&field, x)).collect::<Result<Vec<_>, _>>()?;
        let index: HashMap<ModMat, usize> = images.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut generators: Vec<usize> = prime.generators.clone();
        generators.push(if k > 1 { m } else { 0 });

        // orders and inverses from the product structure
        let lift = |i: usize, e: usize| i * m + e;
        let mut orders = Vec::with_capacity(k * m);
        let mut inverse = Vec::with_capacity(k * m);
        for i in 0..k {
            for e in 0..m {
                let oe = prime.elements[e].order;
                let oj = k / k.gcd(&i);
                orders.push(oe.lcm(&oj));
                inverse.push(lift((k - i) % k, prime.inverse[e]));
            }
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
        let elements: Vec<GroupElement> = mats
            .into_iter()
            .zip(&orders)
            .map(|(mat, &order)| {
                let key = mat.embed(conductor).canonical_key();
                GroupElement { mat, order, key }
            })
            .collect();
        let traces = elements.iter().map(|e| e.mat.trace()).collect();
        let diagonal = elements.iter().map(|e| diagonal_roots(&e.mat)).collect();
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        let mut centralizers = Vec::new();
        for i in 0..k {
            for (c, cls) in prime.classes.iter().enumerate() {
                let members: Vec<usize> = cls.members.iter().map(|&e| lift(i, e)).collect();
                let rep = *members.iter().min_by(|&&a, &&b| elements[a].key.cmp(&elements[b].key)).unwrap();
                let base = rep % m;
                let cprime: Vec<usize> = if base == cls.rep {
                    prime.centralizers[c].clone()
                } else {
                    (0..m).filter(|&h| prime.commutes(h, base)).collect()
                };
                let mut cent: Vec<usize> = (0..k).flat_map(|t| cprime.iter().map(move |&h| lift(t, h))).collect();
                cent.sort_unstable();
                classes.push(ConjugacyClass { rep, members });
                centralizers.push(cent);
            }
        }
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| {
            let (ra, rb) = (classes[a].rep, classes[b].rep);
            (ra != 0, &elements[ra].key).cmp(&(rb != 0, &elements[rb].key))
        });
        let classes: Vec<ConjugacyClass> = order.iter().map(|&i| classes[i].clone()).collect();
        let centralizers: Vec<Vec<usize>> = order.iter().map(|&i| centralizers[i].clone()).collect();
        let mut class_of = vec![0; k * m];
        for (cid, c) in classes.iter().enumerate() {
            for &x in &c.members {
                class_of[x] = cid;
            }
        }
        Ok(MatGroup {
            n,
            conductor,
            field,
            elements,
            images,
            index,
            generators,
            inverse,
            traces,
            diagonal,
            classes,
            class_of,
            centralizers,
            exponent: u32::try_from(exponent).map_err(|_| CycloError::InputTooLarge(exponent))?,
        })
    }
}

fn diagonal_roots(m: &Matrix) -> Option<Vec<RootOfUnity>> {
    if !m.is_diagonal() {
        return None;
    }
    (0..m.dim()).map(|i| m.get(i, i).as_root_of_unity()).collect()
}

/// Multiplicity of zeta_m^k as (1/m) sum_j tr(h^j) zeta_m^{-kj}, where
/// `traces[j] = tr(h^j)` and m = traces.len() is a multiple of the order of h.
pub fn multiplicities_from_traces(traces: &[CycNum], size: usize) -> Result<BTreeMap<RootOfUnity, usize>, GroupError> {
    let m = traces.len();
    let mut out = BTreeMap::new();
    let mut total = 0usize;
    // traces of h^j depend only on gcd(j, m) classes in general, so just sum directly
    for k in 0..m {
        let mut acc = CycNum::zero();
        for (j, t) in traces.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let e = -((k * j) as i64);
            acc = acc.try_add(&t.try_mul(&CycNum::root_of_unity(m as u32, e))?)?;
        }
        let q = acc.to_rational().ok_or(GroupError::NonIntegerMultiplicity)?;
        let q = q / BigRational::from_integer(BigInt::from(m));
        if !q.is_integer() || q < BigRational::zero() {
            return Err(GroupError::NonIntegerMultiplicity);
        }
        let mult = q.to_integer().to_usize().ok_or(GroupError::NonIntegerMultiplicity)?;
        if mult > 0 {
            out.insert(RootOfUnity::new(m as u32, k as i64), mult);
            total += mult;
        }
    }
    if total != size {
        return Err(GroupError::NonIntegerMultiplicity);
    }
    Ok(out)
}

/// Eigenvalue multiplicities of a finite-order matrix with h^m = 1.
pub fn eigen_multiplicities(h: &Matrix, m: usize) -> Result<BTreeMap<RootOfUnity, usize>, GroupError> {
    let mut traces = Vec::with_capacity(m);
    let mut acc = Matrix::identity(h.dim());
    for _ in 0..m {
        traces.push(acc.trace());
        acc = acc.try_mul(h)?;
    }
    if !acc.is_identity() {
        return Err(GroupError::PreconditionViolated(format!("matrix does not satisfy h^{m} = 1")));
    }
    multiplicities_from_traces(&traces, h.dim())
}

/// Sum of the branch values k/m over the eigenvalues.
pub fn age_of(mults: &BTreeMap<RootOfUnity, usize>) -> Age {
    mults.iter().fold(Age::zero(), |acc, (r, &c)| acc + r.log_fraction() * c as i64)
}

/// Multiplicity of eigenvalue 1.
pub fn fixed_dimension(mults: &BTreeMap<RootOfUnity, usize>) -> usize {
    mults.get(&RootOfUnity::new(1, 0)).copied().unwrap_or(0)
}

/// V^g restricted to one block of equal weight.
#[derive(Clone, Debug)]
pub struct FixedBlock {
    pub weight: u32,
    /// Coordinates (variable indices) making up the block.
    pub indices: Vec<usize>,
    /// Kernel of (E - g) on the block, in block coordinates.
    pub kernel: Kernel,
}

#[derive(Clone, Debug)]
pub struct FixedSubspace {
    pub blocks: Vec<FixedBlock>,
}

impl FixedSubspace {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.kernel.vectors.len()).sum()
    }
}

/// Coordinates grouped by weight, in increasing weight order.
pub fn weight_blocks(weights: &[u32]) -> Vec<(u32, Vec<usize>)> {
    let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &w) in weights.iter().enumerate() {
        map.entry(w).or_default().push(i);
    }
    map.into_iter().collect()
}

/// V^g = Ker(E - g), computed block by block; g must respect the weight blocks.
pub fn fixed_subspace(g: &Matrix, weights: &[u32]) -> Result<FixedSubspace, GroupError> {
    let mut blocks = Vec::new();
    for (weight, indices) in weight_blocks(weights) {
        let sub = g.submatrix(&indices);
        let k = indices.len();
        let mut a = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let id = if i == j { CycNum::one() } else { CycNum::zero() };
                row.push(id.try_sub(sub.get(i, j))?);
            }
            a.push(row);
        }
        let a = Matrix::from_rows(a).expect("square block");
        blocks.push(FixedBlock { weight, indices, kernel: kernel_basis(&a)? });
    }
    Ok(FixedSubspace { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k)
    }

    fn quintic_j() -> Matrix {
        Matrix::diagonal(vec![z(5, 1); 5])
    }

    #[test]
    fn cyclic_group_of_j() {
        let g = MatGroup::generate(5, &[quintic_j()], 100).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.classes().len(), 5);
        assert!(g.is_special_linear().unwrap());
        assert_eq!(g.age(g.generators()[0]).unwrap(), Age::from(1));
    }

    #[test]
    fn commuting_j_and_three_cycle() {
        let j = Matrix::diagonal(vec![z(3, 1); 3]);
        let c = Matrix::permutation(&[1, 2, 0]).unwrap();
        let g = MatGroup::generate(3, &[j, c], 100).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.classes().len(), 9);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn diagonal_multiplicities_match_traces() {
        let g = MatGroup::generate(
            3,
            &[Matrix::diagonal(vec![z(3, 1), z(6, 1), z(2, 1)]), Matrix::diagonal(vec![z(4, 1), z(4, 3), CycNum::one()])],
            200,
        )
        .unwrap();
        for i in 0..g.len() {
            let direct = eigen_multiplicities(&g.element(i).mat, g.element(i).order).unwrap();
            assert_eq!(g.eigen_multiplicities(i).unwrap(), direct);
        }
        assert_eq!(g.age_relation_violation().unwrap(), None);
        assert!(g.class_equation_holds());
    }

    #[test]
    fn infinite_order_hits_cap() {
        let m = Matrix::diagonal(vec![CycNum::from_int(2)]);
        assert_eq!(MatGroup::generate(1, &[m], 50).unwrap_err(), GroupError::OrderCapExceeded(50));
    }

    #[test]
    fn infinite_group_from_finite_order_generators() {
        // two reflections whose product is a rotation of infinite order
        let r1 =
            Matrix::from_rows(vec![vec![CycNum::from_int(-1), CycNum::zero()], vec![CycNum::zero(), CycNum::one()]]).unwrap();
        let r2 = Matrix::from_rows(vec![
            vec![
                CycNum::from_rational(BigRational::new(3.into(), 5.into())),
                CycNum::from_rational(BigRational::new(4.into(), 5.into())),
            ],
            vec![
                CycNum::from_rational(BigRational::new(4.into(), 5.into())),
                CycNum::from_rational(BigRational::new((-3).into(), 5.into())),
            ],
        ])
        .unwrap();
        assert_eq!(r2.order(4).unwrap(), Some(2));
        assert!(matches!(MatGroup::generate(2, &[r1, r2], 1000), Err(GroupError::OrderCapExceeded(_))));
    }

    #[test]
    fn symmetric_group_classes() {
        let s = Matrix::permutation(&[1, 0, 2, 3]).unwrap();
        let c = Matrix::permutation(&[1, 2, 3, 0]).unwrap();
        let g = MatGroup::generate(4, &[s, c], 100).unwrap();
        assert_eq!(g.len(), 24);
        assert_eq!(g.classes().len(), 5);
        for (ci, cls) in g.classes().iter().enumerate() {
            assert_eq!(cls.members.len() * g.centralizer(ci).len(), 24);
            assert!(cls.members.contains(&cls.rep));
        }
        assert!(!g.is_special_linear().unwrap());
        assert_eq!(g.classes()[0].rep, g.identity());
        assert_eq!(g.centralizer(0).len(), 24);
    }

    #[test]
    fn ages_pair_up() {
        let s = Matrix::permutation(&[1, 2, 3, 4, 0]).unwrap();
        let g = MatGroup::generate(5, &[quintic_j(), s], 100).unwrap();
        for i in 0..g.len() {
            let mults = g.eigen_multiplicities(i).unwrap();
            let ng = fixed_dimension(&mults) as i64;
            assert_eq!(g.age(i).unwrap() + g.age(g.inverse(i)).unwrap(), Age::from(5 - ng));
        }
    }

    #[test]
    fn eigenvalues_by_trace_dft() {
        let id = eigen_multiplicities(&Matrix::identity(3), 1).unwrap();
        assert_eq!(id.into_iter().collect::<Vec<_>>(), vec![(RootOfUnity::new(1, 0), 3)]);
        let d = Matrix::diagonal(vec![z(5, 1), z(5, 2), z(5, 3)]);
        let m = eigen_multiplicities(&d, 5).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&c| c == 1));
        let c5 = Matrix::permutation(&[1, 2, 3, 4, 0]).unwrap();
        let m = eigen_multiplicities(&c5, 5).unwrap();
        assert_eq!(m.len(), 5);
        for k in 0..5 {
            assert_eq!(m[&RootOfUnity::new(5, k)], 1);
        }
    }

    #[test]
    fn fixed_subspaces() {
        let w = [1u32; 5];
        assert_eq!(fixed_subspace(&Matrix::identity(5), &w).unwrap().dim(), 5);
        assert_eq!(fixed_subspace(&quintic_j(), &w).unwrap().dim(), 0);
        let t = Matrix::permutation(&[0, 1, 2, 4, 3]).unwrap();
        assert_eq!(fixed_subspace(&t, &w).unwrap().dim(), 4);
    }

    #[test]
    fn coset_lift_matches_direct() {
        let s = Matrix::permutation(&[1, 2, 3, 4, 0]).unwrap();
        let prime = MatGroup::generate(5, std::slice::from_ref(&s), 100).unwrap();
        let lifted = MatGroup::coset_lift(&prime, &quintic_j(), 5).unwrap();
        let direct = MatGroup::generate(5, &[s, quintic_j()], 100).unwrap();
        assert_eq!(lifted.len(), 25);
        assert_eq!(lifted.classes().len(), 25);
        for c in 0..25 {
            assert_eq!(lifted.centralizer(c).len(), 25);
        }
        let mut a: Vec<&Vec<u8>> = lifted.classes().iter().map(|c| &lifted.element(c.rep).key).collect();
        let mut b: Vec<&Vec<u8>> = direct.classes().iter().map(|c| &direct.element(c.rep).key).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn coset_lift_centralizers_follow_representatives() {
        let d = Matrix::diagonal(vec![z(5, 1), z(5, 4), CycNum::one(), CycNum::one(), CycNum::one()]);
        let swap = Matrix::permutation(&[1, 0, 2, 3, 4]).unwrap();
        let prime = MatGroup::generate(5, &[d.clone(), swap.clone()], 1000).unwrap();
        let lifted = MatGroup::coset_lift(&prime, &quintic_j(), 5).unwrap();
        let direct = MatGroup::generate(5, &[d, swap, quintic_j()], 1000).unwrap();
        assert_eq!(lifted.len(), direct.len());
        assert_eq!(lifted.classes().len(), direct.classes().len());
        assert!(lifted.class_equation_holds());
        for (c, cls) in lifted.classes().iter().enumerate() {
            let expected: Vec<usize> = (0..lifted.len()).filter(|&h| lifted.commutes(h, cls.rep)).collect();
            assert_eq!(lifted.centralizer(c), &expected[..]);
            assert!(cls.members.iter().all(|&x| lifted.element(cls.rep).key <= lifted.element(x).key));
        }
    }

    #[test]
    fn coset_lift_preconditions() {
        let trivial = MatGroup::generate(5, &[], 10).unwrap();
        let lifted = MatGroup::coset_lift(&trivial, &quintic_j(), 5).unwrap();
        assert_eq!(lifted.classes().len(), 5);
        assert!(lifted.classes().iter().all(|c| c.members.len() == 1));
        let d = Matrix::diagonal(vec![z(5, 1), z(5, 4), CycNum::one(), CycNum::one(), CycNum::one()]);
        let s = Matrix::permutation(&[1, 2, 3, 4, 0]).unwrap();
        let prime = MatGroup::generate(5, &[s], 10).unwrap();
        assert!(matches!(MatGroup::coset_lift(&prime, &d, 5), Err(GroupError::PreconditionViolated(_))));
        let j_inside = MatGroup::generate(5, &[quintic_j()], 10).unwrap();
        assert!(matches!(MatGroup::coset_lift(&j_inside, &quintic_j(), 5), Err(GroupError::PreconditionViolated(_))));
    }
}
