//! Per-class sector data: fixed subspace with charges, ages, moved charge and
//! the action of the centralizer on the fixed subspace.

use num_rational::Ratio;
use thiserror::Error;

use crate::cyclo::{CycNum, CycloError, RootOfUnity};
use crate::grp::{eigen_multiplicities, fixed_subspace, Age, FixedBlock, GroupError, MatGroup};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectorError {
    #[error("element {0} is not in the centralizer of the sector representative")]
    NotInCentralizer(usize),
    #[error("class index {0} out of range")]
    NoSuchClass(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Debug)]
pub struct SectorData {
    pub class_index: usize,
    pub rep: usize,
    pub n_g: usize,
    /// Fixed subspace of the representative, one block per weight.
    pub blocks: Vec<FixedBlock>,
    pub degree: u32,
    pub age_g: Age,
    pub age_ginv: Age,
    pub moved_charge_sum: Ratio<i64>,
    pub centralizer: Vec<usize>,
    pub class_size: usize,
    /// (coordinate, weight) per basis vector when V^g is spanned by coordinate vectors.
    pub coordinate_basis: Option<Vec<(usize, u32)>>,
}

/// One eigenvalue of h on V^g together with the weight of its block.
pub type TaggedEigenvalue = (RootOfUnity, u32);

impl SectorData {
    /// Charges of the fixed basis vectors, block by block.
    pub fn fixed_charges(&self) -> Vec<Ratio<i64>> {
        self.blocks
            .iter()
            .flat_map(|b| {
                let q = Ratio::new(b.weight as i64, self.degree as i64);
                std::iter::repeat_n(q, b.kernel.vectors.len())
            })
            .collect()
    }

    /// Weights of the fixed basis vectors, block by block.
    pub fn fixed_weights(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(b.weight, b.kernel.vectors.len())).collect()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.centralizer.binary_search(&h).is_ok()
    }
}

pub fn build_sector(group: &MatGroup, class_index: usize, weights: &[u32], degree: u32) -> Result<SectorData, SectorError> {
    let class = group.classes().get(class_index).ok_or(SectorError::NoSuchClass(class_index))?;
    let rep = class.rep;
    let fixed = fixed_subspace(&group.element(rep).mat, weights)?;
    let n_g = fixed.dim();
    let total: Ratio<i64> = weights.iter().map(|&w| Ratio::new(w as i64, degree as i64)).sum();
    let fixed_sum: Ratio<i64> =
        fixed.blocks.iter().map(|b| Ratio::new(b.weight as i64 * b.kernel.vectors.len() as i64, degree as i64)).sum();
    let coordinate_basis = fixed
        .blocks
        .iter()
        .flat_map(|b| {
            b.kernel.vectors.iter().zip(&b.kernel.free_columns).map(move |(v, &f)| {
                let unit = v.iter().enumerate().all(|(c, x)| if c == f { x.is_one() } else { x.is_zero() });
                unit.then_some((b.indices[f], b.weight))
            })
        })
        .collect::<Option<Vec<_>>>();
    let mut centralizer = group.centralizer(class_index).to_vec();
    centralizer.sort_unstable();
    Ok(SectorData {
        class_index,
        rep,
        n_g,
        blocks: fixed.blocks,
        degree,
        age_g: group.age(rep)?,
        age_ginv: group.age(group.inverse(rep))?,
        moved_charge_sum: total - fixed_sum,
        centralizer,
        class_size: class.members.len(),
        coordinate_basis,
    })
}

fn restrict_block(h: &Matrix, block: &FixedBlock) -> Result<Matrix, CycloError> {
    let k = block.kernel.vectors.len();
    let hb = h.submatrix(&block.indices);
    let mut rows = vec![Vec::with_capacity(k); k];
    for v in &block.kernel.vectors {
        // column j of the restriction: coordinates of h v_j at the free columns
        for (r, &f) in block.kernel.free_columns.iter().enumerate() {
            let mut acc = CycNum::zero();
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() && !hb.get(f, c).is_zero() {
                    acc = acc.try_add(&hb.get(f, c).try_mul(x)?)?;
                }
            }
            rows[r].push(acc);
        }
    }
    Ok(Matrix::from_rows(rows).unwrap_or_else(|| Matrix::identity(0)))
}

/// Matrix of h on V^g in the fixed basis, one square block per weight.
pub fn restricted_action(group: &MatGroup, sector: &SectorData, h: usize) -> Result<Vec<(u32, Matrix)>, SectorError> {
    if !sector.contains(h) {
        return Err(SectorError::NotInCentralizer(h));
    }
    let hm = &group.element(h).mat;
    sector.blocks.iter().filter(|b| !b.kernel.vectors.is_empty()).map(|b| Ok((b.weight, restrict_block(hm, b)?))).collect()
}

/// Eigenvalues of h on V^g tagged by block weight, sorted.
pub fn restricted_eigenvalues(group: &MatGroup, sector: &SectorData, h: usize) -> Result<Vec<TaggedEigenvalue>, SectorError> {
    if let (Some(basis), Some(roots)) = (&sector.coordinate_basis, group.diagonal_roots(h)) {
        if !sector.contains(h) {
            return Err(SectorError::NotInCentralizer(h));
        }
        let mut out: Vec<TaggedEigenvalue> = basis.iter().map(|&(i, w)| (roots[i], w)).collect();
        out.sort();
        return Ok(out);
    }
    let order = group.element(h).order;
    let mut out = Vec::with_capacity(sector.n_g);
    for (w, r) in restricted_action(group, sector, h)? {
        if r.is_diagonal() {
            for i in 0..r.dim() {
                let root = r.get(i, i).as_root_of_unity().ok_or(GroupError::NonIntegerMultiplicity)?;
                out.push((root, w));
            }
        } else {
            for (root, mult) in eigen_multiplicities(&r, order)? {
                out.extend(std::iter::repeat_n((root, w), mult));
            }
        }
    }
    out.sort();
    Ok(out)
}
