//! Square matrices over cyclotomic numbers.

use std::fmt;

use crate::cyclo::{lcm_checked, CycNum, CycloError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![CycNum::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = CycNum::one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<CycNum>) -> Self {
        let n = entries.len();
        let mut m = Matrix { n, data: vec![CycNum::zero(); n * n] };
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// Permutation matrix sending x_i to x_{images[i]} (0-based one-line notation):
    /// row i carries its single 1 in column images[i].
    pub fn permutation(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in images {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        let mut m = Matrix { n, data: vec![CycNum::zero(); n * n] };
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j] = CycNum::one();
        }
        Some(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    /// lcm of the entry conductors.
    pub fn conductor(&self) -> Result<u32, CycloError> {
        self.data.iter().try_fold(1u32, |acc, e| lcm_checked(acc, e.conductor()))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, CycloError> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycNum::zero();
                for k in 0..n {
                    let a = &self.data[i * n + k];
                    let b = &other.data[k * n + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.try_add(&a.try_mul(b)?)?;
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn trace(&self) -> CycNum {
        (0..self.n).fold(CycNum::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        Matrix { n, data }
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<CycNum, CycloError> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = CycNum::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(CycNum::zero());
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det.try_mul(&p)?;
            let pinv = p.inv()?;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].try_mul(&pinv)?;
                for j in col..n {
                    let sub = f.try_mul(&a[col * n + j])?;
                    a[r * n + j] = a[r * n + j].try_sub(&sub)?;
                }
            }
        }
        Ok(det)
    }

    /// Multiplicative order by repeated multiplication, or None past `cap`.
    pub fn order(&self, cap: usize) -> Result<Option<usize>, CycloError> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(Some(k));
            }
            acc = acc.try_mul(self)?;
        }
        Ok(None)
    }

    /// Deterministic byte encoding of the entries.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.n as u32).to_be_bytes());
        for e in &self.data {
            out.extend_from_slice(&e.conductor().to_be_bytes());
            e.canonical_bytes(&mut out);
        }
        out
    }

    /// Embeds every entry into one common conductor.
    pub fn embed(&self, conductor: u32) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|e| e.embed(conductor)).collect() }
    }

    /// Block extracted on the given row/column index set.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { n: idx.len(), data }
    }
}

/// Null space of a square matrix, as returned by [`kernel_basis`].
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Column vectors spanning the kernel.
    pub vectors: Vec<Vec<CycNum>>,
    /// For each basis vector, the coordinate where it carries a 1 and every
    /// other basis vector carries a 0.
    pub free_columns: Vec<usize>,
}

/// Kernel of `a` via reduced row echelon form. Each basis vector has a 1 in its
/// free column and 0 in the other free columns, so coordinates of any kernel
/// vector are read off at the free columns.
pub fn kernel_basis(a: &Matrix) -> Result<Kernel, CycloError> {
    let n = a.n;
    let mut m = a.data.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&r| !m[r * n + col].is_zero()) else {
            continue;
        };
        for j in 0..n {
            m.swap(piv * n + j, row * n + j);
        }
        let inv = m[row * n + col].inv()?;
        for j in col..n {
            m[row * n + j] = m[row * n + j].try_mul(&inv)?;
        }
        for r in 0..n {
            if r == row || m[r * n + col].is_zero() {
                continue;
            }
            let f = m[r * n + col].clone();
            for j in col..n {
                let sub = f.try_mul(&m[row * n + j])?;
                m[r * n + j] = m[r * n + j].try_sub(&sub)?;
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free_columns: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors = free_columns
        .iter()
        .map(|&f| {
            let mut v = vec![CycNum::zero(); n];
            v[f] = CycNum::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r * n + f].clone();
            }
            v
        })
        .collect();
    Ok(Kernel { vectors, free_columns })
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k)
    }

    #[test]
    fn permutation_orders_and_dets() {
        let c5 = Matrix::permutation(&[1, 2, 3, 4, 0]).unwrap();
        assert_eq!(c5.order(10).unwrap(), Some(5));
        assert!(c5.det().unwrap().is_one());
        let swap = Matrix::permutation(&[1, 0, 2]).unwrap();
        assert_eq!(swap.det().unwrap(), CycNum::from_int(-1));
        assert!(Matrix::permutation(&[0, 0]).is_none());
    }

    #[test]
    fn infinite_order_detected() {
        let m = Matrix::diagonal(vec![CycNum::from_int(2)]);
        assert_eq!(m.order(50).unwrap(), None);
    }

    #[test]
    fn kernel_of_transposition() {
        // fixed space of (45) on five variables is 4-dimensional
        let g = Matrix::permutation(&[0, 1, 2, 4, 3]).unwrap();
        let mut a = Matrix::identity(5);
        for i in 0..5 {
            for j in 0..5 {
                a.data[i * 5 + j] = a.get(i, j) - g.get(i, j);
            }
        }
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.vectors.len(), 4);
        for v in &k.vectors {
            for i in 0..5 {
                let gv = (0..5).fold(CycNum::zero(), |acc, j| acc + g.get(i, j) * &v[j]);
                assert_eq!(gv, v[i]);
            }
        }
    }

    #[test]
    fn diagonal_det() {
        let m = Matrix::diagonal(vec![z(5, 1), z(5, 2), z(5, 2)]);
        assert!(m.det().unwrap().is_one());
    }
}
