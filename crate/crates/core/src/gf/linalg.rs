//! Exact Gauss-Jordan elimination over a [`Field`].

use super::{Felt, Field, GfError};

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Basis of `{v : M v = 0}`.
    Kernel,
    /// Nonzero rows of the reduced row echelon form of `M`.
    Rref,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Basis vectors in reduced row echelon form.
    pub basis: Vec<Vec<Felt>>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Felt::ONE;
        }
        m
    }

    pub fn from_rows<R: AsRef<[Felt]>>(rows: &[R]) -> Result<Matrix, GfError> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(GfError::RaggedMatrix { row: i, len: r.len(), expected: cols });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn check(&self, field: &Field) -> Result<(), GfError> {
        self.data.iter().try_for_each(|&a| field.check(a))
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, field: &Field, v: &[Felt]) -> Vec<Felt> {
        (0..self.rows)
            .map(|i| dot(field, self.row(i), v))
            .collect()
    }

    /// In-place reduction to reduced row echelon form. Pivots are taken in
    /// the leftmost column first, from the lowest-index eligible row.
    /// Returns the pivot columns; pivot rows come first.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = field.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = field.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                let neg = field.neg(factor);
                for j in c..self.cols {
                    let t = field.mul(neg, self[(r, j)]);
                    self[(i, j)] = field.add(self[(i, j)], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Felt;

    fn index(&self, (i, j): (usize, usize)) -> &Felt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Felt {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub(crate) fn dot(field: &Field, a: &[Felt], b: &[Felt]) -> Felt {
    a.iter()
        .zip(b)
        .fold(Felt::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Row space basis or kernel basis of `m`, both in reduced echelon form.
pub fn linear_solve(field: &Field, m: &Matrix, mode: SolveMode) -> Result<Solution, GfError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(GfError::EmptyMatrix);
    }
    m.check(field)?;
    let mut r = m.clone();
    let pivots = r.rref(field);
    let rank = pivots.len();
    let basis = match mode {
        SolveMode::Rref => (0..rank).map(|i| r.row(i).to_vec()).collect(),
        SolveMode::Kernel => {
            let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
            if free.is_empty() {
                Vec::new()
            } else {
                let raw: Vec<Vec<Felt>> = free
                    .iter()
                    .map(|&f| {
                        let mut v = vec![Felt::ZERO; m.cols];
                        v[f] = Felt::ONE;
                        for (row, &pc) in pivots.iter().enumerate() {
                            v[pc] = field.neg(r[(row, f)]);
                        }
                        v
                    })
                    .collect();
                let mut k = Matrix::from_rows(&raw)?;
                let kp = k.rref(field);
                (0..kp.len()).map(|i| k.row(i).to_vec()).collect()
            }
        }
    };
    Ok(Solution { basis, rank })
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve_affine(field: &Field, m: &Matrix, b: &[Felt]) -> Result<Option<Vec<Felt>>, GfError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(GfError::EmptyMatrix);
    }
    m.check(field)?;
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)];
        }
        aug[(i, m.cols)] = b[i];
    }
    let pivots = aug.rref(field);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Felt::ZERO; m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(row, m.cols)];
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> Field {
        Field::new(3, 2).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let f = gf9();
        let s = linear_solve(&f, &Matrix::identity(3), SolveMode::Kernel).unwrap();
        assert_eq!(s.rank, 3);
        assert!(s.basis.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = gf9();
        let s = linear_solve(&f, &Matrix::zeros(2, 3), SolveMode::Kernel).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.basis.len(), 3);
    }

    #[test]
    fn dependent_rows_give_nullity_two() {
        let f = gf9();
        let e = |i| Felt::from_index(i);
        let r1 = vec![e(1), e(2), e(0), e(5)];
        let r2 = vec![e(0), e(3), e(7), e(1)];
        let r3: Vec<Felt> = r1.iter().zip(&r2).map(|(&a, &b)| f.add(a, b)).collect();
        let r4 = vec![Felt::ZERO; 4];
        let m = Matrix::from_rows(&[r1, r2, r3, r4]).unwrap();
        let s = linear_solve(&f, &m, SolveMode::Kernel).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.basis.len(), 2);
        for v in &s.basis {
            assert!(m.mul_vec(&f, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(Matrix::from_rows(&s.basis).unwrap().rank(&f), 2);
    }

    #[test]
    fn mismatched_entries_are_rejected() {
        let f = gf9();
        let m = Matrix::from_rows(&[vec![Felt::from_index(12)]]).unwrap();
        assert!(matches!(linear_solve(&f, &m, SolveMode::Rref), Err(GfError::FieldMismatch { .. })));
        assert_eq!(linear_solve(&f, &Matrix::zeros(0, 0), SolveMode::Rref), Err(GfError::EmptyMatrix));
    }

    #[test]
    fn affine_solve_roundtrip() {
        let f = gf9();
        let e = |i| Felt::from_index(i);
        let m = Matrix::from_rows(&[vec![e(1), e(4), e(2)], vec![e(3), e(0), e(1)], vec![e(0), e(6), e(8)]]).unwrap();
        let b = vec![e(2), e(7), e(5)];
        if let Some(x) = solve_affine(&f, &m, &b).unwrap() {
            assert_eq!(m.mul_vec(&f, &x), b);
        } else {
            assert!(m.rank(&f) < 3);
        }
    }
}
