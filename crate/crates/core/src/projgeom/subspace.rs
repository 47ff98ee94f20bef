use crate::gf::linalg::dot;
use crate::gf::{linear_solve, Felt, Matrix, SolveMode};

use super::{GeomError, PointSet, ProjPoint, ProjSpace};

/// A flat of PG(n, m), stored as the reduced row echelon basis of its
/// underlying vector subspace. Two flats are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<Vec<Felt>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Vec<Felt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.basis[0].len()
    }
}

impl ProjSpace {
    /// Builds a flat from vectors that are already in reduced echelon form.
    pub(crate) fn subspace_from_rref(&self, basis: Vec<Vec<Felt>>) -> Subspace {
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Subspace { basis, pivots }
    }

    /// Smallest flat containing the given vectors.
    pub fn span_vectors<R: AsRef<[Felt]>>(&self, rows: &[R]) -> Result<Subspace, GeomError> {
        if rows.is_empty() {
            return Err(GeomError::ZeroVector);
        }
        for r in rows {
            if r.as_ref().len() != self.dim() + 1 {
                return Err(GeomError::DimensionMismatch { expected: self.dim() + 1, got: r.as_ref().len() });
            }
        }
        let m = Matrix::from_rows(rows)?;
        let sol = linear_solve(self.field(), &m, SolveMode::Rref)?;
        if sol.rank == 0 {
            return Err(GeomError::ZeroVector);
        }
        Ok(self.subspace_from_rref(sol.basis))
    }

    pub fn span(&self, points: &[ProjPoint]) -> Result<Subspace, GeomError> {
        let rows: Vec<&[Felt]> = points.iter().map(|p| p.coords()).collect();
        self.span_vectors(&rows)
    }

    pub fn whole(&self) -> Subspace {
        let n = self.dim();
        let basis = (0..=n)
            .map(|i| {
                let mut r = vec![Felt::ZERO; n + 1];
                r[i] = Felt::ONE;
                r
            })
            .collect();
        self.subspace_from_rref(basis)
    }

    /// Flat spanned by the coordinate points `e_i`, `i` in `coords`.
    pub fn coordinate_flat(&self, coords: &[usize]) -> Result<Subspace, GeomError> {
        let n = self.dim();
        let rows: Vec<Vec<Felt>> = coords
            .iter()
            .map(|&i| {
                let mut r = vec![Felt::ZERO; n + 1];
                if i <= n {
                    r[i] = Felt::ONE;
                }
                r
            })
            .collect();
        if coords.iter().any(|&i| i > n) {
            return Err(GeomError::DimensionMismatch { expected: n + 1, got: coords.len() });
        }
        self.span_vectors(&rows)
    }

    /// Reduces `v` against the echelon basis; zero iff `v` lies in `s`.
    fn reduce(&self, s: &Subspace, v: &[Felt]) -> Vec<Felt> {
        let f = self.field();
        let mut w = v.to_vec();
        for (row, &pc) in s.basis.iter().zip(&s.pivots) {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(nc, r));
            }
        }
        w
    }

    pub fn contains_vector(&self, s: &Subspace, v: &[Felt]) -> bool {
        self.reduce(s, v).iter().all(|x| x.is_zero())
    }

    pub fn contains_point(&self, s: &Subspace, p: &ProjPoint) -> bool {
        self.contains_vector(s, p.coords())
    }

    /// Whether `inner` is contained in `outer`.
    pub fn contains_flat(&self, outer: &Subspace, inner: &Subspace) -> bool {
        inner.basis.iter().all(|r| self.contains_vector(outer, r))
    }

    pub fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let rows: Vec<&[Felt]> = a.basis.iter().chain(&b.basis).map(|r| r.as_slice()).collect();
        self.span_vectors(&rows).expect("nonempty")
    }

    /// Dual coordinates of the hyperplanes containing `s`: a basis of
    /// `{a : a . v = 0 for all v in s}`.
    pub fn annihilator(&self, s: &Subspace) -> Vec<Vec<Felt>> {
        let m = Matrix::from_rows(&s.basis).expect("rectangular");
        linear_solve(self.field(), &m, SolveMode::Kernel).expect("valid").basis
    }

    /// Intersection of two flats, `None` when they are disjoint.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Option<Subspace> {
        let mut rows = self.annihilator(a);
        rows.extend(self.annihilator(b));
        if rows.is_empty() {
            return Some(self.whole());
        }
        let m = Matrix::from_rows(&rows).expect("rectangular");
        let k = linear_solve(self.field(), &m, SolveMode::Kernel).expect("valid");
        (!k.basis.is_empty()).then(|| self.subspace_from_rref(k.basis))
    }

    /// Hyperplane `{x : a . x = 0}`.
    pub fn hyperplane(&self, a: &[Felt]) -> Result<Subspace, GeomError> {
        if a.len() != self.dim() + 1 {
            return Err(GeomError::DimensionMismatch { expected: self.dim() + 1, got: a.len() });
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(GeomError::ZeroVector);
        }
        let m = Matrix::from_rows(&[a])?;
        let k = linear_solve(self.field(), &m, SolveMode::Kernel)?;
        if k.basis.is_empty() {
            // PG(0): the only hyperplane is empty
            return Err(GeomError::BadDimension { dim: 0, n: 0 });
        }
        Ok(self.subspace_from_rref(k.basis))
    }

    /// Normalized dual coordinates of a hyperplane.
    pub fn hyperplane_coords(&self, h: &Subspace) -> Result<Vec<Felt>, GeomError> {
        if h.dim() + 1 != self.dim() {
            return Err(GeomError::BadDimension { dim: h.dim(), n: self.dim() });
        }
        let mut a = self.annihilator(h).pop().expect("codimension one");
        super::normalize_in_place(self.field(), &mut a);
        Ok(a)
    }

    /// Number of points on a flat of projective dimension `d`.
    pub fn flat_size(&self, d: usize) -> u64 {
        let m = self.field().order() as u64;
        (0..=d).map(|i| m.pow(i as u32)).sum()
    }

    /// Calls `f(index, coords)` for every point of `s`.
    pub fn for_each_point_in<F: FnMut(u64, &[Felt])>(&self, s: &Subspace, mut f: F) {
        let field = self.field();
        let k = s.basis.len();
        let len = self.dim() + 1;
        let m = field.order();
        // multiples[r][c] = c * basis[r]
        let multiples: Vec<Vec<Vec<Felt>>> = s
            .basis
            .iter()
            .map(|row| {
                (0..m)
                    .map(|c| row.iter().map(|&x| field.mul(Felt::from_index(c), x)).collect())
                    .collect()
            })
            .collect();
        let mut partial = vec![vec![Felt::ZERO; len]; k + 1];
        for lead in 0..k {
            partial[lead + 1].copy_from_slice(&s.basis[lead]);
            self.walk(&multiples, lead + 1, &mut partial, &mut f);
        }
    }

    fn walk<F: FnMut(u64, &[Felt])>(
        &self,
        multiples: &[Vec<Vec<Felt>>],
        level: usize,
        partial: &mut [Vec<Felt>],
        f: &mut F,
    ) {
        let field = self.field();
        if level == multiples.len() {
            let v = &partial[level];
            f(self.index_of_normalized(v), v);
            return;
        }
        for c in 0..field.order() as usize {
            let (lo, hi) = partial.split_at_mut(level + 1);
            let src = &lo[level];
            let dst = &mut hi[0];
            for ((d, &a), &b) in dst.iter_mut().zip(src).zip(&multiples[level][c]) {
                *d = field.add(a, b);
            }
            self.walk(multiples, level + 1, partial, f);
        }
    }

    pub fn subspace_points(&self, s: &Subspace) -> PointSet {
        let mut set = PointSet::empty(self.clone());
        self.for_each_point_in(s, |i, _| {
            set.insert(i);
        });
        set
    }

    /// `|s ∩ x|`.
    pub fn count_in(&self, s: &Subspace, x: &PointSet) -> u64 {
        let mut c = 0;
        self.for_each_point_in(s, |i, _| {
            if x.contains(i) {
                c += 1;
            }
        });
        c
    }

    /// Whether `v . a = 0` for a vector `v` and dual coordinates `a`.
    pub fn incident(&self, v: &[Felt], a: &[Felt]) -> bool {
        dot(self.field(), v, a).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::Field;

    fn pg(n: usize, q: u32) -> ProjSpace {
        ProjSpace::new(n, Arc::new(Field::gf_q2(q).unwrap())).unwrap()
    }

    #[test]
    fn span_of_points() {
        let s = pg(6, 3);
        let p = s.point_unindex(17).unwrap();
        let q = s.point_unindex(4000).unwrap();
        assert_eq!(s.span(&[p.clone(), q]).unwrap().dim(), 1);
        assert_eq!(s.span(&[p.clone(), p.clone(), p]).unwrap().dim(), 0);
    }

    #[test]
    fn flat_point_counts() {
        let s = pg(6, 3);
        let line = s.coordinate_flat(&[0, 3]).unwrap();
        let plane = s.coordinate_flat(&[1, 2, 6]).unwrap();
        let solid = s.span_vectors(&[
            s.point_unindex(5).unwrap().into_coords(),
            s.point_unindex(500).unwrap().into_coords(),
            s.point_unindex(50_000).unwrap().into_coords(),
            s.point_unindex(590_000).unwrap().into_coords(),
        ])
        .unwrap();
        assert_eq!(solid.dim(), 3);
        assert_eq!(s.subspace_points(&line).len(), 10);
        assert_eq!(s.subspace_points(&plane).len(), 91);
        let pts = s.subspace_points(&solid);
        assert_eq!(pts.len(), 820);
        // every point lies in the row space, and the points span it back
        let mut coords = Vec::new();
        for i in pts.iter() {
            let p = s.point_unindex(i).unwrap();
            assert!(s.contains_point(&solid, &p));
            coords.push(p.into_coords());
        }
        assert_eq!(s.span_vectors(&coords).unwrap(), solid);
    }

    #[test]
    fn meet_and_annihilator() {
        let s = pg(3, 2);
        let a = s.coordinate_flat(&[0, 1, 2]).unwrap();
        let b = s.coordinate_flat(&[1, 2, 3]).unwrap();
        let m = s.meet(&a, &b).unwrap();
        assert_eq!(m, s.coordinate_flat(&[1, 2]).unwrap());
        let l0 = s.coordinate_flat(&[0, 1]).unwrap();
        let l1 = s.coordinate_flat(&[2, 3]).unwrap();
        assert!(s.meet(&l0, &l1).is_none());
        let h = s.hyperplane_coords(&a).unwrap();
        assert_eq!(s.hyperplane(&h).unwrap(), a);
    }
}
