//! Hermitian forms over GF(q^2) and the varieties they define.
//!
//! A form is stored through its Gram matrix `H` with `H[i][j] = conj(H[j][i])`
//! and evaluates as `eta(v, w) = sum_ij v_i H[i][j] conj(w_j)`. The variety is
//! `{<v> : eta(v, v) = 0}`; a form with `t`-dimensional radical defines the
//! cone `R_t H(r - t, q^2)`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{linear_solve, solve_affine, Felt, Field, GfError, Matrix, SolveMode};
use crate::projgeom::sample::random_element;
use crate::projgeom::{GeomError, PointSet, ProjPoint, ProjSpace, Subspace};

#[derive(Debug, Error)]
pub enum HermitianError {
    #[error("field has no declared quadratic subfield")]
    NoQuadraticSubfieldDeclared,
    #[error("Gram matrix is not conjugate-symmetric at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("Gram matrix must be {expected}x{expected}")]
    GramShape { expected: usize },
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("flat of dimension {dim} is not a hyperplane of PG({n}, q^2)")]
    NotHyperplane { dim: usize, n: usize },
    #[error("vertex and base flat are not complementary")]
    NotComplementary,
    #[error("base point {0} lies outside the base flat")]
    BaseOutsideFlat(u64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Degeneracy of a form: `t` is the vector dimension of the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyClass {
    pub t: usize,
    pub radical: Option<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperplaneClass {
    /// `h = pole^perp` with the pole on the variety.
    Tangent(ProjPoint),
    Secant,
}

/// JSON interchange shape for forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub p: u32,
    pub k: u32,
    pub n: usize,
    /// Row-major element indices.
    pub gram: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct HermitianForm {
    space: ProjSpace,
    gram: Vec<Vec<Felt>>,
}

fn q_of(field: &Field) -> Result<u32, HermitianError> {
    field.sub_order().ok_or(HermitianError::NoQuadraticSubfieldDeclared)
}

impl HermitianForm {
    pub fn new(space: ProjSpace, gram: Vec<Vec<Felt>>) -> Result<HermitianForm, HermitianError> {
        let f = space.field();
        q_of(f)?;
        let n1 = space.dim() + 1;
        if gram.len() != n1 || gram.iter().any(|r| r.len() != n1) {
            return Err(HermitianError::GramShape { expected: n1 });
        }
        for i in 0..n1 {
            for j in 0..n1 {
                f.check(gram[i][j])?;
                if gram[i][j] != f.conj(gram[j][i])? {
                    return Err(HermitianError::NotHermitian(i, j));
                }
            }
        }
        Ok(HermitianForm { space, gram })
    }

    /// Identity Gram matrix: the Fermat locus `sum x_i^(q+1) = 0`.
    pub fn standard(space: ProjSpace) -> Result<HermitianForm, HermitianError> {
        HermitianForm::diagonal(space, 0)
    }

    /// `diag(1, ..., 1, 0, ..., 0)` with `t` trailing zeros.
    pub fn diagonal(space: ProjSpace, t: usize) -> Result<HermitianForm, HermitianError> {
        let n1 = space.dim() + 1;
        if t > n1 {
            return Err(HermitianError::BadParameters(format!("t = {t} exceeds {n1} coordinates")));
        }
        let gram = (0..n1)
            .map(|i| {
                (0..n1)
                    .map(|j| if i == j && i < n1 - t { Felt::ONE } else { Felt::ZERO })
                    .collect()
            })
            .collect();
        HermitianForm::new(space, gram)
    }

    /// `PG(r, q^2)` with the standard form.
    pub fn standard_form(r: usize, field: Arc<Field>) -> Result<HermitianForm, HermitianError> {
        q_of(&field)?;
        HermitianForm::standard(ProjSpace::new(r, field)?)
    }

    pub fn space(&self) -> &ProjSpace {
        &self.space
    }

    pub fn gram(&self) -> &[Vec<Felt>] {
        &self.gram
    }

    pub fn q(&self) -> u32 {
        self.space.field().sub_order().expect("checked at construction")
    }

    /// `eta(v, w)`.
    pub fn eval(&self, v: &[Felt], w: &[Felt]) -> Felt {
        let f = self.space.field();
        let cw: Vec<Felt> = w.iter().map(|&x| f.conj_unchecked(x)).collect();
        self.eval_conj(v, &cw)
    }

    #[inline]
    fn eval_conj(&self, v: &[Felt], cw: &[Felt]) -> Felt {
        let f = self.space.field();
        let mut acc = Felt::ZERO;
        for (i, &vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let row = &self.gram[i];
            let mut s = Felt::ZERO;
            for (j, &c) in cw.iter().enumerate() {
                s = f.add(s, f.mul(row[j], c));
            }
            acc = f.add(acc, f.mul(vi, s));
        }
        acc
    }

    /// `eta(v, v)`, always in GF(q).
    pub fn value(&self, v: &[Felt]) -> Felt {
        self.eval(v, v)
    }

    pub fn is_isotropic(&self, p: &ProjPoint) -> bool {
        self.value(p.coords()).is_zero()
    }

    /// Dual coordinates of `{x : eta(x, w) = 0}`: `a = H conj(w)`.
    fn functional(&self, w: &[Felt]) -> Vec<Felt> {
        let f = self.space.field();
        let cw: Vec<Felt> = w.iter().map(|&x| f.conj_unchecked(x)).collect();
        self.gram
            .iter()
            .map(|row| row.iter().zip(&cw).fold(Felt::ZERO, |acc, (&h, &c)| f.add(acc, f.mul(h, c))))
            .collect()
    }

    /// Radical `{w : eta(v, w) = 0 for all v}` = conj(ker H).
    pub fn radical_classify(&self) -> DegeneracyClass {
        let f = self.space.field();
        let m = Matrix::from_rows(&self.gram).expect("square");
        let kernel = linear_solve(f, &m, SolveMode::Kernel).expect("valid entries");
        if kernel.basis.is_empty() {
            return DegeneracyClass { t: 0, radical: None };
        }
        let conj_rows: Vec<Vec<Felt>> =
            kernel.basis.iter().map(|r| r.iter().map(|&x| f.conj_unchecked(x)).collect()).collect();
        let radical = self.space.span_vectors(&conj_rows).expect("nonzero kernel");
        DegeneracyClass { t: radical.dim() + 1, radical: Some(radical) }
    }

    pub fn is_degenerate(&self) -> bool {
        self.radical_classify().t > 0
    }

    /// `{P : eta(P, P) = 0}`.
    pub fn variety_points(&self) -> PointSet {
        let f = self.space.field();
        PointSet::from_predicate(self.space.clone(), |v| {
            let cv: Vec<Felt> = v.iter().map(|&x| f.conj_unchecked(x)).collect();
            self.eval_conj(v, &cv).is_zero()
        })
    }

    /// Tangent (or polar) hyperplane `P^perp = {X : eta(X, P) = 0}`.
    pub fn perp(&self, p: &ProjPoint) -> Result<Subspace, HermitianError> {
        if self.is_degenerate() {
            return Err(HermitianError::DegenerateForm);
        }
        Ok(self.space.hyperplane(&self.functional(p.coords()))?)
    }

    /// `S^perp`, the intersection of `P^perp` over the points of `s`.
    pub fn perp_flat(&self, s: &Subspace) -> Result<Subspace, HermitianError> {
        if self.is_degenerate() {
            return Err(HermitianError::DegenerateForm);
        }
        let rows: Vec<Vec<Felt>> = s.basis().iter().map(|b| self.functional(b)).collect();
        let m = Matrix::from_rows(&rows)?;
        let k = linear_solve(self.space.field(), &m, SolveMode::Kernel)?;
        if k.basis.is_empty() {
            return Err(HermitianError::BadParameters("perp of the whole space is empty".into()));
        }
        Ok(self.space.span_vectors(&k.basis)?)
    }

    /// Tangent or secant, found by solving `H conj(P) = a` for the pole.
    pub fn classify_hyperplane(&self, h: &Subspace) -> Result<HyperplaneClass, HermitianError> {
        let n = self.space.dim();
        if h.ambient_len() != n + 1 || h.dim() + 1 != n {
            return Err(HermitianError::NotHyperplane { dim: h.dim(), n });
        }
        if self.is_degenerate() {
            return Err(HermitianError::DegenerateForm);
        }
        let f = self.space.field();
        let a = self.space.hyperplane_coords(h)?;
        let m = Matrix::from_rows(&self.gram)?;
        let c = solve_affine(f, &m, &a)?.ok_or(HermitianError::DegenerateForm)?;
        let pole: Vec<Felt> = c.iter().map(|&x| f.conj_unchecked(x)).collect();
        let pole = self.space.point(&pole)?;
        if self.is_isotropic(&pole) {
            Ok(HyperplaneClass::Tangent(pole))
        } else {
            Ok(HyperplaneClass::Secant)
        }
    }

    /// Form induced on a flat, in the flat's own coordinates (its echelon
    /// basis).
    pub fn induced(&self, s: &Subspace) -> Result<HermitianForm, HermitianError> {
        let space = ProjSpace::new(s.dim(), self.space.field_arc().clone())?;
        let b = s.basis();
        let gram = b.iter().map(|x| b.iter().map(|y| self.eval(x, y)).collect()).collect();
        HermitianForm::new(space, gram)
    }

    /// Degeneracy class of the section `s ∩ variety`.
    pub fn section_class(&self, s: &Subspace) -> Result<DegeneracyClass, HermitianError> {
        Ok(self.induced(s)?.radical_classify())
    }

    /// Vertex, base flat and base variety realizing this form's variety as a
    /// cone. The base flat is spanned by the lexicographically first
    /// coordinate points that complete the radical to the whole space.
    pub fn cone_decomposition(&self) -> Result<ConeDecomposition, HermitianError> {
        let class = self.radical_classify();
        let n = self.space.dim();
        let field = self.space.field();
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Felt>> = class.radical.as_ref().map(|r| r.basis().to_vec()).unwrap_or_default();
        let mut rank = rows.len();
        for i in 0..=n {
            let mut e = vec![Felt::ZERO; n + 1];
            e[i] = Felt::ONE;
            rows.push(e);
            let r = Matrix::from_rows(&rows)?.rank(field);
            if r > rank {
                rank = r;
                chosen.push(i);
            } else {
                rows.pop();
            }
        }
        if chosen.is_empty() {
            return Err(HermitianError::BadParameters("zero form has no base".into()));
        }
        let base_flat = self.space.coordinate_flat(&chosen)?;
        self.cone_decomposition_with(class.radical, base_flat)
    }

    /// Same as [`cone_decomposition`](Self::cone_decomposition) with a caller
    /// supplied complement of the radical.
    pub fn cone_decomposition_with(
        &self,
        vertex: Option<Subspace>,
        base_flat: Subspace,
    ) -> Result<ConeDecomposition, HermitianError> {
        let base_form = self.induced(&base_flat)?;
        let local = base_form.variety_points();
        let mut base = PointSet::empty(self.space.clone());
        let f = self.space.field();
        for i in local.iter() {
            let u = base_form.space().point_unindex(i)?;
            let mut v = vec![Felt::ZERO; self.space.dim() + 1];
            for (c, row) in u.coords().iter().zip(base_flat.basis()) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, r));
                }
            }
            base.insert(self.space.index_of_vector(&v)?);
        }
        Ok(ConeDecomposition { vertex, base_flat, base })
    }
}

#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    pub vertex: Option<Subspace>,
    pub base_flat: Subspace,
    pub base: PointSet,
}

/// Points on the lines joining `vertex` to `base`, together with the vertex.
pub fn cone_points(
    space: &ProjSpace,
    vertex: Option<&Subspace>,
    base: &PointSet,
    base_flat: &Subspace,
) -> Result<PointSet, HermitianError> {
    let n1 = space.dim() + 1;
    let vdim = vertex.map(|v| v.dim() + 1).unwrap_or(0);
    let joined_rank = match vertex {
        Some(v) => space.join(v, base_flat).dim() + 1,
        None => base_flat.dim() + 1,
    };
    if vdim + base_flat.dim() + 1 != n1 || joined_rank != n1 {
        return Err(HermitianError::NotComplementary);
    }
    let f = space.field();
    let mut out = PointSet::empty(space.clone());
    // all vectors of the vertex, zero included
    let mut offsets: Vec<Vec<Felt>> = vec![vec![Felt::ZERO; n1]];
    if let Some(v) = vertex {
        for row in v.basis() {
            let prev = std::mem::take(&mut offsets);
            for w in &prev {
                for c in f.elements() {
                    offsets.push(w.iter().zip(row).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
                }
            }
        }
        space.for_each_point_in(v, |i, _| {
            out.insert(i);
        });
    }
    for qi in base.iter() {
        let qp = space.point_unindex(qi)?;
        if !space.contains_point(base_flat, &qp) {
            return Err(HermitianError::BaseOutsideFlat(qi));
        }
        for w in &offsets {
            let v: Vec<Felt> = qp.coords().iter().zip(w).map(|(&a, &b)| f.add(a, b)).collect();
            out.insert(space.index_of_vector(&v)?);
        }
    }
    Ok(out)
}

/// `theta(s) = |PG(s, q^2)|`, with `theta(-1) = 0`.
pub fn theta(s: i64, q: u64) -> BigUint {
    if s < 0 {
        return BigUint::from(0u32);
    }
    let m = BigUint::from(q * q);
    (m.pow((s + 1) as u32) - 1u32) / (m - 1u32)
}

/// `|H(r, q^2)| = (q^(r+1) + (-1)^r)(q^r - (-1)^r) / (q^2 - 1)`.
pub fn hermitian_count(r: u64, q: u64) -> BigUint {
    let q = BigInt::from(q);
    let sign = if r.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
    let num = (q.pow(r as u32 + 1) + &sign) * (q.pow(r as u32) - &sign);
    let den: BigInt = &q * &q - 1;
    let v: BigInt = num / den;
    debug_assert!(!v.is_negative());
    v.to_biguint().expect("nonnegative")
}

/// `|R_t H(r - t, q^2)| = theta(t - 1) + |H(r - t, q^2)| * q^(2t)`.
pub fn expected_count(r: u64, q: u64, t: u64) -> Result<BigUint, HermitianError> {
    if q < 2 {
        return Err(HermitianError::BadParameters(format!("q = {q}")));
    }
    if t > r {
        return Err(HermitianError::BadParameters(format!(
            "radical dimension {t} leaves no base in PG({r}, q^2)"
        )));
    }
    let base = hermitian_count(r - t, q);
    Ok(theta(t as i64 - 1, q) + base * BigUint::from(q).pow(2 * t as u32))
}

/// `expected_count` as a `u64`, for the sizes that occur at desk scale.
pub fn expected_count_u64(r: u64, q: u64, t: u64) -> Result<u64, HermitianError> {
    expected_count(r, q, t)?
        .to_u64()
        .ok_or_else(|| HermitianError::BadParameters("count exceeds u64".into()))
}

/// An element `e` with `N(e) = e^(q+1) = -1`.
pub fn norm_minus_one(field: &Field) -> Result<Felt, HermitianError> {
    let target = field.neg(Felt::ONE);
    for e in field.elements() {
        if field.norm_trace(e)?.0 == target {
            return Ok(e);
        }
    }
    Err(HermitianError::NoQuadraticSubfieldDeclared)
}

/// Generator of the standard variety spanned by `e_{2i} + e * e_{2i+1}` with
/// `N(e) = -1`; a plane when `r = 6`.
pub fn standard_generator(space: &ProjSpace) -> Result<Subspace, HermitianError> {
    let f = space.field();
    let e = norm_minus_one(f)?;
    let n1 = space.dim() + 1;
    let rows: Vec<Vec<Felt>> = (0..n1 / 2)
        .map(|i| {
            let mut r = vec![Felt::ZERO; n1];
            r[2 * i] = Felt::ONE;
            r[2 * i + 1] = e;
            r
        })
        .collect();
    if rows.is_empty() {
        return Err(HermitianError::BadParameters("PG(0) has no generator".into()));
    }
    Ok(space.span_vectors(&rows)?)
}

impl HermitianForm {
    /// `P^T diag(1^rank, 0, ...) conj(P)` for a uniformly drawn invertible
    /// `P`: a form whose radical has vector dimension `n + 1 - rank`.
    pub fn random_of_rank<R: Rng>(space: ProjSpace, rank: usize, rng: &mut R) -> Result<HermitianForm, HermitianError> {
        let f = space.field();
        q_of(f)?;
        let n1 = space.dim() + 1;
        if rank > n1 {
            return Err(HermitianError::BadParameters(format!("rank {rank} exceeds {n1} coordinates")));
        }
        let p = loop {
            let rows: Vec<Vec<Felt>> =
                (0..n1).map(|_| (0..n1).map(|_| random_element(rng, f.order())).collect()).collect();
            if Matrix::from_rows(&rows)?.rank(f) == n1 {
                break rows;
            }
        };
        let gram = (0..n1)
            .map(|i| {
                (0..n1)
                    .map(|j| {
                        (0..rank).fold(Felt::ZERO, |acc, k| f.add(acc, f.mul(p[k][i], f.conj_unchecked(p[k][j]))))
                    })
                    .collect()
            })
            .collect();
        HermitianForm::new(space, gram)
    }

    pub fn to_json(&self) -> FormJson {
        let f = self.space.field();
        FormJson {
            p: f.characteristic(),
            k: f.degree(),
            n: self.space.dim(),
            gram: self.gram.iter().flatten().map(|x| x.index()).collect(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<HermitianForm, HermitianError> {
        let field = Field::quadratic(j.p, j.k)?;
        let space = ProjSpace::new(j.n, Arc::new(field))?;
        let n1 = j.n + 1;
        if j.gram.len() != n1 * n1 {
            return Err(HermitianError::GramShape { expected: n1 });
        }
        let gram = j.gram.chunks(n1).map(|r| r.iter().map(|&x| Felt::from_index(x)).collect()).collect();
        HermitianForm::new(space, gram)
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::projgeom::{enumerate_flats, FlatMode};

    fn gf9() -> Arc<Field> {
        Arc::new(Field::gf_q2(3).unwrap())
    }

    fn random_form(space: &ProjSpace, rank: usize, seed: u64) -> HermitianForm {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        HermitianForm::random_of_rank(space.clone(), rank, &mut rng).unwrap()
    }

    #[test]
    fn standard_variety_sizes() {
        let f = gf9();
        for (r, want) in [(2usize, 28u64), (3, 280), (4, 2440)] {
            let form = HermitianForm::standard_form(r, f.clone()).unwrap();
            assert_eq!(form.radical_classify().t, 0);
            assert_eq!(form.variety_points().len(), want);
            assert_eq!(expected_count_u64(r as u64, 3, 0).unwrap(), want);
        }
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(expected_count_u64(6, 3, 0).unwrap(), 199_108);
        assert_eq!(expected_count_u64(5, 3, 0).unwrap(), 22_204);
        assert_eq!(expected_count_u64(4, 3, 2).unwrap(), 2278);
        assert_eq!(expected_count_u64(2, 2, 0).unwrap(), 9);
        assert!(expected_count(6, 3, 7).is_err());
        // r = 6, q = 3: tangent 1 + q^2 |H(4)|
        assert_eq!(1 + 9 * expected_count_u64(4, 3, 0).unwrap(), 21_961);
        assert_eq!(theta(-1, 3), BigUint::from(0u32));
        assert_eq!(theta(2, 3), BigUint::from(91u32));
    }

    #[test]
    fn diagonal_radical_is_a_line() {
        let f = gf9();
        let space = ProjSpace::new(6, f).unwrap();
        let form = HermitianForm::diagonal(space.clone(), 2).unwrap();
        let c = form.radical_classify();
        assert_eq!(c.t, 2);
        assert_eq!(c.radical.unwrap(), space.coordinate_flat(&[5, 6]).unwrap());
    }

    #[test]
    fn random_rank_five_form_radical() {
        let f = gf9();
        let space = ProjSpace::new(6, f).unwrap();
        let form = random_form(&space, 5, 17);
        let c = form.radical_classify();
        assert_eq!(c.t, 2);
        let rad = c.radical.unwrap();
        for v in space.whole().basis() {
            for w in rad.basis() {
                assert!(form.eval(v, w).is_zero());
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_gram() {
        let f = gf9();
        let space = ProjSpace::new(1, f.clone()).unwrap();
        let g = f.generator();
        let bad = vec![vec![g, Felt::ZERO], vec![Felt::ZERO, Felt::ONE]];
        assert!(matches!(HermitianForm::new(space.clone(), bad), Err(HermitianError::NotHermitian(0, 0))));
        let plain = ProjSpace::new(1, Arc::new(Field::new(3, 2).unwrap())).unwrap();
        assert!(matches!(HermitianForm::standard(plain), Err(HermitianError::NoQuadraticSubfieldDeclared)));
    }

    #[test]
    fn perp_is_symmetric_and_contains_isotropic_points() {
        let f = gf9();
        let space = ProjSpace::new(4, f).unwrap();
        let form = random_form(&space, 5, 3);
        for i in (0..space.point_count()).step_by(97).take(40) {
            let p = space.point_unindex(i).unwrap();
            let pp = form.perp(&p).unwrap();
            assert_eq!(space.contains_point(&pp, &p), form.is_isotropic(&p));
            for j in (0..space.point_count()).step_by(331).take(30) {
                let q = space.point_unindex(j).unwrap();
                let qp = form.perp(&q).unwrap();
                assert_eq!(space.contains_point(&pp, &q), space.contains_point(&qp, &p));
            }
        }
    }

    #[test]
    fn tangent_hyperplanes_of_h49() {
        let f = gf9();
        let form = HermitianForm::standard_form(4, f).unwrap();
        let space = form.space().clone();
        let fam = enumerate_flats(&space, 3, FlatMode::Full).unwrap();
        assert_eq!(fam.len(), 7381);
        let tangents = fam
            .iter()
            .filter(|h| matches!(form.classify_hyperplane(h).unwrap(), HyperplaneClass::Tangent(_)))
            .count();
        assert_eq!(tangents, 2440);
    }

    #[test]
    fn classify_roundtrips_perp() {
        let f = gf9();
        let form = HermitianForm::standard_form(6, f).unwrap();
        let space = form.space().clone();
        let e = norm_minus_one(space.field()).unwrap();
        let p = space.point(&[Felt::ONE, e, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO]).unwrap();
        assert!(form.is_isotropic(&p));
        let h = form.perp(&p).unwrap();
        assert_eq!(form.classify_hyperplane(&h).unwrap(), HyperplaneClass::Tangent(p));
        let x0 = space.coordinate_flat(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(form.classify_hyperplane(&x0).unwrap(), HyperplaneClass::Secant);
        let line = space.coordinate_flat(&[0, 1]).unwrap();
        assert!(matches!(form.classify_hyperplane(&line), Err(HermitianError::NotHyperplane { .. })));
        let degenerate = HermitianForm::diagonal(space.clone(), 1).unwrap();
        assert!(matches!(degenerate.classify_hyperplane(&x0), Err(HermitianError::DegenerateForm)));
        assert!(matches!(degenerate.perp(&space.point_unindex(0).unwrap()), Err(HermitianError::DegenerateForm)));
    }

    #[test]
    fn cone_of_line_over_unital() {
        let f = gf9();
        let space = ProjSpace::new(4, f).unwrap();
        let form = HermitianForm::diagonal(space.clone(), 2).unwrap();
        let dec = form.cone_decomposition().unwrap();
        assert_eq!(dec.base.len(), 28);
        assert_eq!(dec.base_flat, space.coordinate_flat(&[0, 1, 2]).unwrap());
        let cone = cone_points(&space, dec.vertex.as_ref(), &dec.base, &dec.base_flat).unwrap();
        assert_eq!(cone.len(), 2278);
        assert_eq!(cone, form.variety_points());
        let empty = PointSet::empty(space.clone());
        let vertex_only = cone_points(&space, dec.vertex.as_ref(), &empty, &dec.base_flat).unwrap();
        assert_eq!(vertex_only, space.subspace_points(dec.vertex.as_ref().unwrap()));
        let wrong = space.coordinate_flat(&[0, 1, 4]).unwrap();
        assert!(matches!(
            cone_points(&space, dec.vertex.as_ref(), &dec.base, &wrong),
            Err(HermitianError::NotComplementary)
        ));
    }

    #[test]
    fn point_cone_over_h49_in_a_hyperplane() {
        // vertex e_5 over the standard H(4, 9) in x_5 = x_6 = 0, inside x_6 = 0
        let f = gf9();
        let space = ProjSpace::new(5, f).unwrap();
        let form = HermitianForm::diagonal(space.clone(), 1).unwrap();
        let dec = form.cone_decomposition().unwrap();
        assert_eq!(dec.base.len(), 2440);
        let cone = cone_points(&space, dec.vertex.as_ref(), &dec.base, &dec.base_flat).unwrap();
        assert_eq!(cone.len(), 21_961);
        assert_eq!(cone.len(), 1 + 9 * 2440);
    }

    #[test]
    fn json_roundtrip() {
        let f = gf9();
        let space = ProjSpace::new(3, f).unwrap();
        let form = random_form(&space, 3, 8);
        let j = form.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = HermitianForm::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.gram(), form.gram());
    }
}
