//! Homogeneous polynomials over a finite field and the hypersurfaces they cut
//! out of PG(n, m).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Felt, Field, GfError};
use crate::hermitian::HermitianForm;
use crate::projgeom::sample::random_element;
use crate::projgeom::{enumerate_flats, FlatMode, GeomError, PointSet, ProjPoint, ProjSpace, Subspace};

/// Most variables a packed monomial can hold.
pub const MAX_VARS: usize = 8;
/// Largest supported degree (8 bits per exponent).
pub const MAX_DEGREE: u32 = 255;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero polynomial is not a hypersurface")]
    ZeroPolynomial,
    #[error("monomial {exps:?} does not have degree {degree}")]
    NotHomogeneous { exps: Vec<u32>, degree: u32 },
    #[error("{nvars} variables / degree {degree} exceed the supported range")]
    TooLarge { nvars: usize, degree: u32 },
    #[error("degree {degree} exceeds the field order {order}; line containment cannot be decided from points")]
    DegreeTooHighForCriterion { degree: u32, order: u32 },
    #[error("polynomial and space are over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Exponent vector packed 8 bits per variable, variable 0 in the low byte.
/// Packed monomials multiply by integer addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub fn new(exps: &[u32]) -> Monomial {
        Monomial(exps.iter().enumerate().fold(0u64, |acc, (i, &e)| acc | ((e as u64) << (8 * i))))
    }

    pub fn exp(self, var: usize) -> u32 {
        ((self.0 >> (8 * var)) & 0xff) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }
}

type Terms = BTreeMap<Monomial, Felt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomoPoly {
    field: Arc<Field>,
    nvars: usize,
    degree: u32,
    terms: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub p: u32,
    pub k: u32,
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

/// Rational points and GF(m)-line components of a plane curve.
#[derive(Clone, Debug)]
pub struct CurveReport {
    pub degree: u32,
    pub n_points: u64,
    pub has_linear_component: bool,
    pub lines: Vec<Subspace>,
}

fn mul_terms(field: &Field, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&ma, &ca) in a {
        for (&mb, &cb) in b {
            let e = out.entry(ma.times(mb)).or_insert(Felt::ZERO);
            *e = field.add(*e, field.mul(ca, cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl HomoPoly {
    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed and zero coefficients dropped.
    pub fn new(
        field: Arc<Field>,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Felt)>,
    ) -> Result<HomoPoly, PolyError> {
        if nvars == 0 || nvars > MAX_VARS || degree > MAX_DEGREE {
            return Err(PolyError::TooLarge { nvars, degree });
        }
        let mut map = Terms::new();
        for (exps, c) in terms {
            field.check(c)?;
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch { expected: nvars, got: exps.len() });
            }
            if exps.iter().sum::<u32>() != degree {
                return Err(PolyError::NotHomogeneous { exps, degree });
            }
            let e = map.entry(Monomial::new(&exps)).or_insert(Felt::ZERO);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(HomoPoly { field, nvars, degree, terms: map })
    }

    /// `sum_i x_i^degree`.
    pub fn fermat(field: Arc<Field>, nvars: usize, degree: u32) -> Result<HomoPoly, PolyError> {
        let terms = (0..nvars).map(|i| {
            let mut e = vec![0; nvars];
            e[i] = degree;
            (e, Felt::ONE)
        });
        HomoPoly::new(field, nvars, degree, terms.collect::<Vec<_>>())
    }

    /// `eta(x, x) = sum_ij H_ij x_i x_j^q`, of degree `q + 1`.
    pub fn from_hermitian(form: &HermitianForm) -> Result<HomoPoly, PolyError> {
        let q = form.q();
        let n1 = form.space().dim() + 1;
        let mut terms = Vec::new();
        for (i, row) in form.gram().iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                let mut e = vec![0; n1];
                e[i] += 1;
                e[j] += q;
                terms.push((e, h));
            }
        }
        HomoPoly::new(form.space().field_arc().clone(), n1, q + 1, terms)
    }

    /// `sum_i a_i x_i`.
    pub fn linear(field: Arc<Field>, coeffs: &[Felt]) -> Result<HomoPoly, PolyError> {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, &c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, c)
        });
        HomoPoly::new(field, n, 1, terms.collect::<Vec<_>>())
    }

    /// Product of linear forms, one per row of `forms`.
    pub fn product_of_linear(field: Arc<Field>, forms: &[Vec<Felt>]) -> Result<HomoPoly, PolyError> {
        let mut it = forms.iter();
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let mut acc = HomoPoly::linear(field.clone(), first)?;
        for f in it {
            acc = acc.mul(&HomoPoly::linear(field.clone(), f)?)?;
        }
        Ok(acc)
    }

    /// A polynomial with independent uniform coefficients on every monomial,
    /// redrawn if it comes out zero.
    pub fn random<R: Rng>(field: Arc<Field>, nvars: usize, degree: u32, rng: &mut R) -> Result<HomoPoly, PolyError> {
        let monos = monomials(nvars, degree);
        loop {
            let terms: Vec<(Vec<u32>, Felt)> =
                monos.iter().map(|e| (e.clone(), random_element(rng, field.order()))).collect();
            match HomoPoly::new(field.clone(), nvars, degree, terms) {
                Err(PolyError::ZeroPolynomial) => continue,
                other => return other,
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(exponents, coefficient)` in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, Felt)> + '_ {
        self.terms.iter().map(|(m, &c)| (m.exps(self.nvars), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn mul(&self, other: &HomoPoly) -> Result<HomoPoly, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        if *self.field != *other.field {
            return Err(PolyError::FieldMismatch);
        }
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(PolyError::TooLarge { nvars: self.nvars, degree });
        }
        let terms = mul_terms(&self.field, &self.terms, &other.terms);
        if terms.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(HomoPoly { field: self.field.clone(), nvars: self.nvars, degree, terms })
    }

    /// Value at the given coordinates.
    pub fn evaluate_vector(&self, v: &[Felt]) -> Result<Felt, PolyError> {
        if v.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: v.len() });
        }
        for &x in v {
            self.field.check(x)?;
        }
        let f = &*self.field;
        let mut acc = Felt::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &x) in v.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as i64)?);
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    /// Value at the normalized representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Felt, PolyError> {
        self.evaluate_vector(p.coords())
    }

    fn check_space(&self, space: &ProjSpace) -> Result<(), PolyError> {
        if space.dim() + 1 != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: space.dim() + 1 });
        }
        if *space.field() != *self.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    /// Zero locus over the points of `space`.
    pub fn rational_points(&self, space: &ProjSpace) -> Result<PointSet, PolyError> {
        self.check_space(space)?;
        let f = &*self.field;
        let m = f.order() as usize;
        // pow[e * m + x] = x^e
        let mut pow = vec![Felt::ZERO; (self.degree as usize + 1) * m];
        for x in f.elements() {
            pow[x.index() as usize] = Felt::ONE;
            for e in 1..=self.degree as usize {
                pow[e * m + x.index() as usize] = f.mul(pow[(e - 1) * m + x.index() as usize], x);
            }
        }
        let compiled: Vec<(Felt, Vec<(usize, usize)>)> = self
            .terms
            .iter()
            .map(|(mono, &c)| {
                let vars = (0..self.nvars)
                    .filter(|&i| mono.exp(i) > 0)
                    .map(|i| (i, mono.exp(i) as usize * m))
                    .collect();
                (c, vars)
            })
            .collect();
        Ok(PointSet::from_predicate(space.clone(), |v| {
            let mut acc = Felt::ZERO;
            for (c, vars) in &compiled {
                let mut t = *c;
                for &(i, row) in vars {
                    t = f.mul(t, pow[row + v[i].index() as usize]);
                    if t.is_zero() {
                        break;
                    }
                }
                acc = f.add(acc, t);
            }
            acc.is_zero()
        }))
    }

    /// Pulls `self` back along `x = sum_j u_j b_j`, the rows `b_j` being the
    /// echelon basis of `s`. `None` means `s` lies in the hypersurface.
    pub fn restrict(&self, s: &Subspace) -> Result<Option<HomoPoly>, PolyError> {
        if s.ambient_len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: s.ambient_len() });
        }
        let f = &*self.field;
        let k = s.dim() + 1;
        let basis = s.basis();
        // linear form of x_i in the u variables
        let lin: Vec<Terms> = (0..self.nvars)
            .map(|i| {
                let mut t = Terms::new();
                for (j, row) in basis.iter().enumerate() {
                    if !row[i].is_zero() {
                        let mut e = vec![0; k];
                        e[j] = 1;
                        t.insert(Monomial::new(&e), row[i]);
                    }
                }
                t
            })
            .collect();
        let mut powers: Vec<Vec<Terms>> = lin.iter().map(|l| vec![one_terms(), l.clone()]).collect();
        let mut out = Terms::new();
        for (mono, &c) in &self.terms {
            let mut acc = one_terms();
            acc.insert(Monomial(0), c);
            for i in 0..self.nvars {
                let e = mono.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = mul_terms(f, powers[i].last().unwrap(), &lin[i]);
                    powers[i].push(next);
                }
                acc = mul_terms(f, &acc, &powers[i][e]);
                if acc.is_empty() {
                    break;
                }
            }
            for (m2, c2) in acc {
                let e = out.entry(m2).or_insert(Felt::ZERO);
                *e = f.add(*e, c2);
            }
        }
        out.retain(|_, c| !c.is_zero());
        if out.is_empty() {
            return Ok(None);
        }
        Ok(Some(HomoPoly { field: self.field.clone(), nvars: k, degree: self.degree, terms: out }))
    }

    /// Whether every point of `s` is a zero.
    pub fn contains_flat(&self, s: &Subspace) -> Result<bool, PolyError> {
        Ok(self.restrict(s)?.is_none())
    }

    /// Rational points of a plane curve and the GF(m)-lines it contains. A
    /// line is a component iff all of its `m + 1` points are zeros, which is
    /// decisive once the degree is at most `m`.
    pub fn linear_components(&self, plane: &ProjSpace) -> Result<CurveReport, PolyError> {
        self.check_space(plane)?;
        if plane.dim() != 2 {
            return Err(PolyError::DimensionMismatch { expected: 3, got: plane.dim() + 1 });
        }
        let order = self.field.order();
        if self.degree > order {
            return Err(PolyError::DegreeTooHighForCriterion { degree: self.degree, order });
        }
        let zeros = self.rational_points(plane)?;
        let mut lines = Vec::new();
        if zeros.len() > order as u64 {
            for line in enumerate_flats(plane, 1, FlatMode::Full)?.iter() {
                if plane.count_in(&line, &zeros) == order as u64 + 1 {
                    lines.push(line);
                }
            }
        }
        Ok(CurveReport {
            degree: self.degree,
            n_points: zeros.len(),
            has_linear_component: !lines.is_empty(),
            lines,
        })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            p: self.field.characteristic(),
            k: self.field.degree(),
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms().map(|(exps, c)| TermJson { exps, coeff: c.index() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<HomoPoly, PolyError> {
        let field = if j.k.is_multiple_of(2) { Field::quadratic(j.p, j.k)? } else { Field::new(j.p, j.k)? };
        HomoPoly::from_json_in(j, Arc::new(field))
    }

    /// Reads `j` over an existing field, which must have the same `p` and `k`.
    pub fn from_json_in(j: &PolyJson, field: Arc<Field>) -> Result<HomoPoly, PolyError> {
        if field.characteristic() != j.p || field.degree() != j.k {
            return Err(PolyError::FieldMismatch);
        }
        let terms: Vec<(Vec<u32>, Felt)> = j.terms.iter().map(|t| (t.exps.clone(), Felt::from_index(t.coeff))).collect();
        HomoPoly::new(field, j.nvars, j.degree, terms)
    }
}

fn one_terms() -> Terms {
    let mut t = Terms::new();
    t.insert(Monomial(0), Felt::ONE);
    t
}

/// All exponent vectors of `nvars` variables summing to `degree`.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, degree, &mut vec![0; nvars], &mut out);
    }
    out
}
