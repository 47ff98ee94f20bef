//! Points, flats and point sets of PG(n, m).
//!
//! Points are indexed lexicographically by their normalized coordinate
//! index sequences (first nonzero coordinate equal to 1). A point whose
//! leading coordinate sits at position `l` has index
//! `offset(l) + sum_{i > l} idx(x_i) * m^(n - i)`, where `offset(l)` counts
//! the points with a later leading position.

mod enumerate;
mod pointset;
pub mod sample;
mod subspace;

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Felt, Field, GfError};

pub use enumerate::{enumerate_flats, gaussian_binomial, FlatFamily, FlatMode, FULL_ENUMERATION_GUARD};
pub use pointset::PointSet;
pub use subspace::Subspace;

/// Upper bound on the number of points of a space held in memory.
pub const MAX_POINTS: u64 = 1 << 31;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("point index {index} out of range for a space with {len} points")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("family of {count} flats exceeds the enumeration guard of {guard}")]
    TooManyFlats { count: String, guard: u64 },
    #[error("cannot draw {count} distinct flats from a family of {total}")]
    SampleExceedsFamily { count: u64, total: String },
    #[error("bad pivot: {0}")]
    BadPivot(String),
    #[error("bad flat dimension {dim} in PG({n}, q)")]
    BadDimension { dim: usize, n: usize },
    #[error("PG({n}, {m}) has too many points to hold in memory")]
    SpaceTooLarge { n: usize, m: u32 },
    #[error("point sets live in different spaces")]
    SpaceMismatch,
    #[error("malformed point-set file: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// PG(n, m) over a shared field.
#[derive(Clone, Debug)]
pub struct ProjSpace {
    n: usize,
    field: Arc<Field>,
    // weights[i] = m^(n - i)
    weights: Vec<u64>,
    // offsets[l] = number of points whose leading position exceeds l
    offsets: Vec<u64>,
    point_count: u64,
}

impl PartialEq for ProjSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for ProjSpace {}

/// A point with normalized homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Felt>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[Felt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Felt> {
        self.coords
    }
}

/// Scales `v` so that its first nonzero entry is 1. Returns `false` for the
/// zero vector.
pub(crate) fn normalize_in_place(field: &Field, v: &mut [Felt]) -> bool {
    let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if v[lead] != Felt::ONE {
        let inv = field.inv(v[lead]).expect("nonzero");
        for x in &mut v[lead..] {
            *x = field.mul(*x, inv);
        }
    }
    true
}

impl ProjSpace {
    pub fn new(n: usize, field: Arc<Field>) -> Result<ProjSpace, GeomError> {
        let m = field.order() as u64;
        let mut weights = vec![1u64; n + 1];
        for i in (0..n).rev() {
            weights[i] = weights[i + 1]
                .checked_mul(m)
                .ok_or(GeomError::SpaceTooLarge { n, m: field.order() })?;
        }
        let mut offsets = vec![0u64; n + 1];
        for l in (0..n).rev() {
            offsets[l] = offsets[l + 1] + weights[l + 1];
        }
        let point_count = offsets[0] + weights[0];
        if point_count > MAX_POINTS {
            return Err(GeomError::SpaceTooLarge { n, m: field.order() });
        }
        Ok(ProjSpace { n, field, weights, offsets, point_count })
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn point_count(&self) -> u64 {
        self.point_count
    }

    pub(crate) fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub(crate) fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    /// Normalizes `coords` into a point.
    pub fn point(&self, coords: &[Felt]) -> Result<ProjPoint, GeomError> {
        if coords.len() != self.n + 1 {
            return Err(GeomError::DimensionMismatch { expected: self.n + 1, got: coords.len() });
        }
        for &c in coords {
            self.field.check(c)?;
        }
        let mut v = coords.to_vec();
        if !normalize_in_place(&self.field, &mut v) {
            return Err(GeomError::ZeroVector);
        }
        Ok(ProjPoint { coords: v })
    }

    /// Point from small integers, mapped into the prime field.
    pub fn point_from_ints(&self, coords: &[i64]) -> Result<ProjPoint, GeomError> {
        let v: Vec<Felt> = coords.iter().map(|&c| self.field.from_int(c)).collect();
        self.point(&v)
    }

    pub fn point_index(&self, p: &ProjPoint) -> Result<u64, GeomError> {
        if p.coords.len() != self.n + 1 {
            return Err(GeomError::DimensionMismatch { expected: self.n + 1, got: p.coords.len() });
        }
        Ok(self.index_of_normalized(&p.coords))
    }

    /// Index of a vector that is already normalized.
    #[inline]
    pub(crate) fn index_of_normalized(&self, v: &[Felt]) -> u64 {
        let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        let mut idx = self.offsets[lead];
        for i in lead + 1..=self.n {
            idx += v[i].index() as u64 * self.weights[i];
        }
        idx
    }

    /// Index of the point spanned by an arbitrary nonzero vector.
    pub fn index_of_vector(&self, v: &[Felt]) -> Result<u64, GeomError> {
        let mut w = v.to_vec();
        if !normalize_in_place(&self.field, &mut w) {
            return Err(GeomError::ZeroVector);
        }
        Ok(self.index_of_normalized(&w))
    }

    pub fn point_unindex(&self, index: u64) -> Result<ProjPoint, GeomError> {
        if index >= self.point_count {
            return Err(GeomError::IndexOutOfRange { index, len: self.point_count });
        }
        let mut coords = vec![Felt::ZERO; self.n + 1];
        self.unindex_into(index, &mut coords);
        Ok(ProjPoint { coords })
    }

    #[inline]
    pub(crate) fn unindex_into(&self, index: u64, out: &mut [Felt]) {
        let lead = (0..=self.n).find(|&l| index >= self.offsets[l]).expect("in range");
        let mut rest = index - self.offsets[lead];
        let m = self.field.order() as u64;
        for x in out[..lead].iter_mut() {
            *x = Felt::ZERO;
        }
        out[lead] = Felt::ONE;
        for i in (lead + 1..=self.n).rev() {
            out[i] = Felt::from_index((rest % m) as u32);
            rest /= m;
        }
    }

    /// Iterates over all points as `(index, coordinates)`.
    pub fn for_each_point<F: FnMut(u64, &[Felt])>(&self, range: std::ops::Range<u64>, mut f: F) {
        let mut buf = vec![Felt::ZERO; self.n + 1];
        for i in range {
            self.unindex_into(i, &mut buf);
            f(i, &buf);
        }
    }
}
