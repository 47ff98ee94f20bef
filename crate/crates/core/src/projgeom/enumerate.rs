//! Families of flats: full enumeration by Schubert cells, flats through a
//! pivot via the quotient geometry, and seeded samples.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::gf::Felt;

use super::sample::random_flat;
use super::{GeomError, ProjSpace, Subspace};

/// Largest family a full or pivot enumeration may produce.
pub const FULL_ENUMERATION_GUARD: u64 = 100_000_000;

/// Number of `k`-dimensional subspaces of an `n`-dimensional vector space
/// over a field with `m` elements.
pub fn gaussian_binomial(n: u64, k: u64, m: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let m = BigUint::from(m);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= m.pow((n - i) as u32) - 1u32;
        den *= m.pow((k - i) as u32) - 1u32;
    }
    num / den
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatMode {
    Full,
    Through(Subspace),
    Sample { count: u64, seed: u64 },
}

impl FlatMode {
    pub fn label(&self) -> String {
        match self {
            FlatMode::Full => "full".to_string(),
            FlatMode::Through(p) => format!("through(dim={})", p.dim()),
            FlatMode::Sample { count, seed } => format!("sample(count={count},seed={seed})"),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FlatMode::Sample { .. })
    }
}

/// Reduced echelon matrices with a fixed pivot set.
#[derive(Clone, Debug)]
struct Cell {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    start: u64,
}

/// All `k`-dimensional subspaces of `GF(m)^cols`, addressable by rank.
#[derive(Clone, Debug)]
struct Cells {
    cols: usize,
    rows: usize,
    m: u64,
    cells: Vec<Cell>,
    total: u64,
}

impl Cells {
    fn new(cols: usize, rows: usize, m: u64) -> Cells {
        let mut cells = Vec::new();
        let mut total = 0u64;
        let mut combo: Vec<usize> = (0..rows).collect();
        loop {
            let free: Vec<(usize, usize)> = combo
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| ((p + 1)..cols).filter(|c| !combo.contains(c)).map(move |c| (r, c)))
                .collect();
            let count = m.pow(free.len() as u32);
            cells.push(Cell { pivots: combo.clone(), free, start: total });
            total += count;
            // next combination in lex order
            let mut i = rows;
            loop {
                if i == 0 {
                    return Cells { cols, rows, m, cells, total };
                }
                i -= 1;
                if combo[i] < cols - rows + i {
                    break;
                }
            }
            combo[i] += 1;
            for j in i + 1..rows {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }

    fn get(&self, i: u64) -> Vec<Vec<Felt>> {
        let ci = self.cells.partition_point(|c| c.start <= i) - 1;
        let cell = &self.cells[ci];
        let mut local = i - cell.start;
        let mut rows = vec![vec![Felt::ZERO; self.cols]; self.rows];
        for (r, &p) in cell.pivots.iter().enumerate() {
            rows[r][p] = Felt::ONE;
        }
        for &(r, c) in cell.free.iter().rev() {
            rows[r][c] = Felt::from_index((local % self.m) as u32);
            local /= self.m;
        }
        rows
    }
}

#[derive(Clone, Debug)]
enum Source {
    Cells(Cells),
    Through { pivot: Subspace, free_cols: Vec<usize>, cells: Cells },
    List(Vec<Subspace>),
}

/// A family of flats of one dimension, addressable by position.
#[derive(Clone, Debug)]
pub struct FlatFamily {
    space: ProjSpace,
    dim: usize,
    mode: FlatMode,
    source: Source,
}

impl FlatFamily {
    pub fn len(&self) -> u64 {
        match &self.source {
            Source::Cells(c) => c.total,
            Source::Through { cells, .. } => cells.total,
            Source::List(l) => l.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> &FlatMode {
        &self.mode
    }

    pub fn space(&self) -> &ProjSpace {
        &self.space
    }

    pub fn get(&self, i: u64) -> Subspace {
        match &self.source {
            Source::Cells(c) => self.space.subspace_from_rref(c.get(i)),
            Source::Through { pivot, free_cols, cells } => {
                let q = cells.get(i);
                let mut rows = pivot.basis().to_vec();
                for qr in q {
                    let mut r = vec![Felt::ZERO; self.space.dim() + 1];
                    for (&c, &x) in free_cols.iter().zip(&qr) {
                        r[c] = x;
                    }
                    rows.push(r);
                }
                self.space.span_vectors(&rows).expect("independent lift")
            }
            Source::List(l) => l[i as usize].clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

fn guard(count: BigUint) -> Result<u64, GeomError> {
    match count.to_u64() {
        Some(c) if c <= FULL_ENUMERATION_GUARD => Ok(c),
        _ => Err(GeomError::TooManyFlats { count: count.to_string(), guard: FULL_ENUMERATION_GUARD }),
    }
}

/// Flats of projective dimension `d` selected by `mode`.
pub fn enumerate_flats(space: &ProjSpace, d: usize, mode: FlatMode) -> Result<FlatFamily, GeomError> {
    let n = space.dim();
    if d >= n {
        return Err(GeomError::BadDimension { dim: d, n });
    }
    let m = space.field().order() as u64;
    let source = match &mode {
        FlatMode::Full => {
            guard(gaussian_binomial(n as u64 + 1, d as u64 + 1, m))?;
            Source::Cells(Cells::new(n + 1, d + 1, m))
        }
        FlatMode::Through(pivot) => {
            if pivot.ambient_len() != n + 1 {
                return Err(GeomError::BadPivot(format!(
                    "pivot has {} coordinates, space has {}",
                    pivot.ambient_len(),
                    n + 1
                )));
            }
            if pivot.dim() > d {
                return Err(GeomError::BadPivot(format!(
                    "pivot of dimension {} cannot lie in a flat of dimension {d}",
                    pivot.dim()
                )));
            }
            let w = pivot.dim();
            guard(gaussian_binomial((n - w) as u64, (d - w) as u64, m))?;
            let free_cols: Vec<usize> = (0..=n).filter(|c| !pivot.pivots().contains(c)).collect();
            let cells = if d == w {
                Cells { cols: n - w, rows: 0, m, cells: vec![Cell { pivots: vec![], free: vec![], start: 0 }], total: 1 }
            } else {
                Cells::new(n - w, d - w, m)
            };
            Source::Through { pivot: pivot.clone(), free_cols, cells }
        }
        FlatMode::Sample { count, seed } => {
            let total = gaussian_binomial(n as u64 + 1, d as u64 + 1, m);
            if BigUint::from(*count) > total {
                return Err(GeomError::SampleExceedsFamily { count: *count, total: total.to_string() });
            }
            let mut seen = HashSet::new();
            let mut list = Vec::with_capacity(*count as usize);
            let mut draw = 0u64;
            while (list.len() as u64) < *count {
                let s = random_flat(space, d, *seed, draw);
                draw += 1;
                if seen.insert(s.clone()) {
                    list.push(s);
                }
            }
            Source::List(list)
        }
    };
    Ok(FlatFamily { space: space.clone(), dim: d, mode, source })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::Field;

    fn pg(n: usize, p: u32, k: u32) -> ProjSpace {
        ProjSpace::new(n, Arc::new(Field::new(p, k).unwrap())).unwrap()
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(7, 1, 9), BigUint::from(597_871u32));
        assert_eq!(gaussian_binomial(5, 0, 9), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 1, 9), BigUint::from(91u32));
    }

    /// Counts all k-subspaces of GF(m)^n by brute force: canonical forms of
    /// every k-tuple of vectors that is independent.
    fn brute_force_count(space: &ProjSpace, d: usize) -> usize {
        let n = space.dim();
        let mut seen = HashSet::new();
        let total = space.point_count();
        let mut idx = vec![0u64; d + 1];
        fn rec(space: &ProjSpace, d: usize, pos: usize, idx: &mut Vec<u64>, total: u64, seen: &mut HashSet<Subspace>) {
            if pos == d + 1 {
                let rows: Vec<Vec<Felt>> = idx.iter().map(|&i| space.point_unindex(i).unwrap().into_coords()).collect();
                let s = space.span_vectors(&rows).unwrap();
                if s.dim() == d {
                    seen.insert(s);
                }
                return;
            }
            let start = if pos == 0 { 0 } else { idx[pos - 1] + 1 };
            for i in start..total {
                idx[pos] = i;
                rec(space, d, pos + 1, idx, total, seen);
            }
        }
        rec(space, d, 0, &mut idx, total, &mut seen);
        let _ = n;
        seen.len()
    }

    #[test]
    fn lines_of_pg3_2_by_exhaustion() {
        let s = pg(3, 2, 1);
        assert_eq!(brute_force_count(&s, 1), 35);
        let fam = enumerate_flats(&s, 1, FlatMode::Full).unwrap();
        assert_eq!(fam.len(), 35);
        let distinct: HashSet<Subspace> = fam.iter().collect();
        assert_eq!(distinct.len(), 35);
    }

    #[test]
    fn full_counts_match_gaussian_binomials() {
        for (n, p, k) in [(2, 2, 2), (3, 2, 2), (4, 2, 2), (2, 3, 2), (3, 3, 2)] {
            let s = pg(n, p, k);
            let m = s.field().order() as u64;
            for d in 0..n {
                let fam = enumerate_flats(&s, d, FlatMode::Full).unwrap();
                assert_eq!(BigUint::from(fam.len()), gaussian_binomial(n as u64 + 1, d as u64 + 1, m));
                let distinct: HashSet<Subspace> = fam.iter().collect();
                assert_eq!(distinct.len() as u64, fam.len());
                for f in fam.iter().take(50) {
                    assert_eq!(f.dim(), d);
                }
            }
        }
    }

    #[test]
    fn through_pivot_counts_and_containment() {
        let s = pg(6, 3, 2);
        let solid = s.coordinate_flat(&[0, 2, 4, 5]).unwrap();
        let fam = enumerate_flats(&s, 4, FlatMode::Through(solid.clone())).unwrap();
        assert_eq!(fam.len(), 91);
        let distinct: HashSet<Subspace> = fam.iter().collect();
        assert_eq!(distinct.len(), 91);
        for f in &distinct {
            assert_eq!(f.dim(), 4);
            assert!(s.contains_flat(f, &solid));
        }
        let small = pg(2, 3, 2);
        let p = small.span(&[small.point_unindex(40).unwrap()]).unwrap();
        assert_eq!(enumerate_flats(&small, 1, FlatMode::Through(p)).unwrap().len(), 10);
    }

    #[test]
    fn through_is_subset_of_full() {
        let s = pg(3, 2, 2);
        let line = s.span(&[s.point_unindex(3).unwrap(), s.point_unindex(70).unwrap()]).unwrap();
        let full: HashSet<Subspace> = enumerate_flats(&s, 2, FlatMode::Full).unwrap().iter().collect();
        let through: Vec<Subspace> = enumerate_flats(&s, 2, FlatMode::Through(line.clone())).unwrap().iter().collect();
        assert_eq!(through.len(), 5);
        let expected: Vec<&Subspace> = full.iter().filter(|f| s.contains_flat(f, &line)).collect();
        assert_eq!(expected.len(), 5);
        for f in &through {
            assert!(full.contains(f));
        }
    }

    #[test]
    fn guards_and_bad_pivots() {
        let s = pg(6, 3, 2);
        assert!(matches!(enumerate_flats(&s, 3, FlatMode::Full), Err(GeomError::TooManyFlats { .. })));
        assert!(matches!(enumerate_flats(&s, 6, FlatMode::Full), Err(GeomError::BadDimension { .. })));
        let solid = s.coordinate_flat(&[0, 1, 2, 3]).unwrap();
        assert!(matches!(enumerate_flats(&s, 2, FlatMode::Through(solid)), Err(GeomError::BadPivot(_))));
        let other = pg(3, 3, 2);
        let foreign = other.coordinate_flat(&[0]).unwrap();
        assert!(matches!(enumerate_flats(&s, 2, FlatMode::Through(foreign)), Err(GeomError::BadPivot(_))));
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let s = pg(6, 3, 2);
        let a: Vec<Subspace> = enumerate_flats(&s, 3, FlatMode::Sample { count: 200, seed: 9 }).unwrap().iter().collect();
        let b: Vec<Subspace> = enumerate_flats(&s, 3, FlatMode::Sample { count: 200, seed: 9 }).unwrap().iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.iter().collect::<HashSet<_>>().len(), 200);
        let c: Vec<Subspace> = enumerate_flats(&s, 3, FlatMode::Sample { count: 200, seed: 10 }).unwrap().iter().collect();
        assert_ne!(a, c);
        let tiny = pg(2, 2, 1);
        assert!(enumerate_flats(&tiny, 1, FlatMode::Sample { count: 8, seed: 1 }).is_err());
        assert_eq!(enumerate_flats(&tiny, 1, FlatMode::Sample { count: 7, seed: 1 }).unwrap().len(), 7);
    }
}
