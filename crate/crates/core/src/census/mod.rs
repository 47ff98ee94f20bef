//! Intersection censuses: how a point set meets the flats of a family.

mod hyperplane;
mod spectrum;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::Felt;
use crate::projgeom::{
    enumerate_flats, normalize_in_place, sample::random_flat, FlatMode, GeomError, PointSet, ProjPoint, ProjSpace,
    Subspace,
};

pub use spectrum::{spectrum_solve, SpectrumSystem};

/// Most hyperplanes the dual accumulation will allocate counters for.
pub const HYPERPLANE_GUARD: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("{count} hyperplanes exceed the census guard of {guard}")]
    TooManyHyperplanes { count: u64, guard: u64 },
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("infeasible solution: {0}")]
    InfeasibleSolution(String),
    #[error("no hint flats and no sampling budget")]
    NoHintAndNoBudget,
    #[error("bad hint: {0}")]
    BadHint(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Intersection sizes and how many flats of the family realize each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub mode: String,
    pub family_size: u64,
    pub bins: BTreeMap<u64, u64>,
}

impl Histogram {
    fn from_sizes(mode: &FlatMode, bins: BTreeMap<u64, u64>) -> Histogram {
        Histogram { mode: mode.label(), family_size: bins.values().sum(), bins }
    }

    pub fn min_size(&self) -> Option<u64> {
        self.bins.keys().next().copied()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.bins.keys().copied().collect()
    }

    /// `sum size * count`.
    pub fn incidences(&self) -> u128 {
        self.bins.iter().map(|(&s, &c)| s as u128 * c as u128).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,count\n");
        for (s, c) in &self.bins {
            writeln!(out, "{s},{c}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Adds the bins of `other`; the mode label is kept.
    pub fn merge(&mut self, other: &Histogram) {
        for (&s, &c) in &other.bins {
            *self.bins.entry(s).or_insert(0) += c;
        }
        self.family_size += other.family_size;
    }
}

fn merge_maps(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (s, c) in b {
        *a.entry(s).or_insert(0) += c;
    }
    a
}

/// Census of `x` against the `d`-flats selected by `mode`.
pub fn flat_census(x: &PointSet, d: usize, mode: FlatMode) -> Result<Histogram, CensusError> {
    let space = x.space();
    if d + 1 == space.dim() && mode == FlatMode::Full {
        return hyperplane_census(x);
    }
    if let FlatMode::Through(p) = &mode {
        if d == 1 && p.dim() == 0 && p.ambient_len() == space.dim() + 1 {
            let point = space.point(&p.basis()[0])?;
            let bins = lines_through_point(x, &point);
            return Ok(Histogram::from_sizes(&mode, bins));
        }
    }
    let family = enumerate_flats(space, d, mode)?;
    let bins = (0..family.len())
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, i| {
            *acc.entry(space.count_in(&family.get(i), x)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_maps);
    Ok(Histogram::from_sizes(family.mode(), bins))
}

/// Lines through `p`, each written as `{p} ∪ {q + c p}` with `q` running over
/// the points of the quotient on the coordinates other than `p`'s leading one.
fn lines_through_point(x: &PointSet, p: &ProjPoint) -> BTreeMap<u64, u64> {
    let space = x.space();
    let f = space.field();
    let n = space.dim();
    let lead = p.coords().iter().position(|c| !c.is_zero()).expect("nonzero");
    let free: Vec<usize> = (0..=n).filter(|&c| c != lead).collect();
    let quotient = ProjSpace::new(n - 1, space.field_arc().clone()).expect("smaller space");
    let on_p = x.contains(space.point_index(p).expect("same space")) as u64;
    let elems: Vec<Felt> = f.elements().collect();
    (0..quotient.point_count())
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, qi| {
            let mut qv = vec![Felt::ZERO; n];
            quotient.unindex_into(qi, &mut qv);
            let mut v = vec![Felt::ZERO; n + 1];
            let mut count = on_p;
            for &c in &elems {
                for (j, &col) in free.iter().enumerate() {
                    v[col] = f.add(qv[j], f.mul(c, p.coords()[col]));
                }
                v[lead] = c;
                normalize_in_place(f, &mut v);
                count += x.contains(space.index_of_normalized(&v)) as u64;
            }
            *acc.entry(count).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_maps)
}

pub fn line_census(x: &PointSet, mode: FlatMode) -> Result<Histogram, CensusError> {
    if x.is_empty() {
        return Err(CensusError::EmptyPointSet);
    }
    flat_census(x, 1, mode)
}

/// `counts[h]` for every hyperplane, indexed by its dual coordinates.
pub fn hyperplane_counts(x: &PointSet) -> Result<Vec<u32>, CensusError> {
    let count = x.space().point_count();
    if count > HYPERPLANE_GUARD {
        return Err(CensusError::TooManyHyperplanes { count, guard: HYPERPLANE_GUARD });
    }
    Ok(hyperplane::hyperplane_counts(x))
}

/// Exact census over all hyperplanes.
pub fn hyperplane_census(x: &PointSet) -> Result<Histogram, CensusError> {
    let counts = hyperplane_counts(x)?;
    let mut bins = BTreeMap::new();
    for c in counts {
        *bins.entry(c as u64).or_insert(0) += 1;
    }
    Ok(Histogram::from_sizes(&FlatMode::Full, bins))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingNumber {
    pub value: u64,
    /// `false` when the family was sampled.
    pub exact: bool,
}

/// Smallest intersection of `x` with a `d`-flat of the family.
pub fn blocking_number(x: &PointSet, d: usize, mode: FlatMode) -> Result<BlockingNumber, CensusError> {
    let exact = mode.is_exact();
    let h = flat_census(x, d, mode)?;
    Ok(BlockingNumber { value: h.min_size().unwrap_or(0), exact })
}

/// Combined line census through each of `points`.
pub fn census_through_points(x: &PointSet, points: &[ProjPoint]) -> Result<Histogram, CensusError> {
    let space = x.space();
    let mut total = Histogram { mode: format!("lines through {} points", points.len()), family_size: 0, bins: BTreeMap::new() };
    for p in points {
        let pivot = space.span(std::slice::from_ref(p))?;
        total.merge(&line_census(x, FlatMode::Through(pivot))?);
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBudget {
    pub count: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct MinSolid {
    pub solid: Subspace,
    pub size: u64,
    /// The lower bound `q^4 + q^2 + 1`, when the field is a declared GF(q^2).
    pub bound: Option<u64>,
    pub below_bound: bool,
    pub searched: u64,
}

/// Smallest solid found among: every solid through each plane hint, each
/// solid hint, and `budget` random solids. Ties keep the first found.
pub fn min_solid_search(
    x: &PointSet,
    hints: &[Subspace],
    budget: Option<SampleBudget>,
) -> Result<MinSolid, CensusError> {
    let space = x.space();
    if hints.is_empty() && budget.is_none() {
        return Err(CensusError::NoHintAndNoBudget);
    }
    if space.dim() < 4 {
        return Err(CensusError::BadHint(format!("PG({}, q) has no proper solids", space.dim())));
    }
    let mut best: Option<(Subspace, u64)> = None;
    let mut searched = 0u64;
    let mut consider = |s: Subspace, best: &mut Option<(Subspace, u64)>| {
        let c = space.count_in(&s, x);
        searched += 1;
        if best.as_ref().is_none_or(|(_, b)| c < *b) {
            *best = Some((s, c));
        }
    };
    for h in hints {
        if h.ambient_len() != space.dim() + 1 {
            return Err(CensusError::BadHint("hint lives in a different space".into()));
        }
        match h.dim() {
            3 => consider(h.clone(), &mut best),
            d if d < 3 => {
                let fam = enumerate_flats(space, 3, FlatMode::Through(h.clone()))?;
                for s in fam.iter() {
                    consider(s, &mut best);
                }
            }
            d => return Err(CensusError::BadHint(format!("hint of dimension {d} contains no solid"))),
        }
    }
    if let Some(b) = budget {
        for draw in 0..b.count {
            consider(random_flat(space, 3, b.seed, draw), &mut best);
        }
    }
    let (solid, size) = best.expect("at least one candidate");
    let bound = space.field().sub_order().map(|q| {
        let q = q as u64;
        q.pow(4) + q * q + 1
    });
    Ok(MinSolid { solid, size, bound, below_bound: bound.is_some_and(|b| size < b), searched })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::Field;
    use crate::hermitian::{standard_generator, HermitianForm};
    use crate::projgeom::sample::sample_points;

    fn h(r: usize) -> (HermitianForm, PointSet) {
        let form = HermitianForm::standard_form(r, Arc::new(Field::gf_q2(3).unwrap())).unwrap();
        let x = form.variety_points();
        (form, x)
    }

    #[test]
    fn unital_line_census() {
        let (_, x) = h(2);
        let hist = line_census(&x, FlatMode::Full).unwrap();
        assert_eq!(hist.bins, [(1, 28), (4, 63)].into_iter().collect());
        assert_eq!(hist.family_size, 91);
        assert_eq!(hist.incidences(), 28 * 10);
        let whole = PointSet::full(x.space().clone());
        assert_eq!(line_census(&whole, FlatMode::Full).unwrap().bins, [(10, 91)].into_iter().collect());
        assert!(matches!(
            line_census(&PointSet::empty(x.space().clone()), FlatMode::Full),
            Err(CensusError::EmptyPointSet)
        ));
    }

    #[test]
    fn fast_point_pivot_matches_generic() {
        let (_, x) = h(3);
        let space = x.space().clone();
        for i in [0u64, 17, 400, 819] {
            let p = space.point_unindex(i).unwrap();
            let pivot = space.span(std::slice::from_ref(&p)).unwrap();
            let fast = line_census(&x, FlatMode::Through(pivot.clone())).unwrap();
            let fam = enumerate_flats(&space, 1, FlatMode::Through(pivot)).unwrap();
            let mut slow = BTreeMap::new();
            for l in fam.iter() {
                *slow.entry(space.count_in(&l, &x)).or_insert(0u64) += 1;
            }
            assert_eq!(fast.bins, slow);
            assert_eq!(fast.family_size, 91);
        }
    }

    #[test]
    fn hyperplane_census_small() {
        let (_, x) = h(2);
        assert_eq!(hyperplane_census(&x).unwrap().bins, [(1, 28), (4, 63)].into_iter().collect());
        let (_, x) = h(3);
        assert_eq!(hyperplane_census(&x).unwrap().bins, [(37, 280), (28, 540)].into_iter().collect());
        let (_, x) = h(4);
        let hist = hyperplane_census(&x).unwrap();
        assert_eq!(hist.bins, [(253, 2440), (280, 4941)].into_iter().collect());
        assert_eq!(hist.incidences(), 2440 * 820);
    }

    #[test]
    fn single_point_hyperplane_census() {
        let space = ProjSpace::new(6, Arc::new(Field::gf_q2(3).unwrap())).unwrap();
        let x = PointSet::from_indices(space, [12345]).unwrap();
        assert_eq!(hyperplane_census(&x).unwrap().bins, [(0, 531_441), (1, 66_430)].into_iter().collect());
    }

    #[test]
    fn lines_through_h6_points_block() {
        let (_, x) = h(6);
        let pts = sample_points(x.space(), 2, 9).unwrap();
        let hist = census_through_points(&x, &pts).unwrap();
        assert_eq!(hist.family_size, 2 * 66_430);
        assert!(hist.sizes().iter().all(|s| [1, 4, 10].contains(s)));
    }

    #[test]
    fn blocking_numbers() {
        let (_, x) = h(4);
        let b = blocking_number(&x, 1, FlatMode::Sample { count: 2000, seed: 1 }).unwrap();
        assert!(!b.exact);
        assert!(b.value >= 1);
        // a hyperplane blocks every line, its complement misses the lines inside it
        let space = x.space().clone();
        let hyp = space.subspace_points(&space.coordinate_flat(&[1, 2, 3, 4]).unwrap());
        let small = ProjSpace::new(2, Arc::new(Field::gf_q2(3).unwrap())).unwrap();
        let line = small.subspace_points(&small.coordinate_flat(&[1, 2]).unwrap());
        assert_eq!(blocking_number(&line, 1, FlatMode::Full).unwrap(), BlockingNumber { value: 1, exact: true });
        assert_eq!(blocking_number(&line.complement(), 1, FlatMode::Full).unwrap().value, 0);
        assert_eq!(hyp.len(), 820);
    }

    #[test]
    fn minimal_solid_through_generator() {
        let (form, x) = h(6);
        let space = x.space().clone();
        let gen = standard_generator(&space).unwrap();
        assert!(space.subspace_points(&gen).is_subset(&x).unwrap());
        let perp = form.perp_flat(&gen).unwrap();
        assert_eq!(perp.dim(), 3);
        assert_eq!(space.count_in(&perp, &x), 91);
        let found = min_solid_search(&x, std::slice::from_ref(&gen), None).unwrap();
        assert_eq!(found.size, 91);
        assert_eq!(found.searched, 820);
        assert!(!found.below_bound);
        let mut holed = x.clone();
        let first = space.subspace_points(&gen).iter().next().unwrap();
        holed.remove(first);
        let found = min_solid_search(&holed, &[gen], None).unwrap();
        assert_eq!(found.size, 90);
        assert!(found.below_bound);
        assert!(matches!(min_solid_search(&x, &[], None), Err(CensusError::NoHintAndNoBudget)));
    }
}
