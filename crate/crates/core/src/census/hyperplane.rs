//! Hyperplane incidence counts by dual accumulation.
//!
//! Hyperplanes are indexed like points, through their normalized dual
//! coordinates `a`. For a point `P` whose last nonzero coordinate sits at
//! position `k`, the hyperplanes through `P` split by the leading position
//! `l` of `a`:
//! * `l > k`: every such hyperplane, i.e. the index block `[0, offset(k))`;
//! * `l = k`: none;
//! * `l < k`: `a_{l+1..k-1}` are free, `a_k` is forced, and `a_{k+1..n}` are
//!   free again, which is a contiguous block of `m^(n-k)` indices.

use rayon::prelude::*;

use crate::gf::{Felt, Field};
use crate::projgeom::{PointSet, ProjSpace};

/// Free positions handled by the precomputed inner tables.
const INNER: usize = 3;

struct Acc {
    counts: Vec<u32>,
    // difference array for block increments
    diff: Vec<i64>,
}

impl Acc {
    fn new(len: usize) -> Acc {
        Acc { counts: vec![0; len], diff: vec![0; len + 1] }
    }

    #[inline]
    fn add_block(&mut self, start: usize, len: usize) {
        if len == 1 {
            self.counts[start] += 1;
        } else {
            self.diff[start] += 1;
            self.diff[start + len] -= 1;
        }
    }
}

/// Per-point tables over the last `j` free positions before `k`:
/// `val[t] = sum a_i P_i` and `base[t] = sum idx(a_i) m^(n-i)`.
struct Inner {
    val: Vec<Vec<u32>>,
    base: Vec<Vec<u32>>,
}

struct Ctx<'a> {
    field: &'a Field,
    m: usize,
    n: usize,
    weights: Vec<u64>,
    offsets: Vec<u64>,
    coords: Vec<Felt>,
    inner: Inner,
    row: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(space: &'a ProjSpace) -> Ctx<'a> {
        let m = space.field().order() as usize;
        Ctx {
            field: space.field(),
            m,
            n: space.dim(),
            weights: space.weights().to_vec(),
            offsets: space.offsets().to_vec(),
            coords: vec![Felt::ZERO; space.dim() + 1],
            inner: Inner { val: vec![Vec::new(); INNER + 1], base: vec![Vec::new(); INNER + 1] },
            row: vec![0; m],
        }
    }

    fn build_inner(&mut self, k: usize) {
        let f = self.field;
        for j in 0..=INNER.min(k) {
            let size = self.m.pow(j as u32);
            let val = &mut self.inner.val[j];
            let base = &mut self.inner.base[j];
            val.clear();
            base.clear();
            for t in 0..size {
                let mut s = Felt::ZERO;
                let mut b = 0u64;
                let mut rest = t;
                for i in (k - j..k).rev() {
                    let d = rest % self.m;
                    rest /= self.m;
                    s = f.add(s, f.mul(Felt::from_index(d as u32), self.coords[i]));
                    b += d as u64 * self.weights[i];
                }
                val.push(s.index());
                base.push(b as u32);
            }
        }
    }

    fn point(&mut self, space: &ProjSpace, index: u64, acc: &mut Acc) {
        space.unindex_into(index, &mut self.coords);
        let f = self.field;
        let n = self.n;
        let k = (0..=n).rev().find(|&i| !self.coords[i].is_zero()).expect("nonzero point");
        if self.offsets[k] > 0 {
            acc.diff[0] += 1;
            acc.diff[self.offsets[k] as usize] -= 1;
        }
        if k == 0 {
            return;
        }
        let block = self.weights[k] as usize;
        let neg_inv = f.neg(f.inv(self.coords[k]).expect("nonzero"));
        self.build_inner(k);
        for l in 0..k {
            let free = k - 1 - l;
            let j = free.min(INNER);
            let outer = free - j;
            let outer_count = self.m.pow(outer as u32);
            for o in 0..outer_count {
                let mut s = self.coords[l];
                let mut b = self.offsets[l];
                let mut rest = o;
                for i in (l + 1..l + 1 + outer).rev() {
                    let d = rest % self.m;
                    rest /= self.m;
                    s = f.add(s, f.mul(Felt::from_index(d as u32), self.coords[i]));
                    b += d as u64 * self.weights[i];
                }
                for v in 0..self.m {
                    let ak = f.mul(f.add(s, Felt::from_index(v as u32)), neg_inv);
                    self.row[v] = block * ak.index() as usize;
                }
                let b = b as usize;
                let val = &self.inner.val[j];
                let base = &self.inner.base[j];
                if block == 1 {
                    for (vt, bt) in val.iter().zip(base) {
                        acc.counts[b + *bt as usize + self.row[*vt as usize]] += 1;
                    }
                } else {
                    for (vt, bt) in val.iter().zip(base) {
                        acc.add_block(b + *bt as usize + self.row[*vt as usize], block);
                    }
                }
            }
        }
    }
}

/// `counts[h]` = number of points of `x` on the hyperplane with index `h`.
pub(crate) fn hyperplane_counts(x: &PointSet) -> Vec<u32> {
    let space = x.space();
    let total = space.point_count() as usize;
    let points: Vec<u64> = x.iter().collect();
    let workers = rayon::current_num_threads().max(1);
    let chunk = points.len().div_ceil(workers).max(1);
    let parts: Vec<Acc> = points
        .par_chunks(chunk)
        .map(|c| {
            let mut acc = Acc::new(total);
            let mut ctx = Ctx::new(space);
            for &i in c {
                ctx.point(space, i, &mut acc);
            }
            acc
        })
        .collect();
    let mut counts = vec![0u32; total];
    let mut diff = vec![0i64; total + 1];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(&part.counts) {
            *c += p;
        }
        for (d, p) in diff.iter_mut().zip(&part.diff) {
            *d += p;
        }
    }
    let mut run = 0i64;
    for (c, d) in counts.iter_mut().zip(&diff) {
        run += d;
        *c += run as u32;
    }
    counts
}
