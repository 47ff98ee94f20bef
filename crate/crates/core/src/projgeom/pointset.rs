//! Bit-indexed point sets and the PGPS binary format.
//!
//! PGPS layout: magic `PGPS`, version byte `1`, little-endian `u32` p, k, n,
//! little-endian `u64` number of points of PG(n, p^k), then the membership
//! bits packed LSB-first (bit `i` lives in byte `i / 8` at position `i % 8`)
//! and padded to a byte boundary.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::gf::{Felt, Field};

use super::{GeomError, ProjSpace};

const MAGIC: &[u8; 4] = b"PGPS";
const VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    space: ProjSpace,
    bits: Vec<u64>,
    card: u64,
}

impl PointSet {
    pub fn empty(space: ProjSpace) -> PointSet {
        let words = space.point_count().div_ceil(64) as usize;
        PointSet { space, bits: vec![0; words], card: 0 }
    }

    pub fn full(space: ProjSpace) -> PointSet {
        let n = space.point_count();
        let mut s = PointSet::empty(space);
        for w in s.bits.iter_mut() {
            *w = u64::MAX;
        }
        let tail = n % 64;
        if tail != 0 {
            *s.bits.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        s.card = n;
        s
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(space: ProjSpace, it: I) -> Result<PointSet, GeomError> {
        let mut s = PointSet::empty(space);
        for i in it {
            if i >= s.space.point_count() {
                return Err(GeomError::IndexOutOfRange { index: i, len: s.space.point_count() });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// All points whose normalized coordinates satisfy `pred`. Point ranges
    /// are evaluated in parallel and stitched together in index order.
    pub fn from_predicate<F>(space: ProjSpace, pred: F) -> PointSet
    where
        F: Fn(&[Felt]) -> bool + Sync,
    {
        const CHUNK_WORDS: u64 = 1 << 10;
        let total = space.point_count();
        let words = total.div_ceil(64);
        let chunks: Vec<Vec<u64>> = (0..words.div_ceil(CHUNK_WORDS))
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK_WORDS * 64;
                let hi = ((c + 1) * CHUNK_WORDS * 64).min(total);
                let mut out = vec![0u64; (hi - lo).div_ceil(64) as usize];
                space.for_each_point(lo..hi, |i, v| {
                    if pred(v) {
                        let r = i - lo;
                        out[(r >> 6) as usize] |= 1 << (r & 63);
                    }
                });
                out
            })
            .collect();
        PointSet::from_words(space, chunks.concat())
    }

    /// Builds a set from raw membership words; bits past the end must be clear.
    pub(crate) fn from_words(space: ProjSpace, bits: Vec<u64>) -> PointSet {
        let card = bits.iter().map(|w| w.count_ones() as u64).sum();
        PointSet { space, bits, card }
    }

    pub fn space(&self) -> &ProjSpace {
        &self.space
    }

    /// Cardinality.
    pub fn len(&self) -> u64 {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, i: u64) -> bool {
        (self.bits[(i >> 6) as usize] >> (i & 63)) & 1 == 1
    }

    /// Returns `true` if `i` was newly added.
    pub fn insert(&mut self, i: u64) -> bool {
        let w = &mut self.bits[(i >> 6) as usize];
        let mask = 1u64 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        self.card += fresh as u64;
        fresh
    }

    /// Returns `true` if `i` was present.
    pub fn remove(&mut self, i: u64) -> bool {
        let w = &mut self.bits[(i >> 6) as usize];
        let mask = 1u64 << (i & 63);
        let present = *w & mask != 0;
        *w &= !mask;
        self.card -= present as u64;
        present
    }

    /// Point indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(wi as u64 * 64 + b)
            })
        })
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet, GeomError> {
        self.same_space(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(PointSet::from_words(self.space.clone(), bits))
    }

    pub fn intersection_count(&self, other: &PointSet) -> Result<u64, GeomError> {
        self.same_space(other)?;
        Ok(self.bits.iter().zip(&other.bits).map(|(a, b)| (a & b).count_ones() as u64).sum())
    }

    pub fn complement(&self) -> PointSet {
        let mut full = PointSet::full(self.space.clone());
        for (w, &b) in full.bits.iter_mut().zip(&self.bits) {
            *w &= !b;
        }
        full.card = self.space.point_count() - self.card;
        full
    }

    pub fn is_subset(&self, other: &PointSet) -> Result<bool, GeomError> {
        self.same_space(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    fn same_space(&self, other: &PointSet) -> Result<(), GeomError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(GeomError::SpaceMismatch)
        }
    }

    pub fn write_pgps<W: Write>(&self, mut w: W) -> Result<(), GeomError> {
        let f = self.space.field();
        w.write_all(MAGIC)?;
        w.write_all(&[VERSION])?;
        w.write_all(&f.characteristic().to_le_bytes())?;
        w.write_all(&f.degree().to_le_bytes())?;
        w.write_all(&(self.space.dim() as u32).to_le_bytes())?;
        let count = self.space.point_count();
        w.write_all(&count.to_le_bytes())?;
        let nbytes = count.div_ceil(8) as usize;
        let mut bytes = Vec::with_capacity(nbytes);
        for word in &self.bits {
            bytes.extend_from_slice(&word.to_le_bytes());
        }
        bytes.truncate(nbytes);
        w.write_all(&bytes)?;
        Ok(())
    }

    /// Reads a PGPS stream. Fields of even degree come back with their
    /// quadratic subfield declared.
    pub fn read_pgps<R: Read>(mut r: R) -> Result<PointSet, GeomError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(GeomError::Format("bad magic".into()));
        }
        let mut version = [0u8; 1];
        r.read_exact(&mut version)?;
        if version[0] != VERSION {
            return Err(GeomError::Format(format!("unsupported version {}", version[0])));
        }
        let mut u32buf = [0u8; 4];
        let mut read_u32 = |r: &mut R| -> Result<u32, GeomError> {
            r.read_exact(&mut u32buf)?;
            Ok(u32::from_le_bytes(u32buf))
        };
        let p = read_u32(&mut r)?;
        let k = read_u32(&mut r)?;
        let n = read_u32(&mut r)? as usize;
        let mut u64buf = [0u8; 8];
        r.read_exact(&mut u64buf)?;
        let count = u64::from_le_bytes(u64buf);
        let field = if k % 2 == 0 { Field::quadratic(p, k)? } else { Field::new(p, k)? };
        let space = ProjSpace::new(n, Arc::new(field))?;
        if count != space.point_count() {
            return Err(GeomError::Format(format!(
                "header says {count} points, PG({n}, {}) has {}",
                space.field().order(),
                space.point_count()
            )));
        }
        let nbytes = count.div_ceil(8) as usize;
        let mut bytes = vec![0u8; nbytes];
        r.read_exact(&mut bytes)?;
        let tail = count % 8;
        if tail != 0 && bytes[nbytes - 1] >> tail != 0 {
            return Err(GeomError::Format("padding bits set".into()));
        }
        let mut extra = [0u8; 1];
        if r.read(&mut extra)? != 0 {
            return Err(GeomError::Format("trailing bytes".into()));
        }
        bytes.resize(count.div_ceil(64) as usize * 8, 0);
        let bits = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(PointSet::from_words(space, bits))
    }

    pub fn save(&self, path: &Path) -> Result<(), GeomError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_pgps(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<PointSet, GeomError> {
        PointSet::read_pgps(BufReader::new(File::open(path)?))
    }
}
