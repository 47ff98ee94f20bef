//! Counter-based sampling: draw `i` under seed `s` always sees the same
//! ChaCha8 stream, independent of how many draws came before it.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{Felt, Matrix};

use super::{GeomError, ProjPoint, ProjSpace, Subspace};

pub fn draw_rng(seed: u64, draw: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw);
    rng
}

pub fn random_element<R: Rng>(rng: &mut R, order: u32) -> Felt {
    Felt::from_index(rng.gen_range(0..order))
}

/// `count` distinct points, drawn uniformly.
pub fn sample_points(space: &ProjSpace, count: u64, seed: u64) -> Result<Vec<ProjPoint>, GeomError> {
    if count > space.point_count() {
        return Err(GeomError::SampleExceedsFamily { count, total: space.point_count().to_string() });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count as usize);
    let mut draw = 0u64;
    while (out.len() as u64) < count {
        let idx = draw_rng(seed, draw).gen_range(0..space.point_count());
        draw += 1;
        if seen.insert(idx) {
            out.push(space.point_unindex(idx)?);
        }
    }
    Ok(out)
}

/// A uniformly random flat of projective dimension `d` for one draw:
/// random full-rank matrices are uniform over flats once canonicalized.
pub fn random_flat(space: &ProjSpace, d: usize, seed: u64, draw: u64) -> Subspace {
    let mut rng = draw_rng(seed, draw);
    let field = space.field();
    let cols = space.dim() + 1;
    loop {
        let rows: Vec<Vec<Felt>> = (0..=d)
            .map(|_| (0..cols).map(|_| random_element(&mut rng, field.order())).collect())
            .collect();
        let m = Matrix::from_rows(&rows).expect("rectangular");
        if m.rank(field) == d + 1 {
            return space.span_vectors(&rows).expect("full rank");
        }
    }
}
