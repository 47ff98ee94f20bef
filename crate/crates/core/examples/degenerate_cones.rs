//! Degenerate Hermitian forms and the cones they define.

use std::sync::Arc;

use rand::SeedableRng;
use unital::gf::Field;
use unital::hermitian::{cone_points, expected_count, HermitianForm};
use unital::projgeom::ProjSpace;

fn main() -> anyhow::Result<()> {
    let field = Arc::new(Field::gf_q2(3)?);
    let space = ProjSpace::new(4, field)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for t in 0..=3 {
        let form = HermitianForm::random_of_rank(space.clone(), 5 - t, &mut rng)?;
        let dec = form.cone_decomposition()?;
        let cone = cone_points(&space, dec.vertex.as_ref(), &dec.base, &dec.base_flat)?;
        let var = form.variety_points();
        println!(
            "t = {t}: |variety| = {}, |cone| = {}, equal = {}, closed form {}",
            var.len(),
            cone.len(),
            var == cone,
            expected_count(4, 3, t as u64)?
        );
    }
    Ok(())
}
