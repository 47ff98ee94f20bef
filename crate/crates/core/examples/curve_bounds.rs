//! Point counts of plane quartics over GF(9) against the classical bounds.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use unital::bounds::{check_curve, BoundLedger};
use unital::gf::{Felt, Field};
use unital::polyhyp::HomoPoly;
use unital::projgeom::ProjSpace;

fn main() -> anyhow::Result<()> {
    let field = Arc::new(Field::gf_q2(3)?);
    let plane = ProjSpace::new(2, field.clone())?;
    let ledger = BoundLedger::new(4, 9, Some(3))?;
    for (b, e) in &ledger.entries {
        println!("{:<16} {:>4}  {}", b.name(), e.value, e.note);
    }

    let fermat = HomoPoly::fermat(field.clone(), 3, 4)?;
    println!("Fermat quartic: {:?}", check_curve(&fermat, &plane, 3)?.class);
    let lines: Vec<Vec<Felt>> = field.elements().take(4).map(|c| vec![Felt::ONE, c, Felt::ZERO]).collect();
    let pencil = HomoPoly::product_of_linear(field.clone(), &lines)?;
    println!("pencil of 4 lines: {} points", pencil.rational_points(&plane)?.len());

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..2000 {
        let c = check_curve(&HomoPoly::random(field.clone(), 3, 4, &mut rng)?, &plane, 3)?;
        if c.components == 0 {
            *counts.entry(c.n_points).or_default() += 1;
        }
    }
    println!("points on random quartics without line components: {counts:?}");
    Ok(())
}
