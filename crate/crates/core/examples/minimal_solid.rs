//! A solid meeting H(6, 9) in only q^4 + q^2 + 1 = 91 points: the perp of a
//! generator plane. Random solids never do better.

use std::sync::Arc;

use unital::census::{flat_census, min_solid_search, SampleBudget};
use unital::gf::Field;
use unital::hermitian::{standard_generator, HermitianForm};
use unital::projgeom::FlatMode;

fn main() -> anyhow::Result<()> {
    let form = HermitianForm::standard_form(6, Arc::new(Field::gf_q2(3)?))?;
    let x = form.variety_points();
    let space = form.space();
    let gen = standard_generator(space)?;
    let perp = form.perp_flat(&gen)?;
    println!("generator plane basis: {:?}", gen.basis());
    println!("|perp(generator) ∩ H| = {}", space.count_in(&perp, &x));

    let best = min_solid_search(&x, &[gen], Some(SampleBudget { count: 1000, seed: 7 }))?;
    println!("smallest of {} solids searched: {} points (bound {:?})", best.searched, best.size, best.bound);

    let sample = flat_census(&x, 3, FlatMode::Sample { count: 2000, seed: 7 })?;
    println!("2000 random solids:");
    print!("{}", sample.to_csv());
    Ok(())
}
