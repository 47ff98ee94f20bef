//! How lines meet H(6, 9): all lines through a few random points, and every
//! line of PG(4, 9) against H(4, 9).

use std::sync::Arc;

use unital::census::{census_through_points, line_census};
use unital::gf::Field;
use unital::hermitian::HermitianForm;
use unital::projgeom::sample::sample_points;
use unital::projgeom::FlatMode;

fn main() -> anyhow::Result<()> {
    let field = Arc::new(Field::gf_q2(3)?);
    let h6 = HermitianForm::standard_form(6, field.clone())?.variety_points();
    let pts = sample_points(h6.space(), 5, 1)?;
    let hist = census_through_points(&h6, &pts)?;
    println!("lines through 5 random points of PG(6, 9):");
    print!("{}", hist.to_csv());

    let h4 = HermitianForm::standard_form(4, field)?.variety_points();
    let hist = line_census(&h4, FlatMode::Full)?;
    println!("all {} lines of PG(4, 9):", hist.family_size);
    print!("{}", hist.to_csv());
    Ok(())
}
