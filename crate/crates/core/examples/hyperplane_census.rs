//! Full hyperplane census of the Hermitian variety H(r, 9).
//!
//! `cargo run --release --example hyperplane_census -- 6`

use std::sync::Arc;
use std::time::Instant;

use unital::census::hyperplane_census;
use unital::gf::Field;
use unital::hermitian::HermitianForm;

fn main() -> anyhow::Result<()> {
    let r: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let form = HermitianForm::standard_form(r, Arc::new(Field::gf_q2(3)?))?;
    let x = form.variety_points();
    println!("|H({r}, 9)| = {}", x.len());
    let t = Instant::now();
    let hist = hyperplane_census(&x)?;
    println!("{} hyperplanes in {:.1?}", hist.family_size, t.elapsed());
    print!("{}", hist.to_csv());
    Ok(())
}
