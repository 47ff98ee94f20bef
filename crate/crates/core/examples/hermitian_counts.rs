//! Sizes of the Hermitian varieties H(r, q^2), enumerated and in closed form.
//!
//! `cargo run --release --example hermitian_counts -- 3`

use std::sync::Arc;

use unital::gf::Field;
use unital::hermitian::{expected_count, HermitianForm};

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let field = Arc::new(Field::gf_q2(q)?);
    for r in 2..=6 {
        let Ok(form) = HermitianForm::standard_form(r, field.clone()) else {
            println!("PG({r}, {}) is too large to enumerate", q * q);
            break;
        };
        let n = form.variety_points().len();
        println!("|H({r}, {})| = {n}  (closed form {})", q * q, expected_count(r as u64, q as u64, 0)?);
    }
    Ok(())
}
