//! Solving the double counting equations for hyperplane sections of a set
//! with the size of H(6, 9).

use num_bigint::BigInt;
use unital::census::{spectrum_solve, SpectrumSystem};

fn main() -> anyhow::Result<()> {
    let x = BigInt::from(199_108u64);
    let totals = [BigInt::from(597_871u64), &x * 66_430u64, &x * 199_107u64 * 7381u64];
    let sys = SpectrumSystem::new(vec![21_961, 22_123, 22_204], totals);
    for (size, count) in spectrum_solve(&sys)? {
        println!("{size}: {count}");
    }
    Ok(())
}
