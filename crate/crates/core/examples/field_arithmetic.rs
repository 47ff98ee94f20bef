//! Arithmetic in GF(9) with its Frobenius conjugation.

use unital::gf::Field;

fn main() -> anyhow::Result<()> {
    let f = Field::gf_q2(3)?;
    println!("GF({}) modulus (low degree first): {:?}", f.order(), f.modulus());
    let g = f.generator();
    for e in f.elements() {
        let (n, t) = f.norm_trace(e)?;
        println!(
            "{e:>4}  coeffs {:?}  g*x = {:>4}  conj = {:>4}  N = {:>4}  T = {:>4}",
            f.coefficients(e),
            f.mul(g, e).to_string(),
            f.conj(e)?.to_string(),
            n.to_string(),
            t.to_string()
        );
    }
    Ok(())
}
