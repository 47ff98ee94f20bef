//! Recovering a census from its first three moments.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CensusError;

/// Candidate intersection sizes `i` and the totals
/// `T0 = sum x_i`, `T1 = sum i x_i`, `T2 = sum i (i - 1) x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSystem {
    pub sizes: Vec<u64>,
    pub totals: [BigInt; 3],
}

impl SpectrumSystem {
    pub fn new(sizes: Vec<u64>, totals: [BigInt; 3]) -> SpectrumSystem {
        SpectrumSystem { sizes, totals }
    }

    /// Moments of a known census, the inverse of [`spectrum_solve`].
    pub fn from_bins(bins: &BTreeMap<u64, u64>) -> SpectrumSystem {
        let mut totals = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (&i, &x) in bins {
            let (i, x) = (BigInt::from(i), BigInt::from(x));
            totals[0] += &x;
            totals[1] += &i * &x;
            totals[2] += &i * (&i - 1) * &x;
        }
        SpectrumSystem { sizes: bins.keys().copied().collect(), totals }
    }
}

fn moment_row(j: usize, i: u64) -> BigRational {
    let i = BigInt::from(i);
    let v = match j {
        0 => BigInt::one(),
        1 => i,
        _ => &i * (&i - 1),
    };
    BigRational::from_integer(v)
}

/// Exact solution `size -> count` of the moment equations. With fewer than
/// three sizes the leading equations determine the counts and the rest must
/// hold as consistency checks.
pub fn spectrum_solve(sys: &SpectrumSystem) -> Result<BTreeMap<u64, BigUint>, CensusError> {
    let k = sys.sizes.len();
    if k == 0 || k > 3 {
        return Err(CensusError::SingularSystem(format!("{k} sizes for 3 moment equations")));
    }
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|j| {
            let mut row: Vec<BigRational> = sys.sizes.iter().map(|&i| moment_row(j, i)).collect();
            row.push(BigRational::from_integer(sys.totals[j].clone()));
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| CensusError::SingularSystem(format!("sizes {:?} are not distinct", sys.sizes)))?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    let sol: Vec<BigRational> = a.iter().map(|r| r[k].clone()).collect();
    for j in k..3 {
        let lhs: BigRational = sys.sizes.iter().zip(&sol).map(|(&i, x)| moment_row(j, i) * x).sum();
        if lhs != BigRational::from_integer(sys.totals[j].clone()) {
            return Err(CensusError::InfeasibleSolution(format!("moment {j} is inconsistent")));
        }
    }
    let mut out = BTreeMap::new();
    for (&i, x) in sys.sizes.iter().zip(sol) {
        if !x.is_integer() {
            return Err(CensusError::InfeasibleSolution(format!("x_{i} = {x} is not an integer")));
        }
        if x.is_negative() {
            return Err(CensusError::InfeasibleSolution(format!("x_{i} = {x} is negative")));
        }
        out.insert(i, x.to_integer().to_biguint().expect("nonnegative"));
    }
    Ok(out)
}
