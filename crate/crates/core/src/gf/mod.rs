//! Table-backed finite fields GF(p^k).
//!
//! Elements are identified by an index: `0` is zero and `i + 1` is `g^i`,
//! where `g` is the class of `x` modulo a primitive modulus. With that order
//! Frobenius, conjugation and norm become index arithmetic.

mod conway;
pub mod linalg;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use linalg::{linear_solve, solve_affine, Matrix, Solution, SolveMode};

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get full addition and multiplication tables.
const FULL_TABLE_MAX: u32 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("no modulus available for GF({0}^{1})")]
    NoModulusAvailable(u32, u32),
    #[error("field order {0} exceeds the desk-scale cap of 2^20")]
    OrderTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} does not belong to a field of order {order}")]
    FieldMismatch { index: u32, order: u32 },
    #[error("field has no declared quadratic subfield")]
    NoQuadraticSubfieldDeclared,
    #[error("matrix has no entries")]
    EmptyMatrix,
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },
}

/// A field element, stored as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps a raw index without range checking; see [`Field::element`].
    #[inline]
    pub const fn from_index(index: u32) -> Felt {
        Felt(index)
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "1"),
            i => write!(f, "g^{}", i - 1),
        }
    }
}

/// A binary operation for the checked [`Field::arith`] entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Add(Felt),
    Sub(Felt),
    Mul(Felt),
    Div(Felt),
    Pow(i64),
}

#[derive(Clone)]
enum Tables {
    Full { add: Vec<u32>, mul: Vec<u32> },
    // zech[d] = index of 1 + g^d
    Zech { zech: Vec<u32> },
}

/// GF(p^k) with precomputed tables. Immutable once built.
#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    sub_order: Option<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    tables: Tables,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("sub_order", &self.sub_order)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.k == other.k
            && self.modulus == other.modulus
            && self.sub_order == other.sub_order
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p) as coefficient vectors, low-to-high.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Successive powers of `x` modulo `modulus`, encoded base `p`. Returns
/// `None` unless `x` has multiplicative order exactly `p^k - 1`.
fn primitive_powers(modulus: &[u32], p: u32) -> Option<Vec<u32>> {
    let k = modulus.len() - 1;
    let order = (p as u64).pow(k as u32);
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let encode = |v: &[u32]| v.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32;
    let mut out = Vec::with_capacity(order as usize - 1);
    for i in 0..order - 1 {
        let code = encode(&cur);
        if i > 0 && code == 1 {
            return None;
        }
        out.push(code);
        // multiply by x and reduce
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..k {
                let sub = (top as u64 * modulus[j] as u64 % p as u64) as u32;
                cur[j] = (cur[j] + p - sub) % p;
            }
        }
    }
    if encode(&cur) == 1 {
        Some(out)
    } else {
        None
    }
}

fn find_modulus(p: u32, k: u32) -> Result<(Vec<u32>, Vec<u32>), GfError> {
    if let Some(m) = conway::conway(p, k) {
        let powers =
            primitive_powers(m, p).ok_or(GfError::NoModulusAvailable(p, k))?;
        return Ok((m.to_vec(), powers));
    }
    // Lexicographically first primitive polynomial, low coefficients varying fastest.
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        if let Some(powers) = primitive_powers(&poly, p) {
            return Ok((poly, powers));
        }
    }
    Err(GfError::NoModulusAvailable(p, k))
}

impl Field {
    /// Builds GF(p^k). The modulus is the Conway polynomial when one is
    /// shipped, otherwise the first primitive polynomial in coefficient order.
    pub fn new(p: u32, k: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(GfError::OrderTooLarge(order));
        }
        let order = order as u32;
        let (modulus, exp) = find_modulus(p, k)?;
        debug_assert!(is_irreducible(&modulus, p));

        let mut log = vec![0u32; order as usize];
        for (i, &code) in exp.iter().enumerate() {
            log[code as usize] = i as u32 + 1;
        }
        let code_of = |a: u32| if a == 0 { 0 } else { exp[a as usize - 1] };
        let code_add = |x: u32, y: u32| -> u32 {
            let (mut x, mut y) = (x, y);
            let mut out = 0u32;
            let mut place = 1u32;
            while x > 0 || y > 0 {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place = place.wrapping_mul(p);
            }
            out
        };
        let code_neg = |x: u32| -> u32 {
            let mut x = x;
            let mut out = 0u32;
            let mut place = 1u32;
            while x > 0 {
                out += ((p - x % p) % p) * place;
                x /= p;
                place = place.wrapping_mul(p);
            }
            out
        };

        let neg: Vec<u32> = (0..order).map(|a| log[code_neg(code_of(a)) as usize]).collect();
        let inv: Vec<u32> = (0..order)
            .map(|a| if a <= 1 { a } else { (order - 1) - (a - 1) + 1 })
            .collect();

        let tables = if order <= FULL_TABLE_MAX {
            let m = order as usize;
            let mut add = vec![0u32; m * m];
            let mut mul = vec![0u32; m * m];
            for a in 0..order {
                for b in 0..order {
                    let idx = a as usize * m + b as usize;
                    add[idx] = log[code_add(code_of(a), code_of(b)) as usize];
                    mul[idx] = if a == 0 || b == 0 {
                        0
                    } else {
                        (a - 1 + b - 1) % (order - 1) + 1
                    };
                }
            }
            Tables::Full { add, mul }
        } else {
            let zech = (0..order - 1)
                .map(|d| log[code_add(1, exp[d as usize]) as usize])
                .collect();
            Tables::Zech { zech }
        };

        Ok(Field { p, k, order, modulus, sub_order: None, exp, log, neg, inv, tables })
    }

    /// Builds GF(p^k) with `k` even and declares GF(p^(k/2)) as the
    /// conjugation-fixed subfield.
    pub fn quadratic(p: u32, k: u32) -> Result<Field, GfError> {
        if !k.is_multiple_of(2) {
            return Err(GfError::NoQuadraticSubfieldDeclared);
        }
        let mut f = Field::new(p, k)?;
        f.sub_order = Some(p.pow(k / 2));
        Ok(f)
    }

    /// GF(q^2) for a prime power `q`, with GF(q) declared.
    pub fn gf_q2(q: u32) -> Result<Field, GfError> {
        let (p, e) = prime_power(q).ok_or(GfError::NonPrime(q))?;
        Field::quadratic(p, 2 * e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, low-to-high, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q` when this field is declared as GF(q^2).
    pub fn sub_order(&self) -> Option<u32> {
        self.sub_order
    }

    pub fn element(&self, index: u32) -> Result<Felt, GfError> {
        self.check(Felt(index))?;
        Ok(Felt(index))
    }

    #[inline]
    pub fn check(&self, a: Felt) -> Result<(), GfError> {
        if a.0 < self.order {
            Ok(())
        } else {
            Err(GfError::FieldMismatch { index: a.0, order: self.order })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.order).map(Felt)
    }

    /// The primitive element `g`.
    pub fn generator(&self) -> Felt {
        if self.order == 2 {
            Felt::ONE
        } else {
            Felt(2)
        }
    }

    /// Image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, n: i64) -> Felt {
        let c = n.rem_euclid(self.p as i64) as u32;
        Felt(self.log[c as usize])
    }

    /// Polynomial coordinates (low-to-high) over GF(p).
    pub fn coefficients(&self, a: Felt) -> Vec<u32> {
        let mut code = if a.0 == 0 { 0 } else { self.exp[a.0 as usize - 1] };
        (0..self.k)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        match &self.tables {
            Tables::Full { add, .. } => Felt(add[(a.0 * self.order + b.0) as usize]),
            Tables::Zech { zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let n = self.order - 1;
                let (la, lb) = (a.0 - 1, b.0 - 1);
                let d = (lb + n - la) % n;
                let z = zech[d as usize];
                if z == 0 {
                    Felt::ZERO
                } else {
                    Felt((la + z - 1) % n + 1)
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        match &self.tables {
            Tables::Full { mul, .. } => Felt(mul[(a.0 * self.order + b.0) as usize]),
            Tables::Zech { .. } => {
                if a.0 == 0 || b.0 == 0 {
                    Felt::ZERO
                } else {
                    Felt((a.0 - 1 + b.0 - 1) % (self.order - 1) + 1)
                }
            }
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.is_zero() {
            Err(GfError::DivisionByZero)
        } else {
            Ok(Felt(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; the exponent is reduced mod `m - 1` for nonzero `a`, and
    /// `0^0 = 1`.
    pub fn pow(&self, a: Felt, e: i64) -> Result<Felt, GfError> {
        if a.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Felt::ZERO),
                std::cmp::Ordering::Equal => Ok(Felt::ONE),
                std::cmp::Ordering::Less => Err(GfError::DivisionByZero),
            };
        }
        let n = (self.order - 1) as i64;
        let l = (a.0 - 1) as i64;
        Ok(Felt(((l * e.rem_euclid(n)) % n) as u32 + 1))
    }

    /// Range-checked arithmetic.
    pub fn arith(&self, a: Felt, op: Arith) -> Result<Felt, GfError> {
        self.check(a)?;
        match op {
            Arith::Add(b) => {
                self.check(b)?;
                Ok(self.add(a, b))
            }
            Arith::Sub(b) => {
                self.check(b)?;
                Ok(self.sub(a, b))
            }
            Arith::Mul(b) => {
                self.check(b)?;
                Ok(self.mul(a, b))
            }
            Arith::Div(b) => {
                self.check(b)?;
                self.div(a, b)
            }
            Arith::Pow(e) => self.pow(a, e),
        }
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Felt) -> Felt {
        self.pow_nonneg(a, self.p as u64)
    }

    #[inline]
    fn pow_nonneg(&self, a: Felt, e: u64) -> Felt {
        if a.is_zero() {
            return if e == 0 { Felt::ONE } else { Felt::ZERO };
        }
        let n = (self.order - 1) as u64;
        Felt((((a.0 - 1) as u64 * (e % n)) % n) as u32 + 1)
    }

    fn require_q(&self) -> Result<u32, GfError> {
        self.sub_order.ok_or(GfError::NoQuadraticSubfieldDeclared)
    }

    /// Conjugation `a -> a^q` on GF(q^2).
    pub fn conj(&self, a: Felt) -> Result<Felt, GfError> {
        Ok(self.pow_nonneg(a, self.require_q()? as u64))
    }

    /// Conjugation without the subfield check; callers must hold a GF(q^2).
    #[inline]
    pub(crate) fn conj_unchecked(&self, a: Felt) -> Felt {
        self.pow_nonneg(a, self.sub_order.unwrap_or(1) as u64)
    }

    /// `(N(a), T(a)) = (a^(q+1), a + a^q)`, both in GF(q).
    pub fn norm_trace(&self, a: Felt) -> Result<(Felt, Felt), GfError> {
        let q = self.require_q()?;
        let c = self.pow_nonneg(a, q as u64);
        Ok((self.mul(a, c), self.add(a, c)))
    }

    /// Whether `a` lies in the declared subfield GF(q).
    pub fn in_subfield(&self, a: Felt) -> Result<bool, GfError> {
        let q = self.require_q()?;
        Ok(a.is_zero() || (a.0 - 1).is_multiple_of(q + 1))
    }
}

/// Splits `n = p^e` with `p` prime.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}
