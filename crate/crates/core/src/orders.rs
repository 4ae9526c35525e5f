//! Order relations in abelian groups when `g1 * g2 = g3`.
//!
//! Everything here is pure integer arithmetic on element orders, except
//! [`three_length_construction`], which realizes the coprime split inside `F_q^x`.
//!
//! Where a relation is stated for "the smaller" of two orders, the caller sorts;
//! nothing here swaps arguments behind your back.

use crate::arith::{crt_pair, factor_integer, gcd};
use crate::field::{Field, FieldElement, FieldError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("m = {m} and n = {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    #[error("r = {r} is not m * n = {m} * {n}")]
    ProductMismatch { r: u64, m: u64, n: u64 },
    #[error("order of -b is {0}, a prime power (or 1), so no coprime split exists")]
    PrimePowerOrder(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(|g1|, |g2|, |g3|)` for `g1 * g2 = g3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderTriple {
    pub m: u64,
    pub n: u64,
    pub r: u64,
}

/// Predicted partner order `n` given the smaller order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerPrediction {
    Equal,
    /// `n = factor * m`, `factor > 1`.
    Scaled(u64),
}

impl PartnerPrediction {
    pub fn factor(self) -> u64 {
        match self {
            PartnerPrediction::Equal => 1,
            PartnerPrediction::Scaled(f) => f,
        }
    }

    pub fn partner_order(self, m: u64) -> u64 {
        self.factor() * m
    }
}

/// p-adic valuation of `n >= 1`.
pub fn vp(mut n: u64, p: u64) -> u32 {
    assert!(n >= 1 && p >= 2);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `|g^s|` for `|g| = m`.
pub fn order_of_power(m: u64, s: u64) -> u64 {
    m / gcd(s, m)
}

/// Whether `p` divides `|g^s|` for `|g| = m`, decided by valuations.
pub fn power_keeps_p(m: u64, s: u64, p: u64) -> bool {
    vp(m, p) > vp(s, p)
}

/// `|g3| = r` prime, `m` the smaller order: `r | m` forces equality, otherwise `n = r m`.
pub fn partner_order_prime(m: u64, r: u64) -> PartnerPrediction {
    if m % r == 0 {
        PartnerPrediction::Equal
    } else {
        PartnerPrediction::Scaled(r)
    }
}

/// `|g3| = p^alpha`, `m` the order with the smaller p-adic valuation.
pub fn partner_order_prime_power(m: u64, p: u64, alpha: u32) -> PartnerPrediction {
    let k = vp(m, p);
    if k >= alpha {
        PartnerPrediction::Equal
    } else {
        PartnerPrediction::Scaled(p.pow(alpha - k))
    }
}

/// Exponents `(k1, k2)` with `|g^k1| = m`, `|g^k2| = n` and `g^k1 * g^k2 = g` for `|g| = r = m n`.
///
/// `k1` is the CRT solution of `k1 = 0 (mod n)`, `k1 = 1 (mod m)` taken in `[1, r]`;
/// `k2 = r + 1 - k1`.
pub fn crt_exponent_split(r: u64, m: u64, n: u64) -> Result<(u64, u64), OrderError> {
    if m == 0 || n == 0 || m.checked_mul(n) != Some(r) {
        return Err(OrderError::ProductMismatch { r, m, n });
    }
    let k1 = crt_pair(0, n, 1, m).ok_or(OrderError::NotCoprime { m, n })?;
    let k1 = if k1 == 0 { r } else { k1 };
    Ok((k1, r + 1 - k1))
}

/// Output of [`three_length_construction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLengthWitness {
    pub a: FieldElement,
    pub gamma1: FieldElement,
    pub gamma2: FieldElement,
    /// `|gamma1|`, the smallest prime power dividing `|-b|` exactly.
    pub m: u64,
    /// `|gamma2| = |-b| / m`.
    pub n: u64,
}

/// Choose `a` so that `x^2 - a x - b` has roots of coprime orders `m, n > 1`.
///
/// Splits `r = |-b|` as `m = ` the smallest prime-power factor of `r` and `n = r / m`,
/// then takes `gamma_i = (-b)^{k_i}` from [`crt_exponent_split`] and `a = gamma1 + gamma2`.
pub fn three_length_construction(field: &Field, b: &FieldElement) -> Result<ThreeLengthWitness, OrderError> {
    if b.field() != field {
        return Err(FieldError::MixedFields.into());
    }
    if b.is_zero() {
        return Err(FieldError::NonUnitB.into());
    }
    let neg_b = -b;
    let r = neg_b.multiplicative_order()?;
    let fact = factor_integer(r);
    if fact.factors().len() < 2 {
        return Err(OrderError::PrimePowerOrder(r));
    }
    let m = fact.factors().iter().map(|&(p, e)| p.pow(e)).min().expect("at least two prime factors");
    let n = r / m;
    let (k1, k2) = crt_exponent_split(r, m, n)?;
    let gamma1 = neg_b.pow(k1 as i128)?;
    let gamma2 = neg_b.pow(k2 as i128)?;
    let a = &gamma1 + &gamma2;
    Ok(ThreeLengthWitness { a, gamma1, gamma2, m, n })
}
