//! Exact arithmetic in `F_p` and `F_{p^k}`.
//!
//! Elements are addressed by their canonical encoding `sum coeffs[i] * p^i`
//! (coefficients low-degree first over the prime field). [`Field`] does the
//! arithmetic on raw encodings; [`FieldElement`] pairs an encoding with its
//! field and checks that operands agree.

mod poly;
mod quadratic;

pub use quadratic::{quadratic_roots, ExtElement, QuadraticExtension, RootClassification};

use crate::arith::{checked_pow, factor_integer, is_prime, IntegerFactorization};
use poly::PrimePoly;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

/// Largest field order supported for arithmetic (so `q^2` fits in a `u64`).
pub const MAX_ARITH_ORDER: u64 = 1 << 31;

/// Largest extension degree; `2^31` bounds every `p^k` anyway.
const MAX_DEGREE: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {modulus:?} does not describe a monic polynomial of degree {degree}")]
    DegreeMismatch { degree: u32, modulus: Vec<u64> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("field order {0} exceeds the supported arithmetic range")]
    TooLarge(String),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("element encoding {value} out of range for a field of order {order}")]
    OutOfRange { value: u64, order: u64 },
    #[error("b must be a unit")]
    NonUnitB,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldInner {
    p: u64,
    k: u32,
    /// Monic, length `k + 1`, low-degree first.
    modulus: Vec<u64>,
    q: u64,
    /// `p^i` for `i in 0..k`.
    place: Vec<u64>,
    /// Factorization of `q - 1`, used for element orders.
    unit_order: IntegerFactorization,
}

/// A validated finite field `F_{p^k} = F_p[x]/(modulus)`.
///
/// Cheap to clone; descriptors built from the same parameters compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

/// Renders the field in the `p` / `p^k/c0,...,ck` grammar.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.0;
        if i.k == 1 {
            return write!(f, "{}", i.p);
        }
        let coeffs: Vec<String> = i.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}/{}", i.p, i.k, coeffs.join(","))
    }
}

impl Field {
    /// Build `F_{p^k}`.
    ///
    /// With `modulus = None` and `k > 1` the modulus is the smallest monic
    /// irreducible of degree `k` when the coefficient tuple `(c0, c1, ..., c_{k-1})`
    /// is compared lexicographically. For `k = 1` the modulus defaults to `x`.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (k <= MAX_DEGREE)
            .then(|| checked_pow(p, k))
            .flatten()
            .filter(|&q| q <= MAX_ARITH_ORDER)
            .ok_or_else(|| FieldError::TooLarge(format!("{p}^{k}")))?;
        let modulus = match modulus {
            Some(m) => {
                let monic = m.len() == k as usize + 1 && m[k as usize] == 1 && m.iter().all(|&c| c < p);
                if !monic {
                    return Err(FieldError::DegreeMismatch { degree: k, modulus: m.to_vec() });
                }
                if !PrimePoly::new(p, m).is_irreducible() {
                    return Err(FieldError::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None if k == 1 => vec![0, 1],
            None => default_modulus(p, k),
        };
        let place = (0..k).map(|i| p.pow(i)).collect();
        Ok(Field(Arc::new(FieldInner { p, k, modulus, q, place, unit_order: factor_integer(q - 1) })))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn unit_group_factorization(&self) -> &IntegerFactorization {
        &self.0.unit_order
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.0.q {
            return Err(FieldError::OutOfRange { value, order: self.0.q });
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Element from coefficients (low-degree first); each reduced mod `p`, missing
    /// high coefficients are zero, and extra coefficients are reduced by the modulus.
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.0.p;
        let k = self.0.k as usize;
        let mut acc = 0;
        let mut x_pow = 1; // x^i reduced
        let x = if k == 1 { self.0.modulus[0] * (p - 1) % p } else { p };
        for &c in coeffs {
            acc = self.add(acc, self.mul(c % p, x_pow));
            x_pow = self.mul(x_pow, x);
        }
        FieldElement { field: self.clone(), value: acc }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 1 }
    }

    /// The coset of `x`; equals the element `-m0` in a prime field with modulus `x + m0`.
    pub fn generator_x(&self) -> FieldElement {
        self.element_from_coeffs(&[0, 1])
    }

    /// All `q - 1` units in ascending encoding order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.0.q).map(move |v| FieldElement { field: self.clone(), value: v })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| FieldElement { field: self.clone(), value: v })
    }

    pub fn decode(&self, value: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut v = value;
        for _ in 0..self.0.k {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().zip(&self.0.place).map(|(c, pl)| c * pl).sum()
    }

    // Raw arithmetic on encodings. Inputs must be `< q`.

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &pl in &self.0.place {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * pl;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        for &pl in &self.0.place {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * pl;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let k = self.0.k as usize;
        if k == 1 {
            return a * b % p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^k = -(m0 + m1 x + ... + m_{k-1} x^{k-1})
        let m = &self.0.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in m[..k].iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + p - c * mi % p) % p;
            }
        }
        self.encode(&prod[..k])
    }

    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    pub fn pow(&self, a: u64, mut e: u128) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        // units: exponents live mod q - 1
        e %= (self.0.q - 1) as u128;
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent; negative exponents go through the inverse.
    pub fn pow_signed(&self, a: u64, e: i128) -> Option<u64> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|i| self.pow(i, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.0.k == 1 {
            return crate::arith::mod_inverse(a, self.0.p);
        }
        Some(self.pow(a, (self.0.q - 2) as u128))
    }

    /// Smallest `l >= 1` with `a^l = 1`, by peeling prime factors off `q - 1`.
    pub fn order_of(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut l = self.0.q - 1;
        for &(prime, exp) in self.0.unit_order.factors() {
            for _ in 0..exp {
                if self.pow(a, (l / prime) as u128) == 1 {
                    l /= prime;
                } else {
                    break;
                }
            }
        }
        Some(l)
    }

    /// Square root by Tonelli-Shanks (odd characteristic) or Frobenius inversion
    /// (characteristic 2, where squaring is a bijection). `None` for non-squares.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        let q = self.0.q;
        if self.0.p == 2 {
            // a^(q/2) squares to a^q = a
            return Some(self.pow(a, (q / 2) as u128));
        }
        let half = ((q - 1) / 2) as u128;
        if self.pow(a, half) != 1 {
            return None;
        }
        // q - 1 = 2^s * t, t odd
        let mut t = q - 1;
        let mut s = 0u32;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let minus_one = self.neg(1);
        let z = (2..q).find(|&z| self.pow(z, half) == minus_one).expect("odd-order field has a non-residue");
        let mut m = s;
        let mut c = self.pow(z, t as u128);
        let mut x = self.pow(a, t.div_ceil(2) as u128);
        let mut b = self.pow(a, t as u128);
        while b != 1 {
            let mut i = 0;
            let mut b2 = b;
            while b2 != 1 {
                b2 = self.square(b2);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.square(g);
            }
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            m = i;
        }
        Some(x)
    }

    /// Human-readable polynomial form of an encoding, e.g. `2x^2 + x + 1`.
    pub fn format_poly(&self, value: u64) -> String {
        let coeffs = self.decode(value);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    // (c0, ..., c_{k-1}) lexicographic, c0 most significant; c0 = 0 is divisible by x
    let mut c = vec![0u64; k];
    c[0] = 1;
    loop {
        let mut m = c.clone();
        m.push(1);
        if PrimePoly::new(p, &m).is_irreducible() {
            return m;
        }
        let mut i = k - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
            i -= 1;
        }
    }
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}", self.field.format_poly(self.value))
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.field == other.field).then(|| self.value.cmp(&other.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical integer encoding.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.decode(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    fn with(&self, value: u64) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.with(self.field.mul(self.value, inv.value)))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field.inv(self.value).map(|v| self.with(v)).ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: i128) -> Result<FieldElement, FieldError> {
        self.field.pow_signed(self.value, e).map(|v| self.with(v)).ok_or(FieldError::DivisionByZero)
    }

    pub fn multiplicative_order(&self) -> Result<u64, FieldError> {
        self.field.order_of(self.value).ok_or(FieldError::ZeroElement)
    }

    pub fn sqrt(&self) -> Option<FieldElement> {
        self.field.sqrt(self.value).map(|v| self.with(v))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands belong to different fields; use the `checked_*` form to handle that.
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("mixed-field arithmetic")
            }
        }

        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
