//! Integer helpers: gcd/lcm, primality, trial-division factorization.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest integer `factor_integer` accepts (trial division stays cheap).
pub const FACTOR_LIMIT: u64 = 1 << 52;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Deterministic primality by trial division. Fine for anything below 2^52.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Prime factorization as strictly increasing `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerFactorization {
    factors: Vec<(u64, u32)>,
}

impl IntegerFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Product of all prime powers.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// `Some((p, alpha))` when the factored integer is `p^alpha` with `alpha >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, e)] => Some((*p, *e)),
            _ => None,
        }
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Merge two factorizations of coprime-or-not integers into the factorization of their product.
    pub fn merge(&self, other: &IntegerFactorization) -> IntegerFactorization {
        let mut out: Vec<(u64, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        IntegerFactorization { factors: out }
    }
}

impl fmt::Display for IntegerFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Complete factorization by trial division.
///
/// `n = 0` has no factorization; it is returned as the empty product together with
/// `n = 1`, so callers must reject zero themselves. Panics above [`FACTOR_LIMIT`].
pub fn factor_integer(n: u64) -> IntegerFactorization {
    assert!(n <= FACTOR_LIMIT, "factor_integer: {n} exceeds 2^52");
    let mut factors = Vec::new();
    if n == 0 {
        return IntegerFactorization { factors };
    }
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d * d <= n {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    IntegerFactorization { factors }
}

pub fn euler_phi(n: u64) -> u64 {
    factor_integer(n).factors().iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Positive divisors of the factored integer, ascending.
pub fn divisors(f: &IntegerFactorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Solve `x = r1 (mod m1)`, `x = r2 (mod m2)` for coprime moduli; result in `[0, m1*m2)`.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<u64> {
    if gcd(m1, m2) != 1 {
        return None;
    }
    let modulus = m1 as i128 * m2 as i128;
    // m1 * inv(m1 mod m2) picks out the second residue class
    let inv = mod_inverse(m1 % m2.max(1), m2)? as i128;
    let r1 = r1 as i128 % m1 as i128;
    let r2 = r2 as i128 % m2 as i128;
    let t = ((r2 - r1) % m2 as i128 + m2 as i128) % m2 as i128 * inv % m2 as i128;
    let x = (r1 + m1 as i128 * t) % modulus;
    Some(x as u64)
}

/// Inverse of `a` modulo `m` via extended Euclid; `m = 1` yields 0.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
