//! Dense polynomials over a prime field, only as much as modulus validation needs.

use crate::arith::factor_integer;

/// Coefficients low-degree first, always trimmed (no trailing zeros; zero is `[]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimePoly {
    pub(crate) fn new(p: u64, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        trim(&mut c);
        PrimePoly { p, coeffs: c }
    }

    fn x(p: u64) -> Self {
        PrimePoly::new(p, &[0, 1])
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn sub(&self, other: &PrimePoly) -> PrimePoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0; n];
        for (i, slot) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        trim(&mut c);
        PrimePoly { p, coeffs: c }
    }

    fn rem(&self, m: &PrimePoly) -> PrimePoly {
        let p = self.p;
        let dm = m.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod(m.coeffs[dm], p);
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for i in 0..=dm {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + p - c * m.coeffs[i] % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        PrimePoly { p, coeffs: r }
    }

    fn mul_mod(&self, other: &PrimePoly, m: &PrimePoly) -> PrimePoly {
        if self.is_zero() || other.is_zero() {
            return PrimePoly { p: self.p, coeffs: vec![] };
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        trim(&mut c);
        PrimePoly { p, coeffs: c }.rem(m)
    }

    fn pow_mod(&self, mut e: u64, m: &PrimePoly) -> PrimePoly {
        let mut base = self.rem(m);
        let mut acc = PrimePoly::new(self.p, &[1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    fn gcd(&self, other: &PrimePoly) -> PrimePoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `f | x^(p^k) - x` and `gcd(f, x^(p^(k/r)) - x) = 1` for each prime `r | k`.
    pub(crate) fn is_irreducible(&self) -> bool {
        let k = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(k) => k,
        };
        let x = PrimePoly::x(self.p);
        // frob[j] = x^(p^j) mod f
        let mut frob = Vec::with_capacity(k + 1);
        frob.push(x.rem(self));
        for j in 1..=k {
            let prev: &PrimePoly = &frob[j - 1];
            frob.push(prev.pow_mod(self.p, self));
        }
        if !frob[k].sub(&x).rem(self).is_zero() {
            return false;
        }
        for r in factor_integer(k as u64).primes() {
            let g = frob[k / r as usize].sub(&x).gcd(self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::mod_inverse(a % p, p).expect("leading coefficient must be a unit")
}
