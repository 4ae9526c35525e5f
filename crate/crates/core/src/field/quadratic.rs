//! Roots of `x^2 - a x - b` over `F_q`, and the quadratic extension used when it
//! stays irreducible.

use super::{Field, FieldElement, FieldError};
use crate::arith::IntegerFactorization;

/// An element `u + v*y` of a [`QuadraticExtension`], as base-field encodings.
pub type ExtElement = (u64, u64);

/// `F_q[y]/(y^2 - a y - b)` for an irreducible `y^2 - a y - b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticExtension {
    base: Field,
    a: u64,
    b: u64,
    /// Factorization of `q^2 - 1 = (q - 1)(q + 1)`.
    unit_order: IntegerFactorization,
}

impl QuadraticExtension {
    /// Caller guarantees irreducibility; see [`quadratic_roots`].
    fn new(base: Field, a: u64, b: u64) -> Self {
        let q = base.order();
        let unit_order = base.unit_group_factorization().merge(&crate::arith::factor_integer(q + 1));
        QuadraticExtension { base, a, b, unit_order }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `q^2`.
    pub fn order(&self) -> u64 {
        let q = self.base.order();
        q * q
    }

    /// The coset of `y`, a root of `y^2 - a y - b` by construction.
    pub fn root(&self) -> ExtElement {
        (0, 1)
    }

    pub fn mul(&self, x: ExtElement, z: ExtElement) -> ExtElement {
        let f = &self.base;
        let (u1, v1) = x;
        let (u2, v2) = z;
        // y^2 = a y + b
        let vv = f.mul(v1, v2);
        let u = f.add(f.mul(u1, u2), f.mul(vv, self.b));
        let v = f.add(f.add(f.mul(u1, v2), f.mul(u2, v1)), f.mul(vv, self.a));
        (u, v)
    }

    pub fn pow(&self, x: ExtElement, mut e: u128) -> ExtElement {
        let mut base = x;
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius image `x^q`.
    pub fn frobenius(&self, x: ExtElement) -> ExtElement {
        self.pow(x, self.base.order() as u128)
    }

    pub fn order_of(&self, x: ExtElement) -> Option<u64> {
        if x == (0, 0) {
            return None;
        }
        let mut l = self.order() - 1;
        for &(prime, exp) in self.unit_order.factors() {
            for _ in 0..exp {
                if self.pow(x, (l / prime) as u128) == (1, 0) {
                    l /= prime;
                } else {
                    break;
                }
            }
        }
        Some(l)
    }

    /// Embeds a base-field encoding.
    pub fn lift(&self, c: u64) -> ExtElement {
        (c, 0)
    }
}

/// How `x^2 - a x - b` factors over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootClassification {
    /// Two roots, `gamma1 < gamma2` in encoding order.
    DistinctSplit {
        gamma1: FieldElement,
        gamma2: FieldElement,
    },
    Repeated {
        gamma: FieldElement,
    },
    /// No roots in `F_q`; `gamma` is the coset of `y` in `ext`, the other root is `gamma^q`.
    Irreducible {
        ext: QuadraticExtension,
        gamma: ExtElement,
    },
}

impl RootClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            RootClassification::DistinctSplit { .. } => "distinct_split",
            RootClassification::Repeated { .. } => "repeated",
            RootClassification::Irreducible { .. } => "irreducible",
        }
    }
}

/// Classify `x^2 - a x - b` and find its roots.
///
/// Odd characteristic goes through the discriminant `a^2 + 4b` and a field square
/// root; characteristic 2 scans `F_q`. Roots are checked by substitution.
pub fn quadratic_roots(field: &Field, a: &FieldElement, b: &FieldElement) -> Result<RootClassification, FieldError> {
    if a.field() != field || b.field() != field {
        return Err(FieldError::MixedFields);
    }
    if b.is_zero() {
        return Err(FieldError::NonUnitB);
    }
    let (av, bv) = (a.value(), b.value());
    let is_root = |r: u64| field.sub(field.sub(field.square(r), field.mul(av, r)), bv) == 0;

    let roots: Vec<u64> = if field.characteristic() == 2 {
        (0..field.order()).filter(|&r| is_root(r)).collect()
    } else {
        let four_b = field.mul(field.element_from_coeffs(&[4]).value(), bv);
        let disc = field.add(field.square(av), four_b);
        let half = field.inv(field.element_from_coeffs(&[2]).value()).expect("odd characteristic");
        match field.sqrt(disc) {
            None => vec![],
            Some(0) => vec![field.mul(av, half)],
            Some(s) => {
                let mut r = vec![field.mul(field.add(av, s), half), field.mul(field.sub(av, s), half)];
                r.sort_unstable();
                r
            }
        }
    };
    assert!(roots.iter().all(|&r| is_root(r)), "root check failed for a={av} b={bv} over {field}");

    let elem = |v: u64| field.element(v).expect("root in range");
    Ok(match roots.as_slice() {
        [] => {
            let ext = QuadraticExtension::new(field.clone(), av, bv);
            let gamma = ext.root();
            RootClassification::Irreducible { ext, gamma }
        }
        [g] => RootClassification::Repeated { gamma: elem(*g) },
        [g1, g2] => RootClassification::DistinctSplit { gamma1: elem(*g1), gamma2: elem(*g2) },
        _ => unreachable!("a quadratic has at most two roots"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, v: u64) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn worked_examples() {
        let f163 = Field::prime(163).unwrap();
        let c = quadratic_roots(&f163, &el(&f163, 9), &el(&f163, 159)).unwrap();
        assert_eq!(c, RootClassification::DistinctSplit { gamma1: el(&f163, 23), gamma2: el(&f163, 149) });

        let f3 = Field::prime(3).unwrap();
        let c = quadratic_roots(&f3, &el(&f3, 2), &el(&f3, 2)).unwrap();
        assert_eq!(c, RootClassification::Repeated { gamma: el(&f3, 1) });

        let f5 = Field::prime(5).unwrap();
        let c = quadratic_roots(&f5, &el(&f5, 1), &el(&f5, 3)).unwrap();
        assert_eq!(c.tag(), "irreducible");
    }

    #[test]
    fn zero_b_rejected() {
        let f = Field::prime(7).unwrap();
        assert_eq!(quadratic_roots(&f, &el(&f, 1), &el(&f, 0)), Err(FieldError::NonUnitB));
    }

    #[test]
    fn classification_matches_root_scan() {
        for (p, k) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (5, 2), (2, 4)] {
            let f = Field::new(p, k, None).unwrap();
            for a in 0..f.order() {
                for b in 1..f.order() {
                    let roots: Vec<u64> =
                        (0..f.order()).filter(|&r| f.sub(f.sub(f.square(r), f.mul(a, r)), b) == 0).collect();
                    let c = quadratic_roots(&f, &el(&f, a), &el(&f, b)).unwrap();
                    match (&c, roots.len()) {
                        (RootClassification::DistinctSplit { gamma1, gamma2 }, 2) => {
                            assert_eq!(vec![gamma1.value(), gamma2.value()], roots);
                            assert_eq!(f.add(gamma1.value(), gamma2.value()), a);
                            assert_eq!(f.mul(gamma1.value(), gamma2.value()), f.neg(b));
                        }
                        (RootClassification::Repeated { gamma }, 1) => {
                            assert_eq!(gamma.value(), roots[0]);
                            assert_eq!(f.square(gamma.value()), f.neg(b));
                            if p != 2 {
                                assert_eq!(f.add(gamma.value(), gamma.value()), a);
                            }
                        }
                        (RootClassification::Irreducible { .. }, 0) => {}
                        _ => panic!("{f} a={a} b={b}: {c:?} vs {roots:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn extension_root_and_conjugate() {
        let f5 = Field::prime(5).unwrap();
        let RootClassification::Irreducible { ext, gamma } = quadratic_roots(&f5, &el(&f5, 1), &el(&f5, 3)).unwrap()
        else {
            panic!("expected irreducible");
        };
        // gamma^2 = a gamma + b
        assert_eq!(ext.mul(gamma, gamma), (3, 1));
        let conj = ext.frobenius(gamma);
        assert_ne!(conj, gamma);
        assert_eq!(ext.mul(gamma, conj), ext.lift(f5.neg(3)));
        assert_eq!(ext.order_of(gamma), Some(24));
        assert_eq!(ext.order_of(conj), Some(24));
    }
}
