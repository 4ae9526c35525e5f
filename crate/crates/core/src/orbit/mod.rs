//! Orbits of `<Q>`, `Q = [[a, b], [1, 0]]`, acting on `F_q x F_q`.
//!
//! A point is a pair of encodings `(x1, x0)`; one step maps it to
//! `(a x1 + b x0, x1)`, i.e. advances the recurrence `x_{n+2} = a x_{n+1} + b x_n`.
//! The origin is the trivial orbit and never appears in an [`OrbitSpectrum`].

mod enumerate;
mod verify;

pub use enumerate::ENUMERATION_MAX_ORDER;
pub use verify::{structural_violations, verify, VerificationReport};

use crate::arith::{factor_integer, lcm};
use crate::field::{quadratic_roots, Field, FieldElement, FieldError, RootClassification};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// `(x1, x0)` as canonical encodings.
pub type Point = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero vector is the trivial orbit")]
    ZeroVector,
    #[error("field of order {0} is too large to enumerate")]
    FieldTooLarge(u64),
    #[error("operation needs a {expected} characteristic polynomial, got {actual}")]
    WrongClassification { expected: &'static str, actual: &'static str },
    #[error("order of -b is {0}, not a prime power")]
    NotPrimePower(u64),
    #[error("point ({0}, {1}) is not in the field")]
    PointOutOfRange(u64, u64),
}

/// The recurrence `x_{n+2} = a x_{n+1} + b x_n` over a field, `b` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Companion {
    a: FieldElement,
    b: FieldElement,
}

impl fmt::Display for Companion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(a={}, b={}) over {}", self.a.value(), self.b.value(), self.field())
    }
}

impl Companion {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Companion, OrbitError> {
        if a.field() != b.field() {
            return Err(FieldError::MixedFields.into());
        }
        if b.is_zero() {
            return Err(FieldError::NonUnitB.into());
        }
        Ok(Companion { a, b })
    }

    /// From canonical encodings.
    pub fn from_values(field: &Field, a: u64, b: u64) -> Result<Companion, OrbitError> {
        Companion::new(field.element(a)?, field.element(b)?)
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.field().order()
    }

    pub fn classify(&self) -> RootClassification {
        quadratic_roots(self.field(), &self.a, &self.b).expect("companion invariants hold")
    }

    pub fn step(&self, (x1, x0): Point) -> Point {
        let f = self.field();
        (f.add(f.mul(self.a.value(), x1), f.mul(self.b.value(), x0)), x1)
    }

    fn check_point(&self, v: Point) -> Result<(), OrbitError> {
        let q = self.q();
        if v.0 >= q || v.1 >= q {
            return Err(OrbitError::PointOutOfRange(v.0, v.1));
        }
        if v == (0, 0) {
            return Err(OrbitError::ZeroVector);
        }
        Ok(())
    }

    /// Smallest `l >= 1` with `Q^l v = v`, by iteration.
    pub fn orbit_length_of(&self, v: Point) -> Result<u64, OrbitError> {
        self.check_point(v)?;
        let mut cur = self.step(v);
        let mut len = 1;
        while cur != v {
            cur = self.step(cur);
            len += 1;
            debug_assert!(len < self.q() * self.q());
        }
        Ok(len)
    }

    /// Classification plus root orders, computed once.
    pub fn analyze(&self) -> Analysis {
        Analysis::new(self.clone())
    }

    pub fn predict_spectrum(&self) -> OrbitSpectrum {
        self.analyze().predicted_spectrum()
    }

    pub fn enumerate_spectrum(&self) -> Result<OrbitSpectrum, OrbitError> {
        enumerate::enumerate_spectrum(self)
    }

    pub fn classify_vector(&self, v: Point) -> Result<VectorClass, OrbitError> {
        self.check_point(v)?;
        Ok(self.analyze().classify_vector(v))
    }

    /// Whether every length in `spectrum` divides `q - 1`; only meaningful for split roots.
    pub fn check_divisibility(&self, spectrum: &OrbitSpectrum) -> Result<bool, OrbitError> {
        let analysis = self.analyze();
        analysis.expect_class("distinct_split")?;
        let q = self.q();
        Ok(spectrum.lengths().all(|l| (q - 1) % l == 0))
    }

    /// `2 (q + 1) |b^2|`, an upper bound on the orbit length when `x^2 - a x - b` is irreducible.
    pub fn irreducible_length_bound(&self) -> Result<u64, OrbitError> {
        self.analyze().expect_class("irreducible")?;
        Ok(irreducible_bound(self))
    }

    pub fn primitive_root_census(&self) -> Result<PrimitiveRootCensus, OrbitError> {
        let analysis = self.analyze();
        analysis.expect_class("distinct_split")?;
        let r = analysis.order_of_neg_b();
        if !factor_integer(r).is_prime_power() {
            return Err(OrbitError::NotPrimePower(r));
        }
        Ok(PrimitiveRootCensus::new(self.q(), &analysis.root_orders, &analysis.predicted_spectrum()))
    }
}

fn irreducible_bound(c: &Companion) -> u64 {
    let b2 = c.b() * c.b();
    2 * (c.q() + 1) * b2.multiplicative_order().expect("b is a unit")
}

/// Multiset of non-trivial orbit lengths, as `(length, count)` with strictly increasing lengths.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrbitSpectrum {
    entries: Vec<(u64, u64)>,
}

impl OrbitSpectrum {
    /// Merge `(length, count)` pairs; zero counts are dropped.
    pub fn from_counts<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (l, c) in pairs {
            if c > 0 {
                *map.entry(l).or_insert(0) += c;
            }
        }
        OrbitSpectrum { entries: map.into_iter().collect() }
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(l, _)| l)
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(_, c)| c)
    }

    pub fn count_of(&self, length: u64) -> u64 {
        self.entries.iter().find(|&&(l, _)| l == length).map_or(0, |&(_, c)| c)
    }

    /// Number of distinct lengths.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_orbits(&self) -> u64 {
        self.counts().sum()
    }

    /// `sum length * count`; equals `q^2 - 1` for a full spectrum.
    pub fn covered_points(&self) -> u64 {
        self.entries.iter().map(|&(l, c)| l * c).sum()
    }
}

impl fmt::Display for OrbitSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisCase {
    /// Multiple of the eigenvector `(gamma1, 1)`.
    EigenlineOne,
    /// Multiple of the eigenvector `(gamma2, 1)`.
    EigenlineTwo,
    /// Off both eigenlines: length `lcm(|gamma1|, |gamma2|)`.
    Generic,
    /// Multiple of `(gamma, 1)` for a repeated root: length `|gamma|`.
    JordanTop,
    /// Everything else under a repeated root: length `p |gamma|`.
    JordanGeneric,
    /// Irreducible characteristic polynomial: every point has the same length.
    ExtGeneric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorClass {
    pub predicted_length: u64,
    pub basis_case: BasisCase,
}

/// A companion with its root classification and root orders resolved.
#[derive(Debug, Clone)]
pub struct Analysis {
    companion: Companion,
    classification: RootClassification,
    /// Classification order: `[|gamma1|, |gamma2|]`, `[|gamma|]` or `[|gamma|]` in `F_{q^2}`.
    root_orders: Vec<u64>,
}

impl Analysis {
    fn new(companion: Companion) -> Self {
        let classification = companion.classify();
        let ord = |e: &FieldElement| e.multiplicative_order().expect("roots are units");
        let root_orders = match &classification {
            RootClassification::DistinctSplit { gamma1, gamma2 } => vec![ord(gamma1), ord(gamma2)],
            RootClassification::Repeated { gamma } => vec![ord(gamma)],
            RootClassification::Irreducible { ext, gamma } => {
                vec![ext.order_of(*gamma).expect("root is a unit")]
            }
        };
        Analysis { companion, classification, root_orders }
    }

    pub fn companion(&self) -> &Companion {
        &self.companion
    }

    pub fn classification(&self) -> &RootClassification {
        &self.classification
    }

    pub fn tag(&self) -> &'static str {
        self.classification.tag()
    }

    pub fn root_orders(&self) -> &[u64] {
        &self.root_orders
    }

    pub fn sorted_root_orders(&self) -> Vec<u64> {
        let mut v = self.root_orders.clone();
        v.sort_unstable();
        v
    }

    /// `|-b|` in `F_q^x`.
    pub fn order_of_neg_b(&self) -> u64 {
        (-self.companion.b()).multiplicative_order().expect("b is a unit")
    }

    fn expect_class(&self, expected: &'static str) -> Result<(), OrbitError> {
        if self.tag() == expected {
            Ok(())
        } else {
            Err(OrbitError::WrongClassification { expected, actual: self.tag() })
        }
    }

    /// Orbit counts from the eigen/Jordan structure.
    ///
    /// Split roots of orders `m`, `n`: `(q-1)/m` orbits of length `m`, `(q-1)/n` of
    /// length `n`, `(q-1)^2 / lcm(m, n)` of length `lcm(m, n)`, equal lengths merged.
    /// Repeated root of order `l`: `(q-1)/l` of length `l`, `q(q-1)/(pl)` of length `pl`.
    /// Irreducible with root order `l` in `F_{q^2}`: `(q^2-1)/l` of length `l`.
    pub fn predicted_spectrum(&self) -> OrbitSpectrum {
        let q = self.companion.q();
        match self.classification {
            RootClassification::DistinctSplit { .. } => {
                let (m, n) = (self.root_orders[0], self.root_orders[1]);
                let l = lcm(m, n);
                OrbitSpectrum::from_counts([
                    (m, exact_div(q - 1, m)),
                    (n, exact_div(q - 1, n)),
                    (l, exact_div((q - 1) * (q - 1), l)),
                ])
            }
            RootClassification::Repeated { .. } => {
                let l = self.root_orders[0];
                let p = self.companion.field().characteristic();
                OrbitSpectrum::from_counts([(l, exact_div(q - 1, l)), (p * l, exact_div(q * (q - 1), p * l))])
            }
            RootClassification::Irreducible { .. } => {
                let l = self.root_orders[0];
                OrbitSpectrum::from_counts([(l, exact_div(q * q - 1, l))])
            }
        }
    }

    /// Which invariant subspace `v` lies in, and the orbit length that implies.
    /// `v` must be a nonzero point of the field.
    pub fn classify_vector(&self, (x1, x0): Point) -> VectorClass {
        let f = self.companion.field();
        let on_line = |gamma: &FieldElement| x0 != 0 && x1 == f.mul(gamma.value(), x0);
        let (predicted_length, basis_case) = match &self.classification {
            RootClassification::DistinctSplit { gamma1, gamma2 } => {
                let (m, n) = (self.root_orders[0], self.root_orders[1]);
                if on_line(gamma1) {
                    (m, BasisCase::EigenlineOne)
                } else if on_line(gamma2) {
                    (n, BasisCase::EigenlineTwo)
                } else {
                    (lcm(m, n), BasisCase::Generic)
                }
            }
            RootClassification::Repeated { gamma } => {
                let l = self.root_orders[0];
                if on_line(gamma) {
                    (l, BasisCase::JordanTop)
                } else {
                    (f.characteristic() * l, BasisCase::JordanGeneric)
                }
            }
            RootClassification::Irreducible { .. } => (self.root_orders[0], BasisCase::ExtGeneric),
        };
        VectorClass { predicted_length, basis_case }
    }
}

fn exact_div(num: u64, den: u64) -> u64 {
    debug_assert_eq!(num % den, 0, "{num} / {den}");
    num / den
}

/// Primitive roots of a split characteristic polynomial, next to the orbit counts
/// that are supposed to reveal them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRootCensus {
    /// Roots generating `F_q^x` (0, 1 or 2).
    pub primitive_roots: u8,
    pub total_orbits: u64,
    pub orbits_of_length_q_minus_1: u64,
    pub q: u64,
}

impl PrimitiveRootCensus {
    pub fn new(q: u64, root_orders: &[u64], spectrum: &OrbitSpectrum) -> Self {
        PrimitiveRootCensus {
            primitive_roots: root_orders.iter().filter(|&&o| o == q - 1).count() as u8,
            total_orbits: spectrum.total_orbits(),
            orbits_of_length_q_minus_1: spectrum.count_of(q - 1),
            q,
        }
    }

    /// Two generators iff `q + 1` orbits; exactly one iff exactly `q` orbits of length `q - 1`.
    pub fn consistent(&self) -> bool {
        let two = (self.primitive_roots == 2) == (self.total_orbits == self.q + 1);
        let one = (self.primitive_roots == 1) == (self.orbits_of_length_q_minus_1 == self.q);
        two && one
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn companion(field: &Field, a: u64, b: u64) -> Companion {
        Companion::from_values(field, a, b).unwrap()
    }

    fn spectrum(pairs: &[(u64, u64)]) -> OrbitSpectrum {
        OrbitSpectrum::from_counts(pairs.iter().copied())
    }

    #[test]
    fn rejects_zero_b_and_mixed_fields() {
        let f7 = Field::prime(7).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Companion::from_values(&f7, 1, 0), Err(OrbitError::Field(FieldError::NonUnitB)));
        assert_eq!(Companion::new(f7.one(), f5.one()), Err(OrbitError::Field(FieldError::MixedFields)));
    }

    #[test]
    fn classify_examples() {
        let f163 = Field::prime(163).unwrap();
        match companion(&f163, 9, 159).classify() {
            RootClassification::DistinctSplit { gamma1, gamma2 } => {
                assert_eq!((gamma1.value(), gamma2.value()), (23, 149))
            }
            other => panic!("{other:?}"),
        }
        let f13 = Field::prime(13).unwrap();
        match companion(&f13, 8, 10).classify() {
            RootClassification::Repeated { gamma } => assert_eq!(gamma.value(), 4),
            other => panic!("{other:?}"),
        }
        let f5 = Field::prime(5).unwrap();
        assert_eq!(companion(&f5, 1, 3).classify().tag(), "irreducible");
    }

    #[test]
    fn step_examples() {
        let f5 = Field::prime(5).unwrap();
        let fib = companion(&f5, 1, 1);
        assert_eq!(fib.step((1, 0)), (1, 1));
        assert_eq!(fib.step((0, 0)), (0, 0));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(companion(&f3, 2, 2).step((1, 1)), (1, 1));
    }

    #[test]
    fn orbit_length_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(companion(&f5, 1, 1).orbit_length_of((1, 0)), Ok(20));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(companion(&f3, 2, 2).orbit_length_of((1, 1)), Ok(1));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(companion(&f7, 0, 1).orbit_length_of((3, 3)), Ok(1));
        assert_eq!(companion(&f7, 0, 1).orbit_length_of((0, 0)), Err(OrbitError::ZeroVector));
        assert_eq!(companion(&f7, 0, 1).orbit_length_of((7, 0)), Err(OrbitError::PointOutOfRange(7, 0)));
    }

    #[test]
    fn predict_examples() {
        let f163 = Field::prime(163).unwrap();
        assert_eq!(companion(&f163, 9, 159).predict_spectrum(), spectrum(&[(18, 9), (162, 163)]));
        let f13 = Field::prime(13).unwrap();
        assert_eq!(companion(&f13, 8, 10).predict_spectrum(), spectrum(&[(6, 2), (78, 2)]));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(companion(&f5, 1, 3).predict_spectrum(), spectrum(&[(24, 1)]));
        assert_eq!(companion(&f5, 1, 1).predict_spectrum(), spectrum(&[(4, 1), (20, 1)]));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(companion(&f7, 3, 4).predict_spectrum(), spectrum(&[(2, 3), (3, 2), (6, 6)]));
    }

    #[test]
    fn predict_f25_repeated_root_of_order_12() {
        // gamma = x + 1 over F_5[x]/(x^2 - 2); a = 2 gamma, b = -gamma^2
        let f25 = Field::new(5, 2, Some(&[3, 0, 1])).unwrap();
        let gamma = f25.element_from_coeffs(&[1, 1]);
        assert_eq!(gamma.multiplicative_order(), Ok(12));
        let a = &gamma + &gamma;
        let b = -(&gamma * &gamma);
        let c = Companion::new(a, b).unwrap();
        assert_eq!(c.predict_spectrum(), spectrum(&[(12, 2), (60, 10)]));
    }

    #[test]
    fn classify_vector_examples() {
        let f3 = Field::prime(3).unwrap();
        let vc = companion(&f3, 2, 2).classify_vector((1, 1)).unwrap();
        assert_eq!(vc, VectorClass { predicted_length: 1, basis_case: BasisCase::JordanTop });
        // (1, 0) is off the eigenline even though its Jordan-basis reading might suggest otherwise
        let vc = companion(&f3, 2, 2).classify_vector((1, 0)).unwrap();
        assert_eq!(vc, VectorClass { predicted_length: 3, basis_case: BasisCase::JordanGeneric });

        let f5 = Field::prime(5).unwrap();
        let fib = companion(&f5, 1, 1);
        let vc = fib.classify_vector((3, 1)).unwrap();
        assert_eq!(vc, VectorClass { predicted_length: 4, basis_case: BasisCase::JordanTop });
        assert_eq!(fib.orbit_length_of((3, 1)), Ok(4));

        let f163 = Field::prime(163).unwrap();
        let c = companion(&f163, 9, 159);
        let vc = c.classify_vector((23, 1)).unwrap();
        assert_eq!(vc.basis_case, BasisCase::EigenlineOne);
        assert_eq!(vc.predicted_length, c.orbit_length_of((23, 1)).unwrap());
        assert_eq!(vc.predicted_length, f163.element(23).unwrap().multiplicative_order().unwrap());

        assert_eq!(fib.classify_vector((0, 0)), Err(OrbitError::ZeroVector));
    }

    #[test]
    fn classify_vector_matches_iteration_small_fields() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, k, None).unwrap();
            for a in 0..f.order() {
                for b in 1..f.order() {
                    let c = companion(&f, a, b);
                    let an = c.analyze();
                    for x1 in 0..f.order() {
                        for x0 in 0..f.order() {
                            if (x1, x0) == (0, 0) {
                                continue;
                            }
                            let vc = an.classify_vector((x1, x0));
                            assert_eq!(Ok(vc.predicted_length), c.orbit_length_of((x1, x0)), "{c} at ({x1},{x0})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_check() {
        let f163 = Field::prime(163).unwrap();
        let c = companion(&f163, 9, 159);
        assert_eq!(c.check_divisibility(&c.predict_spectrum()), Ok(true));
        let f7 = Field::prime(7).unwrap();
        let c = companion(&f7, 3, 4);
        assert_eq!(c.check_divisibility(&c.predict_spectrum()), Ok(true));
        let f5 = Field::prime(5).unwrap();
        let c = companion(&f5, 1, 1);
        assert_eq!(
            c.check_divisibility(&c.predict_spectrum()),
            Err(OrbitError::WrongClassification { expected: "distinct_split", actual: "repeated" })
        );
    }

    #[test]
    fn irreducible_bounds() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(companion(&f5, 1, 3).irreducible_length_bound(), Ok(24));
        // b = sqrt(3) = 2x over F_5[x]/(x^2 - 2)
        let f25 = Field::new(5, 2, Some(&[3, 0, 1])).unwrap();
        let b = f25.element_from_coeffs(&[0, 2]);
        assert_eq!((&b * &b).value(), 3);
        let c = Companion::new(f25.one(), b).unwrap();
        assert_eq!(c.irreducible_length_bound(), Ok(208));
        assert_eq!(c.predict_spectrum(), spectrum(&[(208, 3)]));
        // b = -1, so b^2 = 1; disc = 1 + 16 = 2 is a non-residue mod 5
        let c = companion(&f5, 1, 4);
        assert_eq!(c.irreducible_length_bound(), Ok(12));
        assert!(matches!(companion(&f5, 1, 1).irreducible_length_bound(), Err(OrbitError::WrongClassification { .. })));
    }

    #[test]
    fn census_examples() {
        let f7 = Field::prime(7).unwrap();
        let census = companion(&f7, 5, 1).primitive_root_census().unwrap();
        assert_eq!(census.primitive_roots, 1);
        assert_eq!(census.orbits_of_length_q_minus_1, 7);
        assert!(census.consistent());

        let f25 = Field::new(5, 2, Some(&[3, 0, 1])).unwrap();
        let a = f25.element_from_coeffs(&[1, 1]);
        let census = Companion::new(a, f25.one()).unwrap().primitive_root_census().unwrap();
        assert_eq!(census.primitive_roots, 2);
        assert_eq!(census.total_orbits, 26);
        assert!(census.consistent());

        // F_7, a=0, b=1: roots +-1, no generators
        let census = companion(&f7, 0, 1).primitive_root_census().unwrap();
        assert_eq!(census.primitive_roots, 0);
        assert!(census.consistent());

        // F_7, b = 4: |-b| = |3| = 6 is not a prime power
        assert_eq!(companion(&f7, 3, 4).primitive_root_census(), Err(OrbitError::NotPrimePower(6)));
    }
}
