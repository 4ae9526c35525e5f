//! Brute-force orbit enumeration with a visited table over all `q^2` points.

use super::{Companion, OrbitError, OrbitSpectrum, Point};
use crate::field::Field;
use std::collections::BTreeMap;

/// Largest `q` whose `q^2` points we are willing to sweep.
pub const ENUMERATION_MAX_ORDER: u64 = 1 << 13;

/// Precomputed `a * x` and `b * x` so one step is two lookups and an addition.
pub(super) struct Stepper {
    field: Field,
    q: u64,
    mul_a: Vec<u64>,
    mul_b: Vec<u64>,
    binary: bool,
}

impl Stepper {
    pub(super) fn new(c: &Companion) -> Result<Self, OrbitError> {
        let field = c.field().clone();
        let q = field.order();
        if q > ENUMERATION_MAX_ORDER {
            return Err(OrbitError::FieldTooLarge(q));
        }
        let (a, b) = (c.a().value(), c.b().value());
        let mul_a = (0..q).map(|x| field.mul(a, x)).collect();
        let mul_b = (0..q).map(|x| field.mul(b, x)).collect();
        let binary = field.characteristic() == 2;
        Ok(Stepper { field, q, mul_a, mul_b, binary })
    }

    #[inline]
    pub(super) fn step(&self, (x1, x0): Point) -> Point {
        let (s, t) = (self.mul_a[x1 as usize], self.mul_b[x0 as usize]);
        // characteristic 2 addition is xor on encodings
        let next = if self.binary { s ^ t } else { self.field.add(s, t) };
        (next, x1)
    }

    #[inline]
    fn index(&self, (x1, x0): Point) -> usize {
        (x1 * self.q + x0) as usize
    }

    /// Visit every non-trivial orbit once, calling `visit(representative, length)`.
    ///
    /// Points are scanned by ascending `(x1, x0)`; the representative is the first
    /// point of its orbit in that order.
    pub(super) fn for_each_orbit(&self, mut visit: impl FnMut(Point, u64)) {
        let q = self.q;
        let mut seen = vec![0u64; ((q * q) as usize).div_ceil(64)];
        let mark = |seen: &mut [u64], i: usize| seen[i / 64] |= 1 << (i % 64);
        let is_marked = |seen: &[u64], i: usize| seen[i / 64] & (1 << (i % 64)) != 0;
        for x1 in 0..q {
            for x0 in 0..q {
                let start = (x1, x0);
                let i = self.index(start);
                if start == (0, 0) || is_marked(&seen, i) {
                    continue;
                }
                mark(&mut seen, i);
                let mut len = 1;
                let mut cur = self.step(start);
                while cur != start {
                    mark(&mut seen, self.index(cur));
                    cur = self.step(cur);
                    len += 1;
                }
                visit(start, len);
            }
        }
    }
}

pub(super) fn enumerate_spectrum(c: &Companion) -> Result<OrbitSpectrum, OrbitError> {
    let stepper = Stepper::new(c)?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    stepper.for_each_orbit(|_, len| *counts.entry(len).or_insert(0) += 1);
    Ok(OrbitSpectrum::from_counts(counts))
}
