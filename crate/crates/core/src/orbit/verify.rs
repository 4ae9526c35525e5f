//! Cross-check analytic predictions against brute-force enumeration.

use super::enumerate::Stepper;
use super::{Analysis, Companion, OrbitError, OrbitSpectrum, PrimitiveRootCensus};
use crate::arith::{factor_integer, is_prime};
use crate::field::RootClassification;
use crate::orders::vp;
use serde::{Deserialize, Serialize};

/// Per-point disagreements are summarized after this many.
const MAX_POINT_MESSAGES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub a: u64,
    pub b: u64,
    pub classification: String,
    pub root_orders: Vec<u64>,
    pub predicted: OrbitSpectrum,
    pub enumerated: OrbitSpectrum,
    pub points_checked: u64,
    pub discrepancies: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Enumerate all orbits of `c`, compare with the prediction entry for entry, compare
/// [`Analysis::classify_vector`] with the enumerated length at every nonzero point,
/// and re-check every theorem side-condition that applies.
pub fn verify(c: &Companion) -> Result<VerificationReport, OrbitError> {
    let stepper = Stepper::new(c)?;
    let analysis = c.analyze();
    let predicted = analysis.predicted_spectrum();

    let mut discrepancies = Vec::new();
    let mut counts = Vec::new();
    let mut points_checked = 0u64;
    let mut bad_points = 0u64;
    stepper.for_each_orbit(|rep, len| {
        counts.push((len, 1));
        let mut cur = rep;
        loop {
            points_checked += 1;
            let vc = analysis.classify_vector(cur);
            if vc.predicted_length != len {
                bad_points += 1;
                if (bad_points as usize) <= MAX_POINT_MESSAGES {
                    discrepancies.push(format!(
                        "point ({}, {}): classified {:?} with length {}, orbit has length {len}",
                        cur.0, cur.1, vc.basis_case, vc.predicted_length
                    ));
                }
            }
            cur = stepper.step(cur);
            if cur == rep {
                break;
            }
        }
    });
    if bad_points as usize > MAX_POINT_MESSAGES {
        discrepancies.push(format!("... {bad_points} misclassified points in total"));
    }
    let enumerated = OrbitSpectrum::from_counts(counts);
    if predicted != enumerated {
        discrepancies.push(format!("predicted {predicted} but enumerated {enumerated}"));
    }
    discrepancies.extend(structural_violations(&analysis, &enumerated));

    Ok(VerificationReport {
        field: c.field().to_string(),
        a: c.a().value(),
        b: c.b().value(),
        classification: analysis.tag().to_string(),
        root_orders: analysis.root_orders().to_vec(),
        predicted,
        enumerated,
        points_checked,
        discrepancies,
    })
}

/// Every structural property the theory guarantees for `spectrum`, given the
/// root structure in `analysis`. Returns one message per violated property.
pub fn structural_violations(analysis: &Analysis, spectrum: &OrbitSpectrum) -> Vec<String> {
    let c = analysis.companion();
    let q = c.q();
    let p = c.field().characteristic();
    let lengths: Vec<u64> = spectrum.lengths().collect();
    let mut out = Vec::new();
    let mut check = |ok: bool, msg: &dyn Fn() -> String| {
        if !ok {
            out.push(msg());
        }
    };

    check(spectrum.covered_points() == q * q - 1, &|| {
        format!("orbits cover {} points, expected {}", spectrum.covered_points(), q * q - 1)
    });
    if lengths.is_empty() {
        return out;
    }

    match analysis.classification() {
        RootClassification::DistinctSplit { .. } => {
            check(lengths.iter().all(|l| (q - 1) % l == 0), &|| {
                format!("split roots but lengths {lengths:?} do not all divide q - 1 = {}", q - 1)
            });
            let r = analysis.order_of_neg_b();
            let fact = factor_integer(r);
            let l = lengths[0];
            if is_prime(r) {
                let ok = match lengths.as_slice() {
                    [l] => l % r == 0,
                    [l, rl] => l % r != 0 && *rl == r * l,
                    _ => false,
                };
                check(ok, &|| format!("|-b| = {r} prime but lengths are {lengths:?}"));
            }
            if let Some((pr, alpha)) = fact.as_prime_power() {
                let k = vp(l, pr);
                let ok = match lengths.as_slice() {
                    [_] => k >= alpha,
                    [_, big] => k < alpha && *big == pr.pow(alpha - k) * l,
                    _ => false,
                };
                check(ok, &|| format!("|-b| = {pr}^{alpha} but lengths are {lengths:?}"));
                let census = PrimitiveRootCensus::new(q, analysis.root_orders(), spectrum);
                check(census.consistent(), &|| format!("primitive-root census inconsistent: {census:?}"));
            }
            if r == 1 {
                check(lengths.len() == 1, &|| format!("-b = 1 but lengths are {lengths:?}"));
            }
            if lengths.len() >= 3 {
                check(!fact.is_prime_power() && r > 1, &|| {
                    format!("three lengths {lengths:?} although |-b| = {r} is a prime power")
                });
            }
            if lengths.len() <= 2 {
                check(spectrum.total_orbits() > q, &|| {
                    format!("{} orbits, fewer than q + 1 = {}", spectrum.total_orbits(), q + 1)
                });
            }
        }
        RootClassification::Repeated { .. } => {
            let l = analysis.root_orders()[0];
            check(lengths == [l, p * l], &|| {
                format!("repeated root of order {l}: expected lengths [{l}, {}], got {lengths:?}", p * l)
            });
            check((q - 1) % (p * l) != 0, &|| format!("p l = {} divides q - 1", p * l));
            let (n1, n2) = (spectrum.count_of(l), spectrum.count_of(p * l));
            check(n1 == (q - 1) / l && n2 == q * (q - 1) / (p * l), &|| {
                format!("repeated-root counts {n1}, {n2} do not match (q-1)/l, q(q-1)/(pl)")
            });
            if c.field().is_prime_field() {
                check(n1 == n2, &|| format!("prime field but counts differ: {n1} vs {n2}"));
            }
            if c.b().is_one() && p != 2 {
                check(q % 4 == 1, &|| format!("b = 1 with a repeated root but q = {q} is not 1 mod 4"));
                check(lengths == [4, 4 * p], &|| {
                    format!("b = 1 repeated root: lengths {lengths:?}, expected [4, {}]", 4 * p)
                });
            }
        }
        RootClassification::Irreducible { ext, gamma } => {
            let bound = super::irreducible_bound(c);
            let ok = match lengths.as_slice() {
                [l] => (q * q - 1) % l == 0 && (q - 1) % l != 0 && *l <= bound,
                _ => false,
            };
            check(ok, &|| format!("irreducible: lengths {lengths:?} (want one l | q^2-1, l !| q-1, l <= {bound})"));
            let conj = ext.frobenius(*gamma);
            check(conj != *gamma && ext.order_of(conj) == ext.order_of(*gamma), &|| {
                "conjugate root order differs".to_string()
            });
            check(spectrum.total_orbits() * lengths[0] == q * q - 1, &|| {
                "orbit count is not (q^2 - 1) / l".to_string()
            });
        }
    }
    out
}
