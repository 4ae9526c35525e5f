//! Lucas primitive roots: roots of `x^2 - a x - 1` that generate `F_q^x`.

use crate::arith::is_prime;
use crate::field::{quadratic_roots, Field, FieldElement, FieldError, RootClassification};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field of characteristic 2 is not supported here")]
    EvenCharacteristic,
    #[error("q = {q} is not {expected} mod 4")]
    WrongResidueClass { q: u64, expected: u64 },
    #[error("q = {0} is not 2p + 1 for an odd prime p")]
    BadFieldShape(u64),
    #[error("gamma must not be 1 or -1")]
    DegenerateGamma,
    #[error("{0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInfo {
    pub root: u64,
    pub order: u64,
    pub is_generator: bool,
}

/// How `x^2 - a x - 1` factors and which of its roots generate `F_q^x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LprReport {
    pub a: u64,
    pub classification: &'static str,
    /// Roots in `F_q`, ascending by encoding; empty when irreducible.
    pub roots: Vec<RootInfo>,
    pub lpr_count: u8,
}

/// One row of an LPR table: `gamma` of order `s`, its conjugate (the LPR), and `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LprEntry {
    pub gamma: FieldElement,
    pub conjugate: FieldElement,
    pub a: FieldElement,
}

/// `gamma - gamma^{-1}`; `gamma` is then a root of `x^2 - a x - 1`.
pub fn a_from_gamma(gamma: &FieldElement) -> Result<FieldElement, LucasError> {
    let inv = gamma.inv().map_err(|_| FieldError::ZeroElement)?;
    Ok(gamma - &inv)
}

/// The other root `-gamma^{-1}` of `x^2 - a x - 1`.
pub fn conjugate_root(gamma: &FieldElement) -> Result<FieldElement, LucasError> {
    let inv = gamma.inv().map_err(|_| FieldError::ZeroElement)?;
    Ok(-inv)
}

fn odd_q(field: &Field) -> Result<u64, LucasError> {
    if field.characteristic() == 2 {
        return Err(LucasError::EvenCharacteristic);
    }
    Ok(field.order())
}

pub fn lpr_status(field: &Field, a: &FieldElement) -> Result<LprReport, LucasError> {
    let q = odd_q(field)?;
    let class = quadratic_roots(field, a, &field.one())?;
    let info = |e: &FieldElement| {
        let order = e.multiplicative_order().expect("roots of x^2 - a x - 1 are units");
        RootInfo { root: e.value(), order, is_generator: order == q - 1 }
    };
    let roots = match &class {
        RootClassification::DistinctSplit { gamma1, gamma2 } => vec![info(gamma1), info(gamma2)],
        RootClassification::Repeated { gamma } => vec![info(gamma)],
        RootClassification::Irreducible { .. } => vec![],
    };
    let lpr_count = roots.iter().filter(|r| r.is_generator).count() as u8;
    Ok(LprReport { a: a.value(), classification: class.tag(), roots, lpr_count })
}

/// `q = 2^t s + 1` with `s` odd; returns `(t, s)`.
fn split_two_power(q: u64) -> (u32, u64) {
    let mut s = q - 1;
    let mut t = 0;
    while s % 2 == 0 {
        s /= 2;
        t += 1;
    }
    (t, s)
}

/// Every `a` for which `x^2 - a x - 1` has an LPR, when `q = 3 (mod 4)`.
///
/// Walks the elements `gamma` of order `s = (q - 1) / 2`; each gives
/// `a = gamma - gamma^{-1}` whose other root `-gamma^{-1}` has order `2s = q - 1`.
/// Sorted by the encoding of `a`; exactly `phi(s)` rows.
pub fn enumerate_lpr_as(field: &Field) -> Result<Vec<LprEntry>, LucasError> {
    let q = odd_q(field)?;
    if q % 4 != 3 {
        return Err(LucasError::WrongResidueClass { q, expected: 3 });
    }
    let s = (q - 1) / 2;
    let mut rows: Vec<LprEntry> = field
        .units()
        .filter(|g| g.multiplicative_order() == Ok(s))
        .map(|gamma| {
            let a = a_from_gamma(&gamma).expect("unit");
            let conjugate = conjugate_root(&gamma).expect("unit");
            LprEntry { gamma, conjugate, a }
        })
        .collect();
    rows.sort_by_key(|r| r.a.value());
    rows.dedup_by_key(|r| r.a.value());
    Ok(rows)
}

/// For `q = 2p + 1` with `p` an odd prime, any `gamma` other than `+-1` gives an `a`
/// with exactly one LPR.
pub fn sophie_germain_a(field: &Field, gamma: &FieldElement) -> Result<FieldElement, LucasError> {
    let q = field.order();
    if q < 7 || q % 2 == 0 || !is_prime((q - 1) / 2) {
        return Err(LucasError::BadFieldShape(q));
    }
    if gamma.field() != field {
        return Err(FieldError::MixedFields.into());
    }
    if gamma.is_zero() {
        return Err(FieldError::ZeroElement.into());
    }
    if gamma.is_one() || (-gamma).is_one() {
        return Err(LucasError::DegenerateGamma);
    }
    a_from_gamma(gamma)
}

/// For `q = 1 (mod 4)`, `q = 2^t s + 1`, and an `a` whose split polynomial has no
/// LPR: whether both root orders are at most `2s`.
///
/// This always holds when one root has odd order. Two roots sharing an even order
/// can exceed `2s` once `8 | q - 1` (`F_17`, `a = 7`: both of order 8), and then the
/// answer is `false`.
pub fn lpr_upper_bound_check(field: &Field, a: &FieldElement) -> Result<bool, LucasError> {
    let q = odd_q(field)?;
    if q % 4 != 1 {
        return Err(LucasError::WrongResidueClass { q, expected: 1 });
    }
    let report = lpr_status(field, a)?;
    if report.classification != "distinct_split" {
        return Err(LucasError::NotApplicable(format!(
            "x^2 - {}x - 1 is {}, not split with distinct roots",
            a.value(),
            report.classification
        )));
    }
    if report.lpr_count != 0 {
        return Err(LucasError::NotApplicable(format!(
            "a = {} has {} LPRs; the bound concerns the no-LPR case",
            a.value(),
            report.lpr_count
        )));
    }
    let (_, s) = split_two_power(q);
    Ok(report.roots.iter().all(|r| r.order <= 2 * s))
}
