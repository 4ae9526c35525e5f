//! Field specs (`p`, `p^k`, `p^k/c0,...,ck`) and element arguments.

use crate::field::{Field, FieldElement, FieldError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse field spec {0:?}: expected p, p^k or p^k/c0,...,ck")]
    FieldSpec(String),
    #[error("cannot parse element {0:?}")]
    Element(String),
    #[error("ORBITFORGE_WORKERS={0:?} is not a positive integer")]
    Workers(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn number<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T, ParseError> {
    s.trim().parse().map_err(|_| ParseError::FieldSpec(whole.to_string()))
}

/// Parse a field spec; `"5^2/3,0,1"` is `F_5[x]/(x^2 + 3)`.
pub fn parse_field_spec(text: &str) -> Result<Field, ParseError> {
    let (order, modulus) = match text.split_once('/') {
        Some((o, m)) => (o, Some(m)),
        None => (text, None),
    };
    let (p, k) = match order.split_once('^') {
        Some((p, k)) => (number::<u64>(p, text)?, number::<u32>(k, text)?),
        None => (number::<u64>(order, text)?, 1),
    };
    let coeffs =
        modulus.map(|m| m.split(',').map(|c| number::<u64>(c, text)).collect::<Result<Vec<_>, _>>()).transpose()?;
    Ok(Field::new(p, k, coeffs.as_deref())?)
}

/// An element as its canonical encoding, or with `poly` as coefficients `c0,c1,...`.
pub fn parse_element(field: &Field, text: &str, poly: bool) -> Result<FieldElement, ParseError> {
    let bad = || ParseError::Element(text.to_string());
    if !poly {
        let v: u64 = text.trim().parse().map_err(|_| bad())?;
        return Ok(field.element(v)?);
    }
    let coeffs: Vec<u64> = text.split(',').map(|c| c.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if coeffs.len() > field.degree() as usize || coeffs.iter().any(|&c| c >= field.characteristic()) {
        return Err(bad());
    }
    Ok(field.element_from_coeffs(&coeffs))
}

/// Worker count from `ORBITFORGE_WORKERS`, if set.
pub fn workers_from_env() -> Result<Option<usize>, ParseError> {
    match std::env::var("ORBITFORGE_WORKERS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ParseError::Workers(s)),
        },
        Err(_) => Ok(None),
    }
}
