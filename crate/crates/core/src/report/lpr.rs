use crate::field::{Field, FieldElement};
use crate::lucas::{enumerate_lpr_as, lpr_status, LucasError};
use serde::Serialize;
use std::io;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LprMode {
    Table,
    Check,
}

/// One `a` with its roots; root columns are empty when `x^2 - a x - 1` is irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LprRecord {
    pub gamma: Option<u64>,
    pub conjugate: Option<u64>,
    pub a: u64,
    pub order_gamma: Option<u64>,
    pub order_conjugate: Option<u64>,
    pub lpr_count: u8,
}

fn status_record(field: &Field, a: &FieldElement) -> Result<LprRecord, LucasError> {
    let s = lpr_status(field, a)?;
    let first = s.roots.first();
    let second = s.roots.get(1).or(first);
    Ok(LprRecord {
        gamma: first.map(|r| r.root),
        conjugate: second.map(|r| r.root),
        a: s.a,
        order_gamma: first.map(|r| r.order),
        order_conjugate: second.map(|r| r.order),
        lpr_count: s.lpr_count,
    })
}

/// Table mode lists every `a` admitting an LPR: for `q = 3 (mod 4)` from the elements
/// of order `(q - 1) / 2`, otherwise by checking every `a`. Check mode reports `a` alone.
pub fn run_lpr(field: &Field, mode: LprMode, a: Option<&FieldElement>) -> Result<Vec<LprRecord>, LucasError> {
    match (mode, a) {
        (LprMode::Check, Some(a)) => Ok(vec![status_record(field, a)?]),
        (LprMode::Check, None) => Err(LucasError::NotApplicable("check mode needs a value for a".into())),
        (LprMode::Table, _) if field.characteristic() != 2 && field.order() % 4 == 3 => {
            let rows = enumerate_lpr_as(field)?;
            Ok(rows
                .into_iter()
                .map(|r| LprRecord {
                    gamma: Some(r.gamma.value()),
                    conjugate: Some(r.conjugate.value()),
                    a: r.a.value(),
                    order_gamma: r.gamma.multiplicative_order().ok(),
                    order_conjugate: r.conjugate.multiplicative_order().ok(),
                    lpr_count: 1,
                })
                .collect())
        }
        (LprMode::Table, _) => {
            let mut out = Vec::new();
            for a in field.elements() {
                let r = status_record(field, &a)?;
                if r.lpr_count > 0 {
                    out.push(r);
                }
            }
            Ok(out)
        }
    }
}

pub fn write_lpr_csv<W: io::Write>(out: W, rows: &[LprRecord]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["gamma", "conjugate", "a", "order_gamma", "order_conjugate", "lpr_count"])?;
    }
    w.flush()
}
