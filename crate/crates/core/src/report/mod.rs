//! Batch drivers behind the `orbitforge` binary: single analyses, full sweeps over
//! `(a, b)`, LPR tables and the exhaustive self-check, plus their JSON/CSV output.

mod lpr;
mod output;
mod parse;

pub use lpr::{run_lpr, write_lpr_csv, LprMode, LprRecord};
pub use output::{read_csv, read_json, write_csv, write_json, Format, SweepDocument, CSV_HEADER, SCHEMA_VERSION};
pub use parse::{parse_element, parse_field_spec, workers_from_env, ParseError};

use crate::arith::{factor_integer, is_prime};
use crate::field::{Field, FieldError};
use crate::orbit::{verify, Companion, OrbitError, ENUMERATION_MAX_ORDER};
use crate::orders::{crt_exponent_split, order_of_power, OrderError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// One `(a, b)` analysis, flattened for output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub b: u64,
    pub class: String,
    /// Orbit lengths ascending, with `counts` aligned.
    pub lengths: Vec<u64>,
    pub counts: Vec<u64>,
    /// Ascending.
    pub root_orders: Vec<u64>,
    pub order_neg_b: u64,
    pub neg_b_prime_power: bool,
    /// Brute-force enumeration ran and agreed with the prediction.
    pub verified: bool,
}

/// A record together with whatever the brute-force check found wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analyzed {
    pub record: AnalysisRecord,
    pub discrepancies: Vec<String>,
}

pub fn run_analyze(field: &Field, a: u64, b: u64, verify_it: bool) -> Result<Analyzed, OrbitError> {
    let c = Companion::from_values(field, a, b)?;
    analyze_companion(&c, verify_it)
}

fn analyze_companion(c: &Companion, verify_it: bool) -> Result<Analyzed, OrbitError> {
    let analysis = c.analyze();
    let predicted = analysis.predicted_spectrum();
    let order_neg_b = analysis.order_of_neg_b();
    let discrepancies = if verify_it {
        let report = verify(c)?;
        report.discrepancies.into_iter().map(|d| format!("{}: {d}", describe(c))).collect()
    } else {
        Vec::new()
    };
    let f = c.field();
    let record = AnalysisRecord {
        q: f.order(),
        p: f.characteristic(),
        k: f.degree(),
        a: c.a().value(),
        b: c.b().value(),
        class: analysis.tag().to_string(),
        lengths: predicted.lengths().collect(),
        counts: predicted.counts().collect(),
        root_orders: analysis.sorted_root_orders(),
        order_neg_b,
        neg_b_prime_power: factor_integer(order_neg_b).is_prime_power(),
        verified: verify_it && discrepancies.is_empty(),
    };
    Ok(Analyzed { record, discrepancies })
}

fn describe(c: &Companion) -> String {
    format!("field {} a={} b={}", c.field(), c.a().value(), c.b().value())
}

/// Which `(a, b)` pairs to analyze; `b = 0` is always skipped.
#[derive(Debug, Clone)]
pub struct SweepJob {
    pub field: Field,
    pub a_values: Range<u64>,
    pub b_values: Range<u64>,
    pub verify: bool,
    /// `None` uses the available parallelism.
    pub workers: Option<usize>,
}

impl SweepJob {
    /// Every `a` and every unit `b`.
    pub fn full(field: Field) -> SweepJob {
        let q = field.order();
        SweepJob { field, a_values: 0..q, b_values: 1..q, verify: false, workers: None }
    }

    fn pairs(&self) -> Result<Vec<(u64, u64)>, FieldError> {
        let q = self.field.order();
        for r in [&self.a_values, &self.b_values] {
            if r.end > q {
                return Err(FieldError::OutOfRange { value: r.end - 1, order: q });
            }
        }
        let mut pairs = Vec::new();
        for a in self.a_values.clone() {
            pairs.extend(self.b_values.clone().filter(|&b| b != 0).map(|b| (a, b)));
        }
        Ok(pairs)
    }
}

/// Classification tallies over a batch of records.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: u64,
    pub distinct_split: u64,
    pub repeated: u64,
    pub irreducible: u64,
    pub verified: u64,
    pub discrepancies: u64,
}

impl Summary {
    pub fn add(&mut self, r: &Analyzed) {
        self.records += 1;
        match r.record.class.as_str() {
            "distinct_split" => self.distinct_split += 1,
            "repeated" => self.repeated += 1,
            _ => self.irreducible += 1,
        }
        self.verified += r.record.verified as u64;
        self.discrepancies += r.discrepancies.len() as u64;
    }

    pub fn merge(&mut self, other: &Summary) {
        self.records += other.records;
        self.distinct_split += other.distinct_split;
        self.repeated += other.repeated;
        self.irreducible += other.irreducible;
        self.verified += other.verified;
        self.discrepancies += other.discrepancies;
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub field: Field,
    /// Sorted by `(a, b)`.
    pub records: Vec<AnalysisRecord>,
    pub discrepancies: Vec<String>,
    pub summary: Summary,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Run `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}

pub fn run_sweep(job: &SweepJob) -> Result<SweepResult, OrbitError> {
    if job.verify && job.field.order() > ENUMERATION_MAX_ORDER {
        return Err(OrbitError::FieldTooLarge(job.field.order()));
    }
    let pairs = job.pairs()?;
    let analyzed: Vec<Analyzed> = with_workers(job.workers, || {
        pairs.par_iter().map(|&(a, b)| run_analyze(&job.field, a, b, job.verify)).collect::<Result<_, _>>()
    })?;
    let mut summary = Summary::default();
    let mut records = Vec::with_capacity(analyzed.len());
    let mut discrepancies = Vec::new();
    for r in analyzed {
        summary.add(&r);
        discrepancies.extend(r.discrepancies);
        records.push(r.record);
    }
    Ok(SweepResult { field: job.field.clone(), records, discrepancies, summary })
}

/// Fields `F_{p^k}` with default moduli for every prime power `2 <= p^k <= max_q`.
pub fn prime_power_fields(max_q: u64) -> Vec<Field> {
    (2..=max_q)
        .filter_map(|n| factor_integer(n).as_prime_power())
        .map(|(p, k)| Field::new(p, k, None).expect("prime power within range"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldTally {
    pub field: String,
    pub q: u64,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_q: u64,
    pub fields: Vec<FieldTally>,
    pub total: Summary,
    pub discrepancies: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Predict-versus-enumerate over every field of order at most `max_q` and every `(a, b)`.
pub fn run_verify(max_q: u64, workers: Option<usize>) -> Result<VerifyReport, OrbitError> {
    if max_q > ENUMERATION_MAX_ORDER {
        return Err(OrbitError::FieldTooLarge(max_q));
    }
    let fields = prime_power_fields(max_q);
    let mut tasks = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        let q = f.order();
        for a in 0..q {
            tasks.extend((1..q).map(|b| (i, a, b)));
        }
    }
    let results: Vec<(usize, Analyzed)> = with_workers(workers, || {
        tasks.par_iter().map(|&(i, a, b)| run_analyze(&fields[i], a, b, true).map(|r| (i, r))).collect::<Result<_, _>>()
    })?;

    let mut tallies: Vec<FieldTally> =
        fields.iter().map(|f| FieldTally { field: f.to_string(), q: f.order(), summary: Summary::default() }).collect();
    let mut total = Summary::default();
    let mut discrepancies = Vec::new();
    for (i, r) in results {
        tallies[i].summary.add(&r);
        discrepancies.extend(r.discrepancies);
    }
    for t in &tallies {
        total.merge(&t.summary);
    }
    Ok(VerifyReport { max_q, fields: tallies, total, discrepancies })
}

/// Witness for `g^k1 * g^k2 = g` with `|g^k1| = m`, `|g^k2| = n` in a cyclic group of order `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDemo {
    pub r: u64,
    pub m: u64,
    pub n: u64,
    pub k1: u64,
    pub k2: u64,
    /// Recomputed as `r / gcd(k, r)`.
    pub order_k1: u64,
    pub order_k2: u64,
    pub r_is_prime: bool,
}

pub fn group_demo(r: u64, m: u64, n: u64) -> Result<GroupDemo, OrderError> {
    let (k1, k2) = crt_exponent_split(r, m, n)?;
    Ok(GroupDemo {
        r,
        m,
        n,
        k1,
        k2,
        order_k1: order_of_power(r, k1),
        order_k2: order_of_power(r, k2),
        r_is_prime: is_prime(r),
    })
}
