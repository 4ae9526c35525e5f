//! Deterministic JSON and CSV renderings of sweep results.
//!
//! Files are written to a sibling temporary path and renamed into place, so a
//! failed run never leaves a truncated output behind.

use super::{AnalysisRecord, Summary, SweepResult};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 12] = [
    "q",
    "p",
    "k",
    "a",
    "b",
    "class",
    "lengths",
    "counts",
    "root_orders",
    "order_neg_b",
    "neg_b_prime_power",
    "verified",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub schema: u32,
    pub field: String,
    pub records: Vec<AnalysisRecord>,
    pub summary: Summary,
    pub discrepancies: Vec<String>,
}

impl From<&SweepResult> for SweepDocument {
    fn from(r: &SweepResult) -> Self {
        SweepDocument {
            schema: SCHEMA_VERSION,
            field: r.field.to_string(),
            records: r.records.clone(),
            summary: r.summary.clone(),
            discrepancies: r.discrepancies.clone(),
        }
    }
}

fn write_atomically(path: &Path, render: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> io::Result<()> {
    let mut buf = Vec::new();
    render(&mut buf)?;
    let name =
        path.file_name().ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(".tmp");
    let tmp: PathBuf = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&buf)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

pub fn write_json(path: &Path, result: &SweepResult) -> io::Result<()> {
    write_atomically(path, |buf| {
        serde_json::to_writer_pretty(&mut *buf, &SweepDocument::from(result))?;
        buf.push(b'\n');
        Ok(())
    })
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn split(s: &str) -> Result<Vec<u64>, String> {
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(';').map(|x| x.parse().map_err(|_| format!("bad list cell {s:?}"))).collect()
}

pub(super) fn csv_row(r: &AnalysisRecord) -> [String; 12] {
    [
        r.q.to_string(),
        r.p.to_string(),
        r.k.to_string(),
        r.a.to_string(),
        r.b.to_string(),
        r.class.clone(),
        join(&r.lengths),
        join(&r.counts),
        join(&r.root_orders),
        r.order_neg_b.to_string(),
        r.neg_b_prime_power.to_string(),
        r.verified.to_string(),
    ]
}

/// Records under the fixed header, then `#` comment lines with the tallies.
pub fn write_csv(path: &Path, result: &SweepResult) -> io::Result<()> {
    write_atomically(path, |buf| {
        {
            let mut w = csv::Writer::from_writer(&mut *buf);
            w.write_record(CSV_HEADER)?;
            for r in &result.records {
                w.write_record(csv_row(r))?;
            }
            w.flush()?;
        }
        let s = &result.summary;
        writeln!(buf, "# field={}", result.field)?;
        writeln!(
            buf,
            "# records={} distinct_split={} repeated={} irreducible={} verified={} discrepancies={}",
            s.records, s.distinct_split, s.repeated, s.irreducible, s.verified, s.discrepancies
        )
    })
}

pub fn read_json(path: &Path) -> io::Result<SweepDocument> {
    let doc: SweepDocument = serde_json::from_reader(io::BufReader::new(fs::File::open(path)?))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("unknown schema {}", doc.schema)));
    }
    Ok(doc)
}

/// Records from a CSV written by [`write_csv`]; the comment footer is skipped.
pub fn read_csv(path: &Path) -> io::Result<Vec<AnalysisRecord>> {
    let invalid = |e: String| io::Error::new(io::ErrorKind::InvalidData, e);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    if rdr.headers()?.iter().ne(CSV_HEADER) {
        return Err(invalid("unexpected CSV header".into()));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let num = |i: usize| row[i].parse::<u64>().map_err(|_| invalid(format!("bad {} cell", CSV_HEADER[i])));
        let flag = |i: usize| row[i].parse::<bool>().map_err(|_| invalid(format!("bad {} cell", CSV_HEADER[i])));
        out.push(AnalysisRecord {
            q: num(0)?,
            p: num(1)?,
            k: num(2)? as u32,
            a: num(3)?,
            b: num(4)?,
            class: row[5].to_string(),
            lengths: split(&row[6]).map_err(invalid)?,
            counts: split(&row[7]).map_err(invalid)?,
            root_orders: split(&row[8]).map_err(invalid)?,
            order_neg_b: num(9)?,
            neg_b_prime_power: flag(10)?,
            verified: flag(11)?,
        });
    }
    Ok(out)
}
