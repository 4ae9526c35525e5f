use clap::{Parser, Subcommand};
use orbitforge_core::field::Field;
use orbitforge_core::report::{
    group_demo, parse_element, parse_field_spec, run_analyze, run_lpr, run_sweep, run_verify, workers_from_env,
    write_csv, write_json, write_lpr_csv, Format, LprMode, SweepJob,
};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_DISCREPANCY: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Orbits of the companion matrix [[a, b], [1, 0]] over finite fields.
#[derive(Parser)]
#[command(name = "orbitforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict (and optionally enumerate) the orbit spectrum for one (a, b).
    Analyze {
        /// p, p^k or p^k/c0,...,ck
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Treat --a and --b as coefficient lists c0,c1,...
        #[arg(long)]
        poly: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Analyze every a and every unit b, writing one record per pair.
    Sweep {
        #[arg(long)]
        field: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
    /// Lucas primitive roots of x^2 - a x - 1, as CSV on stdout.
    Lpr {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum)]
        mode: LprMode,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        poly: bool,
    },
    /// Check predictions against enumeration for every field up to --max-q.
    Verify {
        #[arg(long, default_value_t = 64)]
        max_q: u64,
    },
    /// Split a cyclic group of order r = m n into elements of orders m and n.
    GroupDemo {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Discrepancy,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn element(field: &Field, text: &str, poly: bool) -> Result<u64, Failure> {
    Ok(parse_element(field, text, poly)?.value())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let workers = workers_from_env()?;
    match cli.command {
        Command::Analyze { field, a, b, poly, verify } => {
            let field = parse_field_spec(&field)?;
            let (a, b) = (element(&field, &a, poly)?, element(&field, &b, poly)?);
            let r = run_analyze(&field, a, b, verify)?;
            print_json(&serde_json::json!({
                "schema": 1,
                "field": field.to_string(),
                "record": r.record,
                "discrepancies": r.discrepancies,
            }));
            if !r.discrepancies.is_empty() {
                return Err(Failure::Discrepancy);
            }
        }
        Command::Sweep { field, verify, out, format } => {
            let field = parse_field_spec(&field)?;
            let res = run_sweep(&SweepJob { verify, workers, ..SweepJob::full(field) })?;
            match format {
                Format::Json => write_json(&out, &res)?,
                Format::Csv => write_csv(&out, &res)?,
            }
            let s = &res.summary;
            eprintln!(
                "{} records: {} distinct_split, {} repeated, {} irreducible, {} verified",
                s.records, s.distinct_split, s.repeated, s.irreducible, s.verified
            );
            for d in &res.discrepancies {
                eprintln!("discrepancy: {d}");
            }
            if !res.passed() {
                return Err(Failure::Discrepancy);
            }
        }
        Command::Lpr { field, mode, a, poly } => {
            let field = parse_field_spec(&field)?;
            let a = a.map(|a| parse_element(&field, &a, poly)).transpose()?;
            let rows = run_lpr(&field, mode, a.as_ref())?;
            write_lpr_csv(std::io::stdout().lock(), &rows)?;
        }
        Command::Verify { max_q } => {
            let report = run_verify(max_q, workers)?;
            for t in &report.fields {
                let s = &t.summary;
                println!(
                    "q={:<3} field={:<14} records={:<6} distinct_split={:<6} repeated={:<5} irreducible={:<6} {}",
                    t.q,
                    t.field,
                    s.records,
                    s.distinct_split,
                    s.repeated,
                    s.irreducible,
                    if s.discrepancies == 0 { "ok" } else { "FAIL" }
                );
            }
            let s = &report.total;
            println!(
                "total: {} fields, {} records, {} distinct_split, {} repeated, {} irreducible, {} discrepancies",
                report.fields.len(),
                s.records,
                s.distinct_split,
                s.repeated,
                s.irreducible,
                report.discrepancies.len()
            );
            for d in &report.discrepancies {
                println!("discrepancy: {d}");
            }
            if !report.passed() {
                return Err(Failure::Discrepancy);
            }
        }
        Command::GroupDemo { r, m, n } => print_json(&group_demo(r, m, n)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Discrepancy) => ExitCode::from(EXIT_DISCREPANCY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
