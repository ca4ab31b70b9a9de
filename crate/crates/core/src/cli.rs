//! The `hallforge` command line: `verify`, `enumerate`, `map`, and `table`.
//!
//! Output is deterministic for a fixed argument list; the only run-varying
//! value is the wall time recorded in the `meta` field of JSON reports.
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bijection::{phi_inverse, trace, GrowthTrace};
use crate::partition::Partition;
use crate::report::VerificationReport;
use crate::sets::{enumerate_family, FamilyId};
use crate::verify::{
    count_table, expand_request, run_single, CountTable, IdentityId, VerifyRequest,
};

#[derive(Parser)]
#[command(
    name = "hallforge",
    version,
    about = "Exact enumeration and identity verification for lecture hall partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    #[value(name = "thm2.1")]
    Thm21,
    Skip,
    Rlhp,
    Lhp,
    #[value(name = "refined-lhp")]
    RefinedLhp,
    #[value(name = "refined-rlhp")]
    RefinedRlhp,
    #[value(name = "q-analogue-2")]
    QAnalogue2,
    Lemmas,
    Bijection,
}

impl From<IdentityArg> for IdentityId {
    fn from(a: IdentityArg) -> Self {
        match a {
            IdentityArg::Thm21 => IdentityId::Thm21,
            IdentityArg::Skip => IdentityId::Skip,
            IdentityArg::Rlhp => IdentityId::Rlhp,
            IdentityArg::Lhp => IdentityId::Lhp,
            IdentityArg::RefinedLhp => IdentityId::RefinedLhp,
            IdentityArg::RefinedRlhp => IdentityId::RefinedRlhp,
            IdentityArg::QAnalogue2 => IdentityId::QAnalogue2,
            IdentityArg::Lemmas => IdentityId::Lemmas,
            IdentityArg::Bijection => IdentityId::Bijection,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetArg {
    L,
    Rl,
    Op,
    Rop,
}

impl From<SetArg> for FamilyId {
    fn from(a: SetArg) -> Self {
        match a {
            SetArg::L => FamilyId::LectureHall,
            SetArg::Rl => FamilyId::ReducedLectureHall,
            SetArg::Op => FamilyId::OddParty,
            SetArg::Rop => FamilyId::ReducedOddParty,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check one of the named identities and report pass/fail.
    Verify {
        /// Which identity to check.
        identity: IdentityArg,
        /// Width (single run).
        #[arg(long = "N")]
        width: Option<usize>,
        /// Series truncation, where applicable.
        #[arg(long)]
        qmax: Option<usize>,
        /// Run the identity for every width up to this bound.
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// List one partition family in canonical order.
    Enumerate {
        /// Family: l, rl, op, or rop.
        #[arg(long)]
        set: SetArg,
        /// Width.
        #[arg(long = "N")]
        width: usize,
        /// Size bound; required for the infinite families l and op.
        #[arg(long = "max-size")]
        max_size: Option<i64>,
    },
    /// Apply the growth map (or its inverse) to one partition.
    Map {
        /// Width.
        #[arg(long = "N")]
        width: usize,
        /// The partition, as a comma list or multiplicity notation.
        #[arg(long)]
        parts: String,
        /// Invert: treat the input as a lecture hall partition.
        #[arg(long)]
        inverse: bool,
        /// Show one line per fed part.
        #[arg(long)]
        trace: bool,
    },
    /// Tabulate family counts by size for every width up to a bound.
    Table {
        /// Largest width to tabulate.
        #[arg(long = "n-max")]
        n_max: usize,
        /// Also tally the truncated infinite families up to this size.
        #[arg(long = "max-size")]
        max_size: Option<i64>,
    },
}

struct CommandOutput {
    text: String,
    verification_failed: bool,
}

/// Parses and runs an argument list, writing to stdout or `--output`.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let pool = match thread_pool_from_env() {
        Ok(pool) => pool,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let result = match pool {
        Some(pool) => pool.install(|| execute(&cli)),
        None => execute(&cli),
    };
    match result {
        Ok(out) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", out.text);
            }
            if out.verification_failed {
                1
            } else {
                0
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn thread_pool_from_env() -> Result<Option<rayon::ThreadPool>, String> {
    match std::env::var("HALLFORGE_THREADS") {
        Err(_) => Ok(None),
        Ok(raw) => {
            let threads: usize = raw
                .parse()
                .ok()
                .filter(|&t| t >= 1)
                .ok_or_else(|| format!("HALLFORGE_THREADS must be a positive integer, got {raw:?}"))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map(Some)
                .map_err(|e| e.to_string())
        }
    }
}

fn execute(cli: &Cli) -> Result<CommandOutput, String> {
    match &cli.command {
        Command::Verify {
            identity,
            width,
            qmax,
            n_max,
        } => {
            if cli.format == Format::Csv {
                return Err("csv output is only available for enumerate".to_string());
            }
            let request = VerifyRequest {
                identity: (*identity).into(),
                n: *width,
                qmax: *qmax,
                n_max: *n_max,
            };
            let checks = expand_request(&request).map_err(|e| e.to_string())?;
            let timed: Vec<(VerificationReport, u128)> = checks
                .par_iter()
                .map(|check| {
                    let start = Instant::now();
                    let report = run_single(check);
                    report.map(|r| (r, start.elapsed().as_millis()))
                })
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let failed = timed.iter().any(|(r, _)| !r.pass);
            let text = match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for (report, _) in &timed {
                        out.push_str(&report.text_line());
                        out.push('\n');
                    }
                    if timed.len() > 1 {
                        let passed = timed.iter().filter(|(r, _)| r.pass).count();
                        let _ = writeln!(out, "summary: {passed}/{} pass", timed.len());
                    }
                    out
                }
                Format::Json => {
                    let mut out = String::new();
                    for (report, wall_ms) in &timed {
                        let mut value = serde_json::to_value(report)
                            .expect("reports serialize");
                        value.as_object_mut().expect("report is an object").insert(
                            "meta".to_string(),
                            serde_json::json!({ "wall_ms": *wall_ms as u64 }),
                        );
                        out.push_str(&value.to_string());
                        out.push('\n');
                    }
                    out
                }
                Format::Csv => unreachable!(),
            };
            Ok(CommandOutput {
                text,
                verification_failed: failed,
            })
        }
        Command::Enumerate {
            set,
            width,
            max_size,
        } => {
            let family: FamilyId = (*set).into();
            let items =
                enumerate_family(family, *width, *max_size).map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for p in &items {
                        out.push_str(&p.to_string());
                        out.push('\n');
                    }
                    out
                }
                Format::Json => {
                    let mut doc = serde_json::to_string_pretty(&items)
                        .expect("partitions serialize");
                    doc.push('\n');
                    doc
                }
                Format::Csv => {
                    let mut out = String::from("parts,size,length,alt_size\n");
                    for p in &items {
                        let _ = writeln!(
                            out,
                            "\"{}\",{},{},{}",
                            p.to_comma_string(),
                            p.size(),
                            p.length(),
                            p.alt_size()
                        );
                    }
                    out
                }
            };
            Ok(CommandOutput {
                text,
                verification_failed: false,
            })
        }
        Command::Map {
            width,
            parts,
            inverse,
            trace: want_trace,
        } => {
            if cli.format == Format::Csv {
                return Err("csv output is only available for enumerate".to_string());
            }
            let input = Partition::parse(parts).map_err(|e| format!("--parts: {e}"))?;
            let (lambda, mu) = if *inverse {
                let lambda = phi_inverse(*width, &input).map_err(|e| e.to_string())?;
                (lambda, input)
            } else {
                let lambda = input;
                let mu = crate::bijection::phi(*width, &lambda).map_err(|e| e.to_string())?;
                (lambda, mu)
            };
            // the trace re-runs the forward fold; for the inverse direction
            // it doubles as a consistency display
            let growth = trace(*width, &lambda).map_err(|e| e.to_string())?;
            debug_assert_eq!(growth.final_state.image_partition(), mu);
            let text = match cli.format {
                Format::Text => {
                    map_text(&lambda, &mu, &growth, *inverse, *want_trace)
                }
                Format::Json => {
                    let mut doc = serde_json::json!({
                        "width": width,
                        "direction": if *inverse { "inverse" } else { "forward" },
                        "lambda": lambda,
                        "mu": mu,
                        "counter": growth.final_state.counter(),
                        "action_counts": growth.final_state.action_counts(),
                    });
                    if *want_trace {
                        doc.as_object_mut().expect("object").insert(
                            "trace".to_string(),
                            serde_json::to_value(&growth.steps).expect("steps serialize"),
                        );
                    }
                    let mut out = serde_json::to_string_pretty(&doc).expect("doc serializes");
                    out.push('\n');
                    out
                }
                Format::Csv => unreachable!(),
            };
            Ok(CommandOutput {
                text,
                verification_failed: false,
            })
        }
        Command::Table { n_max, max_size } => {
            if cli.format == Format::Csv {
                return Err("csv output is only available for enumerate".to_string());
            }
            let table = count_table(*n_max, *max_size).map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Text => table_text(&table),
                Format::Json => {
                    let mut out =
                        serde_json::to_string_pretty(&table).expect("table serializes");
                    out.push('\n');
                    out
                }
                Format::Csv => unreachable!(),
            };
            Ok(CommandOutput {
                text,
                verification_failed: false,
            })
        }
    }
}

fn fmt_int_list(values: &[i64]) -> String {
    let body = values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("[{body}]")
}

fn fmt_count_list(values: &[u64]) -> String {
    let body = values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("[{body}]")
}

fn map_text(
    lambda: &Partition,
    mu: &Partition,
    growth: &GrowthTrace,
    inverse: bool,
    want_trace: bool,
) -> String {
    let mut out = String::new();
    let lambda_line = format!(
        "lambda = {}",
        if lambda.is_empty() {
            "()".to_string()
        } else {
            lambda.to_multiplicity_string()
        }
    );
    let mu_line = format!("mu = {mu}");
    if inverse {
        out.push_str(&mu_line);
    } else {
        out.push_str(&lambda_line);
    }
    out.push('\n');
    if want_trace {
        let mut rows: Vec<[String; 5]> = vec![[
            "part".to_string(),
            "i".to_string(),
            "A".to_string(),
            "I".to_string(),
            "mu".to_string(),
        ]];
        for step in &growth.steps {
            rows.push([
                step.part.to_string(),
                step.row.to_string(),
                step.increment.to_string(),
                fmt_int_list(&step.counter),
                step.image.to_string(),
            ]);
        }
        let widths: Vec<usize> = (0..5)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for row in &rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                let _ = write!(line, "{cell:>width$}", width = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let _ = writeln!(out, "I = {}", fmt_int_list(growth.final_state.counter()));
        let _ = writeln!(
            out,
            "d = {}",
            fmt_count_list(growth.final_state.action_counts())
        );
    }
    if inverse {
        out.push_str(&lambda_line);
    } else {
        out.push_str(&mu_line);
    }
    out.push('\n');
    out
}

fn table_text(table: &CountTable) -> String {
    let mut out = String::new();
    let has_lop = table.max_size.is_some();
    for wc in &table.widths {
        let _ = writeln!(out, "N={}", wc.width);
        let mut header = format!("{:>6}{:>6}{:>6}", "size", "rl", "rop");
        if has_lop {
            header.push_str(&format!("{:>6}{:>6}", "l", "op"));
        }
        out.push_str(&header);
        out.push('\n');
        for row in &wc.rows {
            let mut line = format!("{:>6}{:>6}{:>6}", row.size, row.rl, row.rop);
            if has_lop {
                line.push_str(&format!(
                    "{:>6}{:>6}",
                    row.l.unwrap_or(0),
                    row.op.unwrap_or(0)
                ));
            }
            out.push_str(&line);
            out.push('\n');
        }
        let mut sum_line = format!("{:>6}{:>6}{:>6}", "sum", wc.sum_rl, wc.sum_rop);
        if has_lop {
            let sum_l: u64 = wc.rows.iter().filter_map(|r| r.l).sum();
            let sum_op: u64 = wc.rows.iter().filter_map(|r| r.op).sum();
            sum_line.push_str(&format!("{sum_l:>6}{sum_op:>6}"));
        }
        if let Some(f) = wc.factorial {
            let _ = write!(sum_line, "  = {}! = {}", wc.width, f);
        }
        out.push_str(&sum_line);
        out.push('\n');
    }
    out
}
