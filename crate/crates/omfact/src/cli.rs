//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use omfact_core::factorcore::property_corpus;
use omfact_core::gens::{omega_minus_gens, su_gens};
use omfact_core::orders::{
    identity_grid, identity_suite, order_of, order_table, Family, IdentityReport,
};
use omfact_core::verify::{
    emit_report, verify_row, RowInstance, VerifyOptions, DEFAULT_CAP, MANDATORY, OPTIONAL,
};
use omfact_core::{Fe, HermitianSpace, QuadraticSpace};
use serde::Serialize;

use crate::formats::{write_space, write_vectors};
use crate::report::{to_json, to_text};

#[derive(Parser, Debug)]
#[command(
    name = "omfact",
    version,
    about = "Exact verification of factorizations of minus-type orthogonal groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and certify rows of the factorization table.
    Verify(VerifyArgs),
    /// Print the order table used by the suite.
    Orders(OutputArgs),
    /// Evaluate the displayed order identities of a row, or of the whole grid.
    Identities(IdentityArgs),
    /// List the vectors with a given Q value in the standard minus-type space.
    Enumerate(EnumerateArgs),
    /// Run a fast end-to-end smoke test.
    Selftest(OutputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub row: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Run every mandatory (row, m, q).
    #[arg(long, conflicts_with_all = ["row", "m", "q"])]
    pub all_mandatory: bool,
    /// With --all-mandatory, also run the long optional rows.
    #[arg(long, requires = "all_mandatory")]
    pub include_optional: bool,
    /// Largest orbit enumerated before falling back to arithmetic checks.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for randomized chain construction.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record wall-clock times (makes output differ between runs).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long)]
    pub row: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Half-dimension of the space.
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub q: u32,
    /// The Q value: 0 lists nonzero singular vectors.
    #[arg(long, default_value_t = 0)]
    pub value: u16,
    /// Print the Gram matrix instead of the vectors.
    #[arg(long)]
    pub gram: bool,
    /// Largest space size enumerated.
    #[arg(long, default_value_t = 1 << 24)]
    pub cap: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, msg)
        .exit()
}

/// Desk parameters of a row: its first mandatory entry, else its optional one.
pub fn default_params(row: u32) -> Option<(u32, u32)> {
    MANDATORY
        .iter()
        .chain(OPTIONAL)
        .find(|t| t.0 == row)
        .map(|t| (t.1, t.2))
}

fn resolve(row: u32, m: Option<u32>, q: Option<u32>) -> (u32, u32) {
    match (m, q) {
        (Some(m), Some(q)) => (m, q),
        (None, None) => {
            default_params(row).unwrap_or_else(|| usage(format!("row {row} is not in 1..=11")))
        }
        _ => usage("--m and --q must be given together"),
    }
}

/// Writes to `--out` through a temporary file, or to stdout.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses arguments, runs, and returns the process exit code.
pub fn run_from_args() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

/// Runs a parsed invocation; `Ok(false)` means some check failed.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Orders(o) => orders(o),
        Command::Identities(a) => identities(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Selftest(o) => selftest(o),
    }
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let jobs: Vec<(u32, u32, u32)> = if a.all_mandatory {
        let mut v = MANDATORY.to_vec();
        if a.include_optional {
            v.extend_from_slice(OPTIONAL);
        }
        v
    } else {
        let row = a
            .row
            .unwrap_or_else(|| usage("give --row (with optional --m and --q) or --all-mandatory"));
        let (m, q) = resolve(row, a.m, a.q);
        vec![(row, m, q)]
    };
    // validate every job before any computation
    for &(row, m, q) in &jobs {
        if let Err(e) = RowInstance::new(row, m, q) {
            usage(format!("row {row} at (m, q) = ({m}, {q}): {e}"));
        }
    }
    let mut opts = VerifyOptions {
        cap: a.cap,
        ..VerifyOptions::default()
    };
    if let Some(s) = a.seed {
        opts.seed = s;
    }
    let mut reports = Vec::new();
    for (row, m, q) in jobs {
        let t = Instant::now();
        let mut rs = verify_row(row, m, q, &opts).map_err(|e| anyhow!("row {row}: {e}"))?;
        if a.timings {
            let ms = t.elapsed().as_millis() as u64;
            for r in &mut rs {
                r.elapsed_ms = ms.max(1);
            }
        }
        reports.extend(rs);
    }
    let doc = emit_report(reports);
    let text = match a.output.format {
        Format::Json => to_json(&doc),
        Format::Text => to_text(&doc),
    };
    emit(&a.output.out, &text)?;
    Ok(doc.passed())
}

#[derive(Serialize)]
struct OrderJson {
    group: String,
    order: String,
    formula: String,
}

fn orders(o: OutputArgs) -> Result<bool> {
    let rows = order_table();
    let text = match o.format {
        Format::Json => json(
            &rows
                .iter()
                .map(|r| OrderJson {
                    group: r.group.clone(),
                    order: r.order.to_string(),
                    formula: r.formula.clone(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{:<18} {:>32}  {}", r.group, r.order, r.formula);
            }
            s
        }
    };
    emit(&o.out, &text)?;
    Ok(true)
}

/// `1234567` as `1,234,567`.
pub fn grouped(n: &impl ToString) -> String {
    let s = n.to_string();
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

#[derive(Serialize)]
struct IdentityJson {
    row: u32,
    m: u32,
    q: u32,
    passed: bool,
    checks: Vec<IdentityCheckJson>,
}

#[derive(Serialize)]
struct IdentityCheckJson {
    label: String,
    gating: bool,
    holds: bool,
    sides: Vec<String>,
}

fn identity_json(r: &IdentityReport) -> IdentityJson {
    IdentityJson {
        row: r.row,
        m: r.m,
        q: r.q,
        passed: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| IdentityCheckJson {
                label: c.label.clone(),
                gating: c.gating,
                holds: c.holds,
                sides: c.sides.iter().map(|s| s.render()).collect(),
            })
            .collect(),
    }
}

/// The headline arithmetic of the 3.J3 row.
fn row_eleven_line() -> Result<String> {
    let three_j3 = order_of(Family::Sporadic(omfact_core::orders::Sporadic::ThreeJ3))
        .map_err(|e| anyhow!("{e}"))?;
    let stab = num_bigint::BigUint::from(64u32 * 18);
    let idx = &three_j3 / &stab;
    let exact = (&three_j3 % &stab) == num_bigint::BigUint::from(0u32);
    let factored = num_bigint::BigUint::from(513u32 * 255);
    Ok(format!(
        "{} / {} = {} = (2^9+1)(2^8-1){}",
        grouped(&three_j3),
        grouped(&stab),
        grouped(&idx),
        if exact && idx == factored {
            ""
        } else {
            "  MISMATCH"
        }
    ))
}

fn identities(a: IdentityArgs) -> Result<bool> {
    let reports: Vec<IdentityReport> = match a.row {
        Some(row) => {
            let (m, q) = resolve(row, a.m, a.q);
            let r = identity_suite(row, m, q)
                .unwrap_or_else(|e| usage(format!("row {row} at ({m}, {q}): {e}")));
            vec![r]
        }
        None => {
            if a.m.is_some() || a.q.is_some() {
                usage("--m and --q need --row");
            }
            identity_grid(20, &[2, 3, 4, 5, 8, 9])
                .into_iter()
                .map(|(row, m, q)| identity_suite(row, m, q).map_err(|e| anyhow!("{e}")))
                .collect::<Result<_>>()?
        }
    };
    let passed = reports.iter().all(IdentityReport::passed);
    let text = match a.output.format {
        Format::Json => json(&reports.iter().map(identity_json).collect::<Vec<_>>()),
        Format::Text => {
            let mut s = String::new();
            if a.row == Some(11) {
                let _ = writeln!(s, "{}", row_eleven_line()?);
            }
            if a.row.is_some() {
                for r in &reports {
                    for c in &r.checks {
                        let mark = match (c.holds, c.gating) {
                            (true, _) => "ok  ",
                            (false, true) => "FAIL",
                            (false, false) => "note",
                        };
                        let sides: Vec<String> = c.sides.iter().map(|q| q.render()).collect();
                        let _ = writeln!(
                            s,
                            "[{mark}] row {} (m = {}, q = {}) {}: {}",
                            r.row,
                            r.m,
                            r.q,
                            c.label,
                            sides.join(" ; ")
                        );
                    }
                }
            } else {
                let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
                let _ = writeln!(
                    s,
                    "{} (row, m, q) cases, {} failed",
                    reports.len(),
                    failed.len()
                );
                for r in failed {
                    let _ = writeln!(s, "FAIL row {} (m = {}, q = {})", r.row, r.m, r.q);
                }
            }
            s
        }
    };
    emit(&a.output.out, &text)?;
    Ok(passed)
}

#[derive(Serialize)]
struct VectorsJson {
    m: u32,
    q: u32,
    value: u16,
    count: usize,
    vectors: Vec<Vec<u16>>,
}

fn enumerate(a: EnumerateArgs) -> Result<bool> {
    let space = QuadraticSpace::minus_standard(a.m as usize, a.q).unwrap_or_else(|e| usage(e));
    if u32::from(a.value) >= a.q {
        usage(format!("--value must be below q = {}", a.q));
    }
    let f = space.field().clone();
    let text = if a.gram {
        write_space(&space)
    } else {
        let codes = space
            .enumerate_value_set(Fe(a.value), a.cap)
            .map_err(|e| anyhow!("{e}; raise --cap to enumerate larger spaces"))?;
        let codec = omfact_core::codec::Codec::new(a.q, space.dim());
        let vs: Vec<Vec<Fe>> = codes.iter().map(|&c| codec.decode_vec(c)).collect();
        match a.output.format {
            Format::Text => write_vectors(&f, space.dim(), &vs),
            Format::Json => {
                let mut sorted: Vec<Vec<u16>> =
                    vs.iter().map(|v| v.iter().map(|x| x.0).collect()).collect();
                sorted.sort();
                json(&VectorsJson {
                    m: a.m,
                    q: a.q,
                    value: a.value,
                    count: sorted.len(),
                    vectors: sorted,
                })
            }
        }
    };
    emit(&a.output.out, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct SelftestJson {
    name: String,
    passed: bool,
    detail: String,
}

fn selftest(o: OutputArgs) -> Result<bool> {
    let mut results: Vec<SelftestJson> = Vec::new();
    let mut record = |name: &str, outcome: Result<String>| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, format!("{e:#}")),
        };
        results.push(SelftestJson {
            name: name.into(),
            passed,
            detail,
        });
    };
    record(
        "identity grid",
        (|| {
            let grid = identity_grid(20, &[2, 3, 4, 5, 8, 9]);
            for &(row, m, q) in &grid {
                let r = identity_suite(row, m, q).map_err(|e| anyhow!("{e}"))?;
                anyhow::ensure!(r.passed(), "row {row} at ({m}, {q})");
            }
            Ok(format!("{} cases", grid.len()))
        })(),
    );
    record(
        "generator gates",
        (|| {
            let om = omega_minus_gens(
                &QuadraticSpace::minus_standard(4, 2).map_err(|e| anyhow!("{e}"))?,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let su = su_gens(&HermitianSpace::standard(3, 2).map_err(|e| anyhow!("{e}"))?)
                .map_err(|e| anyhow!("{e}"))?;
            Ok(format!(
                "|Omega-_8(2)| = {}, |SU_3(2)| = {}",
                om.order().map_err(|e| anyhow!("{e}"))?,
                su.order().map_err(|e| anyhow!("{e}"))?
            ))
        })(),
    );
    record(
        "row 1 at (3, 2)",
        (|| {
            let r = verify_row(1, 3, 2, &VerifyOptions::default()).map_err(|e| anyhow!("{e}"))?;
            anyhow::ensure!(r[0].passed(), "status {}", r[0].status.as_str());
            Ok(format!("orbit {}", r[0].orbit_size.unwrap_or(0)))
        })(),
    );
    record(
        "row 11 arithmetic",
        row_eleven_line().and_then(|l| {
            anyhow::ensure!(!l.contains("MISMATCH"), "{l}");
            Ok(l)
        }),
    );
    record(
        "subgroup corpus",
        (|| {
            let r = property_corpus(7, 10).map_err(|e| anyhow!("{e}"))?;
            anyhow::ensure!(r.passed(), "{:?}", r.failures);
            Ok(format!("{} samples", r.samples))
        })(),
    );
    let passed = results.iter().all(|r| r.passed);
    let text = match o.format {
        Format::Json => json(&results),
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(
                    s,
                    "selftest {}: {} ({})",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.detail
                );
            }
            s
        }
    };
    emit(&o.out, &text)?;
    Ok(passed)
}
