use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use slopelab::rational::{self, Rational};
use slopelab::{
    build_product_quotient, build_ruled_cover, conjecture_bound, lambda_bound, proof_coefficients,
    verify_sharpness, GenusProfile, ProductQuotientParams, RuledCoverParams,
};

use crate::commands::{CliError, CliResult};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Bounds,
    #[value(name = "lp-verify", alias = "lp_verify")]
    LpVerify,
    Examples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub g_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub g_max: i64,
    /// Restrict to these q_f values (comma separated); default is every admissible value.
    #[arg(long = "qf", value_delimiter = ',', allow_negative_numbers = true)]
    pub q_f: Vec<i64>,
    #[arg(long, value_enum, default_value = "bounds")]
    pub mode: Mode,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads; 0 or unset means available parallelism.
    #[arg(long, env = "SLOPELAB_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Row {
    g: u32,
    q_f: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'static str>,
    #[serde(with = "rational::serde_str")]
    lambda: Rational,
    #[serde(serialize_with = "opt_rational")]
    lp_min: Option<Rational>,
    equal: bool,
    runtime_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&rational::format(x)),
        None => s.serialize_none(),
    }
}

pub fn cells(args: &SweepArgs) -> Result<Vec<GenusProfile>, CliError> {
    if args.g_min < 2 {
        return Err(CliError::input(format!("g-min must be at least 2, got {}", args.g_min)));
    }
    if args.g_min > args.g_max {
        return Err(CliError::input(format!("empty genus range {}..{}", args.g_min, args.g_max)));
    }
    let g_max = u32::try_from(args.g_max).map_err(|_| CliError::input("g-max out of range"))?;
    let out: Vec<GenusProfile> = (args.g_min as u32..=g_max)
        .flat_map(GenusProfile::all_for_genus)
        .filter(|p| args.q_f.is_empty() || args.q_f.contains(&i64::from(p.q_f())))
        .filter(|p| args.mode == Mode::Bounds || p.q_f() >= 1)
        .collect();
    if out.is_empty() {
        return Err(CliError::input("no admissible (g, q_f) cells in the requested range"));
    }
    Ok(out)
}

fn evaluate(mode: Mode, p: &GenusProfile) -> Option<Row> {
    let start = Instant::now();
    let mut row = Row {
        g: p.g(),
        q_f: p.q_f(),
        family: None,
        lambda: lambda_bound(p),
        lp_min: None,
        equal: false,
        runtime_ms: 0,
        error: None,
    };
    let outcome = match mode {
        Mode::Bounds => {
            let above = row.lambda >= conjecture_bound(p);
            if p.q_f() == 0 {
                Ok(above)
            } else {
                proof_coefficients(p).map(|c| above && c.all_nonnegative())
            }
        }
        Mode::LpVerify => verify_sharpness(p).map(|s| {
            row.lp_min = Some(s.lp_minimum.clone());
            s.passed()
        }),
        Mode::Examples => {
            let (family, report) = example_for(p)?;
            row.family = Some(family);
            report.map(|e| {
                row.lp_min = Some(e.slope.clone());
                e.attains_bound
            })
        }
    };
    match outcome {
        Ok(ok) => row.equal = ok,
        Err(e) => row.error = Some(e.to_string()),
    }
    row.runtime_ms = start.elapsed().as_millis();
    Some(row)
}

/// The attaining family for a cell, if one exists: a ruled double cover when
/// (q_f + 1) divides g + 1, a product quotient at the top irregularity.
fn example_for(p: &GenusProfile) -> Option<(&'static str, slopelab::Result<slopelab::ExampleReport>)> {
    let (g, q) = (i64::from(p.g()), i64::from(p.q_f()));
    if (g % 2 == 1 && 2 * q == g + 1) || 2 * q == g {
        let params = ProductQuotientParams { g, branch_count: 2 };
        return Some(("product", build_product_quotient(&params)));
    }
    if (g + 1) % (q + 1) == 0 && (g + 1) / (q + 1) >= 2 {
        let m = (g + 1) / (q + 1);
        let params = RuledCoverParams { m, e: 1, b0: m + 1, q_f: q };
        return Some(("ruled", build_ruled_cover(&params)));
    }
    None
}

fn write_rows(args: &SweepArgs, rows: &[Row]) -> std::io::Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(&args.output)?);
    match args.format {
        Format::Csv => {
            writeln!(w, "g,q_f,lambda,lp_min,equal,runtime_ms")?;
            for row in rows {
                let lp = row.lp_min.as_ref().map(rational::format).unwrap_or_default();
                writeln!(w, "{},{},{},{},{},{}", row.g, row.q_f, rational::format(&row.lambda), lp, row.equal, row.runtime_ms)?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({ "schema": 1, "mode": args.mode, "rows": rows });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

pub fn sweep(echo: &str, args: &SweepArgs) -> CliResult {
    let cells = cells(args)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::input(format!("cannot start worker pool: {e}")))?;
    let mode = args.mode;
    let rows: Vec<Row> = pool.install(|| cells.par_iter().filter_map(|p| evaluate(mode, p)).collect());

    write_rows(args, &rows).map_err(|e| CliError::input(format!("cannot write {}: {e}", args.output.display())))?;

    for row in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("g = {}, q_f = {}: {}", row.g, row.q_f, row.error.as_deref().unwrap_or_default());
    }
    let failures: Vec<String> = rows.iter().filter(|r| !r.equal).map(|r| format!("({},{})", r.g, r.q_f)).collect();

    let mut rep = Report::new(echo)
        .input("g_min", args.g_min)
        .input("g_max", args.g_max)
        .input("mode", serde_json::to_value(args.mode).unwrap())
        .input("output", args.output.display().to_string());
    rep.output("rows", rows.len());
    rep.output("failures", failures.len());
    if !failures.is_empty() {
        rep.output("failed_cells", failures.join(" "));
    }
    rep.require(failures.is_empty());
    Ok(rep)
}
