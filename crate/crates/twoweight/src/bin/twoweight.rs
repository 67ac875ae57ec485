//! Batch front door for the two-weight code pipeline.
//!
//! ```text
//! twoweight verify <file.code> [--gamma units|<rational>]
//! twoweight screen <table.csv> [--deep] [--out DIR] [--format json|csv]
//! twoweight search <table.csv | "N,k,lambda,mu"> [--ring SPEC --shape SH] [--out DIR]
//! twoweight hjelmslev <ringspec> <s> [--out DIR]
//! twoweight gray-check <ringspec> <s> [--out DIR]
//! ```
//!
//! Exit codes: 0 completed, 2 invalid input, 3 completed with undecided
//! rows present.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use twoweight::codes::{enumerate_shapes, write_code_file, Shape};
use twoweight::report::{
    ingest_param_table, run_gray_check, run_hjelmslev, run_verify, screen_table, to_json, RunMeta, ScreenRunReport,
};
use twoweight::rings::{build_ring_bounded, parse_ring_spec, DEFAULT_MAX_ORDER};
use twoweight::screening::{ParamSet, ScreenOptions, Verdict};
use twoweight::search::{search_codes, SearchOptions, SearchOutcome};
use twoweight::srg::{derive_code_targets, srg_spectrum};
use twoweight::Rat;

#[derive(Parser)]
#[command(name = "twoweight", version, about = "two-weight codes over finite Frobenius rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Caps {
    /// Largest ring order that will be materialised.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Backtracking node budget per search.
    #[arg(long, default_value_t = 5_000_000)]
    node_cap: u64,
    /// Worker threads for row-level parallelism.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output directory for found codes / images.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a .code file: properties, enumerator, graph certificate.
    Verify {
        file: PathBuf,
        /// Override the file's γ ("units" selects γ = |R^×|).
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Run the elimination filters on a parameter table.
    Screen {
        table: PathBuf,
        /// Also run the Diophantine search on surviving candidates.
        #[arg(long)]
        deep: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Search for codes: a full deep screen, optionally narrowed to one
    /// ring and shape.
    Search {
        /// Table path or an inline row "N,k,lambda,mu".
        target: String,
        /// Restrict the search to this ring.
        #[arg(long)]
        ring: Option<String>,
        /// Restrict the search to this shape (e.g. "2,2" or "1;1,1").
        #[arg(long)]
        shape: Option<String>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Construct the Hjelmslev family over a length-2 chain ring.
    Hjelmslev {
        ringspec: String,
        s: u32,
        #[command(flatten)]
        caps: Caps,
    },
    /// Enumerate the family and check its Gray images for field linearity.
    #[command(name = "gray-check")]
    GrayCheck {
        ringspec: String,
        s: u32,
        #[command(flatten)]
        caps: Caps,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn screen_options(deep: bool, caps: &Caps) -> ScreenOptions {
    ScreenOptions {
        deep,
        max_order: caps.max_order,
        search: SearchOptions { node_cap: caps.node_cap, ..Default::default() },
    }
}

fn run(cli: Cli) -> twoweight::Result<ExitCode> {
    match cli.command {
        Command::Verify { file, gamma } => {
            let text = std::fs::read_to_string(&file)?;
            let report = run_verify(&text, gamma.as_deref())?;
            print!("{}", to_json(&report));
            Ok(ExitCode::SUCCESS)
        }
        Command::Screen { table, deep, caps } => {
            let text = std::fs::read_to_string(&table)?;
            let ingest = ingest_param_table(&text)?;
            let options = screen_options(deep, &caps);
            let rows = screen_table(&ingest.rows, &options, caps.workers.max(1));
            let report = ScreenRunReport {
                meta: RunMeta::new(
                    format!("screen {}{}", table.display(), if deep { " --deep" } else { "" }),
                    &options,
                    caps.workers,
                ),
                ingest_errors: ingest.errors,
                rows,
            };
            if let Some(dir) = &caps.out {
                report.write_codes(dir)?;
            }
            emit(&report, &caps);
            Ok(exit_for(&report))
        }
        Command::Search { target, ring, shape, caps } => {
            let rows = parse_search_target(&target)?;
            let options = screen_options(true, &caps);
            if let (Some(ring_text), Some(shape_text)) = (ring.as_deref(), shape.as_deref()) {
                return run_narrowed_search(&rows, ring_text, shape_text, &caps, &options);
            }
            let reports = screen_table(&rows, &options, caps.workers.max(1));
            let report = ScreenRunReport {
                meta: RunMeta::new(format!("search {target}"), &options, caps.workers),
                ingest_errors: Vec::new(),
                rows: reports,
            };
            if let Some(dir) = &caps.out {
                report.write_codes(dir)?;
            }
            emit(&report, &caps);
            Ok(exit_for(&report))
        }
        Command::Hjelmslev { ringspec, s, caps } => {
            let (report, codes) = run_hjelmslev(&ringspec, s, 1 << 22)?;
            if let Some(dir) = &caps.out {
                std::fs::create_dir_all(dir)?;
                for (i, code) in codes.iter().enumerate() {
                    let gamma = Rat::from_integer(code.ring().units_count() as i64);
                    std::fs::write(dir.join(format!("hjelmslev_{i:04}.code")), write_code_file(code, gamma))?;
                }
            }
            print!("{}", to_json(&report));
            Ok(ExitCode::SUCCESS)
        }
        Command::GrayCheck { ringspec, s, caps } => {
            let report = run_gray_check(&ringspec, s, 1 << 22, caps.out.as_deref())?;
            print!("{}", to_json(&report));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_search_target(target: &str) -> twoweight::Result<Vec<ParamSet>> {
    if std::path::Path::new(target).exists() {
        let text = std::fs::read_to_string(target)?;
        return Ok(ingest_param_table(&text)?.rows);
    }
    let fields: Vec<&str> = target.split(',').map(|f| f.trim()).collect();
    if fields.len() == 4 {
        let vals: Option<Vec<u64>> = fields.iter().map(|f| f.parse().ok()).collect();
        if let Some(v) = vals {
            return Ok(vec![ParamSet::new(v[0], v[1], v[2], v[3])]);
        }
    }
    Err(twoweight::Error::InvalidInput(format!("search target {target:?} is neither a file nor an N,k,lambda,mu row")))
}

fn run_narrowed_search(
    rows: &[ParamSet],
    ring_text: &str,
    shape_text: &str,
    caps: &Caps,
    options: &ScreenOptions,
) -> twoweight::Result<ExitCode> {
    let spec = parse_ring_spec(ring_text)?;
    let shape = Shape::parse_field(shape_text)?;
    let ring = Arc::new(build_ring_bounded(&spec, caps.max_order)?);
    let mut undecided = false;
    for row in rows {
        let params = srg_spectrum(row.n, row.k, row.lambda, row.mu)
            .map_err(|r| twoweight::Error::InvalidInput(format!("row {:?}: {r}", row.id)))?;
        if !enumerate_shapes(&spec, params.n).contains(&shape) {
            return Err(twoweight::Error::InvalidInput(format!(
                "shape {shape_text} is not admissible for {ring_text} at N = {}",
                params.n
            )));
        }
        let targets = derive_code_targets(&params, spec.units_count())
            .map_err(|r| twoweight::Error::InvalidInput(r.to_string()))?;
        match search_codes(&ring, &shape, &params, &targets, &options.search)? {
            SearchOutcome::Complete(found) => {
                println!(
                    "{} over {} shape {}: {} code(s)",
                    row.id.clone().unwrap_or_default(),
                    ring_text,
                    shape_text,
                    found.len()
                );
                if let Some(dir) = &caps.out {
                    std::fs::create_dir_all(dir)?;
                    for (i, vc) in found.iter().enumerate() {
                        let gamma = Rat::from_integer(ring.units_count() as i64);
                        std::fs::write(dir.join(format!("search_{i:04}.code")), write_code_file(&vc.code, gamma))?;
                    }
                }
            }
            SearchOutcome::Undecided { reason, .. } => {
                println!("{}: undecided ({reason})", row.id.clone().unwrap_or_default());
                undecided = true;
            }
        }
    }
    Ok(if undecided { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn emit(report: &ScreenRunReport, caps: &Caps) {
    match caps.format.as_str() {
        "csv" => print!("{}", report.csv_summary()),
        _ => print!("{}", to_json(report)),
    }
}

fn exit_for(report: &ScreenRunReport) -> ExitCode {
    let any_undecided = report.rows.iter().any(|r| matches!(r.verdict, Verdict::Undecided { .. }));
    if any_undecided {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
