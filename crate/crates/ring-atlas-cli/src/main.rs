//! `ring-atlas` — analyze, classify, enumerate, and property-check small
//! finite unital rings from the command line.
//!
//! Exit codes: 0 success, 1 property violation found, 2 usage or input
//! error.

use ring_atlas_cli::{parse, report};

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ring_atlas::classify;
use ring_atlas::enumerate::{enumerate_unital_rings, CensusError, EnumerationTask};
use ring_atlas::sweep::{sweep, SweepOptions};
use ring_atlas::FiniteRing;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ring-atlas",
    version,
    about = "Structure, unit groups, classification, and exhaustive censuses of small finite unital rings"
)]
struct Cli {
    /// Override the ring-order cap (also settable via RING_ATLAS_CAP)
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Worker threads for parallel searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit machine-readable JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural and unit-group report for one ring-spec file
    Analyze {
        /// Ring-spec file (expression or raw table block)
        path: PathBuf,
    },
    /// Classification check at a prime dividing the ring order
    Classify {
        /// Ring-spec file (expression or raw table block)
        path: PathBuf,
        /// The prime p of the at-most-one-subgroup-of-order-p hypothesis
        #[arg(long)]
        prime: usize,
    },
    /// Census of all unital rings of one order
    Enumerate {
        /// Ring order to enumerate
        #[arg(long)]
        order: usize,
        /// Reduce the listing to one representative per isomorphism class
        #[arg(long)]
        dedupe: bool,
        /// Write each listed ring as a raw-table spec file into this directory
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Run every registered structural law over censuses up to a bound
    VerifyTheorem {
        /// Largest census order swept (composite block sums included)
        #[arg(long)]
        max_order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cap = effective_cap(cli.cap)?;
    if let Some(cap) = cap {
        ring_atlas::set_order_cap(cap);
    }
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err("--threads must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(path, cli.json),
        Command::Classify { path, prime } => cmd_classify(path, *prime, cli.json),
        Command::Enumerate {
            order,
            dedupe,
            export,
        } => cmd_enumerate(*order, *dedupe, export.as_deref(), cap, cli.json),
        Command::VerifyTheorem { max_order } => cmd_verify_theorem(*max_order, cap, cli.json),
    }
}

/// Later sources win: default < RING_ATLAS_CAP < --cap.
fn effective_cap(flag: Option<usize>) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("RING_ATLAS_CAP") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("RING_ATLAS_CAP is not a number: {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("RING_ATLAS_CAP: {e}")),
    }
}

fn load_ring(path: &Path) -> Result<(String, FiniteRing), String> {
    let source = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let ring = parse::parse_ring_source(&source)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((source, ring))
}

fn emit(doc: &impl serde::Serialize, json: bool, human: impl FnOnce()) -> Result<(), String> {
    if json {
        let text = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
        println!("{text}");
    } else {
        human();
    }
    Ok(())
}

fn cmd_analyze(path: &Path, json: bool) -> Result<ExitCode, String> {
    let (source, ring) = load_ring(path)?;
    let doc = report::ReportDocument {
        schema_version: report::SCHEMA_VERSION,
        input: report::input_echo(&source, &ring),
        structure: Some(report::structure_section(&ring)),
        unit_group: Some(report::unit_group_section(&ring).map_err(|e| e.to_string())?),
        classification: None,
    };
    emit(&doc, json, || report::print_human(&doc))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(path: &Path, prime: usize, json: bool) -> Result<ExitCode, String> {
    let (source, ring) = load_ring(path)?;
    if prime < 2 || ring.order() % prime != 0 {
        return Err(format!(
            "--prime {prime} must be a prime dividing the ring order {}",
            ring.order()
        ));
    }
    let classification = classify::classify(&ring, prime).map_err(|e| e.to_string())?;
    let doc = report::ReportDocument {
        schema_version: report::SCHEMA_VERSION,
        input: report::input_echo(&source, &ring),
        structure: None,
        unit_group: Some(report::unit_group_section(&ring).map_err(|e| e.to_string())?),
        classification: Some(classification),
    };
    emit(&doc, json, || report::print_human(&doc))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    order: usize,
    dedupe: bool,
    export: Option<&Path>,
    cap: Option<usize>,
    json: bool,
) -> Result<ExitCode, String> {
    let mut task = EnumerationTask::new(order).with_dedupe(dedupe);
    if let Some(cap) = cap {
        task = task.with_cap(cap);
    }
    if order >= 16 && !json {
        eprintln!("note: orders of 16 and above search a much larger space; expect seconds, not milliseconds");
    }
    let census = enumerate_unital_rings(&task).map_err(|e| e.to_string())?;
    let doc = report::census_document(&census);
    emit(&doc, json, || report::print_census_human(&doc))?;
    if let Some(dir) = export {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        for (i, ring) in census.rings.iter().enumerate() {
            let file = dir.join(format!("ring_{:04}.ring", i));
            fs::write(&file, parse::render_table(ring))
                .map_err(|e| format!("cannot write {}: {e}", file.display()))?;
        }
        if !json {
            println!(
                "exported {} ring(s) to {}",
                census.rings.len(),
                dir.display()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_theorem(max_order: usize, cap: Option<usize>, json: bool) -> Result<ExitCode, String> {
    let mut options = SweepOptions::through_order(max_order);
    if let Some(cap) = cap {
        options.enumeration_cap = cap;
    }
    let report = match sweep(&options) {
        Ok(report) => report,
        Err(CensusError::Budget { .. }) => {
            return Err("sweep budget exhausted before completion".into())
        }
        Err(CensusError::Invalid(e)) => return Err(e.to_string()),
    };
    let violations = report.total_violations();
    let doc = report::sweep_document(max_order, report);
    if json {
        emit(&doc, true, || {})?;
    } else {
        report::print_sweep_human(&doc);
        if violations > 0 {
            // the counterexample payloads always go out as JSON
            let payload: Vec<_> = doc
                .report
                .checks
                .iter()
                .flat_map(|c| &c.violations)
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?
            );
        }
    }
    Ok(if violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    })
}
