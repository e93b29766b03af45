//! `ditto mine | generate | evaluate | discretize`
//!
//! Exit codes: 0 ok, 1 usage, 2 input/output or parse errors, 3 infeasible generator spec.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ditto_core::search::SearchEvent;
use ditto_core::{evaluate, generate_synthetic, mine_with, MinerConfig, PlantSpec};

use crate::error::{Error, Result};
use crate::json::{self, CodeTableJson, TruthJson};
use crate::preprocess::{self, Discretize};
use crate::report::{format_text, format_tsv, ReportRow};
use crate::tsv;

#[derive(Debug, Parser)]
#[command(name = "ditto", version, about = "Summarise multivariate event sequences with sequential patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine a code table from a TSV database.
    Mine(MineArgs),
    /// Generate random data with planted patterns.
    Generate(GenerateArgs),
    /// Score a code table against planted patterns.
    Evaluate(EvaluateArgs),
    /// Discretise a real-valued CSV file into a TSV database.
    Discretize(DiscretizeArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Database in `seq time attr value` TSV form.
    pub input: PathBuf,
    /// Where to write the code table JSON.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Candidates rarer than this are not considered.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_support: u64,
    /// Only 1 is supported; the search is sequential.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Log every accepted and pruned pattern to stderr.
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Generator spec as `key = value` lines.
    pub config: PathBuf,
    /// Database TSV to write.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Ground truth JSON to write.
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Database TSV the table was mined on.
    #[arg(long)]
    pub data: PathBuf,
    /// Code table JSON.
    #[arg(long)]
    pub table: PathBuf,
    /// Ground truth JSON.
    #[arg(long)]
    pub truth: PathBuf,
    /// Print tab-separated values instead of aligned text.
    #[arg(long)]
    pub tsv: bool,
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    /// CSV with a header row and one numeric column per attribute.
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Replace each block of this many values by its mean.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub subsample: u64,
    /// Use successor differences.
    #[arg(long)]
    pub relative: bool,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
    pub bins: u64,
    #[arg(long)]
    pub z_normalize: bool,
}

pub fn cmd_mine(a: &MineArgs, out: &mut dyn Write) -> Result<()> {
    if a.threads > 1 {
        eprintln!("warning: --threads {} ignored, mining runs on one thread", a.threads);
    }
    let db = tsv::read_database(&a.input)?;
    let cfg = MinerConfig::new(a.min_support as usize);
    let t0 = Instant::now();
    let verbose = a.verbose;
    let mut log = |e: &SearchEvent<'_>| {
        if !verbose {
            return;
        }
        let at = t0.elapsed().as_secs_f64();
        match e {
            SearchEvent::Accepted { pattern, gain, ct_len, .. } => {
                eprintln!("[{at:9.3}s] + {}  gain {gain:.2} bits  |CT| {ct_len}", pattern.display(&db))
            }
            SearchEvent::Pruned { pattern, gain, ct_len, .. } => {
                eprintln!("[{at:9.3}s] - {}  gain {gain:.2} bits  |CT| {ct_len}", pattern.display(&db))
            }
        }
    };
    let res = mine_with(&db, &cfg, &mut log)?;
    let secs = t0.elapsed().as_secs_f64();
    let mut j = json::code_table_json(&res.code_table, &db)?;
    j.runtime_secs = Some((secs * 1e3).round() / 1e3);
    json::write_json(&a.output, &j)?;
    let gain = ditto_core::compression_gain(&db, &res.code_table)?;
    let w = |e: std::io::Error| Error::io("<stdout>", e);
    writeln!(out, "patterns\t{}", res.code_table.non_singletons().len()).map_err(w)?;
    writeln!(out, "bits\t{:.2}\t(standard {:.2})", j.total_len, j.standard_len).map_err(w)?;
    writeln!(out, "gain%\t{gain:.2}").map_err(w)?;
    writeln!(out, "seconds\t{secs:.2}").map_err(w)?;
    Ok(())
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let spec = crate::config::read_spec(&a.config)?;
    let (db, gt) = generate_synthetic(&spec, a.seed).map_err(|e| match e {
        ditto_core::Error::InvalidArgument(m) => Error::Core(ditto_core::Error::Infeasible(m)),
        e => Error::Core(e),
    })?;
    tsv::write_database(&a.output, &db)?;
    json::write_json(&a.truth, &TruthJson::new(&gt, &db, Some(&spec), Some(a.seed)))
}

pub fn cmd_evaluate(a: &EvaluateArgs, out: &mut dyn Write) -> Result<()> {
    let db = tsv::read_database(&a.data)?;
    let table: CodeTableJson = json::read_json(&a.table)?;
    let truth: TruthJson = json::read_json(&a.truth)?;
    let ct = table.to_code_table(&db)?;
    let gt = truth.to_ground_truth(&db)?;
    let mut scores = evaluate(&db, &ct, &gt.patterns)?;
    scores.runtime_secs = table.runtime_secs;
    let spec = truth.spec.as_ref().map(PlantSpec::from);
    let row = [ReportRow::new(&db, &gt.patterns, spec.as_ref(), scores)];
    let text = if a.tsv { format_tsv(&row) } else { format_text(&row) };
    out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

pub fn cmd_discretize(a: &DiscretizeArgs) -> Result<()> {
    let raw = preprocess::read_csv(&a.input)?;
    let cfg = Discretize { subsample: a.subsample as usize, relative: a.relative, bins: a.bins as usize, znormalize: a.z_normalize };
    let db = preprocess::discretize(&raw, &cfg)?;
    tsv::write_database(&a.output, &db)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let res = match &cli.command {
        Command::Mine(a) => cmd_mine(a, out),
        Command::Generate(a) => cmd_generate(a),
        Command::Evaluate(a) => cmd_evaluate(a, out),
        Command::Discretize(a) => cmd_discretize(a),
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
