//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on configuration/parameter errors, 2 on data
//! errors (unreadable or degenerate inputs).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use aitrand::battery::{emit_report, run_battery_with_jobs, BatteryConfig, ReportFormat};
use aitrand::bitstream::{load_raw_file_with_order, BitOrder, BitString};
use aitrand::error::{Error, Result};
use aitrand::number_theory::{
    enumerate_carmichael, load_carmichael_file, ss_carmichael_metric, CarmichaelSet,
};
use aitrand::sources::{gen_biased, gen_champernowne, gen_prng, gen_weak_prng, vn_normalize};
use aitrand::{ait_tests, battery};

#[derive(Parser)]
#[command(name = "aitrand", version, about = "Randomness test battery for raw bit streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured battery and write JSON + CSV reports
    Analyze {
        /// Battery configuration (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Output directory for report.json and the CSV tables
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = all cores)
        #[arg(long, env = "AITRAND_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Generate a raw bit file from a built-in deterministic source
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Generator seed (required for prng, weak and biased)
        #[arg(long)]
        seed: Option<u64>,
        /// Probability of emitting 1 (biased only)
        #[arg(long)]
        p: Option<f64>,
        /// Number of bits to generate
        #[arg(long)]
        bits: u64,
        #[arg(long)]
        out: PathBuf,
        /// Apply von Neumann normalization before writing
        #[arg(long)]
        vn_normalize: bool,
    },
    /// Run one test over a raw bit file and print its JSON record
    Test {
        #[command(subcommand)]
        test: TestCommand,
    },
    /// Enumerate Carmichael numbers up to a bound into a newline list
    Carmichael {
        #[arg(long, default_value_t = battery::DEFAULT_CARMICHAEL_BOUND)]
        bound: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Prng,
    Weak,
    Champernowne,
    Biased,
}

#[derive(Subcommand)]
enum TestCommand {
    /// Move-to-front bit counts
    BookStack {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Borel normality over block lengths 1..=m_max
    Borel {
        #[command(flatten)]
        input: InputArgs,
        /// Cap on the tested block length (default 5)
        #[arg(long)]
        m_limit: Option<u32>,
    },
    /// Random-walk range
    Walk {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Sliding-window entropy estimate
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 4096)]
        window: u64,
        #[arg(long, default_value_t = 4096)]
        positions: u64,
    },
    /// Bits consumed until every Carmichael number is declared composite
    Ss {
        #[command(flatten)]
        input: InputArgs,
        /// Enumerate Carmichael numbers up to this bound
        #[arg(long, conflicts_with = "carmichael_list")]
        carmichael_bound: Option<u64>,
        /// Load a precomputed ascending Carmichael list instead
        #[arg(long)]
        carmichael_list: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Raw bit file (headerless packed bytes)
    #[arg(long)]
    input: PathBuf,
    /// Use only the first N bits
    #[arg(long)]
    truncate_bits: Option<u64>,
    /// Read bytes low-bit-first instead of the native high-bit-first
    #[arg(long)]
    lsb_first: bool,
}

impl InputArgs {
    fn load(&self) -> Result<BitString> {
        let order = if self.lsb_first {
            BitOrder::LsbFirst
        } else {
            BitOrder::MsbFirst
        };
        load_raw_file_with_order(&self.input, self.truncate_bits, order)
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { config, out, jobs } => {
            let config = BatteryConfig::from_json_file(&config)?;
            config.validate(Some(&out))?;
            let report = run_battery_with_jobs(&config, jobs)?;
            let mut files = emit_report(&report, &out, ReportFormat::Json)?;
            files.extend(emit_report(&report, &out, ReportFormat::Csv)?);
            println!(
                "{}",
                json!({
                    "output_dir": out,
                    "files_written": files.len(),
                    "tests": report.tests.keys().collect::<Vec<_>>(),
                })
            );
            Ok(())
        }
        Command::Gen {
            kind,
            seed,
            p,
            bits,
            out,
            vn_normalize: vn,
        } => {
            let need_seed = || {
                seed.ok_or_else(|| Error::Parameter("this generator requires --seed".into()))
            };
            let x = match kind {
                GenKind::Prng => gen_prng(need_seed()?, bits)?,
                GenKind::Weak => gen_weak_prng(need_seed()?, bits)?,
                GenKind::Champernowne => gen_champernowne(bits)?,
                GenKind::Biased => {
                    let p = p.ok_or_else(|| {
                        Error::Parameter("the biased generator requires --p".into())
                    })?;
                    gen_biased(need_seed()?, p, bits)?
                }
            };
            let x = if vn { vn_normalize(&x) } else { x };
            std::fs::write(&out, x.as_bytes()).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })?;
            println!(
                "{}",
                json!({ "path": out, "bits": x.bit_len(), "bytes": x.as_bytes().len() })
            );
            Ok(())
        }
        Command::Test { test } => run_test(test),
        Command::Carmichael { bound, out } => {
            let cs = enumerate_carmichael(bound)?;
            let mut text = String::new();
            for n in cs.numbers() {
                text.push_str(&n.to_string());
                text.push('\n');
            }
            std::fs::write(&out, text).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })?;
            println!("{}", json!({ "path": out, "bound": bound, "count": cs.len() }));
            Ok(())
        }
    }
}

fn run_test(test: TestCommand) -> Result<()> {
    let record = match test {
        TestCommand::BookStack { input } => {
            serde_json::to_string(&ait_tests::book_stack_metric(&input.load()?)?)
        }
        TestCommand::Borel { input, m_limit } => {
            serde_json::to_string(&ait_tests::borel_normality(&input.load()?, m_limit)?)
        }
        TestCommand::Walk { input } => {
            serde_json::to_string(&ait_tests::random_walk_range(&input.load()?)?)
        }
        TestCommand::Entropy {
            input,
            window,
            positions,
        } => serde_json::to_string(&ait_tests::entropy_sliding(&input.load()?, window, positions)?),
        TestCommand::Ss {
            input,
            carmichael_bound,
            carmichael_list,
        } => {
            let cs: CarmichaelSet = match carmichael_list {
                Some(path) => load_carmichael_file(&path)?,
                None => enumerate_carmichael(
                    carmichael_bound.unwrap_or(battery::DEFAULT_CARMICHAEL_BOUND),
                )?,
            };
            serde_json::to_string(&ss_carmichael_metric(&input.load()?, &cs)?)
        }
    };
    println!("{}", record.expect("outcome serialization cannot fail"));
    Ok(())
}
