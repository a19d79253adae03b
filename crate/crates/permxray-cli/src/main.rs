//! `permxray`: compute X-rays, partition `S_n` by them, reconstruct
//! permutations from target words, verify the claims the library is built
//! around, and emit the reference tables.
//!
//! Exit codes: 0 success (or verified pass), 1 verified false, 2 error or
//! inconclusive.

mod report;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use permxray::reconstruct::{ReconstructionInstance, SolveMode, SolveOptions};
use permxray::Permutation;
use serde_json::json;

#[derive(Parser)]
#[command(name = "permxray", version, about = "X-rays of permutations")]
struct Cli {
    /// Worker threads for exhaustive sweeps; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Never touch the network; answer from cache and bundled data only.
    #[arg(long, global = true)]
    offline: bool,

    /// Safety cap for exhaustive sweeps.
    #[arg(long, global = true, default_value_t = permxray::DEFAULT_LIMIT)]
    limit_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Decide,
    Count,
    #[default]
    Enumerate,
}

impl From<ModeArg> for SolveMode {
    fn from(mode: ModeArg) -> SolveMode {
        match mode {
            ModeArg::Decide => SolveMode::Decide,
            ModeArg::Count => SolveMode::Count,
            ModeArg::Enumerate => SolveMode::Enumerate,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the X-ray of a permutation.
    Xray {
        /// One-line word: digits for orders up to 9, comma-separated above.
        perm: String,
        /// Diagonal sums instead of antidiagonal sums.
        #[arg(long)]
        diagonal: bool,
    },
    /// Partition S_n by X-ray and print the class-size table.
    Classes {
        n: usize,
        /// Machine-readable output.
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Human-readable a(b) line (the default).
        #[arg(long)]
        table: bool,
        /// Include every class with its members.
        #[arg(long)]
        full: bool,
    },
    /// Find permutations whose X-ray equals a target word.
    Reconstruct {
        /// Target word: digits, or comma-separated entries.
        word: String,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        /// Node ceiling for decide mode.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Check a claim; exits 0 on pass, 1 on verified-false, 2 if inconclusive.
    Verify {
        /// 1..6 (or difference-count, zero-sum, inflation, score-bound,
        /// palindromic, reverse-inverse), conj-binary, conj-adjacent,
        /// conj-zerotwo.
        target: String,
        /// Largest order to sweep; each target has its own default.
        #[arg(long)]
        max_n: Option<usize>,
        /// Random instances for the inflation check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 20_2020_2020)]
        seed: u64,
        /// Machine-readable evidence.
        #[arg(long)]
        json: bool,
    },
    /// Write every reference table (JSON + text) plus a run manifest.
    Report {
        #[arg(long, default_value = "permxray-report")]
        out: std::path::PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Xray { perm, diagonal } => {
            let p: Permutation = perm.parse()?;
            let xr = if *diagonal {
                p.diagonal_xray()
            } else {
                p.xray()
            };
            println!("{xr}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes { n, json, full, .. } => {
            let report = permxray::degeneracy::enumerate_classes_with_limit(*n, cli.limit_n)?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&report.to_json(*full))?);
            } else {
                println!("{}", report.histogram_line());
                if let Some(note) = permxray::degeneracy::reference_line_note(&report) {
                    println!("NOTE: {note}");
                }
                if *full {
                    for (word, members) in report.classes() {
                        let names: Vec<String> =
                            members.iter().map(|p| p.to_string()).collect();
                        println!(
                            "{}: {}",
                            permxray::xray::format_word(word),
                            names.join(",")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct {
            word,
            mode,
            node_budget,
        } => {
            let target = permxray::xray::parse_word(word)?;
            let inst = ReconstructionInstance::new(target);
            let mut opts = SolveOptions {
                limit: cli.limit_n.max(permxray::DEFAULT_LIMIT),
                ..SolveOptions::default()
            };
            if let Some(budget) = node_budget {
                opts.node_budget = *budget;
            }
            let started = Instant::now();
            let outcome = permxray::reconstruct::solve_with(&inst, (*mode).into(), &opts)?;
            let elapsed_ms = started.elapsed().as_millis() as u64;
            let witnesses: Vec<String> =
                outcome.witnesses.iter().map(|p| p.to_string()).collect();
            let output = json!({
                "schema": "permxray/1",
                "kind": "reconstruct",
                "target": word,
                "mode": outcome.mode,
                "found": outcome.found,
                "count": outcome.count,
                "witnesses": witnesses,
                "nodes_explored": outcome.nodes_explored,
                "elapsed_ms": elapsed_ms,
            });
            println!("{}", serde_json::to_string_pretty(&output)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            target,
            max_n,
            samples,
            seed,
            json,
        } => {
            let outcome = verify::run(
                target,
                &verify::Options {
                    max_n: *max_n,
                    samples: *samples,
                    seed: *seed,
                    offline: cli.offline,
                    limit_n: cli.limit_n,
                },
            )?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&outcome.to_json())?);
            } else {
                for line in &outcome.lines {
                    println!("{line}");
                }
                println!("{}: {}", outcome.target, outcome.verdict.label());
            }
            Ok(outcome.verdict.exit_code())
        }
        Command::Report { out } => {
            report::write_all(out, cli.offline)?;
            println!("report written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
