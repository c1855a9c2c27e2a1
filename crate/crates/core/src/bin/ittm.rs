//! Command-line harness: run programs on ordinal-length tapes, build
//! reachability reports over the catalog, dump Goedel pairing tables,
//! validate alpha-codes, and execute batch reports.
//!
//! Exit codes: 0 success, 2 validation error, 3 internal/semantics error.

use clap::{Args, Parser, Subcommand};
use ittm_core::codes::CodeBudget;
use ittm_core::engine::EngineOptions;
use ittm_core::experiments::{
    self, load_code, validate_code, BatchConfig, HarnessError, InputSpec, ProgramRef, RunRequest,
    Selection,
};
use ittm_core::machine::StateConvention;
use ittm_core::ordinal::Ordinal;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ittm", version, about = "Infinite-time Turing machines with ordinal tape length")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct EngineFlags {
    /// Successor-step budget.
    #[arg(long, default_value_t = 1_000_000)]
    budget_steps: u64,
    /// Limit-jump budget.
    #[arg(long, default_value_t = 1_000)]
    budget_jumps: u64,
    /// Machine-state convention at limit times.
    #[arg(long, default_value = "distinguished")]
    limit_state_convention: String,
    /// Disable cycle/drift acceleration (pure successor stepping).
    #[arg(long)]
    no_accelerate: bool,
}

impl EngineFlags {
    fn to_options(&self) -> Result<EngineOptions, HarnessError> {
        let convention: StateConvention = self
            .limit_state_convention
            .parse()
            .map_err(HarnessError::Validation)?;
        Ok(EngineOptions {
            budget_steps: self.budget_steps,
            budget_jumps: self.budget_jumps,
            convention,
            accelerate: !self.no_accelerate,
            ..EngineOptions::default()
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one program and print its outcome record.
    Run {
        /// Tape length (an ordinal literal, e.g. w, w^2, w^(w)).
        #[arg(long)]
        alpha: String,
        /// Program: a file path or catalog:name(args).
        #[arg(long)]
        program: String,
        /// Input tape: empty | ones:<cells> | canonical:<ordinal> | code:<file>.
        #[arg(long, default_value = "empty")]
        input: String,
        /// Optional parameter ordinal, marked on the first work tape.
        #[arg(long)]
        param: Option<String>,
        /// Times at which to sample configuration snapshots into the trace.
        #[arg(long)]
        probe: Option<String>,
        /// Write the execution trace (JSON lines) to this file.
        #[arg(long)]
        trace: Option<String>,
        /// Record every successor step in the trace.
        #[arg(long)]
        record_steps: bool,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Run the catalog on empty input and report reached cells.
    Reach {
        #[arg(long)]
        alpha: String,
        /// Catalog selection, e.g. "move_right(0..20);reach_limit".
        #[arg(long)]
        select: Option<String>,
        /// Output format.
        #[arg(long, default_value = "json")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Print the first N pairs in Goedel order with their ranks.
    PairTable {
        #[arg(long)]
        limit: u64,
        /// Cross-check each row against the closed-form pairing.
        #[arg(long)]
        verify: bool,
        /// Self-test hook: corrupt one rank to prove --verify bites.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check an alpha-code file for well-foundedness and extensionality.
    ValidateCode {
        /// JSON code file.
        #[arg(long)]
        file: String,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        #[arg(long, default_value_t = 100_000)]
        max_edges: usize,
        /// Disable the analytic fast path for canonical codes.
        #[arg(long)]
        no_fast_path: bool,
    },
    /// Run a batch of requests from a TOML config and emit one report.
    Report {
        /// TOML config file (alpha, budgets, runs).
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_ordinal(s: &str) -> Result<Ordinal, HarnessError> {
    s.parse()
        .map_err(|e| HarnessError::Validation(format!("{e}")))
}

fn emit(text: &str, out: &Option<String>) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| HarnessError::Internal(format!("writing {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(HarnessError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(HarnessError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Run {
            alpha,
            program,
            input,
            param,
            probe,
            trace,
            record_steps,
            engine,
        } => {
            let mut options = engine.to_options()?;
            options.record_steps = record_steps;
            if let Some(p) = &probe {
                options.probe_times = p
                    .split(',')
                    .map(|t| parse_ordinal(t.trim()))
                    .collect::<Result<_, _>>()?;
            }
            let req = RunRequest {
                program: ProgramRef::parse(&program)?,
                alpha: parse_ordinal(&alpha)?,
                input: InputSpec::parse(&input)?,
                param: param.as_deref().map(parse_ordinal).transpose()?,
                options,
            };
            let (record, run_trace) = experiments::execute(&req)?;
            if let Some(path) = &trace {
                std::fs::write(path, experiments::trace_to_jsonl(&run_trace))
                    .map_err(|e| HarnessError::Internal(format!("writing {path}: {e}")))?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&record)
                    .map_err(|e| HarnessError::Internal(e.to_string()))?
            );
            Ok(())
        }
        Command::Reach {
            alpha,
            select,
            format,
            out,
            engine,
        } => {
            let options = engine.to_options()?;
            let alpha = parse_ordinal(&alpha)?;
            let selection = match &select {
                Some(s) => Selection::parse(s)?,
                None => Selection::default_suite(),
            };
            let report = experiments::reach_report_with_cells(&alpha, &selection, &options)?;
            let text = match format.as_str() {
                "json" => serde_json::to_string_pretty(&report)
                    .map_err(|e| HarnessError::Internal(e.to_string()))?,
                "csv" => experiments::reach_report_csv(&report),
                other => {
                    return Err(HarnessError::Validation(format!(
                        "unknown format {other:?}"
                    )))
                }
            };
            emit(&text, &out)
        }
        Command::PairTable {
            limit,
            verify,
            inject_fault,
            format,
            out,
        } => {
            let rows = experiments::pair_table(limit, verify, inject_fault)?;
            let text = match format.as_str() {
                "json" => serde_json::to_string_pretty(&rows)
                    .map_err(|e| HarnessError::Internal(e.to_string()))?,
                "csv" => experiments::pair_table_csv(&rows),
                other => {
                    return Err(HarnessError::Validation(format!(
                        "unknown format {other:?}"
                    )))
                }
            };
            emit(&text, &out)
        }
        Command::ValidateCode {
            file,
            max_nodes,
            max_edges,
            no_fast_path,
        } => {
            let code = load_code(&file)?;
            let budget = CodeBudget {
                max_nodes,
                max_edges,
                allow_fast_path: !no_fast_path,
            };
            let verdict = validate_code(&code, &budget);
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict)
                    .map_err(|e| HarnessError::Internal(e.to_string()))?
            );
            Ok(())
        }
        Command::Report { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| HarnessError::Validation(format!("{config}: {e}")))?;
            let config: BatchConfig = toml::from_str(&text)
                .map_err(|e| HarnessError::Validation(format!("config: {e}")))?;
            let report = experiments::batch_report(&config)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| HarnessError::Internal(e.to_string()))?;
            emit(&text, &out)
        }
    }
}
