//! The experiment harness behind the CLI: validated run requests, outcome
//! records, reachability reports over the catalog, pairing tables, and code
//! validation. All outputs are deterministic: fixed field order, canonical
//! ordinal literals, no timestamps.

use crate::asm::{self, catalog, catalog_names, AsmError};
use crate::codes::{self, AlphaCode, CodeBudget};
use crate::engine::{self, EngineOptions, RunOutcome, RunSpec, TraceEvent};
use crate::machine::{Configuration, Program};
use crate::ordinal::{godel_pair, godel_unpair, GodelPairs, Ordinal};
use crate::tape::{TapeContent, TapeSnapshot};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Bad user input: exit code 2.
    #[error("validation: {0}")]
    Validation(String),
    /// Internal or semantics failure: exit code 3.
    #[error("internal: {0}")]
    Internal(String),
}

impl From<AsmError> for HarnessError {
    fn from(e: AsmError) -> Self {
        HarnessError::Validation(e.to_string())
    }
}

impl From<engine::EngineError> for HarnessError {
    fn from(e: engine::EngineError) -> Self {
        match e {
            engine::EngineError::Precondition(msg) => HarnessError::Validation(msg),
            other => HarnessError::Internal(other.to_string()),
        }
    }
}

/// How a program is named on the command line: a file path or
/// `catalog:name(args)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProgramRef {
    CatalogEntry { name: String, args: Vec<i64> },
    File(String),
    Source(String),
}

impl ProgramRef {
    pub fn parse(s: &str) -> Result<ProgramRef, HarnessError> {
        if let Some(rest) = s.strip_prefix("catalog:") {
            let (name, args) = parse_name_args(rest)?;
            Ok(ProgramRef::CatalogEntry { name, args })
        } else {
            Ok(ProgramRef::File(s.to_string()))
        }
    }

    pub fn load(&self) -> Result<(String, Program), HarnessError> {
        match self {
            ProgramRef::CatalogEntry { name, args } => {
                let cat = catalog(name, args)?;
                let prog = cat.program.assemble()?;
                Ok((format_catalog_label(name, args), prog))
            }
            ProgramRef::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| HarnessError::Validation(format!("{path}: {e}")))?;
                let prog = if text.starts_with("ittm-program") {
                    asm::parse_table(&text)?
                } else {
                    asm::assemble(&text)?
                };
                Ok((path.clone(), prog))
            }
            ProgramRef::Source(text) => Ok(("<inline>".into(), asm::assemble(text)?)),
        }
    }
}

fn format_catalog_label(name: &str, args: &[i64]) -> String {
    if args.is_empty() {
        format!("catalog:{name}")
    } else {
        let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        format!("catalog:{name}({})", args.join(","))
    }
}

fn parse_name_args(s: &str) -> Result<(String, Vec<i64>), HarnessError> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s.to_string(), Vec::new()));
    };
    if !s.ends_with(')') {
        return Err(HarnessError::Validation(format!(
            "malformed program reference {s:?}"
        )));
    }
    let name = s[..open].to_string();
    let inner = &s[open + 1..s.len() - 1];
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<i64>()
                    .map_err(|_| HarnessError::Validation(format!("bad argument {a:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    Ok((name, args))
}

/// Input-tape specification: empty, explicit marked cells, or a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Empty,
    /// 1s at the listed cells or half-open ranges.
    Ones(Vec<(Ordinal, Ordinal)>),
    Canonical(Ordinal),
    CodeFile(String),
}

impl InputSpec {
    pub fn parse(s: &str) -> Result<InputSpec, HarnessError> {
        if s == "empty" {
            return Ok(InputSpec::Empty);
        }
        if let Some(rest) = s.strip_prefix("canonical:") {
            let gamma: Ordinal = rest
                .parse()
                .map_err(|e| HarnessError::Validation(format!("{e}")))?;
            return Ok(InputSpec::Canonical(gamma));
        }
        if let Some(rest) = s.strip_prefix("code:") {
            return Ok(InputSpec::CodeFile(rest.to_string()));
        }
        if let Some(rest) = s.strip_prefix("ones:") {
            let mut items = Vec::new();
            for item in rest.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                if let Some((lo, hi)) = item.split_once("..") {
                    let lo: Ordinal = lo
                        .parse()
                        .map_err(|e| HarnessError::Validation(format!("{e}")))?;
                    let hi: Ordinal = hi
                        .parse()
                        .map_err(|e| HarnessError::Validation(format!("{e}")))?;
                    items.push((lo, hi));
                } else {
                    let cell: Ordinal = item
                        .parse()
                        .map_err(|e| HarnessError::Validation(format!("{e}")))?;
                    items.push((cell.clone(), cell.succ()));
                }
            }
            return Ok(InputSpec::Ones(items));
        }
        Err(HarnessError::Validation(format!(
            "unknown input spec {s:?} (expected empty | ones:... | canonical:<ordinal> | code:<file>)"
        )))
    }

    pub fn realize(&self, alpha: &Ordinal) -> Result<TapeContent, HarnessError> {
        match self {
            InputSpec::Empty => Ok(TapeContent::empty(alpha.clone())),
            InputSpec::Ones(items) => {
                let mut t = TapeContent::empty(alpha.clone());
                for (lo, hi) in items {
                    if hi > alpha {
                        return Err(HarnessError::Validation(format!(
                            "input interval [{lo}, {hi}) exceeds alpha {alpha}"
                        )));
                    }
                    t = t
                        .set_interval(lo, hi, true)
                        .map_err(|e| HarnessError::Validation(e.to_string()))?;
                }
                Ok(t)
            }
            InputSpec::Canonical(gamma) => {
                let code = codes::canonical_code(gamma, alpha)
                    .map_err(|e| HarnessError::Validation(e.to_string()))?;
                Ok(code.to_input_tape())
            }
            InputSpec::CodeFile(path) => {
                let code = load_code(path)?;
                if code.alpha() != alpha {
                    return Err(HarnessError::Validation(format!(
                        "code alpha {} differs from run alpha {alpha}",
                        code.alpha()
                    )));
                }
                Ok(code.to_input_tape())
            }
        }
    }
}

pub fn load_code(path: &str) -> Result<AlphaCode, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Validation(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Validation(format!("{path}: {e}")))
}

/// A fully validated run request.
#[derive(Debug, Clone)]
pub struct RunRequest {
    pub program: ProgramRef,
    pub alpha: Ordinal,
    pub input: InputSpec,
    pub param: Option<Ordinal>,
    pub options: EngineOptions,
}

impl RunRequest {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !self.alpha.is_additively_closed() {
            return Err(HarnessError::Validation(format!(
                "alpha {} rejected: not multiplicatively closed (tape lengths must be infinite powers of w)",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// The serialized outcome of one run, with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub program: String,
    pub alpha: Ordinal,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halting_time: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_head: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_tape: Option<TapeSnapshot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_from: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_to: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted_at: Option<Ordinal>,
    pub settings: EngineOptions,
}

pub fn outcome_record(
    label: &str,
    alpha: &Ordinal,
    outcome: &RunOutcome,
    options: &EngineOptions,
) -> OutcomeRecord {
    let mut rec = OutcomeRecord {
        program: label.to_string(),
        alpha: alpha.clone(),
        outcome: String::new(),
        halting_time: None,
        output_head: None,
        output_tape: None,
        loop_from: None,
        loop_to: None,
        exhausted_at: None,
        settings: options.clone(),
    };
    match outcome {
        RunOutcome::Halted { time, final_cfg } => {
            rec.outcome = "halted".into();
            rec.halting_time = Some(time.clone());
            rec.output_head = Some(final_cfg.output_head().clone());
            rec.output_tape = Some(final_cfg.output_tape().serialize());
        }
        RunOutcome::NonHaltingCertified { loop_from, loop_to } => {
            rec.outcome = "non_halting_certified".into();
            rec.loop_from = Some(loop_from.clone());
            rec.loop_to = Some(loop_to.clone());
        }
        RunOutcome::BudgetExhausted { time, .. } => {
            rec.outcome = "budget_exhausted".into();
            rec.exhausted_at = Some(time.clone());
        }
    }
    rec
}

/// Catalog entries with declared input contracts reject out-of-range
/// inputs rather than running to a silently wrong answer.
fn check_catalog_input(req: &RunRequest) -> Result<(), HarnessError> {
    let ProgramRef::CatalogEntry { name, .. } = &req.program else {
        return Ok(());
    };
    match name.as_str() {
        "mult_position" => match &req.input {
            InputSpec::Empty => Ok(()), // reachability runs; honest non-halt
            InputSpec::Ones(items) => {
                let mut cells = Vec::new();
                for (lo, hi) in items {
                    if &lo.succ() != hi {
                        return Err(HarnessError::Validation(
                            "mult_position expects two marked cells".into(),
                        ));
                    }
                    cells.push(lo.clone());
                }
                if cells.len() != 2 {
                    return Err(HarnessError::Validation(
                        "mult_position expects exactly two marks".into(),
                    ));
                }
                cells.sort();
                asm::mult_marks(&cells[1], &cells[0])
                    .map(|_| ())
                    .map_err(|e| HarnessError::Validation(e.to_string()))
            }
            _ => Err(HarnessError::Validation(
                "mult_position takes marks, not a code input".into(),
            )),
        },
        "count_through_code" => match &req.input {
            InputSpec::Empty => Ok(()),
            InputSpec::Canonical(gamma) => {
                if gamma.is_zero() || gamma.is_finite() {
                    Ok(())
                } else {
                    Err(HarnessError::Validation(
                        "count_through_code supports finite canonical codes only".into(),
                    ))
                }
            }
            InputSpec::CodeFile(path) => {
                let code = load_code(path)?;
                let budget = CodeBudget::default();
                match codes::decode(&code, &budget) {
                    codes::DecodeOutcome::Ordinal { value } if value.is_finite() || value.is_zero() => {
                        let canonical = codes::canonical_code(&value, code.alpha())
                            .map_err(|e| HarnessError::Validation(e.to_string()))?;
                        let same = canonical.support().zip(code.support()).is_some_and(
                            |(mut a, mut b)| {
                                a.sort();
                                b.sort();
                                a == b
                            },
                        );
                        if same {
                            Ok(())
                        } else {
                            Err(HarnessError::Validation(
                                "count_through_code supports canonical finite codes only".into(),
                            ))
                        }
                    }
                    _ => Err(HarnessError::Validation(
                        "count_through_code supports canonical finite codes only".into(),
                    )),
                }
            }
            _ => Err(HarnessError::Validation(
                "count_through_code takes a code input".into(),
            )),
        },
        _ => Ok(()),
    }
}

/// Execute one request. Returns the record plus the engine trace.
pub fn execute(req: &RunRequest) -> Result<(OutcomeRecord, engine::Trace), HarnessError> {
    req.validate()?;
    check_catalog_input(req)?;
    let (label, program) = req.program.load()?;
    let input = req.input.realize(&req.alpha)?;
    let spec = RunSpec {
        program,
        alpha: req.alpha.clone(),
        input,
        param: req.param.clone(),
        options: req.options.clone(),
    };
    let (outcome, trace) = engine::run(&spec)?;
    Ok((
        outcome_record(&label, &req.alpha, &outcome, &req.options),
        trace,
    ))
}

/// Trace serialization: one JSON record per line, then probe snapshots.
pub fn trace_to_jsonl(trace: &engine::Trace) -> String {
    let mut out = String::new();
    for e in &trace.events {
        out.push_str(&serde_json::to_string(e).expect("trace event"));
        out.push('\n');
    }
    for (time, cfg) in &trace.probes {
        let probe = ProbeRecord {
            event: "probe",
            time: time.clone(),
            config: config_snapshot(cfg),
        };
        out.push_str(&serde_json::to_string(&probe).expect("probe record"));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ProbeRecord {
    event: &'static str,
    time: Ordinal,
    config: ConfigSnapshot,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub state: u32,
    pub heads: Vec<Ordinal>,
    pub tapes: Vec<TapeSnapshot>,
    pub time: Ordinal,
}

pub fn config_snapshot(cfg: &Configuration) -> ConfigSnapshot {
    ConfigSnapshot {
        state: cfg.state,
        heads: cfg.heads.clone(),
        tapes: cfg.tapes.iter().map(|t| t.serialize()).collect(),
        time: cfg.time.clone(),
    }
}

/// One row of a reachability report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReachRow {
    pub program: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halting_time: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_from: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_to: Option<Ordinal>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReachReport {
    pub alpha: Ordinal,
    pub settings: EngineOptions,
    pub rows: Vec<ReachRow>,
}

/// The catalog selection for a reach report: entries in catalog order with
/// their argument lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub entries: Vec<(String, Vec<Vec<i64>>)>,
}

impl Selection {
    /// `move_right(0..20),reach_limit,busy_loop` etc. Ranges `a..b` are
    /// half-open; plain numbers are single argument values.
    pub fn parse(s: &str) -> Result<Selection, HarnessError> {
        let mut entries = Vec::new();
        for item in s.split(';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (name, argses) = if let Some(open) = item.find('(') {
                if !item.ends_with(')') {
                    return Err(HarnessError::Validation(format!(
                        "malformed selection item {item:?}"
                    )));
                }
                let name = item[..open].to_string();
                let inner = &item[open + 1..item.len() - 1];
                let mut argses = Vec::new();
                if let Some((lo, hi)) = inner.split_once("..") {
                    let lo: i64 = lo.trim().parse().map_err(|_| {
                        HarnessError::Validation(format!("bad range in {item:?}"))
                    })?;
                    let hi: i64 = hi.trim().parse().map_err(|_| {
                        HarnessError::Validation(format!("bad range in {item:?}"))
                    })?;
                    for n in lo..hi {
                        argses.push(vec![n]);
                    }
                } else if inner.trim().is_empty() {
                    argses.push(Vec::new());
                } else {
                    let args: Result<Vec<i64>, _> =
                        inner.split(',').map(|a| a.trim().parse::<i64>()).collect();
                    argses.push(args.map_err(|_| {
                        HarnessError::Validation(format!("bad arguments in {item:?}"))
                    })?);
                }
                (name, argses)
            } else {
                (item.to_string(), vec![Vec::new()])
            };
            if !catalog_names().contains(&name.as_str()) {
                return Err(HarnessError::Validation(format!(
                    "unknown catalog program {name:?}"
                )));
            }
            entries.push((name, argses));
        }
        if entries.is_empty() {
            return Err(HarnessError::Validation("empty selection".into()));
        }
        Ok(Selection { entries })
    }

    /// The default reach suite: the whole catalog at small argument ranges,
    /// in catalog order.
    pub fn default_suite() -> Selection {
        Selection {
            entries: vec![
                ("move_right".into(), (0..8).map(|n| vec![n]).collect()),
                ("sweep_fill".into(), vec![Vec::new()]),
                ("reach_limit".into(), vec![Vec::new()]),
                (
                    "reach_limit_times".into(),
                    (1..=3).map(|n| vec![n]).collect(),
                ),
                ("mult_position".into(), vec![Vec::new()]),
                ("count_through_code".into(), vec![Vec::new()]),
                ("busy_loop".into(), vec![Vec::new()]),
            ],
        }
    }
}

/// Run the selection on empty input (reachability is defined over trivial
/// input) and classify each row.
pub fn reach_report(
    alpha: &Ordinal,
    selection: &Selection,
    options: &EngineOptions,
) -> Result<ReachReport, HarnessError> {
    if !alpha.is_additively_closed() {
        return Err(HarnessError::Validation(format!(
            "alpha {alpha} rejected: not multiplicatively closed (tape lengths must be infinite powers of w)"
        )));
    }
    let mut rows = Vec::new();
    for (name, argses) in &selection.entries {
        for args in argses {
            let label = format_catalog_label(name, args);
            let program = match catalog(name, args) {
                Ok(cat) => cat.program.assemble()?,
                Err(e) => {
                    rows.push(ReachRow {
                        program: label,
                        outcome: format!("invalid: {e}"),
                        cell: None,
                        halting_time: None,
                        loop_from: None,
                        loop_to: None,
                    });
                    continue;
                }
            };
            let spec = RunSpec {
                program,
                alpha: alpha.clone(),
                input: TapeContent::empty(alpha.clone()),
                param: None,
                options: options.clone(),
            };
            let (outcome, trace) = engine::run(&spec)?;
            rows.push(classify_reach_row(label, &outcome, &trace));
        }
    }
    Ok(ReachReport {
        alpha: alpha.clone(),
        settings: options.clone(),
        rows,
    })
}

fn classify_reach_row(program: String, outcome: &RunOutcome, _trace: &engine::Trace) -> ReachRow {
    match outcome {
        RunOutcome::Halted { time, final_cfg } => ReachRow {
            program,
            outcome: "reached".into(),
            cell: Some(final_cfg.output_head().clone()),
            halting_time: Some(time.clone()),
            loop_from: None,
            loop_to: None,
        },
        RunOutcome::NonHaltingCertified { loop_from, loop_to } => ReachRow {
            program,
            // certificates anchored at a snapshot pin every head for the
            // whole loop, so the output head is eventually stable there
            outcome: "eventually_stable".into(),
            cell: None,
            halting_time: None,
            loop_from: Some(loop_from.clone()),
            loop_to: Some(loop_to.clone()),
        },
        RunOutcome::BudgetExhausted { .. } => ReachRow {
            program,
            outcome: "unknown".into(),
            cell: None,
            halting_time: None,
            loop_from: None,
            loop_to: None,
        },
    }
}

/// Rows for which a certificate pins the output head: fill in the cell.
/// Our certificates compare full snapshots, so the head is always pinned;
/// the cell is the anchor's output head, which the caller recovers by
/// rerunning. To keep reach self-contained we re-run certificate rows with
/// probes; the engine is deterministic, so this is exact.
pub fn reach_report_with_cells(
    alpha: &Ordinal,
    selection: &Selection,
    options: &EngineOptions,
) -> Result<ReachReport, HarnessError> {
    let mut report = reach_report(alpha, selection, options)?;
    for row in &mut report.rows {
        if row.outcome == "eventually_stable" {
            let (name, args) = parse_name_args(
                row.program
                    .strip_prefix("catalog:")
                    .unwrap_or(&row.program),
            )?;
            let program = catalog(&name, &args)?.program.assemble()?;
            let mut opts = options.clone();
            opts.probe_times = vec![row.loop_from.clone().expect("certificate row")];
            let spec = RunSpec {
                program,
                alpha: alpha.clone(),
                input: TapeContent::empty(alpha.clone()),
                param: None,
                options: opts,
            };
            let (_, trace) = engine::run(&spec)?;
            if let Some((_, cfg)) = trace.probes.first() {
                row.cell = Some(cfg.output_head().clone());
            }
        }
    }
    Ok(report)
}

pub fn reach_report_csv(report: &ReachReport) -> String {
    let mut out = String::from("program,outcome,cell,halting_time,loop_from,loop_to\n");
    let fmt = |o: &Option<Ordinal>| o.as_ref().map(|x| x.to_string()).unwrap_or_default();
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.program,
            r.outcome,
            fmt(&r.cell),
            fmt(&r.halting_time),
            fmt(&r.loop_from),
            fmt(&r.loop_to),
        ));
    }
    out
}

/// One pairing-table row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairRow {
    pub rank: u64,
    pub left: Ordinal,
    pub right: Ordinal,
}

/// The first `limit` pairs in Goedel order. With `verify`, each row is
/// cross-checked against the closed-form pairing and its inverse;
/// `inject_fault` flips one rank to exercise the self-test.
pub fn pair_table(limit: u64, verify: bool, inject_fault: bool) -> Result<Vec<PairRow>, HarnessError> {
    if limit > 1_000_000 {
        return Err(HarnessError::Validation(
            "pair-table limit must be at most 10^6".into(),
        ));
    }
    let mut rows = Vec::with_capacity(limit as usize);
    for (rank, (b, c)) in GodelPairs::new().take(limit as usize).enumerate() {
        let mut rank = rank as u64;
        if inject_fault && rank == limit / 2 {
            rank += 1;
        }
        rows.push(PairRow {
            rank,
            left: Ordinal::from(b),
            right: Ordinal::from(c),
        });
    }
    if verify {
        for row in &rows {
            let rank = Ordinal::from(row.rank);
            if godel_pair(&row.left, &row.right) != rank {
                return Err(HarnessError::Internal(format!(
                    "pairing mismatch at rank {}: ({}, {})",
                    row.rank, row.left, row.right
                )));
            }
            let (b, c) = godel_unpair(&rank);
            if (b, c) != (row.left.clone(), row.right.clone()) {
                return Err(HarnessError::Internal(format!(
                    "unpairing mismatch at rank {}",
                    row.rank
                )));
            }
        }
    }
    Ok(rows)
}

pub fn pair_table_csv(rows: &[PairRow]) -> String {
    let mut out = String::from("rank,left,right\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.rank, r.left, r.right));
    }
    out
}

/// Validate-code verdict record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeVerdict {
    pub validity: codes::Validity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decode: Option<codes::DecodeOutcome>,
}

pub fn validate_code(code: &AlphaCode, budget: &CodeBudget) -> CodeVerdict {
    let validity = codes::validate(code, budget);
    let decode = match &validity {
        codes::Validity::Valid => Some(codes::decode(code, budget)),
        _ => None,
    };
    CodeVerdict { validity, decode }
}

/// A batch report: the echoed configuration plus one outcome record per
/// request, in request order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchReport {
    pub config: BatchConfig,
    pub records: Vec<OutcomeRecord>,
}

/// The documented key-value configuration file (TOML) for `ittm report`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchConfig {
    pub alpha: Ordinal,
    #[serde(default)]
    pub budget_steps: Option<u64>,
    #[serde(default)]
    pub budget_jumps: Option<u64>,
    #[serde(default)]
    pub limit_state_convention: Option<String>,
    pub runs: Vec<BatchRun>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchRun {
    pub program: String,
    #[serde(default)]
    pub input: Option<String>,
    #[serde(default)]
    pub param: Option<Ordinal>,
}

pub fn batch_report(config: &BatchConfig) -> Result<BatchReport, HarnessError> {
    let mut options = EngineOptions::default();
    if let Some(s) = config.budget_steps {
        options.budget_steps = s;
    }
    if let Some(j) = config.budget_jumps {
        options.budget_jumps = j;
    }
    if let Some(c) = &config.limit_state_convention {
        options.convention = c
            .parse()
            .map_err(|e: String| HarnessError::Validation(e))?;
    }
    let mut records = Vec::new();
    for run in &config.runs {
        let req = RunRequest {
            program: ProgramRef::parse(&run.program)?,
            alpha: config.alpha.clone(),
            input: run
                .input
                .as_deref()
                .map(InputSpec::parse)
                .transpose()?
                .unwrap_or(InputSpec::Empty),
            param: run.param.clone(),
            options: options.clone(),
        };
        let (record, _) = execute(&req)?;
        records.push(record);
    }
    Ok(BatchReport {
        config: config.clone(),
        records,
    })
}

/// Step-trace records for the sub-tape simulation check: the observable
/// behavior of one successor step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub state: u32,
    pub read_mask: u32,
    pub virtual_heads: Vec<Ordinal>,
}

/// Run `prog` for up to `steps` successor steps with every tape access
/// routed through `map(tape_index, virtual_position)`. With the identity
/// map this is a plain direct run; with the pairing map it simulates the
/// machine inside one physical tape partitioned into sub-tapes.
pub fn mapped_step_trace(
    prog: &Program,
    physical: &mut Vec<TapeContent>,
    map: &dyn Fn(usize, &Ordinal) -> Ordinal,
    steps: usize,
) -> Result<Vec<StepRecord>, HarnessError> {
    let mut heads = vec![Ordinal::zero(); prog.tape_count];
    let mut state = 0u32;
    let mut out = Vec::new();
    for _ in 0..steps {
        if state == prog.halt_state {
            break;
        }
        let mut mask = 0u32;
        for i in 0..prog.tape_count {
            let pos = map(i, &heads[i]);
            let bit = physical[i]
                .read(&pos)
                .map_err(|e| HarnessError::Internal(e.to_string()))?;
            if bit {
                mask |= 1 << i;
            }
        }
        out.push(StepRecord {
            state,
            read_mask: mask,
            virtual_heads: heads.clone(),
        });
        let t = &prog.rows[state as usize][mask as usize];
        for i in 0..prog.tape_count {
            let bit = (t.write >> i) & 1 == 1;
            let old = (mask >> i) & 1 == 1;
            if bit != old {
                let pos = map(i, &heads[i]);
                physical[i] = physical[i]
                    .write(&pos, bit)
                    .map_err(|e| HarnessError::Internal(e.to_string()))?;
            }
            match t.moves[i] {
                crate::machine::Move::S => {}
                crate::machine::Move::R => heads[i] = heads[i].succ(),
                crate::machine::Move::L => heads[i] = crate::machine::move_left(&heads[i]),
            }
        }
        state = t.next;
    }
    Ok(out)
}

/// The pairing-based partition map: cell j of sub-tape i sits at
/// godel_pair(i, j).
pub fn partition_map(i: usize, j: &Ordinal) -> Ordinal {
    godel_pair(&Ordinal::from(i), j)
}

/// Successor-step events of a trace, for prefix comparisons.
pub fn successor_times(trace: &engine::Trace) -> Vec<Ordinal> {
    trace
        .events
        .iter()
        .filter_map(|e| match e {
            TraceEvent::SuccessorStep { time } => Some(time.clone()),
            _ => None,
        })
        .collect()
}
