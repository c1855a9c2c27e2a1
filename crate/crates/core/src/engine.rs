//! Transfinite execution: successor stepping, configuration-cycle and drift
//! detection, limit jumps with analytically computed inferior-limit
//! snapshots, and non-halting certification via the repeating-loop
//! criterion.
//!
//! Detection is deliberately conservative. An exact cycle needs two
//! structurally equal snapshots in an uninterrupted successor segment. A
//! drift needs an exact translational match: equal states, nonnegative head
//! offsets, all visits and changes confined to a one-lane lookahead window,
//! the just-finalized lane reappearing translated, and uniform content
//! along the rest of the swept ray. The same matchers run again over the
//! configurations recorded at limit landings, which is how nested limits
//! (reaching w*n, w^2, w^3, ...) are crossed. Anything else falls through
//! to honest stepping and eventually a budget-exhausted verdict.

use crate::machine::{
    limit_snapshot, successor_step, summarize_heads, Configuration, MachineError, Program,
    StateConvention,
};
use crate::ordinal::Ordinal;
use crate::tape::{IntervalSet, TapeContent};
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Engine settings; echoed into reports so no result is separated from its
/// provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineOptions {
    pub budget_steps: u64,
    pub budget_jumps: u64,
    pub convention: StateConvention,
    pub accelerate: bool,
    pub ring_size: usize,
    pub drift_check_interval: u64,
    pub max_drift_period: usize,
    pub landing_history: usize,
    pub record_steps: bool,
    pub probe_times: Vec<Ordinal>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            budget_steps: 1_000_000,
            budget_jumps: 1_000,
            convention: StateConvention::Distinguished,
            accelerate: true,
            ring_size: 4096,
            drift_check_interval: 16,
            max_drift_period: 64,
            landing_history: 64,
            record_steps: false,
            probe_times: Vec::new(),
        }
    }
}

/// What a run ends with. Budget exhaustion is an outcome, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted {
        time: Ordinal,
        final_cfg: Configuration,
    },
    NonHaltingCertified {
        loop_from: Ordinal,
        loop_to: Ordinal,
    },
    BudgetExhausted {
        time: Ordinal,
        last: Configuration,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JumpKind {
    ExactCycle,
    Drift,
}

/// A validated translational match: the configurations at `from_time` and
/// `to_time` agree after shifting each drifting head (and the content it
/// wrote) by its offset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriftDescriptor {
    pub from_time: Ordinal,
    pub to_time: Ordinal,
    pub period: Ordinal,
    pub head_offsets: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    SuccessorStep {
        time: Ordinal,
    },
    LimitJump {
        from: Ordinal,
        to: Ordinal,
        kind: JumpKind,
        descriptor: Option<DriftDescriptor>,
    },
    Certificate {
        loop_from: Ordinal,
        loop_to: Ordinal,
    },
}

/// A log of what the engine did, plus configuration snapshots at the
/// requested probe times.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub probes: Vec<(Ordinal, Configuration)>,
}

/// Everything a run needs.
pub struct RunSpec {
    pub program: Program,
    pub alpha: Ordinal,
    pub input: TapeContent,
    /// Optional parameter: a 1 written at this cell of the first work tape
    /// before the computation starts.
    pub param: Option<Ordinal>,
    pub options: EngineOptions,
}

pub fn run(spec: &RunSpec) -> Result<(RunOutcome, Trace), EngineError> {
    let prog = &spec.program;
    prog.validate()?;
    // tape lengths must be infinite powers of w so positions stay closed
    // under head arithmetic; multiplicatively closed alphas (w, w^(w), ...)
    // additionally support pairing-based partition views
    if !spec.alpha.is_additively_closed() {
        return Err(EngineError::Precondition(format!(
            "alpha {} is not an infinite additively closed ordinal (and so not multiplicatively closed either)",
            spec.alpha
        )));
    }
    if spec.input.alpha() != &spec.alpha {
        return Err(EngineError::Precondition(
            "input tape length differs from alpha".into(),
        ));
    }
    if prog.uses_onlimit && spec.options.convention == StateConvention::Liminf {
        return Err(EngineError::Precondition(
            MachineError::ConventionMismatch.to_string(),
        ));
    }
    let input = spec.input.clone().into_read_only();
    let mut tapes = vec![input];
    for _ in 1..prog.tape_count {
        tapes.push(TapeContent::empty(spec.alpha.clone()));
    }
    if let Some(param) = &spec.param {
        if param >= &spec.alpha {
            return Err(EngineError::Precondition(
                "parameter cell must be below alpha".into(),
            ));
        }
        tapes[1] = tapes[1].write(param, true).map_err(MachineError::Tape)?;
    }
    let cfg = Configuration::initial(prog, tapes)?;
    Runner::new(spec, cfg).run()
}

/// Per-segment accumulators between limit landings: enough to evaluate
/// inferior limits and translational matches over segments that cannot be
/// replayed step by step.
#[derive(Debug, Clone)]
struct SegAccum {
    /// Running per-cell minimum, as overlays relative to the shared bases.
    liminf_ones: Vec<IntervalSet>,
    liminf_zeros: Vec<IntervalSet>,
    /// Cells read or written (positions visited by each head).
    visited: Vec<IntervalSet>,
    /// Cells whose content actually changed at some point.
    changed: Vec<IntervalSet>,
    min_heads: Vec<Ordinal>,
    min_state: u32,
    /// A head reset (inferior limit hit alpha) happened in this segment.
    head_reset: bool,
    /// The segment's inferior limit could not be represented exactly;
    /// matches across it are disabled.
    imprecise: bool,
}

impl SegAccum {
    fn start_from(cfg: &Configuration) -> Self {
        SegAccum {
            liminf_ones: cfg.tapes.iter().map(|t| t.ones().clone()).collect(),
            liminf_zeros: cfg.tapes.iter().map(|t| t.zeros().clone()).collect(),
            visited: vec![IntervalSet::new(); cfg.tapes.len()],
            changed: vec![IntervalSet::new(); cfg.tapes.len()],
            min_heads: cfg.heads.clone(),
            min_state: cfg.state,
            head_reset: false,
            imprecise: false,
        }
    }

    fn merge(&self, other: &SegAccum) -> SegAccum {
        SegAccum {
            liminf_ones: zip_with(&self.liminf_ones, &other.liminf_ones, IntervalSet::intersect),
            liminf_zeros: zip_with(&self.liminf_zeros, &other.liminf_zeros, IntervalSet::union),
            visited: zip_with(&self.visited, &other.visited, IntervalSet::union),
            changed: zip_with(&self.changed, &other.changed, IntervalSet::union),
            min_heads: self
                .min_heads
                .iter()
                .zip(&other.min_heads)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
            min_state: self.min_state.min(other.min_state),
            head_reset: self.head_reset || other.head_reset,
            imprecise: self.imprecise || other.imprecise,
        }
    }

    /// Fold in one stepped configuration. The step read and wrote under the
    /// old heads, so overlays differ from the old configuration at most
    /// there.
    fn absorb_step(&mut self, old: &Configuration, new: &Configuration) {
        for i in 0..new.tapes.len() {
            let pos = &old.heads[i];
            let next = pos.succ();
            self.visited[i].insert(pos, &next);
            if old.tapes[i] != new.tapes[i] {
                self.changed[i].insert(pos, &next);
            }
            if !new.tapes[i].ones().contains(pos) {
                self.liminf_ones[i].remove(pos, &next);
            }
            if new.tapes[i].zeros().contains(pos) {
                self.liminf_zeros[i].insert(pos, &next);
            }
            if new.heads[i] < self.min_heads[i] {
                self.min_heads[i] = new.heads[i].clone();
            }
        }
        self.min_state = self.min_state.min(new.state);
    }

    /// Fold in a configuration as a whole (landing snapshots).
    fn absorb_config(&mut self, cfg: &Configuration) {
        for i in 0..cfg.tapes.len() {
            self.liminf_ones[i] = self.liminf_ones[i].intersect(cfg.tapes[i].ones());
            self.liminf_zeros[i] = self.liminf_zeros[i].union(cfg.tapes[i].zeros());
            if cfg.heads[i] < self.min_heads[i] {
                self.min_heads[i] = cfg.heads[i].clone();
            }
        }
        self.min_state = self.min_state.min(cfg.state);
    }

    /// Materialize the accumulated inferior limit as tapes shaped like
    /// `model`.
    fn liminf_tapes(&self, model: &Configuration) -> Vec<TapeContent> {
        model
            .tapes
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.with_overlays(self.liminf_ones[i].clone(), self.liminf_zeros[i].clone())
            })
            .collect()
    }
}

fn zip_with(
    a: &[IntervalSet],
    b: &[IntervalSet],
    f: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet,
) -> Vec<IntervalSet> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// One recorded limit landing (or the run start), with the accumulator of
/// the segment that ended here.
#[derive(Debug, Clone)]
struct Landing {
    cfg: Configuration,
    seg: SegAccum,
}

/// Per-tape facts established by translational validation for a drifting
/// lane (offset > 0).
struct LaneUpdate {
    /// Head position at the anchor; start of the swept ray.
    start: Ordinal,
    /// start + offset: end of the lane the match just finalized.
    lane_hi: Ordinal,
    /// start + offset*omega: end of the swept ray.
    ray_hi: Ordinal,
    /// The uniform bit left behind on the lane (meaningful when changed).
    pattern: bool,
    /// Whether the sweep changes content at all.
    changed: bool,
    /// Per-cell minimum over one repetition of the match, on the lane and
    /// on the lookahead tail; None marks the landing record imprecise.
    lane_min: Option<bool>,
    tail_min: Option<bool>,
}

/// Check the translational-match side conditions between configurations
/// `a` and `b`, given span data (visits, changes, running minima)
/// accumulated between them:
///   - equal states; nonnegative head offsets, at least one positive;
///   - per drifting tape: visits, changes and content differences confined
///     to the window [p, p+2d); the lane [p, p+d) of `a` reappearing at
///     [p+d, p+2d) in `b`; constant content along [p+d, p+d*omega); and a
///     uniform pattern left on [p, p+d) when anything changed;
///   - per fixed tape: identical content at both ends.
fn validate_translation(
    a: &Configuration,
    b: &Configuration,
    span: &SegAccum,
) -> Option<(Vec<Ordinal>, Vec<Option<LaneUpdate>>)> {
    if a.state != b.state {
        return None;
    }
    let k = a.heads.len();
    let mut offsets = Vec::with_capacity(k);
    let mut any = false;
    for i in 0..k {
        let d = b.heads[i].checked_sub(&a.heads[i])?;
        if !d.is_zero() {
            any = true;
        }
        offsets.push(d);
    }
    if !any {
        return None;
    }
    let omega = Ordinal::omega();
    let mut lanes: Vec<Option<LaneUpdate>> = Vec::with_capacity(k);
    for i in 0..k {
        let d = &offsets[i];
        let p = &a.heads[i];
        if d.is_zero() {
            if a.tapes[i] != b.tapes[i] {
                return None;
            }
            lanes.push(None);
            continue;
        }
        let lane_hi = p.add(d);
        let window_hi = p.add(&d.add(d));
        let window = IntervalSet::from_intervals([(p.clone(), window_hi.clone())]);
        if !span.visited[i].subtract(&window).is_empty() {
            return None;
        }
        if !span.changed[i].subtract(&window).is_empty() {
            return None;
        }
        let diff = a.tapes[i].diff_region(&b.tapes[i]);
        if !diff.subtract(&window).is_empty() {
            return None;
        }
        if !a.tapes[i].window_equal_translated(&b.tapes[i], p, d, d) {
            return None;
        }
        let ray_hi = p.add(&d.mul(&omega));
        a.tapes[i].constant_on(&lane_hi, &ray_hi)?;
        let (pattern, changed, lane_min, tail_min) = if diff.is_empty() {
            (false, false, None, None)
        } else {
            let pattern = b.tapes[i].constant_on(p, &lane_hi)?;
            let span_tape = a.tapes[i]
                .with_overlays(span.liminf_ones[i].clone(), span.liminf_zeros[i].clone());
            let r0 = span_tape.constant_on(p, &lane_hi);
            let r1 = span_tape.constant_on(&lane_hi, &window_hi);
            let tail = match (r0, r1) {
                (Some(x), Some(y)) => Some(x && y),
                _ => None,
            };
            (pattern, true, r0, tail)
        };
        lanes.push(Some(LaneUpdate {
            start: p.clone(),
            lane_hi,
            ray_hi,
            pattern,
            changed,
            lane_min,
            tail_min,
        }));
    }
    Some((offsets, lanes))
}

enum PeriodSource {
    Ring(Vec<Configuration>),
    Fold(SegAccum),
}

struct Runner<'a> {
    spec: &'a RunSpec,
    prog: &'a Program,
    cfg: Configuration,
    steps_used: u64,
    jumps_used: u64,
    ring: VecDeque<(u64, Configuration)>,
    ring_base: u64,
    ring_next: u64,
    hashes: HashMap<u64, Vec<u64>>,
    landings: Vec<Landing>,
    seg: SegAccum,
    trace: Trace,
}

fn cfg_hash(cfg: &Configuration) -> u64 {
    let mut h = DefaultHasher::new();
    cfg.state.hash(&mut h);
    cfg.heads.hash(&mut h);
    for t in &cfg.tapes {
        // cheap overlay digests; collisions fall back to full comparison
        t.ones().digest(&mut h);
        t.zeros().digest(&mut h);
    }
    h.finish()
}

enum Handled {
    Outcome(RunOutcome),
    Jumped,
    No,
}

impl<'a> Runner<'a> {
    fn new(spec: &'a RunSpec, cfg: Configuration) -> Self {
        let mut r = Runner {
            spec,
            prog: &spec.program,
            cfg: cfg.clone(),
            steps_used: 0,
            jumps_used: 0,
            ring: VecDeque::new(),
            ring_base: 0,
            ring_next: 0,
            hashes: HashMap::new(),
            landings: vec![Landing {
                cfg: cfg.clone(),
                seg: SegAccum::start_from(&cfg),
            }],
            seg: SegAccum::start_from(&cfg),
            trace: Trace::default(),
        };
        r.push_ring(cfg.clone());
        r.probe(&cfg);
        r
    }

    fn opts(&self) -> &EngineOptions {
        &self.spec.options
    }

    fn probe(&mut self, cfg: &Configuration) {
        if self.spec.options.probe_times.contains(&cfg.time) {
            self.trace.probes.push((cfg.time.clone(), cfg.clone()));
        }
    }

    fn push_ring(&mut self, cfg: Configuration) {
        let h = cfg_hash(&cfg);
        let idx = self.ring_next;
        self.ring_next += 1;
        self.ring.push_back((h, cfg));
        self.hashes.entry(h).or_default().push(idx);
        if self.ring.len() > self.opts().ring_size {
            let (old_h, _) = self.ring.pop_front().expect("nonempty");
            self.ring_base += 1;
            if let Some(v) = self.hashes.get_mut(&old_h) {
                v.retain(|i| *i >= self.ring_base);
                if v.is_empty() {
                    self.hashes.remove(&old_h);
                }
            }
        }
    }

    fn ring_get(&self, abs: u64) -> &Configuration {
        &self.ring[(abs - self.ring_base) as usize].1
    }

    fn clear_ring(&mut self) {
        self.ring.clear();
        self.hashes.clear();
        self.ring_base = self.ring_next;
    }

    /// Earliest ring index holding a snapshot equal to cfg (other than the
    /// latest entry, which is cfg itself).
    fn find_exact_anchor(&self, cfg: &Configuration) -> Option<u64> {
        let h = cfg_hash(cfg);
        let latest = self.ring_next - 1;
        self.hashes.get(&h).and_then(|v| {
            v.iter()
                .copied()
                .find(|i| *i < latest && self.ring_get(*i).same_snapshot(cfg))
        })
    }

    fn record_landing(&mut self, cfg: Configuration, seg: SegAccum) {
        self.landings.push(Landing {
            cfg: cfg.clone(),
            seg,
        });
        let keep = self.opts().landing_history;
        if self.landings.len() > keep {
            let drop = self.landings.len() - keep;
            self.landings.drain(..drop);
        }
        self.clear_ring();
        self.push_ring(cfg.clone());
        self.seg = SegAccum::start_from(&cfg);
        self.probe(&cfg);
    }

    fn run(mut self) -> Result<(RunOutcome, Trace), EngineError> {
        loop {
            if self.cfg.state == self.prog.halt_state {
                let outcome = RunOutcome::Halted {
                    time: self.cfg.time.clone(),
                    final_cfg: self.cfg.clone(),
                };
                return Ok((outcome, self.trace));
            }
            if self.opts().accelerate {
                if let Some(anchor_abs) = self.find_exact_anchor(&self.cfg) {
                    match self.handle_exact(anchor_abs)? {
                        Handled::Outcome(o) => return Ok((o, self.trace)),
                        Handled::Jumped => {
                            if let Some(o) = self.after_landing()? {
                                return Ok((o, self.trace));
                            }
                            continue;
                        }
                        Handled::No => {}
                    }
                }
                if self.steps_used > 0
                    && self.steps_used % self.opts().drift_check_interval == 0
                    && self.jumps_used < self.opts().budget_jumps
                {
                    if self.try_ring_drift()? {
                        if let Some(o) = self.after_landing()? {
                            return Ok((o, self.trace));
                        }
                        continue;
                    }
                }
            }
            if self.steps_used >= self.opts().budget_steps {
                let outcome = RunOutcome::BudgetExhausted {
                    time: self.cfg.time.clone(),
                    last: self.cfg.clone(),
                };
                return Ok((outcome, self.trace));
            }
            let next = successor_step(&self.cfg, self.prog);
            self.steps_used += 1;
            if self.opts().record_steps {
                self.trace.events.push(TraceEvent::SuccessorStep {
                    time: self.cfg.time.clone(),
                });
            }
            if self.opts().accelerate {
                // detector bookkeeping has no use in pure-stepping runs
                self.seg.absorb_step(&self.cfg, &next);
                self.push_ring(next.clone());
            }
            self.probe(&next);
            self.cfg = next;
        }
    }

    /// After any landing, greedily apply landing-to-landing matches:
    /// oldest anchors first, certificates end the run, and each jump
    /// restarts the scan (that is how the w, w^2, w^3, ... ladder climbs).
    fn after_landing(&mut self) -> Result<Option<RunOutcome>, EngineError> {
        'scan: loop {
            let latest = self.landings.len() - 1;
            for j in 0..latest {
                if self.landings[j]
                    .cfg
                    .same_snapshot(&self.landings[latest].cfg)
                {
                    match self.handle_macro_exact(j, latest)? {
                        Handled::Outcome(o) => return Ok(Some(o)),
                        Handled::Jumped => continue 'scan,
                        Handled::No => {}
                    }
                }
            }
            if self.jumps_used < self.opts().budget_jumps {
                for j in 0..latest {
                    if self.try_macro_drift(j, latest)? {
                        continue 'scan;
                    }
                }
            }
            return Ok(None);
        }
    }

    /// Exact successor-segment cycle: certify if the limit snapshot equals
    /// the anchor, otherwise jump to the next limit.
    fn handle_exact(&mut self, anchor_abs: u64) -> Result<Handled, EngineError> {
        let latest = self.ring_next - 1;
        let period: Vec<Configuration> = (anchor_abs..latest)
            .map(|i| self.ring_get(i).clone())
            .collect();
        let anchor_time = period[0].time.clone();
        let to_time = self.cfg.time.clone();
        let pi = to_time
            .checked_sub(&anchor_time)
            .expect("later time in segment");
        let target = anchor_time.add(&pi.mul(&Ordinal::omega()));
        let summaries = summarize_heads(&period);
        let limit_cfg = limit_snapshot(
            &period,
            &summaries,
            self.opts().convention,
            self.prog,
            target,
        )?;
        if limit_cfg.same_snapshot(&period[0]) {
            self.trace.events.push(TraceEvent::Certificate {
                loop_from: anchor_time.clone(),
                loop_to: to_time.clone(),
            });
            return Ok(Handled::Outcome(RunOutcome::NonHaltingCertified {
                loop_from: anchor_time,
                loop_to: to_time,
            }));
        }
        if self.jumps_used >= self.opts().budget_jumps {
            return Ok(Handled::No);
        }
        self.jumps_used += 1;
        self.trace.events.push(TraceEvent::LimitJump {
            from: to_time,
            to: limit_cfg.time.clone(),
            kind: JumpKind::ExactCycle,
            descriptor: None,
        });
        // the stretch up to the limit cycles through the period, whose
        // values the segment accumulator has already absorbed
        let mut seg = self.seg.clone();
        seg.absorb_config(&limit_cfg);
        self.cfg = limit_cfg.clone();
        self.record_landing(limit_cfg, seg);
        Ok(Handled::Jumped)
    }

    /// Scan recent ring anchors for a validated translational match and
    /// commit the first (shortest-period) one found.
    fn try_ring_drift(&mut self) -> Result<bool, EngineError> {
        let latest = self.ring_next - 1;
        for pi in 1..=(self.opts().max_drift_period as u64) {
            if latest < self.ring_base + pi {
                break;
            }
            let anchor_abs = latest - pi;
            // cheap rejections before building span data
            {
                let a = self.ring_get(anchor_abs);
                let b = self.ring_get(latest);
                if a.state != b.state {
                    continue;
                }
                let mut any = false;
                let mut ok = true;
                for i in 0..a.heads.len() {
                    match b.heads[i].checked_sub(&a.heads[i]) {
                        Some(d) => any |= !d.is_zero(),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || !any {
                    continue;
                }
            }
            let mut span = SegAccum::start_from(self.ring_get(anchor_abs));
            for abs in anchor_abs..latest {
                let old = self.ring_get(abs).clone();
                let new = self.ring_get(abs + 1).clone();
                span.absorb_step(&old, &new);
            }
            let a = self.ring_get(anchor_abs).clone();
            let b = self.ring_get(latest).clone();
            if let Some((offsets, lanes)) = validate_translation(&a, &b, &span) {
                let period: Vec<Configuration> = (anchor_abs..latest)
                    .map(|i| self.ring_get(i).clone())
                    .collect();
                self.commit_drift(&a, &b, offsets, lanes, PeriodSource::Ring(period))?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Translational match between landings, with the side conditions
    /// evaluated over folded segment summaries. Spans containing head
    /// resets or imprecise limits are rejected.
    fn try_macro_drift(&mut self, j: usize, k: usize) -> Result<bool, EngineError> {
        let fold = self.fold_segments(j, k);
        if fold.imprecise || fold.head_reset {
            return Ok(false);
        }
        let a = self.landings[j].cfg.clone();
        let b = self.landings[k].cfg.clone();
        if let Some((offsets, lanes)) = validate_translation(&a, &b, &fold) {
            self.commit_drift(&a, &b, offsets, lanes, PeriodSource::Fold(fold))?;
            return Ok(true);
        }
        Ok(false)
    }

    /// Commit a validated translational match: land at
    /// anchor_time + period*omega with the pattern tiled along each swept
    /// ray, fixed tapes at their recurring minimum, and heads at their
    /// suprema (reset to 0 at alpha).
    fn commit_drift(
        &mut self,
        a: &Configuration,
        b: &Configuration,
        offsets: Vec<Ordinal>,
        lanes: Vec<Option<LaneUpdate>>,
        source: PeriodSource,
    ) -> Result<(), EngineError> {
        let omega = Ordinal::omega();
        let pi = b.time.checked_sub(&a.time).expect("matched in order");
        let target_time = a.time.add(&pi.mul(&omega));
        let mut seg = match &source {
            PeriodSource::Ring(_) => self.seg.clone(),
            PeriodSource::Fold(fold) => fold.clone(),
        };
        let mut tapes = Vec::with_capacity(a.tapes.len());
        let mut heads = Vec::with_capacity(a.heads.len());
        let mut reset = false;
        for (i, lane) in lanes.iter().enumerate() {
            match lane {
                None => {
                    // fixed at this scale: the recurring stretch repeats, so
                    // the limit value is its per-cell minimum
                    match &source {
                        PeriodSource::Ring(period) => {
                            let snaps: Vec<TapeContent> = period
                                .iter()
                                .map(|c| c.tapes[i].clone())
                                .chain([b.tapes[i].clone()])
                                .collect();
                            tapes.push(
                                TapeContent::liminf_period(&snaps).map_err(MachineError::Tape)?,
                            );
                            let min = period
                                .iter()
                                .map(|c| &c.heads[i])
                                .chain([&b.heads[i]])
                                .min()
                                .expect("nonempty")
                                .clone();
                            heads.push(min);
                        }
                        PeriodSource::Fold(fold) => {
                            tapes.push(a.tapes[i].with_overlays(
                                fold.liminf_ones[i].clone(),
                                fold.liminf_zeros[i].clone(),
                            ));
                            heads.push(fold.min_heads[i].clone());
                        }
                    }
                }
                Some(u) => {
                    let mut t = a.tapes[i].clone();
                    if u.changed {
                        t = t
                            .set_interval(&u.start, &u.ray_hi, u.pattern)
                            .map_err(MachineError::Tape)?;
                        seg.changed[i].insert(&u.start, &u.ray_hi);
                        let base_bit = a.tapes[i].base_constant_on(&u.start, &u.ray_hi);
                        let ranges = [
                            (&u.start, &u.lane_hi, u.lane_min),
                            (&u.lane_hi, &u.ray_hi, u.tail_min),
                        ];
                        for (lo, hi, m) in ranges {
                            match m {
                                Some(true) => {}
                                Some(false) => {
                                    seg.liminf_ones[i].remove(lo, hi);
                                    match base_bit {
                                        Some(false) => {}
                                        Some(true) => seg.liminf_zeros[i].insert(lo, hi),
                                        None => seg.imprecise = true,
                                    }
                                }
                                None => seg.imprecise = true,
                            }
                        }
                    }
                    seg.visited[i].insert(&u.start, &u.ray_hi);
                    tapes.push(t);
                    let sup = u.start.add(&offsets[i].mul(&omega));
                    if &sup == a.tapes[i].alpha() {
                        heads.push(Ordinal::zero());
                        reset = true;
                        seg.min_heads[i] = Ordinal::zero();
                    } else {
                        heads.push(sup);
                    }
                }
            }
        }
        let state = match self.opts().convention {
            StateConvention::Distinguished => self.prog.limit_state,
            StateConvention::Liminf => match &source {
                PeriodSource::Ring(period) => period
                    .iter()
                    .map(|c| c.state)
                    .chain([b.state])
                    .min()
                    .expect("nonempty"),
                PeriodSource::Fold(fold) => fold.min_state,
            },
        };
        seg.head_reset |= reset;
        let landing = Configuration {
            state,
            heads,
            tapes,
            time: target_time.clone(),
        };
        seg.absorb_config(&landing);
        self.jumps_used += 1;
        self.trace.events.push(TraceEvent::LimitJump {
            from: b.time.clone(),
            to: target_time,
            kind: JumpKind::Drift,
            descriptor: Some(DriftDescriptor {
                from_time: a.time.clone(),
                to_time: b.time.clone(),
                period: pi,
                head_offsets: offsets,
            }),
        });
        self.cfg = landing.clone();
        self.record_landing(landing, seg);
        Ok(())
    }

    /// Fold the span from landing j (inclusive, as the base snapshot) to
    /// landing k (inclusive).
    fn fold_segments(&self, j: usize, k: usize) -> SegAccum {
        let mut acc = SegAccum::start_from(&self.landings[j].cfg);
        for l in &self.landings[j + 1..=k] {
            acc = acc.merge(&l.seg);
            acc.absorb_config(&l.cfg);
        }
        acc
    }

    /// Exact landing-to-landing cycle. If the span's inferior limit
    /// reproduces the anchor snapshot, that is a repeating-loop
    /// certificate; otherwise jump to the iterated limit.
    fn handle_macro_exact(&mut self, j: usize, k: usize) -> Result<Handled, EngineError> {
        let fold = self.fold_segments(j, k);
        if fold.imprecise {
            return Ok(Handled::No);
        }
        let anchor = self.landings[j].cfg.clone();
        let to_time = self.landings[k].cfg.time.clone();
        let pi = to_time
            .checked_sub(&anchor.time)
            .expect("landings are ordered");
        let target_time = anchor.time.add(&pi.mul(&Ordinal::omega()));
        let tapes = fold.liminf_tapes(&anchor);
        let heads = fold.min_heads.clone();
        let state = match self.opts().convention {
            StateConvention::Distinguished => self.prog.limit_state,
            StateConvention::Liminf => fold.min_state,
        };
        let landing = Configuration {
            state,
            heads,
            tapes,
            time: target_time.clone(),
        };
        if landing.same_snapshot(&anchor) {
            self.trace.events.push(TraceEvent::Certificate {
                loop_from: anchor.time.clone(),
                loop_to: to_time.clone(),
            });
            return Ok(Handled::Outcome(RunOutcome::NonHaltingCertified {
                loop_from: anchor.time,
                loop_to: to_time,
            }));
        }
        if self.jumps_used >= self.opts().budget_jumps {
            return Ok(Handled::No);
        }
        self.jumps_used += 1;
        self.trace.events.push(TraceEvent::LimitJump {
            from: to_time.clone(),
            to: target_time,
            kind: JumpKind::ExactCycle,
            descriptor: Some(DriftDescriptor {
                from_time: anchor.time.clone(),
                to_time,
                period: pi,
                head_offsets: vec![Ordinal::zero(); anchor.heads.len()],
            }),
        });
        let mut seg = fold;
        seg.absorb_config(&landing);
        self.cfg = landing.clone();
        self.record_landing(landing, seg);
        Ok(Handled::Jumped)
    }
}
