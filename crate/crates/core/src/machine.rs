//! Program representation and single-step semantics.
//!
//! Machines have `tape_count` tapes of length alpha (tape 0 input, last tape
//! output), one head per tape. At successor times the transition table is
//! applied as usual, except that a head moved left from a limit position is
//! reset to 0. At limit times cells and heads take inferior limits; a head
//! whose inferior limit equals alpha is reset to 0.

use crate::ordinal::{Ordinal, OrdinalClass};
use crate::tape::{TapeContent, TapeError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error("program malformed: {0}")]
    Malformed(String),
    #[error("head summary inconsistent with the period: {0}")]
    InconsistentSummary(String),
    #[error("program requires the distinguished-limit-state convention")]
    ConventionMismatch,
    #[error(transparent)]
    Tape(#[from] TapeError),
}

/// How the machine state is determined at limit times. The limit rules fix
/// inferior limits only for cells and heads, leaving the state open; both
/// conventions are implemented and the choice is recorded in traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum StateConvention {
    /// Enter a distinguished limit state (the classical convention).
    #[default]
    Distinguished,
    /// Take the inferior limit of the state indices.
    Liminf,
}

impl std::fmt::Display for StateConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateConvention::Distinguished => write!(f, "distinguished"),
            StateConvention::Liminf => write!(f, "liminf"),
        }
    }
}

impl std::str::FromStr for StateConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "distinguished" => Ok(StateConvention::Distinguished),
            "liminf" => Ok(StateConvention::Liminf),
            other => Err(format!("unknown state convention {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
    S,
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::L => write!(f, "L"),
            Move::R => write!(f, "R"),
            Move::S => write!(f, "S"),
        }
    }
}

/// One transition: next state, bits to write, head moves. Indexed by
/// (state, read bit-vector); read vectors are encoded as bitmasks with tape
/// i contributing bit i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: u32,
    pub write: u32,
    pub moves: Vec<Move>,
}

/// A total multi-tape transition table.
///
/// State 0 is the start state. `halt_state` has no outgoing transitions.
/// `limit_state` is the distinguished state entered at limit times under
/// that convention; its row is part of the table like any other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub tape_count: usize,
    pub halt_state: u32,
    pub limit_state: u32,
    pub uses_onlimit: bool,
    /// rows[state][read_mask]; empty row for the halt state.
    pub rows: Vec<Vec<Transition>>,
}

impl Program {
    pub fn num_states(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn validate(&self) -> Result<(), MachineError> {
        if self.tape_count < 3 {
            return Err(MachineError::Malformed(
                "a machine needs input, work and output tapes".into(),
            ));
        }
        if self.tape_count > 16 {
            return Err(MachineError::Malformed("tape_count above 16".into()));
        }
        let n = self.rows.len() as u32;
        if self.halt_state >= n || self.limit_state >= n {
            return Err(MachineError::Malformed("state index out of range".into()));
        }
        if self.halt_state == self.limit_state {
            return Err(MachineError::Malformed(
                "halt and limit states must differ".into(),
            ));
        }
        let width = 1usize << self.tape_count;
        for (s, row) in self.rows.iter().enumerate() {
            if s as u32 == self.halt_state {
                if !row.is_empty() {
                    return Err(MachineError::Malformed(
                        "halt state has outgoing transitions".into(),
                    ));
                }
                continue;
            }
            if row.len() != width {
                return Err(MachineError::Malformed(format!(
                    "state {s} row has {} entries, expected {width}",
                    row.len()
                )));
            }
            for (mask, t) in row.iter().enumerate() {
                if t.next >= n {
                    return Err(MachineError::Malformed(format!(
                        "state {s} mask {mask}: next state out of range"
                    )));
                }
                if t.moves.len() != self.tape_count {
                    return Err(MachineError::Malformed(format!(
                        "state {s} mask {mask}: move vector length"
                    )));
                }
                // the input tape is never changed
                if (t.write & 1) != (mask as u32 & 1) {
                    return Err(MachineError::Malformed(format!(
                        "state {s} mask {mask}: writes to the input tape"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Full machine snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: u32,
    pub heads: Vec<Ordinal>,
    pub tapes: Vec<TapeContent>,
    pub time: Ordinal,
}

impl Configuration {
    /// Initial configuration at time 0.
    pub fn initial(prog: &Program, tapes: Vec<TapeContent>) -> Result<Self, MachineError> {
        if tapes.len() != prog.tape_count {
            return Err(MachineError::Malformed(format!(
                "program has {} tapes but {} contents were supplied",
                prog.tape_count,
                tapes.len()
            )));
        }
        Ok(Configuration {
            state: 0,
            heads: vec![Ordinal::zero(); prog.tape_count],
            tapes,
            time: Ordinal::zero(),
        })
    }

    /// Structural equality ignoring the time stamp; what cycle detection
    /// compares.
    pub fn same_snapshot(&self, other: &Configuration) -> bool {
        self.state == other.state && self.heads == other.heads && self.tapes == other.tapes
    }

    pub fn read_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, (tape, head)) in self.tapes.iter().zip(&self.heads).enumerate() {
            if tape.read(head).expect("head below alpha") {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn output_head(&self) -> &Ordinal {
        self.heads.last().expect("at least three tapes")
    }

    pub fn output_tape(&self) -> &TapeContent {
        self.tapes.last().expect("at least three tapes")
    }
}

/// Move a head left: to the predecessor from a successor position, to 0
/// from 0 or from a limit position.
pub fn move_left(pos: &Ordinal) -> Ordinal {
    match pos.classify() {
        OrdinalClass::Zero => Ordinal::zero(),
        OrdinalClass::Successor(p) => p,
        OrdinalClass::Limit => Ordinal::zero(),
    }
}

/// Apply one successor step. The caller guarantees `cfg.state` is not the
/// halt state; transitions are total, so this cannot fail.
pub fn successor_step(cfg: &Configuration, prog: &Program) -> Configuration {
    debug_assert_ne!(cfg.state, prog.halt_state);
    let mask = cfg.read_mask();
    let t = &prog.rows[cfg.state as usize][mask as usize];
    let mut tapes = cfg.tapes.clone();
    let mut heads = cfg.heads.clone();
    for i in 0..prog.tape_count {
        let bit = (t.write >> i) & 1 == 1;
        let old = (mask >> i) & 1 == 1;
        if bit != old {
            debug_assert!(i != 0, "input tape writes are rejected at validation");
            tapes[i].write_in_place(&heads[i], bit);
        }
        match t.moves[i] {
            Move::S => {}
            Move::R => heads[i] = heads[i].succ(),
            Move::L => heads[i] = move_left(&heads[i]),
        }
        debug_assert!(&heads[i] < tapes[i].alpha());
    }
    Configuration {
        state: t.next,
        heads,
        tapes,
        time: cfg.time.succ(),
    }
}

/// Per-head behavior over a period, used to evaluate inferior limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeadPeriodSummary {
    Fixed(Ordinal),
    Cyclic { min: Ordinal },
    Drifting { start: Ordinal, sup: Ordinal },
}

/// Summarize head behavior from the period snapshots themselves (covers the
/// Fixed and Cyclic cases; drifting summaries come from the drift detector).
pub fn summarize_heads(period: &[Configuration]) -> Vec<HeadPeriodSummary> {
    let k = period[0].heads.len();
    (0..k)
        .map(|i| {
            let first = &period[0].heads[i];
            if period.iter().all(|c| &c.heads[i] == first) {
                HeadPeriodSummary::Fixed(first.clone())
            } else {
                let min = period
                    .iter()
                    .map(|c| &c.heads[i])
                    .min()
                    .expect("nonempty period")
                    .clone();
                HeadPeriodSummary::Cyclic { min }
            }
        })
        .collect()
}

/// Evaluate the configuration at a limit time from one period of the
/// (eventually periodic) approach: tapes take per-cell inferior limits,
/// heads follow their summaries with the reset-at-alpha rule, the state
/// follows the convention.
pub fn limit_snapshot(
    period: &[Configuration],
    summaries: &[HeadPeriodSummary],
    convention: StateConvention,
    prog: &Program,
    limit_time: Ordinal,
) -> Result<Configuration, MachineError> {
    let first = period
        .first()
        .ok_or_else(|| MachineError::InconsistentSummary("empty period".into()))?;
    if summaries.len() != first.heads.len() {
        return Err(MachineError::InconsistentSummary(
            "summary arity mismatch".into(),
        ));
    }
    let k = first.heads.len();
    let mut tapes = Vec::with_capacity(k);
    for i in 0..k {
        let snaps: Vec<TapeContent> = period.iter().map(|c| c.tapes[i].clone()).collect();
        tapes.push(TapeContent::liminf_period(&snaps)?);
    }
    let mut heads = Vec::with_capacity(k);
    for (i, summary) in summaries.iter().enumerate() {
        let liminf = match summary {
            HeadPeriodSummary::Fixed(p) => {
                if period.iter().any(|c| &c.heads[i] != p) {
                    return Err(MachineError::InconsistentSummary(format!(
                        "head {i} declared fixed but moves"
                    )));
                }
                p.clone()
            }
            HeadPeriodSummary::Cyclic { min } => {
                let actual = period.iter().map(|c| &c.heads[i]).min().expect("nonempty");
                if actual != min {
                    return Err(MachineError::InconsistentSummary(format!(
                        "head {i} cyclic minimum mismatch"
                    )));
                }
                min.clone()
            }
            HeadPeriodSummary::Drifting { start, sup } => {
                if start >= sup {
                    return Err(MachineError::InconsistentSummary(format!(
                        "head {i} drift requires start < sup"
                    )));
                }
                sup.clone()
            }
        };
        let alpha = first.tapes[i].alpha();
        heads.push(if &liminf == alpha {
            Ordinal::zero()
        } else {
            liminf
        });
    }
    let state = match convention {
        StateConvention::Distinguished => prog.limit_state,
        StateConvention::Liminf => period.iter().map(|c| c.state).min().expect("nonempty"),
    };
    Ok(Configuration {
        state,
        heads,
        tapes,
        time: limit_time,
    })
}
