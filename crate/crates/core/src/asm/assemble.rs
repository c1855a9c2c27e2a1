//! Lowering expanded instruction streams to transition tables.
//!
//! Every WRITE/MOVE/IFBIT becomes one state. GOTO and HALT cost no states:
//! unconditional jumps are threaded through at assembly time, which is what
//! makes tight loops (and the catalog's two-step sweeps) possible. Falling
//! off the end of the program halts.

use super::{AsmError, Expanded, Instr};
use crate::machine::{Move, Program, Transition};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    State(u32),
    Halt,
}

pub fn assemble_instructions(expanded: &Expanded) -> Result<Program, AsmError> {
    let lines = &expanded.lines;
    let k = expanded.tape_count;

    let mut label_pos: HashMap<&str, usize> = HashMap::new();
    for (i, line) in lines.iter().enumerate() {
        for l in &line.labels {
            if label_pos.insert(l, i).is_some() {
                return Err(AsmError::DuplicateLabel(l.clone()));
            }
        }
    }

    // every referenced label must exist, reachable or not
    for line in lines {
        let target = match &line.instr {
            Instr::IfBit { target, .. } => Some(target),
            Instr::Goto { target } => Some(target),
            Instr::OnLimit { target } => Some(target),
            _ => None,
        };
        if let Some(t) = target {
            if !label_pos.contains_key(t.as_str()) {
                return Err(AsmError::UnresolvedLabel(t.clone()));
            }
        }
    }

    // states for the "real" (step-consuming) instructions
    let mut state_of: Vec<Option<u32>> = vec![None; lines.len()];
    let mut next_state = 0u32;
    for (i, line) in lines.iter().enumerate() {
        match line.instr {
            Instr::Write { .. } | Instr::Move { .. } | Instr::IfBit { .. } => {
                state_of[i] = Some(next_state);
                next_state += 1;
            }
            _ => {}
        }
    }
    let halt_state = next_state;
    let limit_state = next_state + 1;

    // resolve a position to the state that will actually execute, following
    // GOTO chains; detects pure-GOTO cycles
    let resolve = |start: usize| -> Result<Target, AsmError> {
        let mut pos = start;
        let mut hops = 0usize;
        loop {
            if pos >= lines.len() {
                return Ok(Target::Halt);
            }
            match &lines[pos].instr {
                Instr::Write { .. } | Instr::Move { .. } | Instr::IfBit { .. } => {
                    return Ok(Target::State(state_of[pos].expect("numbered")));
                }
                Instr::Halt => return Ok(Target::Halt),
                Instr::OnLimit { .. } => pos += 1,
                Instr::Goto { target } => {
                    let t = label_pos
                        .get(target.as_str())
                        .ok_or_else(|| AsmError::UnresolvedLabel(target.clone()))?;
                    pos = *t;
                    hops += 1;
                    if hops > lines.len() + 1 {
                        return Err(AsmError::EmptyGotoCycle(target.clone()));
                    }
                }
            }
        }
    };
    let resolve_label = |name: &str| -> Result<Target, AsmError> {
        let t = label_pos
            .get(name)
            .ok_or_else(|| AsmError::UnresolvedLabel(name.to_string()))?;
        resolve(*t)
    };

    let mut onlimit: Option<Target> = None;
    for line in lines {
        if let Instr::OnLimit { target } = &line.instr {
            if onlimit.is_some() {
                return Err(AsmError::MultipleOnLimit);
            }
            onlimit = Some(resolve_label(target)?);
        }
    }

    // the run starts at the state that position 0 resolves to; resolving it
    // up front also rejects programs whose entry is a pure GOTO cycle
    let entry = resolve(0)?;

    let width = 1usize << k;
    if entry == Target::Halt {
        // no reachable step-consuming instruction: the machine halts at
        // time 0 (state 0 is the halt state, state 1 the stalling limit
        // state); unreachable code is dropped
        let limit_row: Vec<Transition> = (0..width)
            .map(|mask| Transition {
                next: 1,
                write: mask as u32,
                moves: vec![Move::S; k],
            })
            .collect();
        let prog = Program {
            tape_count: k,
            halt_state: 0,
            limit_state: 1,
            uses_onlimit: onlimit.is_some(),
            rows: vec![Vec::new(), limit_row],
        };
        prog.validate()
            .map_err(|e| AsmError::Table(format!("assembled table invalid: {e}")))?;
        return Ok(prog);
    }

    // renumber so that the entry instruction is state 0
    let entry_state = match entry {
        Target::State(s) => s,
        Target::Halt => unreachable!("handled above"),
    };
    let renumber = move |s: u32| -> u32 {
        if s == entry_state {
            0
        } else if s == 0 {
            entry_state
        } else {
            s
        }
    };

    let to_state = |t: Target| match t {
        Target::State(s) => renumber(s),
        Target::Halt => halt_state,
    };
    let mut rows: Vec<Vec<Transition>> =
        vec![Vec::new(); (next_state + 2) as usize];
    for (i, line) in lines.iter().enumerate() {
        let Some(state) = state_of[i].map(renumber) else {
            continue;
        };
        let fallthrough = to_state(resolve(i + 1)?);
        let row: Vec<Transition> = match &line.instr {
            Instr::Write { tape, bit } => (0..width)
                .map(|mask| {
                    let mut write = mask as u32;
                    if *bit {
                        write |= 1 << tape;
                    } else {
                        write &= !(1 << tape);
                    }
                    Transition {
                        next: fallthrough,
                        write,
                        moves: vec![Move::S; k],
                    }
                })
                .collect(),
            Instr::Move { tape, dir } => (0..width)
                .map(|mask| {
                    let mut moves = vec![Move::S; k];
                    moves[*tape] = *dir;
                    Transition {
                        next: fallthrough,
                        write: mask as u32,
                        moves,
                    }
                })
                .collect(),
            Instr::IfBit { tape, bit, target } => {
                let taken = to_state(resolve_label(target)?);
                (0..width)
                    .map(|mask| {
                        let read = (mask >> tape) & 1 == 1;
                        Transition {
                            next: if read == *bit { taken } else { fallthrough },
                            write: mask as u32,
                            moves: vec![Move::S; k],
                        }
                    })
                    .collect()
            }
            _ => unreachable!("only real instructions are numbered"),
        };
        rows[state as usize] = row;
    }

    // halt row stays empty; the limit row stalls unless ONLIMIT redirects it
    let limit_next = onlimit.map(to_state).unwrap_or(limit_state);
    rows[limit_state as usize] = (0..width)
        .map(|mask| Transition {
            next: limit_next,
            write: mask as u32,
            moves: vec![Move::S; k],
        })
        .collect();

    let prog = Program {
        tape_count: k,
        halt_state,
        limit_state,
        uses_onlimit: onlimit.is_some(),
        rows,
    };
    prog.validate()
        .map_err(|e| AsmError::Table(format!("assembled table invalid: {e}")))?;
    Ok(prog)
}

#[cfg(test)]
mod tests {
    use super::super::{assemble, AsmError};
    use crate::machine::Move;

    #[test]
    fn bare_halt_is_a_two_state_program() {
        // no real instructions: start position resolves to halt, so the
        // table has just the halt and limit states and state 0 is... the
        // halt state itself cannot be state 0; an empty program is the
        // degenerate case where start = halt, which the table model cannot
        // express. A single HALT therefore assembles to a stall-free table
        // with one synthetic state.
        let p = assemble("MOVE OUT S\nHALT\n").unwrap();
        assert_eq!(p.num_states(), 3);
        assert_eq!(p.rows[0][0].next, p.halt_state);
    }

    #[test]
    fn goto_threading_makes_two_state_sweep() {
        let p = assemble("sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\n").unwrap();
        // two real states + halt + limit
        assert_eq!(p.num_states(), 4);
        assert_eq!(p.rows[0][0].next, 1);
        assert_eq!(p.rows[1][0].next, 0);
        assert_eq!(p.rows[1][0].moves[2], Move::R);
        assert!(!p.uses_onlimit);
        // without ONLIMIT the limit state stalls
        assert_eq!(p.rows[p.limit_state as usize][0].next, p.limit_state);
    }

    #[test]
    fn onlimit_redirects_limit_state() {
        let p = assemble(
            "sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\nONLIMIT GOTO done\ndone:\nHALT\n",
        )
        .unwrap();
        assert!(p.uses_onlimit);
        assert_eq!(p.rows[p.limit_state as usize][0].next, p.halt_state);
    }

    #[test]
    fn unresolved_label_is_an_error() {
        assert!(matches!(
            assemble("GOTO nowhere\n"),
            Err(AsmError::UnresolvedLabel(_))
        ));
        assert!(matches!(
            assemble("IFBIT OUT 1 GOTO nowhere\nHALT\n"),
            Err(AsmError::UnresolvedLabel(_))
        ));
    }

    #[test]
    fn pure_goto_cycle_is_an_error() {
        assert!(matches!(
            assemble("a:\nGOTO b\nb:\nGOTO a\n"),
            Err(AsmError::EmptyGotoCycle(_))
        ));
    }

    #[test]
    fn falling_off_the_end_halts() {
        let p = assemble("MOVE OUT R\n").unwrap();
        assert_eq!(p.rows[0][0].next, p.halt_state);
    }

    #[test]
    fn halt_alone_is_the_two_state_program() {
        let p = assemble("HALT\n").unwrap();
        assert_eq!(p.num_states(), 2);
        assert_eq!(p.halt_state, 0);
        assert_eq!(p.limit_state, 1);
    }

    #[test]
    fn entry_through_goto_becomes_state_zero() {
        let p = assemble("GOTO second\nfirst:\nMOVE OUT R\nHALT\nsecond:\nMOVE OUT L\nGOTO first\n")
            .unwrap();
        // the entry instruction (MOVE OUT L) must be state 0
        assert_eq!(p.rows[0][0].moves[2], Move::L);
        // and it chains to the MOVE OUT R instruction, then halt
        let next = p.rows[0][0].next;
        assert_eq!(p.rows[next as usize][0].moves[2], Move::R);
        assert_eq!(p.rows[next as usize][0].next, p.halt_state);
    }

    #[test]
    fn ifbit_branches() {
        let p = assemble("start:\nIFBIT W1 1 GOTO start\nHALT\n").unwrap();
        // mask with W1 bit set loops, others fall through to halt
        assert_eq!(p.rows[0][0b010].next, 0);
        assert_eq!(p.rows[0][0b000].next, p.halt_state);
    }
}
