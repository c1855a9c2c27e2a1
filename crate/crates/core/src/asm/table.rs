//! The assembled-program text format: a header followed by one line per
//! (state, read vector) entry. Formatting is canonical, so format/parse
//! round-trips reproduce the table exactly.

use super::AsmError;
use crate::machine::{Move, Program, Transition};

pub fn format_table(prog: &Program) -> String {
    let mut out = String::new();
    out.push_str("ittm-program v1\n");
    out.push_str(&format!("tape_count {}\n", prog.tape_count));
    out.push_str(&format!("num_states {}\n", prog.num_states()));
    out.push_str(&format!("halt_state {}\n", prog.halt_state));
    out.push_str(&format!("limit_state {}\n", prog.limit_state));
    out.push_str(&format!(
        "convention {}\n",
        if prog.uses_onlimit {
            "distinguished"
        } else {
            "any"
        }
    ));
    for (state, row) in prog.rows.iter().enumerate() {
        for (mask, t) in row.iter().enumerate() {
            let read = bits(mask as u32, prog.tape_count);
            let write = bits(t.write, prog.tape_count);
            let moves: Vec<String> = t.moves.iter().map(|m| m.to_string()).collect();
            out.push_str(&format!(
                "{} {} -> {} {} {}\n",
                state,
                read,
                t.next,
                write,
                moves.join(",")
            ));
        }
    }
    out
}

fn bits(mask: u32, k: usize) -> String {
    (0..k)
        .map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn parse_bits(s: &str, k: usize) -> Result<u32, AsmError> {
    if s.len() != k {
        return Err(AsmError::Table(format!(
            "bit vector {s:?} has wrong width, expected {k}"
        )));
    }
    let mut mask = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => mask |= 1 << i,
            '0' => {}
            _ => return Err(AsmError::Table(format!("bad bit {c:?}"))),
        }
    }
    Ok(mask)
}

pub fn parse_table(text: &str) -> Result<Program, AsmError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let magic = lines.next().ok_or_else(|| AsmError::Table("empty".into()))?;
    if magic.trim() != "ittm-program v1" {
        return Err(AsmError::Table(format!("bad magic {magic:?}")));
    }
    let mut header = std::collections::HashMap::new();
    let mut body: Vec<&str> = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.contains("->") {
            body.push(line);
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts
            .next()
            .ok_or_else(|| AsmError::Table("bad header line".into()))?;
        let value = parts
            .next()
            .ok_or_else(|| AsmError::Table(format!("header {key:?} missing value")))?;
        header.insert(key.to_string(), value.to_string());
    }
    let get_num = |key: &str| -> Result<u32, AsmError> {
        header
            .get(key)
            .ok_or_else(|| AsmError::Table(format!("missing header {key:?}")))?
            .parse()
            .map_err(|_| AsmError::Table(format!("bad number for {key:?}")))
    };
    let tape_count = get_num("tape_count")? as usize;
    let num_states = get_num("num_states")?;
    let halt_state = get_num("halt_state")?;
    let limit_state = get_num("limit_state")?;
    let convention = header
        .get("convention")
        .cloned()
        .unwrap_or_else(|| "any".into());
    if !(3..=16).contains(&tape_count) {
        return Err(AsmError::Table("tape_count out of range".into()));
    }
    let width = 1usize << tape_count;
    let mut rows: Vec<Vec<Transition>> = vec![Vec::new(); num_states as usize];
    for line in body {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| AsmError::Table("row missing arrow".into()))?;
        let mut l = lhs.split_whitespace();
        let state: u32 = l
            .next()
            .ok_or_else(|| AsmError::Table("row missing state".into()))?
            .parse()
            .map_err(|_| AsmError::Table("bad state".into()))?;
        let read = parse_bits(
            l.next()
                .ok_or_else(|| AsmError::Table("row missing read bits".into()))?,
            tape_count,
        )?;
        let mut r = rhs.split_whitespace();
        let next: u32 = r
            .next()
            .ok_or_else(|| AsmError::Table("row missing next".into()))?
            .parse()
            .map_err(|_| AsmError::Table("bad next state".into()))?;
        let write = parse_bits(
            r.next()
                .ok_or_else(|| AsmError::Table("row missing write bits".into()))?,
            tape_count,
        )?;
        let moves_src = r
            .next()
            .ok_or_else(|| AsmError::Table("row missing moves".into()))?;
        let moves: Vec<Move> = moves_src
            .split(',')
            .map(|m| match m {
                "L" => Ok(Move::L),
                "R" => Ok(Move::R),
                "S" => Ok(Move::S),
                other => Err(AsmError::Table(format!("bad move {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let row = rows
            .get_mut(state as usize)
            .ok_or_else(|| AsmError::Table("state out of range".into()))?;
        if row.len() != read as usize {
            return Err(AsmError::Table(format!(
                "rows out of order at state {state} mask {read}"
            )));
        }
        row.push(Transition { next, write, moves });
    }
    for (s, row) in rows.iter().enumerate() {
        let expected = if s as u32 == halt_state { 0 } else { width };
        if row.len() != expected {
            return Err(AsmError::Table(format!(
                "state {s} has {} rows, expected {expected}",
                row.len()
            )));
        }
    }
    let prog = Program {
        tape_count,
        halt_state,
        limit_state,
        uses_onlimit: convention == "distinguished",
        rows,
    };
    prog.validate()
        .map_err(|e| AsmError::Table(format!("invalid table: {e}")))?;
    Ok(prog)
}

#[cfg(test)]
mod tests {
    use super::super::assemble;
    use super::*;

    #[test]
    fn roundtrip_is_exact() {
        let p = assemble("sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\nONLIMIT GOTO d\nd:\nHALT\n")
            .unwrap();
        let text = format_table(&p);
        let q = parse_table(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(format_table(&q), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_table("nope").is_err());
        assert!(parse_table("ittm-program v1\ntape_count 3\n").is_err());
    }
}
