//! The catalog of standard programs.
//!
//! Each entry is a generator producing plain assembly source; argument
//! ranges are validated here and out-of-range requests are hard errors.

use super::{AsmError, AsmProgram};
use crate::ordinal::Ordinal;

/// A catalog entry together with the argument values it was built with.
#[derive(Debug, Clone)]
pub struct CatalogProgram {
    pub program: AsmProgram,
    /// Arguments echoed for reports.
    pub args: Vec<i64>,
}

/// Names in catalog order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "move_right",
        "sweep_fill",
        "reach_limit",
        "reach_limit_times",
        "mult_position",
        "count_through_code",
        "busy_loop",
    ]
}

/// Build the named catalog program.
///
/// `move_right(n)` halts with the output head at cell n. `sweep_fill`
/// writes 1s rightward forever. `reach_limit` sweeps and halts where the
/// first limit leaves its head. `reach_limit_times(n)` iterates the sweep
/// across n limits. `mult_position` halts with the output head at b*c for
/// input marks at cells b > c (v1 supports finite marks and b = w with
/// finite c). `count_through_code` counts through a finite canonical code
/// on the input tape and halts with the output head at the coded ordinal.
/// `busy_loop` never halts.
pub fn catalog(name: &str, args: &[i64]) -> Result<CatalogProgram, AsmError> {
    let unsupported = |msg: &str| AsmError::UnsupportedRange {
        name: name.to_string(),
        msg: msg.to_string(),
    };
    let arity = |n: usize| -> Result<(), AsmError> {
        if args.len() != n {
            Err(unsupported(&format!(
                "expected {n} argument(s), got {}",
                args.len()
            )))
        } else {
            Ok(())
        }
    };
    let source = match name {
        "move_right" => {
            arity(1)?;
            let n = args[0];
            if !(0..=100_000).contains(&n) {
                return Err(unsupported("n must be in 0..=100000"));
            }
            let mut src = String::new();
            for _ in 0..n {
                src.push_str("MOVE OUT R\n");
            }
            src.push_str("HALT\n");
            src
        }
        "sweep_fill" => {
            arity(0)?;
            "sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\n".to_string()
        }
        "reach_limit" => {
            arity(0)?;
            "sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\nONLIMIT GOTO done\ndone:\nHALT\n"
                .to_string()
        }
        "reach_limit_times" => {
            arity(1)?;
            let n = args[0];
            if !(1..=64).contains(&n) {
                return Err(unsupported("n must be in 1..=64"));
            }
            reach_limit_times_source(n as usize)
        }
        "mult_position" => {
            arity(0)?;
            MULT_POSITION_SRC.to_string()
        }
        "count_through_code" => {
            arity(0)?;
            COUNT_THROUGH_SRC.to_string()
        }
        "busy_loop" => {
            arity(0)?;
            "loop:\nMOVE OUT S\nGOTO loop\n".to_string()
        }
        other => return Err(AsmError::UnknownCatalog(other.to_string())),
    };
    Ok(CatalogProgram {
        program: AsmProgram::new(name, source),
        args: args.to_vec(),
    })
}

/// Sweep the output head rightward writing 1s; at each limit, walk the
/// tally on W1 to count how many limits have passed. Below n, record one
/// more mark and resume sweeping; at the n-th, halt (leaving the output
/// head wherever the limit put it). Cell 0 of W1 stays 0 so the return
/// walk can find the origin.
fn reach_limit_times_source(n: usize) -> String {
    let mut src = String::new();
    src.push_str("sweep:\nWRITE OUT 1\nMOVE OUT R\nGOTO sweep\n");
    src.push_str("ONLIMIT GOTO disp\ndisp:\n");
    for j in 1..=n {
        src.push_str("MOVE W1 R\n");
        src.push_str(&format!("IFBIT W1 0 GOTO mark{j}\n"));
    }
    src.push_str("HALT\n"); // unreachable: at most n-1 marks exist
    for j in 1..n {
        src.push_str(&format!(
            "mark{j}:\nWRITE W1 1\nret{j}:\nMOVE W1 L\nIFBIT W1 1 GOTO ret{j}\nGOTO sweep\n"
        ));
    }
    src.push_str(&format!("mark{n}:\nHALT\n"));
    src
}

/// Ordinal multiplication positioning. The input tape carries marks at two
/// cells b > c >= 1; the run halts with the output head at b*c.
///
/// Phase A copies the distance to the first (smaller) mark as unary tallies
/// on W1 and W2; the sweep then continues to the second mark, extending W2
/// only, so W2 ends as a unary copy of b (cells 1..=b, or [1, b) when b is
/// a limit reached through a limit time). Each of the c repetitions walks
/// W2 once, advancing the output head in lockstep, so the output head lands
/// at b*c. W3 cell 0 distinguishes the two phases that can be interrupted
/// by a limit: seeking the second mark vs walking W2.
const MULT_POSITION_SRC: &str = "\
TAPES 5
seekA:
IFBIT IN 1 GOTO foundA
MOVE IN R
MOVE W1 R
MOVE W2 R
WRITE W1 1
WRITE W2 1
GOTO seekA
foundA:
MOVE IN R
MOVE W2 R
WRITE W2 1
seekB:
IFBIT IN 1 GOTO foundB
MOVE IN R
MOVE W2 R
WRITE W2 1
GOTO seekB
foundB:
WRITE W3 1
retB:
MOVE W2 L
IFBIT W2 1 GOTO retB
retW1:
MOVE W1 L
IFBIT W1 1 GOTO retW1
rep:
MOVE W1 R
IFBIT W1 0 GOTO done
WRITE W1 0
walk:
MOVE W2 R
walkcheck:
IFBIT W2 0 GOTO walkdone
MOVE OUT R
GOTO walk
walkdone:
retW2:
MOVE W2 L
IFBIT W2 1 GOTO retW2
GOTO rep
done:
HALT
ONLIMIT GOTO ldisp
ldisp:
IFBIT W3 1 GOTO walkcheck
GOTO seekB
";

/// Count through a finite canonical code: the edge (f, 0) of the code sits
/// at cell f^2+f, so the scan advances the input head by strides 2, 4, 6,
/// ... (kept as a growing unary block on W2) and bumps the output head once
/// per member until the first missing edge. W1 records consumed members.
const COUNT_THROUGH_SRC: &str = "\
TAPES 4
MOVE W2 R
WRITE W2 1
MOVE W2 R
WRITE W2 1
initret:
MOVE W2 L
IFBIT W2 1 GOTO initret
advance:
MOVE W2 R
IFBIT W2 0 GOTO arrived
MOVE IN R
GOTO advance
arrived:
retw:
MOVE W2 L
IFBIT W2 1 GOTO retw
IFBIT IN 0 GOTO finish
MOVE W1 R
WRITE W1 1
MOVE OUT R
ext:
MOVE W2 R
IFBIT W2 1 GOTO ext
WRITE W2 1
MOVE W2 R
WRITE W2 1
extret:
MOVE W2 L
IFBIT W2 1 GOTO extret
GOTO advance
finish:
HALT
";

/// Marks for a mult_position input: 1s at the two cells. Validates the v1
/// supported range.
pub fn mult_marks(b: &Ordinal, c: &Ordinal) -> Result<Vec<Ordinal>, AsmError> {
    let unsupported = |msg: &str| AsmError::UnsupportedRange {
        name: "mult_position".into(),
        msg: msg.into(),
    };
    if b <= c {
        return Err(unsupported("marks must satisfy b > c"));
    }
    if c < &Ordinal::one() {
        return Err(unsupported("marks must be at cells >= 1"));
    }
    if !c.is_finite() {
        return Err(unsupported("the smaller mark must be finite in v1"));
    }
    if !b.is_finite() && b != &Ordinal::omega() {
        return Err(unsupported("the larger mark must be finite or w in v1"));
    }
    Ok(vec![b.clone(), c.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_assemble() {
        for name in catalog_names() {
            let args: &[i64] = match *name {
                "move_right" => &[3],
                "reach_limit_times" => &[2],
                _ => &[],
            };
            let cat = catalog(name, args).unwrap_or_else(|e| panic!("{name}: {e}"));
            cat.program
                .assemble()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_and_out_of_range() {
        assert!(matches!(
            catalog("no_such", &[]),
            Err(AsmError::UnknownCatalog(_))
        ));
        assert!(matches!(
            catalog("reach_limit_times", &[0]),
            Err(AsmError::UnsupportedRange { .. })
        ));
        assert!(matches!(
            catalog("move_right", &[-1]),
            Err(AsmError::UnsupportedRange { .. })
        ));
        assert!(matches!(
            catalog("sweep_fill", &[1]),
            Err(AsmError::UnsupportedRange { .. })
        ));
    }

    #[test]
    fn mult_marks_ranges() {
        let w: Ordinal = "w".parse().unwrap();
        assert!(mult_marks(&"3".parse().unwrap(), &"2".parse().unwrap()).is_ok());
        assert!(mult_marks(&w, &"2".parse().unwrap()).is_ok());
        assert!(mult_marks(&"2".parse().unwrap(), &"3".parse().unwrap()).is_err());
        assert!(mult_marks(&"w^2".parse().unwrap(), &"2".parse().unwrap()).is_err());
        assert!(mult_marks(&w, &w).is_err());
        assert!(mult_marks(&"3".parse().unwrap(), &"0".parse().unwrap()).is_err());
    }
}
