//! A macro-assembly language over plain transition tables, plus the catalog
//! of standard programs written in it.
//!
//! Source is UTF-8 text, one instruction per line, `#` comments. Labels are
//! `name:` lines. `MACRO name(p1, p2) ... END` defines a macro with integer
//! parameters (referenced as `$p1`), invoked by `name(3, 4)` lines.
//! `REPEAT n ... END` repeats its body; labels defined inside a repeated or
//! expanded body are uniquified per instance. Tape aliases are `IN`, `OUT`
//! and `W1`, `W2`, ... within the declared `TAPES` count (default 3).

mod assemble;
mod catalog;
mod table;

pub(crate) use assemble::assemble_instructions;
pub use catalog::{catalog, catalog_names, mult_marks, CatalogProgram};
pub use table::{format_table, parse_table};

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AsmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unresolved label {0:?}")]
    UnresolvedLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("writing to the input tape is not allowed")]
    WriteToInput,
    #[error("tape {0:?} is not declared (tape count {1})")]
    UndeclaredTape(String, usize),
    #[error("macro {0:?}: expected {1} arguments, got {2}")]
    MacroArity(String, usize, usize),
    #[error("unknown macro or instruction {0:?}")]
    UnknownMacro(String),
    #[error("GOTO chain at label {0:?} never reaches an instruction")]
    EmptyGotoCycle(String),
    #[error("multiple ONLIMIT handlers")]
    MultipleOnLimit,
    #[error("unknown catalog program {0:?}")]
    UnknownCatalog(String),
    #[error("unsupported argument range for {name}: {msg}")]
    UnsupportedRange { name: String, msg: String },
    #[error("table: {0}")]
    Table(String),
}

/// An assembly program: the source text plus the tape count it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsmProgram {
    pub name: String,
    pub source: String,
}

impl AsmProgram {
    pub fn new(name: impl Into<String>, source: impl Into<String>) -> Self {
        AsmProgram {
            name: name.into(),
            source: source.into(),
        }
    }

    pub fn assemble(&self) -> Result<crate::machine::Program, AsmError> {
        assemble(&self.source)
    }
}

/// One expanded instruction with its label context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Instr {
    Write { tape: usize, bit: bool },
    Move { tape: usize, dir: crate::machine::Move },
    IfBit { tape: usize, bit: bool, target: String },
    Goto { target: String },
    Halt,
    OnLimit { target: String },
}

#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub labels: Vec<String>,
    pub instr: Instr,
}

pub(crate) struct Expanded {
    pub tape_count: usize,
    pub lines: Vec<Line>,
}

/// Assemble source text into a transition table.
pub fn assemble(source: &str) -> Result<crate::machine::Program, AsmError> {
    let expanded = expand(source)?;
    assemble_instructions(&expanded)
}

struct MacroDef {
    params: Vec<String>,
    body: Vec<(usize, String)>,
}

/// Parse and macro-expand source into a flat instruction list.
pub(crate) fn expand(source: &str) -> Result<Expanded, AsmError> {
    // first pass: strip comments, collect macros, keep the rest
    let mut macros: HashMap<String, MacroDef> = HashMap::new();
    let mut toplevel: Vec<(usize, String)> = Vec::new();
    let mut tape_count = 3usize;
    let mut saw_tapes = false;
    let mut current_macro: Option<(String, MacroDef)> = None;
    let mut depth = 0usize;

    for (idx, raw) in source.lines().enumerate() {
        let lineno = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim().to_string();
        if text.is_empty() {
            continue;
        }
        let upper = text.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("TAPES ") {
            if current_macro.is_some() {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: "TAPES not allowed inside a macro".into(),
                });
            }
            if saw_tapes || !toplevel.is_empty() {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: "TAPES must come first and appear once".into(),
                });
            }
            tape_count = rest.trim().parse().map_err(|_| AsmError::Parse {
                line: lineno,
                msg: "TAPES expects a number".into(),
            })?;
            if !(3..=16).contains(&tape_count) {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: "tape count must be between 3 and 16".into(),
                });
            }
            saw_tapes = true;
            continue;
        }
        if upper.starts_with("MACRO ") {
            if current_macro.is_some() {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: "nested MACRO definitions are not supported".into(),
                });
            }
            let decl = text[6..].trim();
            let (name, params) = parse_call_shape(decl).ok_or(AsmError::Parse {
                line: lineno,
                msg: format!("malformed macro declaration {decl:?}"),
            })?;
            current_macro = Some((
                name.to_string(),
                MacroDef {
                    params: params.iter().map(|p| p.trim().to_string()).collect(),
                    body: Vec::new(),
                },
            ));
            continue;
        }
        if upper == "END" && depth == 0 {
            if let Some((name, def)) = current_macro.take() {
                macros.insert(name, def);
                continue;
            }
            // fall through: END belongs to a REPEAT handled at expansion
        }
        if upper.starts_with("REPEAT") {
            depth += 1;
        } else if upper == "END" {
            depth = depth.saturating_sub(1);
        }
        match &mut current_macro {
            Some((_, def)) => def.body.push((lineno, text)),
            None => toplevel.push((lineno, text)),
        }
    }
    if let Some((name, _)) = current_macro {
        return Err(AsmError::Parse {
            line: 0,
            msg: format!("macro {name:?} missing END"),
        });
    }

    let mut lines = Vec::new();
    let mut pending_labels = Vec::new();
    let mut instance_counter = 0usize;
    expand_block(
        &toplevel,
        &macros,
        &HashMap::new(),
        tape_count,
        &mut lines,
        &mut pending_labels,
        &mut instance_counter,
        0,
    )?;
    if !pending_labels.is_empty() {
        // trailing labels denote the end of the program, which halts
        lines.push(Line {
            labels: std::mem::take(&mut pending_labels),
            instr: Instr::Halt,
        });
    }
    Ok(Expanded { tape_count, lines })
}

fn parse_call_shape(s: &str) -> Option<(&str, Vec<&str>)> {
    let open = s.find('(')?;
    let close = s.rfind(')')?;
    if close != s.len() - 1 || close < open {
        return None;
    }
    let name = s[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    let inner = s[open + 1..close].trim();
    let args = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|a| a.trim()).collect()
    };
    Some((name, args))
}

#[allow(clippy::too_many_arguments)]
fn expand_block(
    body: &[(usize, String)],
    macros: &HashMap<String, MacroDef>,
    bindings: &HashMap<String, i64>,
    tape_count: usize,
    out: &mut Vec<Line>,
    pending_labels: &mut Vec<String>,
    instance_counter: &mut usize,
    nesting: usize,
) -> Result<(), AsmError> {
    if nesting > 32 {
        return Err(AsmError::Parse {
            line: 0,
            msg: "macro expansion too deep".into(),
        });
    }
    // labels defined in this body instance get a per-instance suffix so the
    // same macro can expand twice; references to outer labels pass through
    let local_labels: std::collections::HashSet<String> = body
        .iter()
        .filter_map(|(_, t)| t.strip_suffix(':').map(|l| l.trim().to_string()))
        .collect();
    let suffix = if nesting == 0 {
        String::new()
    } else {
        *instance_counter += 1;
        format!(".{}", *instance_counter)
    };
    let rename = |label: &str| -> String {
        if local_labels.contains(label) {
            format!("{label}{suffix}")
        } else {
            label.to_string()
        }
    };

    let mut i = 0;
    while i < body.len() {
        let (lineno, text) = &body[i];
        let lineno = *lineno;
        let text = substitute(text, bindings, lineno)?;
        let upper = text.to_ascii_uppercase();

        if let Some(label) = text.strip_suffix(':') {
            let label = label.trim();
            if label.is_empty() || !is_ident(label) {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: format!("bad label {label:?}"),
                });
            }
            pending_labels.push(rename(label));
            i += 1;
            continue;
        }

        if upper.starts_with("REPEAT") {
            let count_src = text[6..].trim();
            let count: i64 = count_src.parse().map_err(|_| AsmError::Parse {
                line: lineno,
                msg: format!("REPEAT expects a number, got {count_src:?}"),
            })?;
            if count < 0 {
                return Err(AsmError::Parse {
                    line: lineno,
                    msg: "REPEAT count must be nonnegative".into(),
                });
            }
            let (block, rest) = take_block(&body[i + 1..], lineno)?;
            for _ in 0..count {
                expand_block(
                    block,
                    macros,
                    bindings,
                    tape_count,
                    out,
                    pending_labels,
                    instance_counter,
                    nesting + 1,
                )?;
            }
            i += 1 + block.len() + 1;
            let _ = rest;
            continue;
        }

        // macro invocation?
        if let Some((name, args)) = parse_call_shape(&text) {
            let def = macros
                .get(name)
                .ok_or_else(|| AsmError::UnknownMacro(name.to_string()))?;
            if def.params.len() != args.len() {
                return Err(AsmError::MacroArity(
                    name.to_string(),
                    def.params.len(),
                    args.len(),
                ));
            }
            let mut inner = HashMap::new();
            for (p, a) in def.params.iter().zip(&args) {
                let v: i64 = a.parse().map_err(|_| AsmError::Parse {
                    line: lineno,
                    msg: format!("macro argument {a:?} is not an integer"),
                })?;
                inner.insert(p.clone(), v);
            }
            expand_block(
                &def.body,
                macros,
                &inner,
                tape_count,
                out,
                pending_labels,
                instance_counter,
                nesting + 1,
            )?;
            i += 1;
            continue;
        }

        let instr = parse_instr(&text, tape_count, lineno, &rename)?;
        out.push(Line {
            labels: std::mem::take(pending_labels),
            instr,
        });
        i += 1;
    }
    Ok(())
}

/// Split a REPEAT body from its matching END.
fn take_block(rest: &[(usize, String)], open_line: usize) -> Result<(&[(usize, String)], ()), AsmError> {
    let mut depth = 0usize;
    for (j, (_, text)) in rest.iter().enumerate() {
        let upper = text.to_ascii_uppercase();
        if upper.starts_with("REPEAT") {
            depth += 1;
        } else if upper == "END" {
            if depth == 0 {
                return Ok((&rest[..j], ()));
            }
            depth -= 1;
        }
    }
    Err(AsmError::Parse {
        line: open_line,
        msg: "REPEAT missing END".into(),
    })
}

fn substitute(text: &str, bindings: &HashMap<String, i64>, lineno: usize) -> Result<String, AsmError> {
    if !text.contains('$') {
        return Ok(text.to_string());
    }
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '$' {
            out.push(c);
            continue;
        }
        let mut name = String::new();
        while chars
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            name.push(chars.next().expect("peeked"));
        }
        let v = bindings.get(&name).ok_or_else(|| AsmError::Parse {
            line: lineno,
            msg: format!("unbound macro parameter ${name}"),
        })?;
        out.push_str(&v.to_string());
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn parse_tape(token: &str, tape_count: usize) -> Result<usize, AsmError> {
    let t = token.to_ascii_uppercase();
    match t.as_str() {
        "IN" => Ok(0),
        "OUT" => Ok(tape_count - 1),
        _ => {
            if let Some(n) = t.strip_prefix('W') {
                if let Ok(i) = n.parse::<usize>() {
                    if i >= 1 && i <= tape_count.saturating_sub(2) {
                        return Ok(i);
                    }
                }
            }
            Err(AsmError::UndeclaredTape(token.to_string(), tape_count))
        }
    }
}

fn parse_bit(token: &str, lineno: usize) -> Result<bool, AsmError> {
    match token {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(AsmError::Parse {
            line: lineno,
            msg: format!("expected a bit, got {token:?}"),
        }),
    }
}

fn parse_instr(
    text: &str,
    tape_count: usize,
    lineno: usize,
    rename: &dyn Fn(&str) -> String,
) -> Result<Instr, AsmError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let op = tokens[0].to_ascii_uppercase();
    let arity_err = |msg: &str| AsmError::Parse {
        line: lineno,
        msg: msg.to_string(),
    };
    match op.as_str() {
        "WRITE" => {
            if tokens.len() != 3 {
                return Err(arity_err("WRITE tape bit"));
            }
            let tape = parse_tape(tokens[1], tape_count)?;
            if tape == 0 {
                return Err(AsmError::WriteToInput);
            }
            Ok(Instr::Write {
                tape,
                bit: parse_bit(tokens[2], lineno)?,
            })
        }
        "MOVE" => {
            if tokens.len() != 3 {
                return Err(arity_err("MOVE tape L|R|S"));
            }
            let dir = match tokens[2].to_ascii_uppercase().as_str() {
                "L" => crate::machine::Move::L,
                "R" => crate::machine::Move::R,
                "S" => crate::machine::Move::S,
                other => {
                    return Err(arity_err(&format!("bad direction {other:?}")));
                }
            };
            Ok(Instr::Move {
                tape: parse_tape(tokens[1], tape_count)?,
                dir,
            })
        }
        "IFBIT" => {
            if tokens.len() != 5 || tokens[3].to_ascii_uppercase() != "GOTO" {
                return Err(arity_err("IFBIT tape bit GOTO label"));
            }
            Ok(Instr::IfBit {
                tape: parse_tape(tokens[1], tape_count)?,
                bit: parse_bit(tokens[2], lineno)?,
                target: rename(tokens[4]),
            })
        }
        "GOTO" => {
            if tokens.len() != 2 {
                return Err(arity_err("GOTO label"));
            }
            Ok(Instr::Goto {
                target: rename(tokens[1]),
            })
        }
        "HALT" => {
            if tokens.len() != 1 {
                return Err(arity_err("HALT takes no operands"));
            }
            Ok(Instr::Halt)
        }
        "ONLIMIT" => {
            if tokens.len() != 3 || tokens[1].to_ascii_uppercase() != "GOTO" {
                return Err(arity_err("ONLIMIT GOTO label"));
            }
            Ok(Instr::OnLimit {
                target: rename(tokens[2]),
            })
        }
        other => Err(AsmError::UnknownMacro(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_plain_program() {
        let e = expand("loop:\nWRITE OUT 1\nMOVE OUT R\nGOTO loop\n").unwrap();
        assert_eq!(e.tape_count, 3);
        assert_eq!(e.lines.len(), 3);
        assert_eq!(e.lines[0].labels, vec!["loop".to_string()]);
    }

    #[test]
    fn expand_macro_and_repeat() {
        let src = "\
MACRO bump(n)
REPEAT $n
MOVE OUT R
END
END
bump(3)
bump(2)
HALT
";
        let e = expand(src).unwrap();
        assert_eq!(e.lines.len(), 6);
    }

    #[test]
    fn macro_labels_are_uniquified() {
        let src = "\
MACRO spin(n)
top:
MOVE OUT S
IFBIT OUT 1 GOTO top
END
spin(1)
spin(1)
HALT
";
        let e = expand(src).unwrap();
        let labels: Vec<_> = e.lines.iter().flat_map(|l| l.labels.clone()).collect();
        assert_eq!(labels.len(), 2);
        assert_ne!(labels[0], labels[1]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            expand("WRITE IN 1\n"),
            Err(AsmError::WriteToInput)
        ));
        assert!(matches!(
            expand("WRITE W5 1\n"),
            Err(AsmError::UndeclaredTape(..))
        ));
        assert!(matches!(
            expand("MACRO f(a)\nEND\nf(1,2)\n"),
            Err(AsmError::MacroArity(..))
        ));
        assert!(expand("BOGUS X\n").is_err());
        assert!(expand("TAPES 2\nHALT\n").is_err());
    }
}
