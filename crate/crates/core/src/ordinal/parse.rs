//! The canonical text grammar for ordinal literals.
//!
//! ```text
//! ordinal := "0" | term ("+" term)*
//! term    := "w" ["^" "(" ordinal ")" | "^" nat] ["*" nat] | nat
//! ```
//!
//! Examples: `w^(w)`, `w^2*3+w+4`, `5`. Parsing rejects non-canonical
//! notations: non-decreasing exponent sequences, zero coefficients, and
//! `w^0` (a finite term must be written as a bare nat).

use super::{Ordinal, OrdinalError, Term};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

pub(super) fn format_ordinal(o: &Ordinal, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if o.is_zero() {
        return write!(f, "0");
    }
    for (i, t) in o.terms.iter().enumerate() {
        if i > 0 {
            write!(f, "+")?;
        }
        format_term(t, f)?;
    }
    Ok(())
}

fn format_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if t.exp.is_zero() {
        return write!(f, "{}", t.coeff);
    }
    write!(f, "w")?;
    if t.exp != Ordinal::one() {
        if t.exp.is_finite() {
            write!(f, "^{}", t.exp.terms[0].coeff)?;
        } else {
            write!(f, "^({})", t.exp)?;
        }
    }
    if !t.coeff.is_one() {
        write!(f, "*{}", t.coeff)?;
    }
    Ok(())
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.input.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, c: u8) -> Result<(), OrdinalError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> OrdinalError {
        OrdinalError::Parse(format!("{} at byte {} in {:?}", msg, self.pos, self.input))
    }

    fn nat(&mut self) -> Result<BigUint, OrdinalError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = &self.input[start..self.pos];
        digits
            .parse::<BigUint>()
            .map_err(|e| self.err(&e.to_string()))
    }

    fn ordinal(&mut self) -> Result<Ordinal, OrdinalError> {
        // "0" only stands alone
        if self.peek() == Some(b'0')
            && !self
                .input
                .as_bytes()
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_digit())
        {
            self.bump();
            return Ok(Ordinal::zero());
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.bump();
            terms.push(self.term()?);
        }
        for w in terms.windows(2) {
            if w[0].exp <= w[1].exp {
                return Err(OrdinalError::NotCanonical(format!(
                    "non-decreasing exponents in {:?}",
                    self.input
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    fn term(&mut self) -> Result<Term, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.bump();
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    if self.peek() == Some(b'(') {
                        self.bump();
                        let e = self.ordinal()?;
                        self.eat(b')')?;
                        e
                    } else {
                        Ordinal::from(self.nat()?)
                    }
                } else {
                    Ordinal::one()
                };
                if exp.is_zero() {
                    return Err(OrdinalError::NotCanonical(
                        "w^0 must be written as a bare number".into(),
                    ));
                }
                let coeff = if self.peek() == Some(b'*') {
                    self.bump();
                    self.nat()?
                } else {
                    BigUint::one()
                };
                if coeff.is_zero() {
                    return Err(OrdinalError::NotCanonical("zero coefficient".into()));
                }
                Ok(Term { exp, coeff })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                if n.is_zero() {
                    return Err(OrdinalError::NotCanonical(
                        "0 may only appear as the whole literal".into(),
                    ));
                }
                Ok(Term {
                    exp: Ordinal::zero(),
                    coeff: n,
                })
            }
            _ => Err(self.err("expected 'w' or a number")),
        }
    }
}

pub(super) fn parse_ordinal(s: &str) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser { input: s, pos: 0 };
    let o = p.ordinal()?;
    if p.pos != s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(o)
}
