//! Ordinal notations below epsilon_0 in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals) and positive integer
//! coefficients. The empty sum is 0 and every ordinal below epsilon_0 has
//! exactly one such notation, so structural equality is ordinal equality.

mod parse;
mod pairing;

pub use pairing::{godel_pair, godel_unpair, pair_rank_block, GodelPairs};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Error type for the ordinal layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("invalid ordinal literal: {0}")]
    Parse(String),
    #[error("notation is not in Cantor normal form: {0}")]
    NotCanonical(String),
}

/// One CNF term `w^exp * coeff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Term {
    exp: Ordinal,
    coeff: BigUint,
}

/// An ordinal below epsilon_0 in Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Result of [`Ordinal::classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdinalClass {
    Zero,
    Successor(Ordinal),
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1u32)
    }

    /// The first infinite ordinal `w`.
    pub fn omega() -> Self {
        Ordinal {
            terms: vec![Term {
                exp: Ordinal::one(),
                coeff: BigUint::one(),
            }],
        }
    }

    /// `w^exp`, a single CNF term with coefficient 1.
    ///
    /// Ordinals below epsilon_0 are closed under `a -> w^a`, so this is
    /// total on representable inputs.
    pub fn omega_pow(exp: &Ordinal) -> Self {
        if exp.is_zero() {
            return Ordinal::one();
        }
        Ordinal {
            terms: vec![Term {
                exp: exp.clone(),
                coeff: BigUint::one(),
            }],
        }
    }

    /// Build from explicit CNF terms, validating canonicity.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self, OrdinalError> {
        for window in terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return Err(OrdinalError::NotCanonical(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::NotCanonical("zero coefficient".into()));
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exp, coeff)| Term { exp, coeff })
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Finite ordinals are those whose only term has exponent 0.
    pub fn is_finite(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [t] => t.exp.is_zero(),
            _ => false,
        }
    }

    /// The value of a finite ordinal.
    pub fn finite_value(&self) -> Option<&BigUint> {
        if self.terms.is_empty() {
            None // callers handle zero separately via is_zero
        } else if self.is_finite() {
            Some(&self.terms[0].coeff)
        } else {
            None
        }
    }

    /// Finite value as usize, when it fits. Zero yields Some(0).
    pub fn as_usize(&self) -> Option<usize> {
        if self.is_zero() {
            return Some(0);
        }
        if !self.is_finite() {
            return None;
        }
        use num_traits::ToPrimitive;
        self.terms[0].coeff.to_usize()
    }

    fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Exponent of the leading CNF term; None for 0.
    pub fn leading_exp(&self) -> Option<&Ordinal> {
        self.leading().map(|t| &t.exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Ordinal, &BigUint)> {
        self.terms.iter().map(|t| (&t.exp, &t.coeff))
    }

    /// Ordinal sum `self + rhs` (left absorption of small terms).
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.leading() else {
            return self.clone();
        };
        // keep the prefix of self with exponents > rhs's leading exponent
        let keep = self
            .terms
            .iter()
            .position(|t| t.exp <= lead.exp)
            .unwrap_or(self.terms.len());
        let mut terms: Vec<Term> = self.terms[..keep].to_vec();
        if keep < self.terms.len() && self.terms[keep].exp == lead.exp {
            terms.push(Term {
                exp: lead.exp.clone(),
                coeff: &self.terms[keep].coeff + &lead.coeff,
            });
        } else {
            terms.push(lead.clone());
        }
        terms.extend_from_slice(&rhs.terms[1..]);
        Ordinal { terms }
    }

    /// Left subtraction: the unique `d` with `rhs + d = self`, when `rhs <= self`.
    pub fn checked_sub(&self, rhs: &Ordinal) -> Option<Ordinal> {
        let mut i = 0;
        while i < self.terms.len() && i < rhs.terms.len() && self.terms[i] == rhs.terms[i] {
            i += 1;
        }
        if i == rhs.terms.len() {
            return Some(Ordinal {
                terms: self.terms[i..].to_vec(),
            });
        }
        if i == self.terms.len() {
            return None; // rhs > self
        }
        let (a, b) = (&self.terms[i], &rhs.terms[i]);
        match a.exp.cmp(&b.exp) {
            Ordering::Less => None,
            Ordering::Greater => Some(Ordinal {
                terms: self.terms[i..].to_vec(),
            }),
            Ordering::Equal => match a.coeff.cmp(&b.coeff) {
                Ordering::Less => None,
                Ordering::Greater => {
                    let mut terms = vec![Term {
                        exp: a.exp.clone(),
                        coeff: &a.coeff - &b.coeff,
                    }];
                    terms.extend_from_slice(&self.terms[i + 1..]);
                    Some(Ordinal { terms })
                }
                Ordering::Equal => {
                    // terms equal at i yet not caught by the prefix loop
                    unreachable!("equal terms handled by prefix scan")
                }
            },
        }
    }

    /// Ordinal product `self * rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let lead = self.leading().expect("nonzero");
        let mut terms: Vec<Term> = Vec::with_capacity(rhs.terms.len() + self.terms.len());
        for t in &rhs.terms {
            if !t.exp.is_zero() {
                terms.push(Term {
                    exp: lead.exp.add(&t.exp),
                    coeff: t.coeff.clone(),
                });
            } else {
                // finite right factor: w^e1*(c1*n) followed by self's tail
                terms.push(Term {
                    exp: lead.exp.clone(),
                    coeff: &lead.coeff * &t.coeff,
                });
                terms.extend_from_slice(&self.terms[1..]);
            }
        }
        Ordinal { terms }
    }

    /// Zero / Successor (with predecessor) / Limit.
    pub fn classify(&self) -> OrdinalClass {
        let Some(last) = self.terms.last() else {
            return OrdinalClass::Zero;
        };
        if !last.exp.is_zero() {
            return OrdinalClass::Limit;
        }
        let mut terms = self.terms.clone();
        {
            let last = terms.last_mut().expect("nonempty");
            last.coeff -= BigUint::one();
            if last.coeff.is_zero() {
                terms.pop();
            }
        }
        OrdinalClass::Successor(Ordinal { terms })
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.classify(), OrdinalClass::Limit)
    }

    /// Least limit ordinal strictly greater than `self`.
    pub fn next_limit(&self) -> Ordinal {
        // strip the finite part, then add w
        let stripped = match self.terms.last() {
            Some(t) if t.exp.is_zero() => Ordinal {
                terms: self.terms[..self.terms.len() - 1].to_vec(),
            },
            _ => self.clone(),
        };
        stripped.add(&Ordinal::omega())
    }

    /// True iff `self` is infinite and `mu + nu < self` for all
    /// `mu, nu < self`; these are exactly the powers `w^g` with `g >= 1`.
    pub fn is_additively_closed(&self) -> bool {
        let [t] = self.terms.as_slice() else {
            return false;
        };
        t.coeff.is_one() && !t.exp.is_zero()
    }

    /// True iff `self` is infinite and `mu * nu < self` for all `mu, nu < self`.
    ///
    /// The infinite multiplicatively closed ordinals are exactly those of
    /// the form `w^(w^b)`.
    pub fn is_mult_closed(&self) -> bool {
        let [t] = self.terms.as_slice() else {
            return false;
        };
        if !t.coeff.is_one() {
            return false;
        }
        let [e] = t.exp.terms.as_slice() else {
            return false;
        };
        e.coeff.is_one()
    }

    /// Successor `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exp: Ordinal::zero(),
                    coeff: BigUint::from(n),
                }],
            }
        }
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Self {
        Ordinal::from(n as u64)
    }
}

impl From<usize> for Ordinal {
    fn from(n: usize) -> Self {
        Ordinal::from(n as u64)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exp: Ordinal::zero(),
                    coeff: n,
                }],
            }
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.exp.cmp(&b.exp) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.coeff.cmp(&b.coeff) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl std::ops::Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl std::ops::Mul<&Ordinal> for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::mul(self, rhs)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::format_ordinal(self, f)
    }
}

impl std::str::FromStr for Ordinal {
    type Err = OrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_ordinal(s)
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
