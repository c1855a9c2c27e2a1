//! Goedel pairing: the bijection between ordinal pairs and ordinals given by
//! ranking pairs by maximum, then lexicographically.
//!
//! [`GodelPairs`] enumerates pairs in that order directly from the
//! definition; it is the reference the closed-form [`godel_pair`] and
//! [`godel_unpair`] are tested against (and what `ittm pair-table --verify`
//! re-checks at runtime).

use super::Ordinal;
use num_bigint::BigUint;
use num_traits::One;
use std::cell::RefCell;
use std::collections::HashMap;

/// Enumerates pairs over the natural numbers in Goedel order: block by
/// maximum coordinate, lexicographic within a block. The n-th item has rank
/// n. Only finitely many pairs precede any pair with finite coordinates, so
/// this enumeration is exact for every rank it produces.
pub struct GodelPairs {
    max: u64,
    state: BlockState,
}

enum BlockState {
    LeftArm(u64),  // (b, max) for b < max
    RightArm(u64), // (max, c) for c <= max
}

impl GodelPairs {
    pub fn new() -> Self {
        GodelPairs {
            max: 0,
            state: BlockState::RightArm(0),
        }
    }
}

impl Default for GodelPairs {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for GodelPairs {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        match self.state {
            BlockState::LeftArm(b) => {
                self.state = if b + 1 < self.max {
                    BlockState::LeftArm(b + 1)
                } else {
                    BlockState::RightArm(0)
                };
                Some((b, self.max))
            }
            BlockState::RightArm(c) => {
                let item = (self.max, c);
                if c < self.max {
                    self.state = BlockState::RightArm(c + 1);
                } else {
                    self.max += 1;
                    self.state = BlockState::LeftArm(0);
                }
                Some(item)
            }
        }
    }
}

/// Ranks within the block of pairs whose maximum is exactly `m`, in
/// lexicographic order, offset from the block start. Used as a secondary
/// oracle for blocks at infinite maxima.
pub fn pair_rank_block(b: &Ordinal, c: &Ordinal) -> Ordinal {
    let m = b.max(c);
    if b < m {
        b.clone()
    } else {
        m.add(c)
    }
}

thread_local! {
    static BLOCK_START_MEMO: RefCell<HashMap<Ordinal, Ordinal>> = RefCell::new(HashMap::new());
}

/// Order type of the set of pairs with maximum < m; equivalently the rank
/// at which the block with maximum m begins.
fn block_start(m: &Ordinal) -> Ordinal {
    if m.is_zero() {
        return Ordinal::zero();
    }
    if let Some(n) = m.finite_value() {
        return Ordinal::from(n * n);
    }
    if let Some(hit) = BLOCK_START_MEMO.with(|memo| memo.borrow().get(m).cloned()) {
        return hit;
    }
    // m = w^g1*c1 + rest; blocks below m decompose along the CNF of m:
    //   start(w^g1)            for the first copy of the leading power,
    //   + w^(g1*2)*(c1-1)      for the remaining copies,
    //   + w^(g1+gi)*ci         for each infinite lower term,
    //   + (d*2)*n + n          for the finite part n, d the infinite part.
    let (lead_exp, lead_coeff) = {
        let t = &m.terms[0];
        (t.exp.clone(), t.coeff.clone())
    };
    let mut acc = power_block_start(&lead_exp);
    if !lead_coeff.is_one() {
        let two = Ordinal::from(2u32);
        let copies = Ordinal::from(&lead_coeff - 1u32);
        acc = acc.add(&Ordinal::omega_pow(&lead_exp.mul(&two)).mul(&copies));
    }
    for (exp, coeff) in m.terms().skip(1) {
        if !exp.is_zero() {
            acc = acc.add(&Ordinal::omega_pow(&lead_exp.add(exp)).mul(&Ordinal::from(coeff.clone())));
        } else {
            // finite part: sum over i<n of ((d+i)*2 + 1) = (d*2)*n + n
            let n = Ordinal::from(coeff.clone());
            let infinite_part = Ordinal {
                terms: m.terms[..m.terms.len() - 1].to_vec(),
            };
            let doubled = infinite_part.add(&infinite_part);
            acc = acc.add(&doubled.mul(&n)).add(&n);
        }
    }
    BLOCK_START_MEMO.with(|memo| {
        let mut memo = memo.borrow_mut();
        if memo.len() > 100_000 {
            memo.clear();
        }
        memo.insert(m.clone(), acc.clone());
    });
    acc
}

/// block_start(w^g) for g >= 1: with g = d + w^e (one unit stripped from the
/// last CNF term), the value is w^(d*2 + w^e).
fn power_block_start(g: &Ordinal) -> Ordinal {
    debug_assert!(!g.is_zero());
    let mut terms = g.terms.clone();
    let unit_exp = {
        let last = terms.last_mut().expect("nonzero exponent");
        let e = last.exp.clone();
        last.coeff -= BigUint::one();
        e
    };
    if terms.last().is_some_and(|t| num_traits::Zero::is_zero(&t.coeff)) {
        terms.pop();
    }
    let stripped = Ordinal { terms };
    let sigma = stripped.add(&stripped).add(&Ordinal::omega_pow(&unit_exp));
    Ordinal::omega_pow(&sigma)
}

/// Rank of the pair (b, c) in the Goedel order.
pub fn godel_pair(b: &Ordinal, c: &Ordinal) -> Ordinal {
    let m = b.max(c);
    block_start(m).add(&pair_rank_block(b, c))
}

/// Exact inverse of [`godel_pair`].
pub fn godel_unpair(r: &Ordinal) -> (Ordinal, Ordinal) {
    if r.is_zero() || r.is_finite() {
        let n = r.finite_value().cloned().unwrap_or_default();
        let m = n.sqrt();
        let within = &n - &m * &m;
        return if within < m {
            (Ordinal::from(within), Ordinal::from(m))
        } else {
            (Ordinal::from(m.clone()), Ordinal::from(within - m))
        };
    }
    let m = max_satisfying(&mut |x| &block_start(x) <= r).expect("block_start(0)=0 <= r");
    let within = r.checked_sub(&block_start(&m)).expect("by choice of m");
    if within < m {
        (within, m)
    } else {
        let c = within.checked_sub(&m).expect("within >= m");
        debug_assert!(c <= m);
        (m, c)
    }
}

/// Largest ordinal satisfying a downward-closed, bounded predicate, found by
/// greedy CNF construction (term by term, nested recursion on exponents).
/// Requires pred(0); callers guarantee boundedness.
fn max_satisfying(pred: &mut dyn FnMut(&Ordinal) -> bool) -> Option<Ordinal> {
    if !pred(&Ordinal::zero()) {
        return None;
    }
    let mut acc = Ordinal::zero();
    let mut exp_cap: Option<Ordinal> = None;
    loop {
        // largest next exponent e (strictly below the previous one) such
        // that acc + w^e still satisfies pred
        let e = {
            let cap = exp_cap.clone();
            let acc_ref = &acc;
            max_satisfying(&mut |e: &Ordinal| {
                if cap.as_ref().is_some_and(|c| e >= c) {
                    return false;
                }
                pred(&acc_ref.add(&Ordinal::omega_pow(e)))
            })
        };
        let Some(e) = e else {
            return Some(acc);
        };
        // largest coefficient by doubling then bisection
        let pow = Ordinal::omega_pow(&e);
        let mut lo = BigUint::one();
        loop {
            let next = &lo * 2u32;
            if pred(&acc.add(&pow.mul(&Ordinal::from(next.clone())))) {
                lo = next;
            } else {
                break;
            }
        }
        let mut hi = &lo * 2u32; // pred holds at lo, fails at hi
        while &lo + 1u32 < hi {
            let mid = (&lo + &hi) / 2u32;
            if pred(&acc.add(&pow.mul(&Ordinal::from(mid.clone())))) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        acc = acc.add(&pow.mul(&Ordinal::from(lo)));
        let stop = e.is_zero();
        exp_cap = Some(e);
        if stop {
            return Some(acc);
        }
    }
}
