//! Finitely described 0/1 tape contents over [0, alpha).
//!
//! A tape is a read-only base predicate plus a mutable overlay of interval
//! sets: value = 1 on `ones`, else 0 on `zeros`, else whatever the base
//! says. Runs only ever write interval-describable patterns, while the base
//! can carry infinite inputs such as alpha-codes.

use crate::ordinal::{godel_pair, Ordinal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TapeError {
    #[error("position {pos} is not below the tape length {alpha}")]
    OutOfRange { pos: Ordinal, alpha: Ordinal },
    #[error("tape is read-only")]
    WriteForbidden,
    #[error("snapshots are incompatible: {0}")]
    IncompatibleSnapshots(String),
    #[error("window [{lo}, {hi}) is not backed by a constant base")]
    NotConstant { lo: Ordinal, hi: Ordinal },
    #[error("invalid interval: [{lo}, {hi})")]
    BadInterval { lo: Ordinal, hi: Ordinal },
}

/// A sorted set of pairwise disjoint, non-adjacent half-open ordinal
/// intervals [lo, hi). Clones share storage; mutation copies on write.
#[derive(Debug, Clone, Eq, Hash, Default)]
pub struct IntervalSet {
    ivs: Arc<Vec<(Ordinal, Ordinal)>>,
}

impl PartialEq for IntervalSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ivs, &other.ivs) || self.ivs == other.ivs
    }
}

impl IntervalSet {
    pub fn new() -> Self {
        IntervalSet {
            ivs: Arc::new(Vec::new()),
        }
    }

    /// A cheap content digest for hash-bucketing: length plus boundary
    /// values. Equal sets digest equally; collisions are resolved by full
    /// comparison.
    pub fn digest(&self, h: &mut impl std::hash::Hasher) {
        use std::hash::Hash;
        self.ivs.len().hash(h);
        if let Some(first) = self.ivs.first() {
            first.hash(h);
        }
        if let Some(last) = self.ivs.last() {
            last.hash(h);
        }
    }

    pub fn from_intervals(ivs: impl IntoIterator<Item = (Ordinal, Ordinal)>) -> Self {
        let mut set = IntervalSet::new();
        for (lo, hi) in ivs {
            set.insert(&lo, &hi);
        }
        set
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Ordinal, Ordinal)> {
        self.ivs.iter()
    }

    pub fn contains(&self, pos: &Ordinal) -> bool {
        self.ivs
            .binary_search_by(|(lo, hi)| {
                if pos < lo {
                    std::cmp::Ordering::Greater
                } else if pos >= hi {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .is_ok()
    }

    /// Insert [lo, hi), merging overlapping and adjacent intervals.
    pub fn insert(&mut self, lo: &Ordinal, hi: &Ordinal) {
        if lo >= hi {
            return;
        }
        // fast path: extend or append at the right end, the common case for
        // rightward sweeps
        let ivs = Arc::make_mut(&mut self.ivs);
        if ivs.last().is_some_and(|(_, b)| b <= lo) {
            let last = ivs.last_mut().expect("nonempty");
            if &last.1 == lo {
                last.1 = hi.clone();
            } else {
                ivs.push((lo.clone(), hi.clone()));
            }
            return;
        }
        let mut out: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(ivs.len() + 1);
        let mut new_lo = lo.clone();
        let mut new_hi = hi.clone();
        let mut placed = false;
        for (a, b) in ivs.drain(..) {
            if placed || b < new_lo {
                out.push((a, b));
            } else if new_hi < a {
                out.push((new_lo.clone(), new_hi.clone()));
                placed = true;
                out.push((a, b));
            } else {
                // touching or overlapping: fold into the new interval
                new_lo = new_lo.min(a);
                new_hi = new_hi.max(b);
            }
        }
        if !placed {
            out.push((new_lo, new_hi));
        }
        *ivs = out;
    }

    /// True if [lo, hi) meets any member interval.
    pub fn overlaps(&self, lo: &Ordinal, hi: &Ordinal) -> bool {
        if lo >= hi {
            return false;
        }
        // first interval whose end lies beyond lo
        let idx = self.ivs.partition_point(|(_, b)| b <= lo);
        self.ivs.get(idx).is_some_and(|(a, _)| a < hi)
    }

    /// Remove [lo, hi).
    pub fn remove(&mut self, lo: &Ordinal, hi: &Ordinal) {
        if lo >= hi {
            return;
        }
        if !self.overlaps(lo, hi) {
            return;
        }
        let ivs = Arc::make_mut(&mut self.ivs);
        let mut out: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(ivs.len() + 1);
        for (a, b) in ivs.drain(..) {
            if &b <= lo || hi <= &a {
                out.push((a, b));
                continue;
            }
            if &a < lo {
                out.push((a.clone(), lo.clone()));
            }
            if hi < &b {
                out.push((hi.clone(), b));
            }
        }
        *ivs = out;
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        if other.is_empty() || self == other {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        let mut out = self.clone();
        for (lo, hi) in other.ivs.iter() {
            out.insert(lo, hi);
        }
        out
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        if self == other {
            return self.clone();
        }
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ivs.len() && j < other.ivs.len() {
            let (a1, b1) = &self.ivs[i];
            let (a2, b2) = &other.ivs[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if b1 <= b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { ivs: Arc::new(out) }
    }

    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        if other.is_empty() || self.is_empty() {
            return self.clone();
        }
        if self == other {
            return IntervalSet::new();
        }
        let mut out = self.clone();
        for (lo, hi) in other.ivs.iter() {
            out.remove(lo, hi);
        }
        out
    }

    /// True iff every member is inside [lo, hi).
    pub fn within(&self, lo: &Ordinal, hi: &Ordinal) -> bool {
        self.ivs.iter().all(|(a, b)| a >= lo && b <= hi)
    }

    /// Map intervals (already inside a window starting at `lo`) into the
    /// window starting at `target_lo`, preserving offsets from the start.
    /// Plain `+d` would be wrong: ordinal addition absorbs on the left.
    fn rebased(&self, lo: &Ordinal, target_lo: &Ordinal) -> IntervalSet {
        IntervalSet {
            ivs: Arc::new(
                self.ivs
                    .iter()
                    .map(|(a, b)| {
                        let da = a.checked_sub(lo).expect("interval inside window");
                        let db = b.checked_sub(lo).expect("interval inside window");
                        (target_lo.add(&da), target_lo.add(&db))
                    })
                    .collect(),
            ),
        }
    }

    /// Validates the representation invariants; test support.
    pub fn check_invariants(&self) -> Result<(), TapeError> {
        for (a, b) in self.ivs.iter() {
            if a >= b {
                return Err(TapeError::BadInterval {
                    lo: a.clone(),
                    hi: b.clone(),
                });
            }
        }
        for w in self.ivs.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(TapeError::BadInterval {
                    lo: w[1].0.clone(),
                    hi: w[1].1.clone(),
                });
            }
        }
        Ok(())
    }
}

/// A pluggable read-only base content for a tape.
pub trait BasePredicate: Send + Sync {
    fn eval(&self, pos: &Ordinal) -> bool;
    /// Stable identifier; two tapes compare equal only if their base ids do.
    fn id(&self) -> String;
    /// Some(bit) when the base is known constant on [lo, hi).
    fn constant_on(&self, _lo: &Ordinal, _hi: &Ordinal) -> Option<bool> {
        None
    }
}

/// The default all-zero base.
#[derive(Debug, Clone, Copy)]
pub struct ZeroBase;

impl BasePredicate for ZeroBase {
    fn eval(&self, _pos: &Ordinal) -> bool {
        false
    }
    fn id(&self) -> String {
        "zero".into()
    }
    fn constant_on(&self, _lo: &Ordinal, _hi: &Ordinal) -> Option<bool> {
        Some(false)
    }
}

/// A finitely described 0/1 function on [0, alpha).
#[derive(Clone)]
pub struct TapeContent {
    alpha: Ordinal,
    base: Arc<dyn BasePredicate>,
    base_id: String,
    ones: IntervalSet,
    zeros: IntervalSet,
    read_only: bool,
}

impl fmt::Debug for TapeContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TapeContent")
            .field("alpha", &self.alpha.to_string())
            .field("base", &self.base_id)
            .field("ones", &self.ones)
            .field("zeros", &self.zeros)
            .field("read_only", &self.read_only)
            .finish()
    }
}

impl PartialEq for TapeContent {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.base_id == other.base_id
            && self.ones == other.ones
            && self.zeros == other.zeros
    }
}

impl Eq for TapeContent {}

impl std::hash::Hash for TapeContent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.alpha.hash(state);
        self.base_id.hash(state);
        self.ones.hash(state);
        self.zeros.hash(state);
    }
}

impl TapeContent {
    /// All-zero tape of length alpha.
    pub fn empty(alpha: Ordinal) -> Self {
        Self::with_base(alpha, Arc::new(ZeroBase))
    }

    pub fn with_base(alpha: Ordinal, base: Arc<dyn BasePredicate>) -> Self {
        let base_id = base.id();
        TapeContent {
            alpha,
            base,
            base_id,
            ones: IntervalSet::new(),
            zeros: IntervalSet::new(),
            read_only: false,
        }
    }

    pub fn alpha(&self) -> &Ordinal {
        &self.alpha
    }

    pub fn base_id(&self) -> &str {
        &self.base_id
    }

    pub fn ones(&self) -> &IntervalSet {
        &self.ones
    }

    pub fn zeros(&self) -> &IntervalSet {
        &self.zeros
    }

    pub fn is_read_only(&self) -> bool {
        self.read_only
    }

    pub fn into_read_only(mut self) -> Self {
        self.read_only = true;
        self
    }

    /// Cell value at pos.
    pub fn read(&self, pos: &Ordinal) -> Result<bool, TapeError> {
        if pos >= &self.alpha {
            return Err(TapeError::OutOfRange {
                pos: pos.clone(),
                alpha: self.alpha.clone(),
            });
        }
        Ok(self.read_unchecked(pos))
    }

    fn read_unchecked(&self, pos: &Ordinal) -> bool {
        if self.ones.contains(pos) {
            true
        } else if self.zeros.contains(pos) {
            false
        } else {
            self.base.eval(pos)
        }
    }

    /// Write a bit at pos, returning the new content. Overlays stay
    /// normalized: a write agreeing with the base clears the overlays at
    /// that cell, so structurally equal contents are pointwise equal.
    pub fn write(&self, pos: &Ordinal, bit: bool) -> Result<TapeContent, TapeError> {
        if self.read_only {
            return Err(TapeError::WriteForbidden);
        }
        if pos >= &self.alpha {
            return Err(TapeError::OutOfRange {
                pos: pos.clone(),
                alpha: self.alpha.clone(),
            });
        }
        let mut out = self.clone();
        out.write_in_place(pos, bit);
        Ok(out)
    }

    pub(crate) fn write_in_place(&mut self, pos: &Ordinal, bit: bool) {
        let next = pos.succ();
        let base_bit = self.base.eval(pos);
        if bit == base_bit {
            self.ones.remove(pos, &next);
            self.zeros.remove(pos, &next);
        } else if bit {
            self.zeros.remove(pos, &next);
            self.ones.insert(pos, &next);
        } else {
            self.ones.remove(pos, &next);
            self.zeros.insert(pos, &next);
        }
    }

    /// Set a whole interval to a fixed bit. Requires the base constant on
    /// the interval, so overlays stay normalized.
    pub fn set_interval(&self, lo: &Ordinal, hi: &Ordinal, bit: bool) -> Result<TapeContent, TapeError> {
        if self.read_only {
            return Err(TapeError::WriteForbidden);
        }
        if hi > &self.alpha {
            return Err(TapeError::OutOfRange {
                pos: hi.clone(),
                alpha: self.alpha.clone(),
            });
        }
        let Some(base_bit) = self.base.constant_on(lo, hi) else {
            return Err(TapeError::NotConstant {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        };
        let mut out = self.clone();
        if bit == base_bit {
            out.ones.remove(lo, hi);
            out.zeros.remove(lo, hi);
        } else if bit {
            out.zeros.remove(lo, hi);
            out.ones.insert(lo, hi);
        } else {
            out.ones.remove(lo, hi);
            out.zeros.insert(lo, hi);
        }
        Ok(out)
    }

    /// Per-cell minimum over a nonempty period of snapshots, computed by
    /// interval algebra: the result reads 1 exactly where every snapshot
    /// reads 1, and defers to the shared base wherever no overlay decides.
    pub fn liminf_period(snapshots: &[TapeContent]) -> Result<TapeContent, TapeError> {
        let first = snapshots
            .first()
            .ok_or_else(|| TapeError::IncompatibleSnapshots("empty period".into()))?;
        for s in snapshots {
            if s.alpha != first.alpha || s.base_id != first.base_id {
                return Err(TapeError::IncompatibleSnapshots(format!(
                    "alpha/base mismatch: ({}, {}) vs ({}, {})",
                    s.alpha, s.base_id, first.alpha, first.base_id
                )));
            }
        }
        let mut ones = first.ones.clone();
        let mut zeros = first.zeros.clone();
        for s in &snapshots[1..] {
            ones = ones.intersect(&s.ones);
            zeros = zeros.union(&s.zeros);
        }
        // a cell in some snapshot's zero overlay reads 0 there, so the
        // minimum is 0; it can never sit in the ones intersection
        debug_assert!(ones.intersect(&zeros).is_empty());
        Ok(TapeContent {
            alpha: first.alpha.clone(),
            base: first.base.clone(),
            base_id: first.base_id.clone(),
            ones,
            zeros,
            read_only: false,
        })
    }

    /// Shift the overlay inside `window` by +d; elsewhere unchanged. The
    /// base must be constant and equal on the window and its image.
    pub fn translate(
        &self,
        window: (&Ordinal, &Ordinal),
        d: &Ordinal,
    ) -> Result<TapeContent, TapeError> {
        let (lo, hi) = window;
        let (tlo, thi) = (lo.add(d), hi.add(d));
        if &thi > &self.alpha || hi > &self.alpha {
            return Err(TapeError::OutOfRange {
                pos: thi,
                alpha: self.alpha.clone(),
            });
        }
        let src = self.base.constant_on(lo, hi);
        let dst = self.base.constant_on(&tlo, &thi);
        match (src, dst) {
            (Some(a), Some(b)) if a == b => {}
            _ => {
                return Err(TapeError::NotConstant {
                    lo: lo.clone(),
                    hi: hi.clone(),
                })
            }
        }
        let window_set = IntervalSet::from_intervals([(lo.clone(), hi.clone())]);
        let mut out = self.clone();
        let moved_ones = out.ones.intersect(&window_set).rebased(lo, &tlo);
        let moved_zeros = out.zeros.intersect(&window_set).rebased(lo, &tlo);
        out.ones.remove(lo, hi);
        out.zeros.remove(lo, hi);
        out.ones.remove(&tlo, &thi);
        out.zeros.remove(&tlo, &thi);
        out.ones = out.ones.union(&moved_ones);
        out.zeros = out.zeros.union(&moved_zeros);
        Ok(out)
    }

    /// Same alpha and base, different overlays. The overlays must be
    /// disjoint; used by the engine to materialize accumulated inferior
    /// limits.
    pub(crate) fn with_overlays(&self, ones: IntervalSet, zeros: IntervalSet) -> TapeContent {
        debug_assert!(ones.intersect(&zeros).is_empty());
        TapeContent {
            alpha: self.alpha.clone(),
            base: self.base.clone(),
            base_id: self.base_id.clone(),
            ones,
            zeros,
            read_only: false,
        }
    }

    /// Some(bit) when the content is provably constant on [lo, hi).
    pub fn constant_on(&self, lo: &Ordinal, hi: &Ordinal) -> Option<bool> {
        if lo >= hi {
            return Some(false);
        }
        let window = IntervalSet::from_intervals([(lo.clone(), hi.clone())]);
        let ones = self.ones.intersect(&window);
        let zeros = self.zeros.intersect(&window);
        if ones == window {
            return Some(true);
        }
        if zeros == window {
            return Some(false);
        }
        match self.base.constant_on(lo, hi) {
            Some(true) if zeros.is_empty() => Some(true),
            Some(false) if ones.is_empty() => Some(false),
            _ => None,
        }
    }

    /// Some(bit) when the underlying base (ignoring overlays) is known
    /// constant on [lo, hi).
    pub fn base_constant_on(&self, lo: &Ordinal, hi: &Ordinal) -> Option<bool> {
        self.base.constant_on(lo, hi)
    }

    /// True when this content restricted to [lo, lo+len) equals `other`
    /// restricted to [lo+shift, lo+shift+len). Decidable only over a base
    /// that is constant across both windows; anything else is a
    /// conservative false.
    pub fn window_equal_translated(
        &self,
        other: &TapeContent,
        lo: &Ordinal,
        len: &Ordinal,
        shift: &Ordinal,
    ) -> bool {
        if self.base_id != other.base_id {
            return false;
        }
        let hi = lo.add(len);
        let tlo = lo.add(shift);
        let thi = tlo.add(len);
        let span_hi = hi.clone().max(thi.clone());
        match (
            self.base.constant_on(lo, &span_hi),
            other.base.constant_on(lo, &span_hi),
        ) {
            (Some(a), Some(b)) if a == b => {}
            _ => return false,
        }
        let win = IntervalSet::from_intervals([(lo.clone(), hi.clone())]);
        let twin = IntervalSet::from_intervals([(tlo.clone(), thi.clone())]);
        self.ones.intersect(&win).rebased(lo, &tlo) == other.ones.intersect(&twin)
            && self.zeros.intersect(&win).rebased(lo, &tlo) == other.zeros.intersect(&twin)
    }

    /// Cells where two contents over the same base provably differ; for
    /// identical bases the overlays decide pointwise values, so this is
    /// the symmetric difference of the overlays.
    pub fn diff_region(&self, other: &TapeContent) -> IntervalSet {
        debug_assert_eq!(self.base_id, other.base_id);
        let ones = self
            .ones
            .subtract(&other.ones)
            .union(&other.ones.subtract(&self.ones));
        let zeros = self
            .zeros
            .subtract(&other.zeros)
            .union(&other.zeros.subtract(&self.zeros));
        ones.union(&zeros)
    }

    /// Serializable snapshot per the trace format.
    pub fn serialize(&self) -> TapeSnapshot {
        TapeSnapshot {
            alpha: self.alpha.clone(),
            base: self.base_id.clone(),
            ones: self
                .ones
                .iter()
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
            zeros: self
                .zeros
                .iter()
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        }
    }
}

/// Cell `j` of sub-tape `i` in the pairing-based partition of a tape.
pub fn partition_cell(i: &Ordinal, j: &Ordinal) -> Ordinal {
    godel_pair(i, j)
}

/// The JSON form of a tape content used in traces and outcome records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TapeSnapshot {
    pub alpha: Ordinal,
    pub base: String,
    pub ones: Vec<(Ordinal, Ordinal)>,
    pub zeros: Vec<(Ordinal, Ordinal)>,
}

/// The standard probe set for tests and differential checks: all cells
/// below 32 plus the omega-boundary cells expressible below alpha.
pub fn standard_probes(alpha: &Ordinal) -> Vec<Ordinal> {
    let mut probes: Vec<Ordinal> = (0u64..32).map(Ordinal::from).collect();
    for lit in ["w", "w+1", "w*2", "w*2+1", "w^2", "w^2+1", "w^3"] {
        let o: Ordinal = lit.parse().expect("probe literal");
        if &o < alpha {
            probes.push(o);
        }
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().expect("test literal")
    }

    #[test]
    fn interval_insert_merges_adjacent() {
        let mut s = IntervalSet::new();
        s.insert(&ord("3"), &ord("4"));
        s.insert(&ord("4"), &ord("5"));
        assert_eq!(s, IntervalSet::from_intervals([(ord("3"), ord("5"))]));
        s.insert(&ord("0"), &ord("1"));
        s.insert(&ord("w"), &ord("w+3"));
        assert!(s.contains(&ord("w+2")));
        assert!(!s.contains(&ord("5")));
        s.check_invariants().unwrap();
    }

    #[test]
    fn interval_remove_splits() {
        let mut s = IntervalSet::from_intervals([(ord("0"), ord("w"))]);
        s.remove(&ord("3"), &ord("5"));
        assert!(s.contains(&ord("2")));
        assert!(!s.contains(&ord("3")));
        assert!(!s.contains(&ord("4")));
        assert!(s.contains(&ord("5")));
        s.check_invariants().unwrap();
    }

    #[test]
    fn set_algebra() {
        let a = IntervalSet::from_intervals([(ord("0"), ord("10")), (ord("w"), ord("w*2"))]);
        let b = IntervalSet::from_intervals([(ord("5"), ord("15")), (ord("w+3"), ord("w+5"))]);
        let i = a.intersect(&b);
        assert_eq!(
            i,
            IntervalSet::from_intervals([(ord("5"), ord("10")), (ord("w+3"), ord("w+5"))])
        );
        let u = a.union(&b);
        assert!(u.contains(&ord("12")));
        let d = a.subtract(&b);
        assert!(d.contains(&ord("4")));
        assert!(!d.contains(&ord("7")));
        assert!(d.contains(&ord("w+5")));
        for s in [&i, &u, &d] {
            s.check_invariants().unwrap();
        }
    }

    #[test]
    fn read_write_roundtrip() {
        let t = TapeContent::empty(ord("w"));
        assert!(!t.read(&ord("5")).unwrap());
        let t2 = t.write(&ord("5"), true).unwrap();
        assert!(t2.read(&ord("5")).unwrap());
        assert!(!t2.read(&ord("4")).unwrap());
        // overwrite restores structural equality with the original
        let t3 = t2.write(&ord("5"), false).unwrap();
        assert_eq!(t3, t);
        // writes at 3 and 4 coalesce
        let t4 = t.write(&ord("3"), true).unwrap().write(&ord("4"), true).unwrap();
        assert_eq!(t4.ones(), &IntervalSet::from_intervals([(ord("3"), ord("5"))]));
        assert!(t4.zeros().is_empty());
    }

    #[test]
    fn out_of_range_and_read_only() {
        let t = TapeContent::empty(ord("w"));
        assert!(matches!(t.read(&ord("w")), Err(TapeError::OutOfRange { .. })));
        assert!(matches!(
            t.write(&ord("w*2"), true),
            Err(TapeError::OutOfRange { .. })
        ));
        let ro = t.into_read_only();
        assert!(matches!(
            ro.write(&ord("1"), true),
            Err(TapeError::WriteForbidden)
        ));
    }

    #[test]
    fn liminf_period_examples() {
        let alpha = ord("w");
        let all = TapeContent::empty(alpha.clone())
            .set_interval(&ord("0"), &ord("w"), true)
            .unwrap();
        let some = TapeContent::empty(alpha.clone())
            .set_interval(&ord("0"), &ord("5"), true)
            .unwrap();
        // constant period is the identity
        let l = TapeContent::liminf_period(&[all.clone()]).unwrap();
        assert_eq!(l, all);
        // min of the period
        let l = TapeContent::liminf_period(&[all.clone(), some.clone()]).unwrap();
        assert_eq!(l, some);
        // oscillating cell reads 0 at the limit
        let t0 = TapeContent::empty(alpha.clone()).write(&ord("2"), true).unwrap();
        let t1 = TapeContent::empty(alpha.clone());
        let l = TapeContent::liminf_period(&[t0.clone(), t1, t0]).unwrap();
        assert!(!l.read(&ord("2")).unwrap());
        // mismatched alphas are rejected
        assert!(TapeContent::liminf_period(&[all, TapeContent::empty(ord("w^2"))]).is_err());
    }

    #[test]
    fn translate_examples() {
        let t = TapeContent::empty(ord("w^2"))
            .set_interval(&ord("0"), &ord("3"), true)
            .unwrap();
        let moved = t.translate((&ord("0"), &ord("3")), &ord("w")).unwrap();
        assert!(!moved.read(&ord("0")).unwrap());
        assert!(moved.read(&ord("w")).unwrap());
        assert!(moved.read(&ord("w+2")).unwrap());
        assert!(!moved.read(&ord("w+3")).unwrap());
        // translating an empty tape does nothing
        let e = TapeContent::empty(ord("w^2"));
        let moved = e.translate((&ord("0"), &ord("5")), &ord("7")).unwrap();
        assert_eq!(moved, e);
    }

    #[test]
    fn translate_composes_over_nested_windows() {
        // translate by d1 then d2 equals translate by d1+d2 on probes
        let t = TapeContent::empty(ord("w^3"))
            .write(&ord("1"), true)
            .unwrap()
            .write(&ord("2"), true)
            .unwrap();
        let d1 = ord("w");
        let d2 = ord("w^2");
        let a = t
            .translate((&ord("0"), &ord("5")), &d1)
            .unwrap()
            .translate((&ord("w"), &ord("w+5")), &d2)
            .unwrap();
        let b = t.translate((&ord("0"), &ord("5")), &d1.add(&d2)).unwrap();
        for p in standard_probes(&ord("w^3")) {
            assert_eq!(a.read(&p).unwrap(), b.read(&p).unwrap(), "probe {p}");
        }
    }

    #[test]
    fn partition_cell_matches_pairing() {
        assert_eq!(partition_cell(&ord("0"), &ord("0")), ord("0"));
        assert_eq!(partition_cell(&ord("1"), &ord("1")), ord("3"));
        assert_eq!(partition_cell(&ord("0"), &ord("w")), ord("w"));
    }
}
