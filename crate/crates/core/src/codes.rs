//! Alpha-codes: subsets of alpha read as binary relations via Goedel
//! pairing. A valid code is well-founded and extensional (on the part
//! below field 0) and decodes to the image of 0 in the transitive
//! collapse; only ordinal-valued collapses are accepted.
//!
//! The canonical code of gamma puts gamma at field 0 and beta at field
//! 1+beta for beta < gamma, with the membership predicate evaluated
//! analytically from the pairing inverse. Canonical codes of infinite
//! ordinals are first-class as input-tape base predicates.

use crate::ordinal::{godel_pair, godel_unpair, Ordinal};
use crate::tape::{BasePredicate, IntervalSet, TapeContent};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("gamma must be below alpha")]
    GammaNotBelowAlpha,
    #[error("alpha must be infinite and multiplicatively closed")]
    AlphaNotMultClosed,
    #[error("malformed code file: {0}")]
    Malformed(String),
}

/// A subset of alpha encoding a binary relation `a E b` at the cells
/// `godel_pair(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaCode {
    Canonical {
        canonical: Ordinal,
        alpha: Ordinal,
    },
    Finite {
        alpha: Ordinal,
        /// Pairs (a, b) meaning a E b.
        pairs: BTreeSet<(Ordinal, Ordinal)>,
    },
}

/// Exploration budget for decoding and validation. Budgets are explicit;
/// exceeding them yields Unknown, never a silent wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBudget {
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Allow the analytic fast path for canonical codes.
    pub allow_fast_path: bool,
}

impl Default for CodeBudget {
    fn default() -> Self {
        CodeBudget {
            max_nodes: 10_000,
            max_edges: 100_000,
            allow_fast_path: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DecodeOutcome {
    Ordinal { value: Ordinal },
    NotOrdinal { reason: String },
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Validity {
    Valid,
    Invalid { reason: String },
    Unknown { reason: String },
}

/// The canonical code of `gamma` as a subset of `alpha`: field 0 denotes
/// gamma, field 1+beta denotes beta for beta < gamma; E relates smaller
/// denotations to larger ones and every 1+beta to 0.
///
/// Multiplicatively closed alphas accept every gamma below them. Other
/// infinite powers of w are accepted when the code's largest cell still
/// fits below alpha.
pub fn canonical_code(gamma: &Ordinal, alpha: &Ordinal) -> Result<AlphaCode, CodeError> {
    if gamma >= alpha {
        return Err(CodeError::GammaNotBelowAlpha);
    }
    if !alpha.is_mult_closed() {
        if !alpha.is_additively_closed() {
            return Err(CodeError::AlphaNotMultClosed);
        }
        let max_field = AlphaCode::canonical_field(gamma);
        if &godel_pair(&max_field, &max_field) >= alpha {
            return Err(CodeError::AlphaNotMultClosed);
        }
    }
    Ok(AlphaCode::Canonical {
        canonical: gamma.clone(),
        alpha: alpha.clone(),
    })
}

impl AlphaCode {
    pub fn alpha(&self) -> &Ordinal {
        match self {
            AlphaCode::Canonical { alpha, .. } => alpha,
            AlphaCode::Finite { alpha, .. } => alpha,
        }
    }

    /// The field denoted by 1+beta (1+beta = beta for infinite beta).
    fn canonical_field(beta: &Ordinal) -> Ordinal {
        Ordinal::one().add(beta)
    }

    fn canonical_field_denotes(field: &Ordinal) -> Option<Ordinal> {
        // inverse of beta -> 1+beta
        if field.is_zero() {
            None
        } else if field.is_finite() {
            field.checked_sub(&Ordinal::one())
        } else {
            Some(field.clone())
        }
    }

    /// Does `a E b` hold?
    pub fn relates(&self, a: &Ordinal, b: &Ordinal) -> bool {
        match self {
            AlphaCode::Finite { pairs, .. } => pairs.contains(&(a.clone(), b.clone())),
            AlphaCode::Canonical { canonical, .. } => {
                let Some(den_a) = Self::canonical_field_denotes(a) else {
                    return false;
                };
                if &den_a >= canonical {
                    return false;
                }
                if b.is_zero() {
                    return true;
                }
                match Self::canonical_field_denotes(b) {
                    Some(den_b) => den_b < *canonical && den_a < den_b,
                    None => false,
                }
            }
        }
    }

    /// Membership of the coded subset of alpha at a cell position.
    pub fn member(&self, pos: &Ordinal) -> bool {
        let (a, b) = godel_unpair(pos);
        self.relates(&a, &b)
    }

    /// The cells of a finite code, for building input-tape overlays.
    pub fn support(&self) -> Option<Vec<Ordinal>> {
        match self {
            AlphaCode::Finite { pairs, .. } => {
                Some(pairs.iter().map(|(a, b)| godel_pair(a, b)).collect())
            }
            AlphaCode::Canonical { canonical, alpha } => {
                // enumerable only for finite gamma
                let n = canonical.as_usize()?;
                let mut cells = Vec::new();
                for b in 0..n {
                    let fb = Self::canonical_field(&Ordinal::from(b));
                    cells.push(godel_pair(&fb, &Ordinal::zero()));
                    for b2 in (b + 1)..n {
                        let fb2 = Self::canonical_field(&Ordinal::from(b2));
                        cells.push(godel_pair(&fb, &fb2));
                    }
                }
                let _ = alpha;
                Some(cells)
            }
        }
    }

    /// Realize the code as an input tape content: finite codes become
    /// overlays over the zero base, canonical codes become base predicates.
    pub fn to_input_tape(&self) -> TapeContent {
        match self.support() {
            Some(cells) => {
                let mut ones = IntervalSet::new();
                for c in &cells {
                    ones.insert(c, &c.succ());
                }
                let mut t = TapeContent::empty(self.alpha().clone());
                for (lo, hi) in ones.iter() {
                    t = t.set_interval(lo, hi, true).expect("finite support");
                }
                t.into_read_only()
            }
            None => TapeContent::with_base(
                self.alpha().clone(),
                Arc::new(CodeBase { code: self.clone() }),
            )
            .into_read_only(),
        }
    }

    /// E-predecessors of a field, when they are enumerable within a scan
    /// bound. Finite codes enumerate their pairs; canonical codes scan
    /// denotations below gamma (bounded).
    fn predecessors(&self, field: &Ordinal, scan: usize) -> Result<Vec<Ordinal>, usize> {
        match self {
            AlphaCode::Finite { pairs, .. } => Ok(pairs
                .iter()
                .filter(|(_, b)| b == field)
                .map(|(a, _)| a.clone())
                .collect()),
            AlphaCode::Canonical { canonical, .. } => {
                // predecessors of 0 are all fields 1+beta, beta < gamma;
                // predecessors of 1+beta are 1+beta' for beta' < beta
                let bound = if field.is_zero() {
                    canonical.clone()
                } else {
                    match Self::canonical_field_denotes(field) {
                        Some(b) if &b <= canonical => b,
                        _ => return Ok(Vec::new()),
                    }
                };
                match bound.as_usize() {
                    Some(n) if n <= scan => Ok((0..n)
                        .map(|b| Self::canonical_field(&Ordinal::from(b)))
                        .collect()),
                    _ => Err(scan), // infinitely many (or beyond scan) predecessors
                }
            }
        }
    }
}

/// Canonical codes with infinite support as tape base predicates.
struct CodeBase {
    code: AlphaCode,
}

impl BasePredicate for CodeBase {
    fn eval(&self, pos: &Ordinal) -> bool {
        self.code.member(pos)
    }
    fn id(&self) -> String {
        match &self.code {
            AlphaCode::Canonical { canonical, alpha } => {
                format!("code:canonical:{canonical}@{alpha}")
            }
            AlphaCode::Finite { .. } => "code:finite".into(),
        }
    }
}

/// Decode the image of 0 in the transitive collapse.
pub fn decode(code: &AlphaCode, budget: &CodeBudget) -> DecodeOutcome {
    if budget.allow_fast_path {
        if let AlphaCode::Canonical { canonical, .. } = code {
            return DecodeOutcome::Ordinal {
                value: canonical.clone(),
            };
        }
    }
    let explored = match explore(code, budget) {
        Ok(e) => e,
        Err(reason) => return DecodeOutcome::Unknown { reason },
    };
    if let Some(witness) = &explored.cycle {
        return DecodeOutcome::NotOrdinal {
            reason: format!("relation is ill-founded at field {witness}"),
        };
    }
    if let Some((a, b)) = &explored.extensionality {
        return DecodeOutcome::NotOrdinal {
            reason: format!("fields {a} and {b} have equal predecessor sets"),
        };
    }
    // collapse bottom-up: a field is an ordinal n iff its predecessors
    // collapse to exactly {0, ..., n-1}
    let mut rank: BTreeMap<Ordinal, Option<u64>> = BTreeMap::new();
    for field in &explored.collapse_order {
        let preds = &explored.preds[field];
        let mut values = BTreeSet::new();
        let mut ordinal = true;
        for p in preds {
            match rank[p] {
                Some(v) => {
                    values.insert(v);
                }
                None => ordinal = false,
            }
        }
        let n = values.len() as u64;
        let is_initial = ordinal && values.iter().copied().eq(0..n);
        rank.insert(field.clone(), if is_initial { Some(n) } else { None });
    }
    match rank[&Ordinal::zero()] {
        Some(n) => DecodeOutcome::Ordinal {
            value: Ordinal::from(n),
        },
        None => DecodeOutcome::NotOrdinal {
            reason: "the image of 0 does not collapse to an ordinal".into(),
        },
    }
}

/// Bounded well-foundedness and extensionality checking on the part of the
/// relation below field 0. Canonical codes are valid by construction.
pub fn validate(code: &AlphaCode, budget: &CodeBudget) -> Validity {
    if budget.allow_fast_path {
        if let AlphaCode::Canonical { .. } = code {
            return Validity::Valid;
        }
    }
    let explored = match explore(code, budget) {
        Ok(e) => e,
        Err(reason) => return Validity::Unknown { reason },
    };
    if let Some(witness) = explored.cycle {
        return Validity::Invalid {
            reason: format!("ill-founded: cycle through field {witness}"),
        };
    }
    if let Some((a, b)) = explored.extensionality {
        return Validity::Invalid {
            reason: format!("extensionality fails: fields {a} and {b} have equal predecessors"),
        };
    }
    Validity::Valid
}

struct Explored {
    preds: BTreeMap<Ordinal, Vec<Ordinal>>,
    /// Fields ordered so predecessors precede their dependents.
    collapse_order: Vec<Ordinal>,
    cycle: Option<Ordinal>,
    extensionality: Option<(Ordinal, Ordinal)>,
}

/// Walk the relation downward from field 0, within budget.
fn explore(code: &AlphaCode, budget: &CodeBudget) -> Result<Explored, String> {
    let mut preds: BTreeMap<Ordinal, Vec<Ordinal>> = BTreeMap::new();
    let mut queue = VecDeque::from([Ordinal::zero()]);
    let mut edges = 0usize;
    while let Some(field) = queue.pop_front() {
        if preds.contains_key(&field) {
            continue;
        }
        if preds.len() >= budget.max_nodes {
            return Err(format!("node budget {} exhausted", budget.max_nodes));
        }
        let ps = code
            .predecessors(&field, budget.max_nodes)
            .map_err(|_| format!("field {field} has more predecessors than the budget"))?;
        edges += ps.len();
        if edges > budget.max_edges {
            return Err(format!("edge budget {} exhausted", budget.max_edges));
        }
        for p in &ps {
            if !preds.contains_key(p) {
                queue.push_back(p.clone());
            }
        }
        preds.insert(field, ps);
    }

    // Kahn's algorithm on the explored graph (edges p -> f for p E f);
    // leftovers witness a cycle
    let mut out_deg: BTreeMap<&Ordinal, usize> = BTreeMap::new();
    let mut dependents: BTreeMap<&Ordinal, Vec<&Ordinal>> = BTreeMap::new();
    for (f, ps) in &preds {
        out_deg.insert(f, ps.len());
        for p in ps {
            dependents.entry(p).or_default().push(f);
        }
    }
    let mut ready: VecDeque<&Ordinal> = out_deg
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(f, _)| *f)
        .collect();
    let mut collapse_order: Vec<Ordinal> = Vec::with_capacity(preds.len());
    while let Some(f) = ready.pop_front() {
        collapse_order.push(f.clone());
        if let Some(deps) = dependents.get(f) {
            for d in deps {
                let deg = out_deg.get_mut(d).expect("known");
                *deg -= 1;
                if *deg == 0 {
                    ready.push_back(d);
                }
            }
        }
    }
    let cycle = if collapse_order.len() < preds.len() {
        out_deg
            .iter()
            .find(|(_, d)| **d > 0)
            .map(|(f, _)| (*f).clone())
    } else {
        None
    };

    // extensionality on the explored fields: equal predecessor sets
    let mut extensionality = None;
    if cycle.is_none() {
        let mut seen: BTreeMap<Vec<Ordinal>, Ordinal> = BTreeMap::new();
        for (f, ps) in &preds {
            let mut key = ps.clone();
            key.sort();
            key.dedup();
            if let Some(other) = seen.get(&key) {
                extensionality = Some((other.clone(), f.clone()));
                break;
            }
            seen.insert(key, f.clone());
        }
    }

    Ok(Explored {
        preds,
        collapse_order,
        cycle,
        extensionality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().expect("test literal")
    }

    fn finite(pairs: &[(&str, &str)]) -> AlphaCode {
        AlphaCode::Finite {
            alpha: ord("w"),
            pairs: pairs
                .iter()
                .map(|(a, b)| (ord(a), ord(b)))
                .collect(),
        }
    }

    #[test]
    fn canonical_code_of_zero_is_empty() {
        let c = canonical_code(&ord("0"), &ord("w")).unwrap();
        for p in 0..50u64 {
            assert!(!c.member(&Ordinal::from(p)));
        }
        assert_eq!(
            decode(&c, &CodeBudget::default()),
            DecodeOutcome::Ordinal { value: ord("0") }
        );
    }

    #[test]
    fn canonical_code_of_two_has_exactly_the_documented_cells() {
        // fields: 0 -> 2, 1 -> 0, 2 -> 1; edges (1,0), (2,0), (1,2)
        let c = canonical_code(&ord("2"), &ord("w")).unwrap();
        let expected: BTreeSet<Ordinal> = [
            godel_pair(&ord("1"), &ord("0")),
            godel_pair(&ord("2"), &ord("0")),
            godel_pair(&ord("1"), &ord("2")),
        ]
        .into_iter()
        .collect();
        for p in 0..200u64 {
            let pos = Ordinal::from(p);
            assert_eq!(c.member(&pos), expected.contains(&pos), "cell {p}");
        }
    }

    #[test]
    fn canonical_code_of_omega_has_infinite_support() {
        let c = canonical_code(&ord("w"), &ord("w^(w)")).unwrap();
        for n in 0..20u64 {
            let field = Ordinal::from(n + 1);
            assert!(c.member(&godel_pair(&field, &ord("0"))), "field {}", n + 1);
        }
        // decoding without the fast path hits the budget
        let strict = CodeBudget {
            allow_fast_path: false,
            ..CodeBudget::default()
        };
        assert!(matches!(decode(&c, &strict), DecodeOutcome::Unknown { .. }));
        // the analytic fast path answers
        assert_eq!(
            decode(&c, &CodeBudget::default()),
            DecodeOutcome::Ordinal { value: ord("w") }
        );
    }

    #[test]
    fn decode_matches_fast_path_for_small_gammas() {
        let strict = CodeBudget {
            allow_fast_path: false,
            ..CodeBudget::default()
        };
        for gamma in 0..12u64 {
            let g = Ordinal::from(gamma);
            let c = canonical_code(&g, &ord("w")).unwrap();
            assert_eq!(
                decode(&c, &strict),
                DecodeOutcome::Ordinal { value: g.clone() },
                "gamma {gamma}"
            );
            assert_eq!(validate(&c, &strict), Validity::Valid);
        }
    }

    #[test]
    fn two_cycle_is_not_an_ordinal() {
        let c = finite(&[("3", "0"), ("4", "3"), ("3", "4")]);
        assert!(matches!(
            decode(&c, &CodeBudget::default()),
            DecodeOutcome::NotOrdinal { .. }
        ));
        assert!(matches!(
            validate(&c, &CodeBudget::default()),
            Validity::Invalid { .. }
        ));
    }

    #[test]
    fn duplicate_empty_fields_fail_extensionality() {
        let c = finite(&[("3", "0"), ("4", "0")]);
        let v = validate(&c, &CodeBudget::default());
        match v {
            Validity::Invalid { reason } => assert!(reason.contains("extensionality")),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let mut pairs = Vec::new();
        // long chain below 0, beyond a small node budget
        for i in 0..50u64 {
            pairs.push((Ordinal::from(i + 1), Ordinal::from(i)));
        }
        let c = AlphaCode::Finite {
            alpha: ord("w"),
            pairs: pairs.into_iter().collect(),
        };
        let tiny = CodeBudget {
            max_nodes: 10,
            max_edges: 1000,
            allow_fast_path: false,
        };
        assert!(matches!(validate(&c, &tiny), Validity::Unknown { .. }));
        assert!(matches!(decode(&c, &tiny), DecodeOutcome::Unknown { .. }));
    }

    #[test]
    fn non_initial_collapse_is_not_ordinal() {
        // field 0 has exactly one predecessor, whose own collapse is 1
        // (not 0), so the image of 0 is {1}, not an ordinal
        let c = finite(&[("5", "0"), ("6", "5")]);
        // preds(0) = {5}, preds(5) = {6}, preds(6) = {}: collapse(6) = 0,
        // collapse(5) = 1, image of 0 = {1}: not downward closed
        assert!(matches!(
            decode(&c, &CodeBudget::default()),
            DecodeOutcome::NotOrdinal { .. }
        ));
    }

    #[test]
    fn preconditions_checked() {
        assert!(canonical_code(&ord("w"), &ord("w")).is_err());
        // additively closed alphas accept codes whose cells fit
        assert!(canonical_code(&ord("3"), &ord("w^2")).is_ok());
        assert!(canonical_code(&ord("w"), &ord("w^2")).is_ok());
        // ... and reject codes that would spill past alpha
        assert!(canonical_code(&ord("w^2"), &ord("w^3")).is_err());
        // non-additively-closed tape lengths are never code carriers
        assert!(canonical_code(&ord("3"), &ord("w+1")).is_err());
        assert!(canonical_code(&ord("3"), &ord("w^2*2")).is_err());
    }

    #[test]
    fn serialization_forms() {
        let c = canonical_code(&ord("5"), &ord("w")).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"canonical":"5","alpha":"w"}"#);
        let back: AlphaCode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let f = finite(&[("1", "0")]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"alpha":"w","pairs":[["1","0"]]}"#);
        let back: AlphaCode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn input_tape_realization() {
        let c = canonical_code(&ord("3"), &ord("w")).unwrap();
        let tape = c.to_input_tape();
        assert!(tape.is_read_only());
        assert!(tape.read(&godel_pair(&ord("1"), &ord("0"))).unwrap());
        assert!(!tape.read(&ord("0")).unwrap());
        // infinite canonical codes read through the base predicate
        let c = canonical_code(&ord("w"), &ord("w^(w)")).unwrap();
        let tape = c.to_input_tape();
        assert!(tape.read(&godel_pair(&ord("7"), &ord("0"))).unwrap());
        assert!(!tape.read(&godel_pair(&ord("0"), &ord("7"))).unwrap());
    }
}
