//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line and enforcing its time budget. Run with `cargo test --test
//! acceptance` (add `-- --nocapture` to see the lines).

use ittm_core::asm::catalog;
use ittm_core::codes::{self, canonical_code, CodeBudget};
use ittm_core::engine::{run, EngineOptions, RunOutcome, RunSpec};
use ittm_core::machine::{successor_step, Configuration, Move, Program, StateConvention, Transition};
use ittm_core::ordinal::{godel_pair, godel_unpair, GodelPairs, Ordinal};
use ittm_core::tape::{standard_probes, TapeContent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn ord(s: &str) -> Ordinal {
    s.parse().expect("literal")
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {criterion}: over time budget ({elapsed:?} > {budget:?})"
    );
    println!("criterion {criterion}: PASS ({elapsed:?})");
}

// ---------------------------------------------------------------------
// criterion 1: ordinal arithmetic agrees with the triple-encoding oracle
// ---------------------------------------------------------------------

/// Ordinals below w^3 as integer triples (i, j, k) -> w^2*i + w*j + k, with
/// the reference arithmetic derived directly from the definitions.
mod triple_oracle {
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Triple(pub u64, pub u64, pub u64);

    pub fn compare(a: Triple, b: Triple) -> std::cmp::Ordering {
        (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2))
    }

    pub fn add(a: Triple, b: Triple) -> Triple {
        if b.0 > 0 {
            Triple(a.0 + b.0, b.1, b.2)
        } else if b.1 > 0 {
            Triple(a.0, a.1 + b.1, b.2)
        } else {
            Triple(a.0, a.1, a.2 + b.2)
        }
    }

    /// Products may leave w^3; results are 5-tuples of coefficients for
    /// w^4, w^3, w^2, w, 1.
    pub fn mul(a: Triple, b: Triple) -> [u64; 5] {
        let mut out = [0u64; 5];
        if a == Triple(0, 0, 0) || b == Triple(0, 0, 0) {
            return out;
        }
        // leading exponent and coefficient of a, and its tail terms
        let (lead, coeff) = if a.0 > 0 {
            (2, a.0)
        } else if a.1 > 0 {
            (1, a.1)
        } else {
            (0, a.2)
        };
        if b.0 > 0 {
            out[4 - (lead + 2)] += b.0;
        }
        if b.1 > 0 {
            out[4 - (lead + 1)] += b.1;
        }
        if b.2 > 0 {
            out[4 - lead] += coeff * b.2;
            // the tail of a survives a finite right factor
            match lead {
                2 => {
                    out[3] = a.1;
                    out[4] = a.2;
                }
                1 => {
                    out[4] = a.2;
                }
                _ => {}
            }
        }
        out
    }

    #[derive(Debug)]
    pub enum Class {
        Zero,
        Successor(Triple),
        Limit,
    }

    pub fn classify(a: Triple) -> Class {
        if a == Triple(0, 0, 0) {
            Class::Zero
        } else if a.2 > 0 {
            Class::Successor(Triple(a.0, a.1, a.2 - 1))
        } else {
            Class::Limit
        }
    }
}

fn encode_triple(t: triple_oracle::Triple) -> Ordinal {
    let w2 = ord("w^2");
    let w = ord("w");
    w2.mul(&Ordinal::from(t.0))
        .add(&w.mul(&Ordinal::from(t.1)))
        .add(&Ordinal::from(t.2))
}

fn encode_five(c: [u64; 5]) -> Ordinal {
    let mut acc = Ordinal::zero();
    for (i, coeff) in c.iter().enumerate() {
        let exp = Ordinal::from((4 - i) as u64);
        acc = acc.add(&Ordinal::omega_pow(&exp).mul(&Ordinal::from(*coeff)));
    }
    acc
}

#[test]
fn acceptance_01_ordinal_arithmetic_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x17b1);
    for _ in 0..100_000 {
        let a = triple_oracle::Triple(rng.gen_range(0..20), rng.gen_range(0..20), rng.gen_range(0..20));
        let b = triple_oracle::Triple(rng.gen_range(0..20), rng.gen_range(0..20), rng.gen_range(0..20));
        let (ea, eb) = (encode_triple(a), encode_triple(b));
        assert_eq!(ea.cmp(&eb), triple_oracle::compare(a, b), "compare {a:?} {b:?}");
        assert_eq!(
            ea.add(&eb),
            encode_triple(triple_oracle::add(a, b)),
            "add {a:?} {b:?}"
        );
        assert_eq!(
            ea.mul(&eb),
            encode_five(triple_oracle::mul(a, b)),
            "mul {a:?} {b:?}"
        );
        match (ea.classify(), triple_oracle::classify(a)) {
            (ittm_core::ordinal::OrdinalClass::Zero, triple_oracle::Class::Zero) => {}
            (ittm_core::ordinal::OrdinalClass::Limit, triple_oracle::Class::Limit) => {}
            (ittm_core::ordinal::OrdinalClass::Successor(p), triple_oracle::Class::Successor(q)) => {
                assert_eq!(p, encode_triple(q), "pred {a:?}")
            }
            other => panic!("classification mismatch for {a:?}: {other:?}"),
        }
    }
    finish("1 (ordinal arithmetic oracle equivalence)", start, Duration::from_secs(10));
}

// ---------------------------------------------------------------------
// criterion 2: pairing vs the enumeration oracle, plus closure
// ---------------------------------------------------------------------

#[test]
fn acceptance_02_godel_pairing_oracle_and_closure() {
    let start = Instant::now();
    for (rank, (b, c)) in GodelPairs::new().take(10_000).enumerate() {
        let (b, c) = (Ordinal::from(b), Ordinal::from(c));
        let r = Ordinal::from(rank as u64);
        assert_eq!(godel_pair(&b, &c), r, "rank {rank}");
        assert_eq!(godel_unpair(&r), (b, c), "unpair {rank}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x90de1);
    let omega = ord("w");
    for _ in 0..1_000 {
        let b = Ordinal::from(rng.gen_range(0u64..1_000_000));
        let c = Ordinal::from(rng.gen_range(0u64..1_000_000));
        assert!(godel_pair(&b, &c) < omega, "closure below w");
    }
    let alpha = ord("w^(w)");
    for _ in 0..1_000 {
        // random notations below w^(w): finite exponents
        let mk = |rng: &mut ChaCha8Rng| {
            let e1 = rng.gen_range(1u64..9);
            let e2 = rng.gen_range(0..e1);
            Ordinal::from_terms(vec![
                (Ordinal::from(e1), rng.gen_range(1u64..9).into()),
                (Ordinal::from(e2), rng.gen_range(1u64..9).into()),
            ])
            .unwrap()
        };
        let b = mk(&mut rng);
        let c = mk(&mut rng);
        assert!(b < alpha && c < alpha);
        assert!(godel_pair(&b, &c) < alpha, "closure below w^(w): {b}, {c}");
    }
    finish("2 (Goedel pairing oracle and closure)", start, Duration::from_secs(10));
}

// ---------------------------------------------------------------------
// criterion 3: successor semantics head-reset suite
// ---------------------------------------------------------------------

/// A 3-tape table whose single step applies `mv` to the output head.
fn one_step_mover(mv: Move) -> Program {
    let row = |next: u32, moves: Vec<Move>| -> Vec<Transition> {
        (0..8u32)
            .map(|mask| Transition {
                next,
                write: mask,
                moves: moves.clone(),
            })
            .collect()
    };
    Program {
        tape_count: 3,
        halt_state: 1,
        limit_state: 2,
        uses_onlimit: false,
        rows: vec![
            row(1, vec![Move::S, Move::S, mv]),
            Vec::new(),
            row(2, vec![Move::S, Move::S, Move::S]),
        ],
    }
}

#[test]
fn acceptance_03_successor_head_reset_suite() {
    let start = Instant::now();
    let cases = [
        ("w", "w^2", "0"),      // left from a limit position resets to 0
        ("w^2+1", "w^(w)", "w^2"), // left from a successor steps back
        ("0", "w", "0"),        // left from 0 stays at 0
        ("5", "w", "4"),
        ("w*2", "w^(w)", "0"),
    ];
    let prog = one_step_mover(Move::L);
    for (from, alpha, expect) in cases {
        let tapes = vec![
            TapeContent::empty(ord(alpha)).into_read_only(),
            TapeContent::empty(ord(alpha)),
            TapeContent::empty(ord(alpha)),
        ];
        let mut cfg = Configuration::initial(&prog, tapes).unwrap();
        cfg.heads[2] = ord(from);
        let next = successor_step(&cfg, &prog);
        assert_eq!(next.heads[2], ord(expect), "left from {from} on alpha {alpha}");
    }
    finish("3 (successor head-reset suite)", start, Duration::from_secs(1));
}

// ---------------------------------------------------------------------
// criterion 4: limit semantics liminf suite
// ---------------------------------------------------------------------

#[test]
fn acceptance_04_limit_liminf_suite() {
    let start = Instant::now();
    use ittm_core::machine::{limit_snapshot, summarize_heads, HeadPeriodSummary};
    let prog = one_step_mover(Move::S);
    let mk_cfg = |alpha: &str, cell2: bool| {
        let mut work = TapeContent::empty(ord(alpha));
        if cell2 {
            work = work.write(&ord("2"), true).unwrap();
        }
        let tapes = vec![
            TapeContent::empty(ord(alpha)).into_read_only(),
            work,
            TapeContent::empty(ord(alpha)),
        ];
        Configuration::initial(&prog, tapes).unwrap()
    };
    // oscillating cell reads 0 at the limit; constant cell keeps its value
    let period = vec![mk_cfg("w", true), mk_cfg("w", false)];
    let lim = limit_snapshot(
        &period,
        &summarize_heads(&period),
        StateConvention::Distinguished,
        &prog,
        ord("w"),
    )
    .unwrap();
    assert!(!lim.tapes[1].read(&ord("2")).unwrap(), "oscillation -> 0");
    let period = vec![mk_cfg("w", true)];
    let lim = limit_snapshot(
        &period,
        &summarize_heads(&period),
        StateConvention::Distinguished,
        &prog,
        ord("w"),
    )
    .unwrap();
    assert!(lim.tapes[1].read(&ord("2")).unwrap(), "constant -> kept");
    // drifting head: reset at alpha, landing below alpha otherwise
    for (alpha, expect) in [("w", "0"), ("w^2", "w")] {
        let period = vec![mk_cfg(alpha, false)];
        let summaries = vec![
            HeadPeriodSummary::Fixed(ord("0")),
            HeadPeriodSummary::Fixed(ord("0")),
            HeadPeriodSummary::Drifting {
                start: ord("0"),
                sup: ord("w"),
            },
        ];
        let lim = limit_snapshot(
            &period,
            &summaries,
            StateConvention::Distinguished,
            &prog,
            ord("w"),
        )
        .unwrap();
        assert_eq!(lim.heads[2], ord(expect), "drift on alpha {alpha}");
    }
    finish("4 (limit liminf suite)", start, Duration::from_secs(1));
}

// ---------------------------------------------------------------------
// criterion 5: acceleration vs stabilized step simulation
// ---------------------------------------------------------------------

/// Standard test input for each catalog entry.
fn standard_input(name: &str, alpha: &Ordinal) -> TapeContent {
    match name {
        "mult_position" => TapeContent::empty(alpha.clone())
            .write(&ord("2"), true)
            .unwrap()
            .write(&ord("3"), true)
            .unwrap(),
        "count_through_code" => canonical_code(&ord("3"), alpha).unwrap().to_input_tape(),
        _ => TapeContent::empty(alpha.clone()),
    }
}

fn catalog_suite() -> Vec<(&'static str, Vec<i64>)> {
    vec![
        ("move_right", vec![3]),
        ("sweep_fill", vec![]),
        ("reach_limit", vec![]),
        ("reach_limit_times", vec![2]),
        ("mult_position", vec![]),
        ("count_through_code", vec![]),
        ("busy_loop", vec![]),
    ]
}

#[test]
fn acceptance_05_acceleration_differential() {
    let start = Instant::now();
    for alpha_lit in ["w", "w^2", "w^(w)"] {
        let alpha = ord(alpha_lit);
        let probes = standard_probes(&alpha);
        for (name, args) in catalog_suite() {
            let prog = catalog(name, &args).unwrap().program.assemble().unwrap();
            let input = standard_input(name, &alpha);
            // accelerated run probing time w
            let spec = RunSpec {
                program: prog.clone(),
                alpha: alpha.clone(),
                input: input.clone(),
                param: None,
                options: EngineOptions {
                    probe_times: vec![ord("w")],
                    ..EngineOptions::default()
                },
            };
            let (fast_outcome, fast_trace) = run(&spec).unwrap();
            // plain stepping with stability detection
            let mut cfg = {
                let mut tapes = vec![input.clone().into_read_only()];
                for _ in 1..prog.tape_count {
                    tapes.push(TapeContent::empty(alpha.clone()));
                }
                Configuration::initial(&prog, tapes).unwrap()
            };
            let mut halted_at: Option<Configuration> = None;
            let mut stable_for = 0usize;
            let mut last_obs: Option<Vec<Vec<bool>>> = None;
            let mut max_heads: Vec<Ordinal> = vec![Ordinal::zero(); prog.tape_count];
            let mut recent_heads: std::collections::VecDeque<Vec<Ordinal>> =
                std::collections::VecDeque::new();
            for _ in 0..20_000 {
                if cfg.state == prog.halt_state {
                    halted_at = Some(cfg.clone());
                    break;
                }
                // cell values drive stability; drifting heads never
                // stabilize and are analyzed from their recent window
                let obs: Vec<Vec<bool>> = cfg
                    .tapes
                    .iter()
                    .map(|t| probes.iter().map(|p| t.read(p).unwrap()).collect())
                    .collect();
                if last_obs.as_ref() == Some(&obs) {
                    stable_for += 1;
                } else {
                    stable_for = 0;
                    last_obs = Some(obs);
                }
                for (m, h) in max_heads.iter_mut().zip(&cfg.heads) {
                    if h > m {
                        *m = h.clone();
                    }
                }
                recent_heads.push_back(cfg.heads.clone());
                if recent_heads.len() > 501 {
                    recent_heads.pop_front();
                }
                if stable_for >= 500 {
                    break;
                }
                cfg = successor_step(&cfg, &prog);
            }
            match halted_at {
                Some(slow_final) => {
                    // halted before the first limit: the accelerated run
                    // must agree exactly
                    match &fast_outcome {
                        RunOutcome::Halted { time, final_cfg } => {
                            assert_eq!(time, &slow_final.time, "{name} on {alpha_lit}: time");
                            assert!(
                                final_cfg.same_snapshot(&slow_final),
                                "{name} on {alpha_lit}: final configuration"
                            );
                        }
                        other => panic!("{name} on {alpha_lit}: expected halt, got {other:?}"),
                    }
                }
                None => {
                    assert!(stable_for >= 500, "{name} on {alpha_lit}: probes unstable");
                    let at_omega = fast_trace
                        .probes
                        .iter()
                        .find(|(t, _)| t == &ord("w"))
                        .map(|(_, c)| c)
                        .unwrap_or_else(|| panic!("{name} on {alpha_lit}: no snapshot at w"));
                    // probed cells: the stabilized value is the liminf
                    for (i, tape) in cfg.tapes.iter().enumerate() {
                        for p in &probes {
                            assert_eq!(
                                tape.read(p).unwrap(),
                                at_omega.tapes[i].read(p).unwrap(),
                                "{name} on {alpha_lit}: tape {i} cell {p}"
                            );
                        }
                    }
                    // heads: a head whose recent window is constant has
                    // that inferior limit; a diverging head has liminf w
                    // (reset to 0 when alpha = w); a cycling head has the
                    // window minimum
                    for i in 0..prog.tape_count {
                        let window_min = recent_heads
                            .iter()
                            .map(|h| &h[i])
                            .min()
                            .expect("window nonempty")
                            .clone();
                        let window_constant =
                            recent_heads.iter().all(|h| h[i] == recent_heads[0][i]);
                        let window_monotone = recent_heads
                            .iter()
                            .zip(recent_heads.iter().skip(1))
                            .all(|(x, y)| x[i] <= y[i]);
                        let expected = if window_constant {
                            recent_heads[0][i].clone()
                        } else if window_monotone {
                            // still climbing: the inferior limit at w is w
                            // itself, reset to 0 when alpha = w
                            if alpha == ord("w") {
                                ord("0")
                            } else {
                                ord("w")
                            }
                        } else {
                            window_min
                        };
                        assert_eq!(
                            &at_omega.heads[i], &expected,
                            "{name} on {alpha_lit}: head {i}"
                        );
                    }
                }
            }
        }
    }
    finish("5 (acceleration differential)", start, Duration::from_secs(60));
}

// ---------------------------------------------------------------------
// criterion 6: transfinite reachability
// ---------------------------------------------------------------------

fn run_catalog_on(
    name: &str,
    args: &[i64],
    alpha: &str,
    input: Option<TapeContent>,
) -> RunOutcome {
    let prog = catalog(name, args).unwrap().program.assemble().unwrap();
    let alpha = ord(alpha);
    let input = input.unwrap_or_else(|| TapeContent::empty(alpha.clone()));
    let spec = RunSpec {
        program: prog,
        alpha,
        input,
        param: None,
        options: EngineOptions::default(),
    };
    run(&spec).unwrap().0
}

#[test]
fn acceptance_06_transfinite_reachability() {
    let start = Instant::now();
    match run_catalog_on("reach_limit", &[], "w^2", None) {
        RunOutcome::Halted { final_cfg, .. } => assert_eq!(final_cfg.output_head(), &ord("w")),
        other => panic!("reach_limit: {other:?}"),
    }
    for n in 1..=3i64 {
        match run_catalog_on("reach_limit_times", &[n], "w^2", None) {
            RunOutcome::Halted { final_cfg, .. } => {
                assert_eq!(
                    final_cfg.output_head(),
                    &ord("w").mul(&Ordinal::from(n as u64)),
                    "reach_limit_times({n})"
                );
            }
            other => panic!("reach_limit_times({n}): {other:?}"),
        }
    }
    let marks32 = TapeContent::empty(ord("w^2"))
        .write(&ord("2"), true)
        .unwrap()
        .write(&ord("3"), true)
        .unwrap();
    match run_catalog_on("mult_position", &[], "w^2", Some(marks32)) {
        RunOutcome::Halted { final_cfg, .. } => assert_eq!(final_cfg.output_head(), &ord("6")),
        other => panic!("mult_position(3,2): {other:?}"),
    }
    let marksw2 = TapeContent::empty(ord("w^2"))
        .write(&ord("2"), true)
        .unwrap()
        .write(&ord("w"), true)
        .unwrap();
    match run_catalog_on("mult_position", &[], "w^2", Some(marksw2)) {
        RunOutcome::Halted { final_cfg, .. } => assert_eq!(final_cfg.output_head(), &ord("w*2")),
        other => panic!("mult_position(w,2): {other:?}"),
    }
    finish("6 (transfinite reachability)", start, Duration::from_secs(30));
}

// ---------------------------------------------------------------------
// criterion 7: non-halting certification, with no false certificates
// ---------------------------------------------------------------------

fn random_program(rng: &mut ChaCha8Rng) -> Program {
    let states = rng.gen_range(2u32..=4);
    let k = 3usize;
    let width = 1usize << k;
    let halt = states;
    let limit = states + 1;
    let mut rows = Vec::new();
    for _ in 0..states {
        let row: Vec<Transition> = (0..width)
            .map(|mask| {
                let mut write = 0u32;
                for t in 0..k {
                    let bit = if t == 0 {
                        (mask >> t) & 1 == 1 // the input tape is preserved
                    } else {
                        rng.gen_bool(0.5)
                    };
                    if bit {
                        write |= 1 << t;
                    }
                }
                let moves = (0..k)
                    .map(|_| match rng.gen_range(0u8..3) {
                        0 => Move::L,
                        1 => Move::R,
                        _ => Move::S,
                    })
                    .collect();
                Transition {
                    // halting must be reachable; the limit state is not a
                    // jump target for random tables
                    next: rng.gen_range(0..=states),
                    write,
                    moves,
                }
            })
            .collect();
        rows.push(row);
    }
    rows.push(Vec::new()); // halt
    rows.push(
        (0..width)
            .map(|mask| Transition {
                next: limit,
                write: mask as u32,
                moves: vec![Move::S; k],
            })
            .collect(),
    );
    Program {
        tape_count: k,
        halt_state: halt,
        limit_state: limit,
        uses_onlimit: false,
        rows,
    }
}

#[test]
fn acceptance_07_nonhalting_certificates() {
    let start = Instant::now();
    // the catalog loopers receive certificates
    match run_catalog_on("busy_loop", &[], "w", None) {
        RunOutcome::NonHaltingCertified { loop_from, loop_to } => {
            assert!(loop_from < loop_to);
        }
        other => panic!("busy_loop: {other:?}"),
    }
    match run_catalog_on("sweep_fill", &[], "w", None) {
        RunOutcome::NonHaltingCertified { loop_from, .. } => {
            // the certificate is anchored at or after saturation
            assert!(loop_from >= ord("w"));
        }
        other => panic!("sweep_fill: {other:?}"),
    }

    // no certificate for random programs that demonstrably halt
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce7);
    let mut found = 0usize;
    let mut attempts = 0usize;
    let alpha = ord("w");
    while found < 200 {
        attempts += 1;
        assert!(attempts < 20_000, "not enough halting samples");
        let prog = random_program(&mut rng);
        prog.validate().unwrap();
        // unaccelerated filter: halts within 10^4 successor steps?
        let mut cfg = {
            let tapes = vec![
                TapeContent::empty(alpha.clone()).into_read_only(),
                TapeContent::empty(alpha.clone()),
                TapeContent::empty(alpha.clone()),
            ];
            Configuration::initial(&prog, tapes).unwrap()
        };
        let mut halted = false;
        for _ in 0..10_000 {
            if cfg.state == prog.halt_state {
                halted = true;
                break;
            }
            cfg = successor_step(&cfg, &prog);
        }
        if !halted {
            continue;
        }
        let time = cfg.time.clone();
        found += 1;
        // the accelerated engine must halt identically, never certify
        let spec = RunSpec {
            program: prog,
            alpha: alpha.clone(),
            input: TapeContent::empty(alpha.clone()),
            param: None,
            options: EngineOptions::default(),
        };
        let (accel, _) = run(&spec).unwrap();
        match accel {
            RunOutcome::Halted { time: t2, .. } => {
                assert_eq!(time, t2, "halting time must agree (sample {found})")
            }
            other => panic!("sample {found}: accelerated engine said {other:?}"),
        }
    }
    finish("7 (non-halting certification)", start, Duration::from_secs(60));
}

// ---------------------------------------------------------------------
// criterion 8: codes round-trip and machine-level count-through
// ---------------------------------------------------------------------

#[test]
fn acceptance_08_codes_roundtrip() {
    let start = Instant::now();
    for alpha_lit in ["w", "w^(w)"] {
        let alpha = ord(alpha_lit);
        for gamma in 0u64..=50 {
            let g = Ordinal::from(gamma);
            let code = canonical_code(&g, &alpha).unwrap();
            // analytic fast path
            assert_eq!(
                codes::decode(&code, &CodeBudget::default()),
                codes::DecodeOutcome::Ordinal { value: g.clone() },
                "fast path gamma {gamma} alpha {alpha_lit}"
            );
            // independent bounded exploration
            let strict = CodeBudget {
                allow_fast_path: false,
                ..CodeBudget::default()
            };
            assert_eq!(
                codes::decode(&code, &strict),
                codes::DecodeOutcome::Ordinal { value: g.clone() },
                "explored gamma {gamma} alpha {alpha_lit}"
            );
            assert_eq!(codes::validate(&code, &strict), codes::Validity::Valid);
        }
    }
    // the machine-level count-through agrees with decode
    for gamma in 0u64..=25 {
        let g = Ordinal::from(gamma);
        let code = canonical_code(&g, &ord("w")).unwrap();
        let decoded = match codes::decode(&code, &CodeBudget::default()) {
            codes::DecodeOutcome::Ordinal { value } => value,
            other => panic!("decode: {other:?}"),
        };
        match run_catalog_on("count_through_code", &[], "w", Some(code.to_input_tape())) {
            RunOutcome::Halted { final_cfg, .. } => {
                assert_eq!(final_cfg.output_head(), &decoded, "gamma {gamma}")
            }
            other => panic!("count_through_code gamma {gamma}: {other:?}"),
        }
    }
    finish("8 (codes round-trip)", start, Duration::from_secs(30));
}

// ---------------------------------------------------------------------
// criterion 9: byte-identical reach reports
// ---------------------------------------------------------------------

#[test]
fn acceptance_09_reach_determinism() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_ittm");
    let dir = std::env::temp_dir();
    let out1 = dir.join("ittm-accept-reach-1.json");
    let out2 = dir.join("ittm-accept-reach-2.json");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(exe)
            .args([
                "reach",
                "--alpha",
                "w",
                "--select",
                "move_right(0..5);sweep_fill;reach_limit;busy_loop",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("spawn ittm");
        assert!(status.success(), "reach failed");
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "reach reports must be byte-identical");
    let _ = std::fs::remove_file(&out1);
    let _ = std::fs::remove_file(&out2);
    finish("9 (report determinism)", start, Duration::from_secs(30));
}

// ---------------------------------------------------------------------
// criterion 10: sub-tape simulation via the pairing partition
// ---------------------------------------------------------------------

#[test]
fn acceptance_10_subtape_simulation() {
    let start = Instant::now();
    use ittm_core::experiments::{mapped_step_trace, partition_map};
    let small = ord("w");
    let big = ord("w^(w)");
    for (name, args) in catalog_suite() {
        let prog = catalog(name, &args).unwrap().program.assemble().unwrap();
        // direct input on T_w
        let direct_input = standard_input(name, &small);
        let mut direct: Vec<TapeContent> = vec![direct_input.clone()];
        for _ in 1..prog.tape_count {
            direct.push(TapeContent::empty(small.clone()));
        }
        let id = |_: usize, j: &Ordinal| j.clone();
        let direct_trace = mapped_step_trace(&prog, &mut direct, &id, 1_000).unwrap();
        // the same machine inside the partition view of a w^(w) tape:
        // virtual cell j of tape i sits at the physical cell pair(i, j)
        let mut mapped: Vec<TapeContent> = Vec::new();
        for i in 0..prog.tape_count {
            let mut t = TapeContent::empty(big.clone());
            if i == 0 {
                for p in 0u64..700 {
                    let pos = Ordinal::from(p);
                    if direct_input.read(&pos).unwrap() {
                        t = t.write(&partition_map(0, &pos), true).unwrap();
                    }
                }
            }
            mapped.push(t);
        }
        let part = |i: usize, j: &Ordinal| partition_map(i, j);
        let mapped_trace = mapped_step_trace(&prog, &mut mapped, &part, 1_000).unwrap();
        assert_eq!(direct_trace, mapped_trace, "{name}: traces must agree step for step");
    }
    finish("10 (sub-tape simulation)", start, Duration::from_secs(30));
}
