//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every tolerance is pinned here; exact claims use rational
//! equality and functional claims use the crate-wide 1e-9 tolerance.

use std::time::Instant;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coordlab::costs::{check_cc_ic, check_direct_sum_lemma, check_sic_vs_ic, switched_ic};
use coordlab::distributions::{collapsing_epsilon, hard_one_bit, zeros_at};
use coordlab::infotheory::{
    check_chain_rule, check_drop_lemma, check_h_delta, check_mi_hellinger,
    check_simplified_chain, ratio, HypothesisOutcome, JointPmf, Pmf, Rational, Value, TOLERANCE,
};
use coordlab::model::{
    deterministic_tape, CoordinatorAction, InputMatrix, Message, Output, Payload, DEFAULT_BUDGET,
};
use coordlab::protolib::{
    and_output, and_poll_protocol, compress_search_transcript, decompress_search_transcript,
    direct_sum_protocol, disj_output, naive_protocol, search_symbol_width,
    sequential_search_protocol, EmbeddingConfig,
};
use coordlab::structure::{
    check_conditional_diagonal, check_diagonal, check_localization, check_rectangle,
    verify_onebit_chain,
};
use coordlab::taskalloc::{
    disj_via_ta, greedy_ta_players_learn_protocol, greedy_ta_protocol, reduction_overhead_bits,
    ZEncoding,
};
use coordlab::{Protocol, Transcript};

fn criterion(name: &str, pass: bool) {
    println!(
        "criterion {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {name} failed");
}

fn embed(base: &Protocol) -> Protocol {
    direct_sum_protocol(&EmbeddingConfig::new(base).unwrap()).unwrap()
}

/// Harness protocols with input dimensions at most (n, k).
fn harness(n_max: usize, k_max: usize) -> Vec<Protocol> {
    let mut protocols = Vec::new();
    for k in 2..=k_max {
        for n in 1..=n_max {
            protocols.push(naive_protocol(n, k));
            protocols.push(sequential_search_protocol(n, k));
        }
        protocols.push(and_poll_protocol(k));
        protocols.push(embed(&sequential_search_protocol(2, k)));
    }
    protocols
}

/// Harness protocols whose inputs are one bit per player, k players.
fn one_bit_harness(k: usize) -> Vec<Protocol> {
    vec![
        and_poll_protocol(k),
        naive_protocol(1, k),
        sequential_search_protocol(1, k),
        embed(&sequential_search_protocol(2, k)),
    ]
}

#[test]
fn criterion_01_collapsing_probability_exact() {
    let mut pass = true;
    for k in 2..=8u32 {
        let zeta = hard_one_bit(k as usize).unwrap().input_marginal();
        let eps = collapsing_epsilon(&zeta).unwrap();
        let want = Rational::new(1.into(), (3u64 * (1 << (k - 1))).into());
        pass &= eps == want;
    }
    criterion("01 collapsing-probability-exact", pass);
}

#[test]
fn criterion_02_rectangle_suite() {
    let start = Instant::now();
    let mut pass = true;
    for p in harness(2, 3) {
        for player in 0..p.k() {
            let report = check_rectangle(&p, player, DEFAULT_BUDGET).unwrap();
            if !report.pass {
                eprintln!(
                    "rectangle violated: {} player {player}: {:?}",
                    p.name(),
                    report.violation
                );
                pass = false;
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed.as_secs() < 60;
    criterion(
        &format!("02 rectangle-suite ({:.1}s)", elapsed.as_secs_f64()),
        pass,
    );
}

#[test]
fn criterion_03_distance_floor_for_distinguishable_inputs() {
    let (n, k) = (2, 3);
    let p = sequential_search_protocol(n, k);
    // The protocol is zero error, verified exactly before using delta = 0.
    let delta = p.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
    assert!(delta.is_zero());
    let inputs: Vec<InputMatrix> = InputMatrix::enumerate(k, n).collect();
    let mut pass = true;
    for x in &inputs {
        for y in &inputs {
            if disj_output(x) == disj_output(y) {
                continue;
            }
            let margin = check_h_delta(&p, x, y, disj_output, 0.0, DEFAULT_BUDGET).unwrap();
            if margin < -TOLERANCE {
                eprintln!("distance floor violated at ({x}, {y}): {margin}");
                pass = false;
            }
        }
    }
    // A genuinely randomized protocol with measured error 1/2: a fair coin
    // decides between polling everyone and answering 0 blindly.
    let p = half_blind_and_protocol(3);
    let delta = p.error_probability(and_output, DEFAULT_BUDGET).unwrap();
    assert_eq!(delta, ratio(1, 2));
    let margin = check_h_delta(
        &p,
        &InputMatrix::all_ones(3, 1),
        &zeros_at(&[0], 3),
        and_output,
        0.5,
        DEFAULT_BUDGET,
    )
    .unwrap();
    pass &= margin >= -TOLERANCE;
    criterion("03 distance-floor", pass);
}

/// With probability 1/2 answers 0 without communicating; otherwise polls
/// every player and outputs the AND.
fn half_blind_and_protocol(k: usize) -> Protocol {
    let coin = Pmf::new([(vec![0u64], ratio(1, 2)), (vec![1u64], ratio(1, 2))]).unwrap();
    Protocol::new(
        "half-blind-and",
        k,
        1,
        k,
        coin,
        vec![deterministic_tape(); k],
        move |messages: &[Message], tape: &[u64]| {
            if tape[0] == 0 {
                return CoordinatorAction::Halt(Output::Bit(false));
            }
            let replies: Vec<bool> = messages
                .iter()
                .skip(1)
                .step_by(2)
                .map(|m| m.payload.bits()[0])
                .collect();
            if replies.len() < k {
                CoordinatorAction::Send {
                    player: replies.len(),
                    payload: Payload::bit(true),
                }
            } else {
                CoordinatorAction::Halt(Output::Bit(replies.iter().all(|&b| b)))
            }
        },
        |_, row: &[bool], _, _| Payload::bit(row[0]),
    )
}

#[test]
fn criterion_04_diagonal_lemmas() {
    let mut pass = true;
    // Full-input diagonal over every (X, Y, row) triple.
    for p in harness(2, 3) {
        let inputs: Vec<InputMatrix> = InputMatrix::enumerate(p.k(), p.n()).collect();
        for x in &inputs {
            for y in &inputs {
                for row in 0..p.k() {
                    let margin = check_diagonal(&p, x, y, row, DEFAULT_BUDGET).unwrap();
                    if margin < -TOLERANCE {
                        eprintln!("diagonal violated: {} ({x}, {y}, {row})", p.name());
                        pass = false;
                    }
                }
            }
        }
    }
    // Conditioned diagonal over every (player, pointer) pair, one-bit
    // protocols.
    for k in 2..=3 {
        for p in one_bit_harness(k) {
            for i in 0..k {
                for z in 0..k {
                    if i == z {
                        continue;
                    }
                    let margin =
                        check_conditional_diagonal(&p, i, z, DEFAULT_BUDGET).unwrap();
                    if margin < -TOLERANCE {
                        eprintln!("conditional diagonal violated: {} ({i},{z})", p.name());
                        pass = false;
                    }
                }
            }
        }
    }
    criterion("04 diagonal-lemmas", pass);
}

#[test]
fn criterion_05_localization() {
    let mut pass = true;
    for k in 2..=4 {
        for p in one_bit_harness(k) {
            for i in 0..k {
                for z in 0..k {
                    if i == z {
                        continue;
                    }
                    let (conditioned, fixed) =
                        check_localization(&p, i, z, DEFAULT_BUDGET).unwrap();
                    if conditioned > TOLERANCE || fixed > TOLERANCE {
                        eprintln!(
                            "localization violated: {} ({i},{z}): {conditioned}, {fixed}",
                            p.name()
                        );
                        pass = false;
                    }
                }
            }
        }
    }
    criterion("05 localization", pass);
}

#[test]
fn criterion_06_direct_sum() {
    let mut pass = true;
    let (n, k) = (2usize, 2usize);
    for base in [sequential_search_protocol(n, k), naive_protocol(n, k)] {
        let check = check_direct_sum_lemma(&base, DEFAULT_BUDGET).unwrap();
        for (i, (mode, input)) in check.margins.iter().enumerate() {
            if *mode < -TOLERANCE || *input < -TOLERANCE {
                eprintln!(
                    "embedding lemma violated for {} player {i}: {mode}, {input}",
                    base.name()
                );
                pass = false;
            }
        }
        // Exact error bound: base is zero error, so the embedded error may
        // not exceed n·ε.
        let delta = base.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
        let eps = Rational::new(1.into(), (3u64 * (1 << (k - 1))).into());
        let bound = delta + Rational::from_integer((n as i64).into()) * eps;
        if check.embedded_error > bound {
            eprintln!(
                "embedded error {} exceeds bound {bound} for {}",
                check.embedded_error,
                base.name()
            );
            pass = false;
        }
    }
    criterion("06 direct-sum", pass);
}

#[test]
fn criterion_07_one_bit_floor() {
    let mut pass = true;
    for p in one_bit_harness(3) {
        let delta = p.error_probability(and_output, DEFAULT_BUDGET).unwrap();
        let xi = hard_one_bit(3).unwrap();
        let sic = switched_ic(&xi, &p, DEFAULT_BUDGET).unwrap();
        let delta_f = rational_to_f64(&delta);
        let floor = (1.0 - delta_f) * (1.0 - delta_f) / 96.0;
        if sic.total < floor - TOLERANCE {
            eprintln!("{}: SIC {} below floor {floor}", p.name(), sic.total);
            pass = false;
        }
        if delta.is_zero() {
            pass &= (floor - 1.0 / 96.0).abs() <= TOLERANCE;
        }
        // The full chain must also hold link by link.
        let report = verify_onebit_chain(&p, DEFAULT_BUDGET).unwrap();
        if !report.all_pass(TOLERANCE) {
            for link in report.links.iter().filter(|l| l.margin() < -TOLERANCE) {
                eprintln!("{}: chain link {} {} fails", p.name(), link.id, link.detail);
            }
            pass = false;
        }
    }
    criterion("07 one-bit-floor", pass);
}

fn rational_to_f64(r: &Rational) -> f64 {
    num::ToPrimitive::to_f64(r).unwrap()
}

#[test]
fn criterion_08_cc_dominates_ic() {
    let mut pass = true;
    for p in harness(2, 3) {
        let zeta = hard_one_bit(p.k())
            .unwrap()
            .power(p.n())
            .unwrap()
            .input_marginal();
        let margin = check_cc_ic(&zeta, &p, DEFAULT_BUDGET).unwrap();
        if margin < -TOLERANCE {
            eprintln!("{}: CC below IC/2 by {margin}", p.name());
            pass = false;
        }
    }
    criterion("08 cc-vs-ic", pass);
}

#[test]
fn criterion_09_switched_vs_internal() {
    let mut pass = true;
    let mut cases: Vec<(Protocol, usize, usize)> = Vec::new();
    for p in one_bit_harness(3) {
        cases.push((p, 1, 3));
    }
    cases.push((naive_protocol(2, 2), 2, 2));
    cases.push((sequential_search_protocol(2, 2), 2, 2));
    for (p, n, k) in cases {
        let eta = hard_one_bit(k).unwrap().power(n).unwrap();
        let slack = check_sic_vs_ic(&eta, &p, DEFAULT_BUDGET).unwrap();
        if slack < -TOLERANCE {
            eprintln!("{}: switched cost exceeds explicit bound by {slack}", p.name());
            pass = false;
        }
    }
    criterion("09 switched-vs-internal", pass);
}

#[test]
fn criterion_10_task_allocation_and_compression() {
    let mut pass = true;
    for (n, k) in [(2usize, 2usize), (3, 2), (2, 3)] {
        // Reduction correctness, exhaustive, both encodings and both
        // validation conventions.
        for encoding in [ZEncoding::Vector, ZEncoding::List] {
            for players_learn in [false, true] {
                let ta = if players_learn {
                    greedy_ta_players_learn_protocol(n, k)
                } else {
                    greedy_ta_protocol(n, k)
                };
                let p = disj_via_ta(&ta, encoding);
                let err = p.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
                if !err.is_zero() {
                    eprintln!("reduction error {err} at ({n},{k}), {encoding:?}");
                    pass = false;
                }
            }
        }
        // Overhead accounting equals the closed form for both encodings.
        for encoding in [ZEncoding::Vector, ZEncoding::List] {
            let ta = greedy_ta_protocol(n, k);
            let p = disj_via_ta(&ta, encoding);
            let mut worst = 0u64;
            for input in InputMatrix::enumerate(k, n) {
                let composed = run_deterministic(&p, &input).total_bits();
                let complement = InputMatrix::from_rows(
                    (0..k)
                        .map(|i| input.row(i).iter().map(|b| !b).collect())
                        .collect(),
                );
                let inner = run_deterministic(&ta.protocol, &complement).total_bits();
                worst = worst.max(composed - inner);
            }
            if worst != reduction_overhead_bits(n, k, encoding) {
                eprintln!("overhead mismatch at ({n},{k}) {encoding:?}: {worst}");
                pass = false;
            }
        }
        // Search-transcript compression: exact length and round-trip
        // identity on every input.
        let p = sequential_search_protocol(n, k);
        for input in InputMatrix::enumerate(k, n) {
            let t = run_deterministic(&p, &input);
            let c = compress_search_transcript(&t, n, k).unwrap();
            if c.len() != n * search_symbol_width(k) {
                eprintln!("compressed length {} at ({n},{k})", c.len());
                pass = false;
            }
            if decompress_search_transcript(&c, n, k).unwrap() != t {
                eprintln!("round trip broken at ({n},{k}), input {input}");
                pass = false;
            }
        }
    }
    criterion("10 task-allocation-reduction", pass);
}

fn run_deterministic(p: &Protocol, input: &InputMatrix) -> Transcript {
    p.execute(
        input,
        &coordlab::model::JointTapes {
            coordinator: vec![],
            players: vec![vec![]; p.k()],
        },
    )
    .unwrap()
}

#[test]
fn criterion_11_information_kernel_trials() {
    let mut pass = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Chain rule: 100 random exact-rational joints.
    for _ in 0..100 {
        let joint = random_joint(&mut rng, &[2, 2, 3, 2]);
        let residual = check_chain_rule(&joint, &["c0", "c1"], &["c2"], &["c3"]).unwrap();
        if residual > TOLERANCE {
            pass = false;
        }
    }
    // Chain rule on the hard-distribution joint with row parts.
    let joint = hard_one_bit(3).unwrap().to_joint_pmf();
    let residual = check_chain_rule(&joint, &["x1", "x2", "x3"], &["m"], &["z"]).unwrap();
    pass &= residual <= TOLERANCE;

    // Simplified chain rule and drop lemma: 100 joints built to satisfy
    // the conditional-independence hypothesis.
    for trial in 0..100 {
        let joint = random_hypothesis_joint(&mut rng, 2, 2, 3, 2);
        match check_simplified_chain(&joint, &["a"], &["b"], &["c"], &["d"]).unwrap() {
            HypothesisOutcome::Holds(residual) => pass &= residual <= TOLERANCE,
            HypothesisOutcome::HypothesisViolated { .. } => {
                eprintln!("hypothesis unexpectedly violated in trial {trial}");
                pass = false;
            }
        }
        match check_drop_lemma(&joint, &["a"], &["b"], &["c"], &["d"]).unwrap() {
            HypothesisOutcome::Holds(margin) => pass &= margin >= -TOLERANCE,
            HypothesisOutcome::HypothesisViolated { .. } => pass = false,
        }
    }
    // Hard-distribution cases: rows are independent given (m, z).
    let outcome = check_simplified_chain(&joint, &["x1"], &["x2"], &["x3"], &["m", "z"]).unwrap();
    pass &= outcome.holds_with(|residual| residual <= TOLERANCE);
    let outcome = check_drop_lemma(&joint, &["x1"], &["x2"], &["x3"], &["m", "z"]).unwrap();
    pass &= outcome.holds_with(|margin| margin >= -TOLERANCE);

    // Selector-information floor: 200 random pairs plus the closed cases.
    for _ in 0..200 {
        let mu0 = random_pmf(&mut rng, 6);
        let mu1 = random_pmf(&mut rng, 6);
        if check_mi_hellinger(&mu0, &mu1) < -TOLERANCE {
            pass = false;
        }
    }
    let point0 = Pmf::point_mass(0u32);
    let point1 = Pmf::point_mass(1u32);
    pass &= check_mi_hellinger(&point0, &point0).abs() <= TOLERANCE;
    pass &= check_mi_hellinger(&point0, &point1).abs() <= TOLERANCE;

    // Metric structure of the distance: symmetry exact, triangle within
    // tolerance, and the two squared-distance routes agree.
    for _ in 0..200 {
        let a = random_pmf(&mut rng, 6);
        let b = random_pmf(&mut rng, 6);
        let c = random_pmf(&mut rng, 6);
        pass &= (a.hellinger(&b) - b.hellinger(&a)).abs() <= TOLERANCE;
        pass &= a.hellinger(&c) <= a.hellinger(&b) + b.hellinger(&c) + TOLERANCE;
        let direct = a.hellinger(&b).powi(2);
        pass &= (direct - a.hellinger_sq(&b)).abs() <= TOLERANCE;
    }

    criterion("11 information-kernel", pass);
}

fn random_pmf(rng: &mut ChaCha8Rng, outcomes: usize) -> Pmf<u32> {
    let support = rng.gen_range(1..=outcomes);
    Pmf::from_weights(
        (0..support as u32).map(|o| (o, Rational::from_integer(rng.gen_range(1..=12).into()))),
    )
    .unwrap()
}

/// A random joint pmf over named integer components with the given
/// cardinalities and strictly positive rational weights.
fn random_joint(rng: &mut ChaCha8Rng, cards: &[usize]) -> JointPmf {
    let names: Vec<String> = (0..cards.len()).map(|i| format!("c{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut outcomes: Vec<Vec<Value>> = vec![Vec::new()];
    for &card in cards {
        outcomes = outcomes
            .into_iter()
            .flat_map(|o| {
                (0..card as i64).map(move |v| {
                    let mut o = o.clone();
                    o.push(Value::Int(v));
                    o
                })
            })
            .collect();
    }
    let entries: Vec<(Vec<Value>, Rational)> = outcomes
        .into_iter()
        .map(|o| (o, Rational::from_integer(rng.gen_range(1i64..=9).into())))
        .collect();
    let total: Rational = entries.iter().map(|(_, w)| w.clone()).sum();
    JointPmf::new(
        &name_refs,
        entries.into_iter().map(|(o, w)| (o, w / total.clone())),
    )
    .unwrap()
}

/// A random joint over (a, b, c, d) in which a and b are conditionally
/// independent given d by construction: the joint factors as
/// p(d)·p(a|d)·p(b|d)·p(c|a,b,d) with random rational conditionals.
fn random_hypothesis_joint(
    rng: &mut ChaCha8Rng,
    card_a: usize,
    card_b: usize,
    card_c: usize,
    card_d: usize,
) -> JointPmf {
    let weights = |rng: &mut ChaCha8Rng, card: usize| -> Vec<Rational> {
        let raw: Vec<i64> = (0..card).map(|_| rng.gen_range(1..=9)).collect();
        let total: i64 = raw.iter().sum();
        raw.into_iter()
            .map(|w| Rational::new(w.into(), total.into()))
            .collect()
    };
    let p_d = weights(rng, card_d);
    let p_a_given_d: Vec<Vec<Rational>> = (0..card_d).map(|_| weights(rng, card_a)).collect();
    let p_b_given_d: Vec<Vec<Rational>> = (0..card_d).map(|_| weights(rng, card_b)).collect();
    let mut p_c_given_abd = Vec::new();
    for _ in 0..card_a * card_b * card_d {
        p_c_given_abd.push(weights(rng, card_c));
    }
    let mut entries = Vec::new();
    for d in 0..card_d {
        for a in 0..card_a {
            for b in 0..card_b {
                let cond_c = &p_c_given_abd[(a * card_b + b) * card_d + d];
                for c in 0..card_c {
                    let prob = p_d[d].clone()
                        * p_a_given_d[d][a].clone()
                        * p_b_given_d[d][b].clone()
                        * cond_c[c].clone();
                    entries.push((
                        vec![
                            Value::Int(a as i64),
                            Value::Int(b as i64),
                            Value::Int(c as i64),
                            Value::Int(d as i64),
                        ],
                        prob,
                    ));
                }
            }
        }
    }
    JointPmf::new(&["a", "b", "c", "d"], entries).unwrap()
}
