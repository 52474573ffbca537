//! Suite runners: each builds a fixed-order list of check rows. Budget
//! exhaustion inside a check becomes a failed row carrying the error text;
//! the suite always continues.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coordlab::costs::{check_cc_ic, check_direct_sum_lemma, check_sic_vs_ic};
use coordlab::distributions::{collapsing_epsilon, SwitchedDistribution};
use coordlab::infotheory::{
    check_chain_rule, check_drop_lemma, check_mi_hellinger, check_simplified_chain,
    HypothesisOutcome, JointPmf, Pmf, Rational, Value,
};
use coordlab::model::{Direction, InputMatrix, Message, Payload, PlayerView};
use coordlab::protolib::{
    compress_search_transcript, decompress_search_transcript, disj_output, search_symbol_width,
    sequential_search_protocol,
};
use coordlab::report::{fmt_rational, CheckRow};
use coordlab::structure::{
    check_conditional_diagonal, check_diagonal, check_localization, check_rectangle,
    verify_onebit_chain,
};
use coordlab::taskalloc::{
    disj_via_ta, greedy_ta_players_learn_protocol, greedy_ta_protocol, reduction_overhead_bits,
    ZEncoding,
};
use coordlab::{Protocol, Transcript};

use crate::config::{ExperimentConfig, Suite};

pub fn run_suites(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let protocol = cfg.build_protocol().expect("validated");
    let dist = cfg.build_distribution().expect("validated");
    let mut rows = Vec::new();
    if cfg.suite.includes(Suite::ModelInvariants) {
        rows.extend(model_invariants_suite(&protocol, cfg));
    }
    if cfg.suite.includes(Suite::Infotheory) {
        rows.extend(infotheory_suite(cfg));
    }
    if cfg.suite.includes(Suite::Costs) {
        rows.extend(costs_suite(&protocol, &dist, cfg));
    }
    if cfg.suite.includes(Suite::Structure) {
        rows.extend(structure_suite(&protocol, cfg));
    }
    if cfg.suite.includes(Suite::DirectSum) {
        rows.extend(directsum_suite(&protocol, cfg));
    }
    if cfg.suite.includes(Suite::TaskAlloc) {
        rows.extend(taskalloc_suite(cfg));
    }
    rows
}

fn detail_for(p: &Protocol) -> String {
    format!("{} n={} k={}", p.name(), p.n(), p.k())
}

// ---------------------------------------------------------------------
// model-invariants
// ---------------------------------------------------------------------

fn model_invariants_suite(p: &Protocol, cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let detail = detail_for(p);
    let mut alternation = true;
    let mut normalized = true;
    let mut failure: Option<String> = None;
    for input in InputMatrix::enumerate(p.k(), p.n()) {
        match p.transcript_distribution(&input, cfg.budget) {
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
            Ok(dist) => {
                normalized &= dist.total().is_one();
                for (t, _) in dist.iter() {
                    for player in 0..p.k() {
                        for (pos, m) in t.view(player).messages.iter().enumerate() {
                            let want = if pos % 2 == 0 {
                                Direction::ToPlayer
                            } else {
                                Direction::ToCoordinator
                            };
                            alternation &= m.direction == want;
                        }
                    }
                }
            }
        }
    }
    match &failure {
        Some(e) => {
            rows.push(CheckRow::failed("alternation", detail.clone(), e.clone()));
            rows.push(CheckRow::failed("normalization", detail.clone(), e.clone()));
        }
        None => {
            rows.push(CheckRow::exact(
                "alternation",
                detail.clone(),
                String::new(),
                String::new(),
                alternation,
            ));
            rows.push(CheckRow::exact(
                "normalization",
                detail.clone(),
                String::new(),
                String::new(),
                normalized,
            ));
        }
    }
    let input = InputMatrix::all_ones(p.k(), p.n());
    let mut deterministic = true;
    let res = p.for_each_joint_tape(|tapes, _| {
        deterministic &= p.execute(&input, tapes)? == p.execute(&input, tapes)?;
        Ok(())
    });
    rows.push(match res {
        Err(e) => CheckRow::failed("determinism", detail.clone(), e.to_string()),
        Ok(()) => CheckRow::exact(
            "determinism",
            detail.clone(),
            String::new(),
            String::new(),
            deterministic,
        ),
    });
    rows.push(view_consistency_row(p, cfg, &detail));
    rows.push(privacy_row(p, &detail));
    rows
}

fn view_consistency_row(p: &Protocol, cfg: &ExperimentConfig, detail: &str) -> CheckRow {
    for input in InputMatrix::enumerate(p.k(), p.n()) {
        for player in 0..p.k() {
            let pushforward = match p.view_distribution(&input, player, cfg.budget) {
                Ok(d) => d,
                Err(e) => {
                    return CheckRow::failed("view-consistency", detail.to_string(), e.to_string())
                }
            };
            let mut direct: Vec<(PlayerView, Rational)> = Vec::new();
            let res = p.for_each_joint_tape(|tapes, prob| {
                direct.push((p.execute(&input, tapes)?.view(player), prob));
                Ok(())
            });
            if let Err(e) = res {
                return CheckRow::failed("view-consistency", detail.to_string(), e.to_string());
            }
            if Pmf::new(direct).ok().as_ref() != Some(&pushforward) {
                return CheckRow::exact(
                    "view-consistency",
                    detail.to_string(),
                    format!("input {input} player {player}"),
                    String::new(),
                    false,
                );
            }
        }
    }
    CheckRow::exact(
        "view-consistency",
        detail.to_string(),
        String::new(),
        String::new(),
        true,
    )
}

fn privacy_row(p: &Protocol, detail: &str) -> CheckRow {
    let inputs: Vec<InputMatrix> = InputMatrix::enumerate(p.k(), p.n()).collect();
    for player in 0..p.k() {
        for x in &inputs {
            for y in &inputs {
                if x.row(player) != y.row(player) || x >= y {
                    continue;
                }
                let mut ok = true;
                let res = p.for_each_joint_tape(|tapes, _| {
                    let mx = reply_map(&p.execute(x, tapes)?.messages, player);
                    let my = reply_map(&p.execute(y, tapes)?.messages, player);
                    for (prefix, payload) in &mx {
                        if my.get(prefix).is_some_and(|other| other != payload) {
                            ok = false;
                        }
                    }
                    Ok(())
                });
                if let Err(e) = res {
                    return CheckRow::failed("privacy-probe", detail.to_string(), e.to_string());
                }
                if !ok {
                    return CheckRow::exact(
                        "privacy-probe",
                        detail.to_string(),
                        format!("player {player}: {x} vs {y}"),
                        String::new(),
                        false,
                    );
                }
            }
        }
    }
    CheckRow::exact(
        "privacy-probe",
        detail.to_string(),
        String::new(),
        String::new(),
        true,
    )
}

fn reply_map(messages: &[Message], player: usize) -> BTreeMap<Vec<Message>, Payload> {
    let mut map = BTreeMap::new();
    let mut prefix: Vec<Message> = Vec::new();
    for m in messages.iter().filter(|m| m.channel == player) {
        match m.direction {
            Direction::ToPlayer => prefix.push(m.clone()),
            Direction::ToCoordinator => {
                map.insert(prefix.clone(), m.payload.clone());
                prefix.push(m.clone());
            }
        }
    }
    map
}

// ---------------------------------------------------------------------
// infotheory
// ---------------------------------------------------------------------

fn infotheory_suite(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let tol = cfg.tol;
    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let uniform4 = Pmf::uniform(0u8..4).expect("nonempty");
    rows.push(CheckRow::residual(
        "entropy-uniform",
        "uniform over 4 outcomes vs 2 bits".into(),
        uniform4.entropy() - 2.0,
        tol,
    ));
    let bernoulli = Pmf::new([
        (0u8, Rational::new(2.into(), 3.into())),
        (1u8, Rational::new(1.into(), 3.into())),
    ])
    .expect("normalized");
    rows.push(CheckRow::residual(
        "entropy-two-term",
        "bit with probability 1/3".into(),
        bernoulli.entropy() - (3f64.log2() - 2.0 / 3.0),
        tol,
    ));
    let uniform2 = Pmf::uniform([0u8, 1]).expect("nonempty");
    let point = Pmf::point_mass(0u8);
    rows.push(CheckRow::residual(
        "hellinger-squared-closed-form",
        "uniform bit vs point mass".into(),
        uniform2.hellinger_sq(&point) - (1.0 - 0.5f64.sqrt()),
        tol,
    ));

    let mut worst_chain: f64 = 0.0;
    for _ in 0..100 {
        let joint = random_joint(&mut rng, &[2, 2, 3, 2]);
        let residual = check_chain_rule(&joint, &["c0", "c1"], &["c2"], &["c3"])
            .expect("components exist");
        worst_chain = worst_chain.max(residual);
    }
    rows.push(CheckRow::residual(
        "chain-rule-trials",
        "100 random rational joints, worst residual".into(),
        worst_chain,
        tol,
    ));

    let mut worst_simplified: f64 = 0.0;
    let mut worst_drop: f64 = f64::INFINITY;
    let mut hypothesis_ok = true;
    for _ in 0..100 {
        let joint = random_hypothesis_joint(&mut rng, 2, 2, 3, 2);
        match check_simplified_chain(&joint, &["a"], &["b"], &["c"], &["d"])
            .expect("components exist")
        {
            HypothesisOutcome::Holds(residual) => {
                worst_simplified = worst_simplified.max(residual)
            }
            HypothesisOutcome::HypothesisViolated { .. } => hypothesis_ok = false,
        }
        match check_drop_lemma(&joint, &["a"], &["b"], &["c"], &["d"]).expect("components exist")
        {
            HypothesisOutcome::Holds(margin) => worst_drop = worst_drop.min(margin),
            HypothesisOutcome::HypothesisViolated { .. } => hypothesis_ok = false,
        }
    }
    let mut simplified_row = CheckRow::residual(
        "simplified-chain-trials",
        "100 conditionally independent joints, worst residual".into(),
        worst_simplified,
        tol,
    );
    simplified_row.pass &= hypothesis_ok;
    rows.push(simplified_row);
    rows.push(CheckRow::margin(
        "drop-lemma-trials",
        "100 conditionally independent joints, worst margin".into(),
        worst_drop,
        0.0,
        tol,
    ));

    let mut worst_selector = f64::INFINITY;
    for _ in 0..200 {
        let mu0 = random_pmf(&mut rng, 6);
        let mu1 = random_pmf(&mut rng, 6);
        worst_selector = worst_selector.min(check_mi_hellinger(&mu0, &mu1));
    }
    rows.push(CheckRow::margin(
        "selector-floor-trials",
        "200 random pairs, worst margin of I(selector; draw) over squared distance".into(),
        worst_selector,
        0.0,
        tol,
    ));

    let mut worst_triangle = f64::INFINITY;
    let mut worst_identity: f64 = 0.0;
    for _ in 0..200 {
        let a = random_pmf(&mut rng, 6);
        let b = random_pmf(&mut rng, 6);
        let c = random_pmf(&mut rng, 6);
        worst_triangle =
            worst_triangle.min(a.hellinger(&b) + b.hellinger(&c) - a.hellinger(&c));
        worst_identity = worst_identity.max((a.hellinger(&b).powi(2) - a.hellinger_sq(&b)).abs());
    }
    rows.push(CheckRow::margin(
        "hellinger-triangle-trials",
        "200 random triples, worst triangle slack".into(),
        worst_triangle,
        0.0,
        tol,
    ));
    rows.push(CheckRow::residual(
        "hellinger-identity-trials",
        "200 random pairs, worst gap between the two squared-distance forms".into(),
        worst_identity,
        tol,
    ));
    rows
}

fn random_pmf(rng: &mut ChaCha8Rng, outcomes: usize) -> Pmf<u32> {
    let support = rng.gen_range(1..=outcomes);
    Pmf::from_weights(
        (0..support as u32).map(|o| (o, Rational::from_integer(rng.gen_range(1..=12).into()))),
    )
    .expect("positive weights")
}

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
    .expect("valid joint")
}

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
    let p_a: Vec<Vec<Rational>> = (0..card_d).map(|_| weights(rng, card_a)).collect();
    let p_b: Vec<Vec<Rational>> = (0..card_d).map(|_| weights(rng, card_b)).collect();
    let p_c: Vec<Vec<Rational>> = (0..card_a * card_b * card_d)
        .map(|_| weights(rng, card_c))
        .collect();
    let mut entries = Vec::new();
    for d in 0..card_d {
        for a in 0..card_a {
            for b in 0..card_b {
                let cond_c = &p_c[(a * card_b + b) * card_d + d];
                for (c, w) in cond_c.iter().enumerate() {
                    entries.push((
                        vec![
                            Value::Int(a as i64),
                            Value::Int(b as i64),
                            Value::Int(c as i64),
                            Value::Int(d as i64),
                        ],
                        p_d[d].clone() * p_a[d][a].clone() * p_b[d][b].clone() * w.clone(),
                    ));
                }
            }
        }
    }
    JointPmf::new(&["a", "b", "c", "d"], entries).expect("valid joint")
}

// ---------------------------------------------------------------------
// costs
// ---------------------------------------------------------------------

fn costs_suite(p: &Protocol, dist: &SwitchedDistribution, cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let detail = format!("{} under the hard distribution", detail_for(p));
    let zeta = dist.input_marginal();
    rows.push(
        match check_cc_ic(&zeta, p, cfg.budget) {
            Ok(margin) => CheckRow::margin("cc-vs-ic", detail.clone(), margin, 0.0, cfg.tol),
            Err(e) => CheckRow::failed("cc-vs-ic", detail.clone(), e.to_string()),
        },
    );
    rows.push(match check_sic_vs_ic(dist, p, cfg.budget) {
        Ok(slack) => {
            CheckRow::margin("switched-vs-internal", detail.clone(), slack, 0.0, cfg.tol)
        }
        Err(e) => CheckRow::failed("switched-vs-internal", detail, e.to_string()),
    });
    // Collapsing probability, exact against the closed form.
    if dist.n() == 1 {
        let eps = collapsing_epsilon(&zeta).expect("one-coordinate distribution");
        let want = Rational::new(1.into(), (3u64 * (1u64 << (dist.k() - 1))).into());
        rows.push(CheckRow::exact(
            "collapsing-probability",
            format!("k={}", dist.k()),
            fmt_rational(&eps),
            fmt_rational(&want),
            eps == want,
        ));
    }
    rows
}

// ---------------------------------------------------------------------
// structure
// ---------------------------------------------------------------------

fn structure_suite(p: &Protocol, cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let detail = detail_for(p);
    for player in 0..p.k() {
        rows.push(match check_rectangle(p, player, cfg.budget) {
            Ok(report) => CheckRow::exact(
                "rectangle",
                format!("{detail} player {player}"),
                report
                    .violation
                    .as_ref()
                    .map(|v| v.lhs.clone())
                    .unwrap_or_default(),
                report
                    .violation
                    .as_ref()
                    .map(|v| v.rhs.clone())
                    .unwrap_or_default(),
                report.pass,
            ),
            Err(e) => CheckRow::failed(
                "rectangle",
                format!("{detail} player {player}"),
                e.to_string(),
            ),
        });
    }
    // Diagonal inequality, aggregated over every (X, Y, row) triple.
    let mut worst: Option<(f64, String)> = None;
    let mut diagonal_error: Option<String> = None;
    'diag: for x in InputMatrix::enumerate(p.k(), p.n()) {
        for y in InputMatrix::enumerate(p.k(), p.n()) {
            for row in 0..p.k() {
                match check_diagonal(p, &x, &y, row, cfg.budget) {
                    Ok(margin) => {
                        if worst.as_ref().is_none_or(|(w, _)| margin < *w) {
                            worst = Some((margin, format!("x={x} y={y} row={row}")));
                        }
                    }
                    Err(e) => {
                        diagonal_error = Some(e.to_string());
                        break 'diag;
                    }
                }
            }
        }
    }
    rows.push(match (diagonal_error, worst) {
        (Some(e), _) => CheckRow::failed("diagonal", detail.clone(), e),
        (None, Some((margin, arg))) => CheckRow::margin(
            "diagonal",
            format!("{detail} worst at {arg}"),
            margin,
            0.0,
            cfg.tol,
        ),
        (None, None) => CheckRow::failed("diagonal", detail.clone(), "no inputs".into()),
    });
    // The conditioned machinery applies to one-coordinate protocols.
    if p.n() == 1 && p.k() >= 2 {
        for i in 0..p.k() {
            for z in 0..p.k() {
                if i == z {
                    continue;
                }
                let pair = format!("{detail} player {i} pointer {z}");
                rows.push(match check_conditional_diagonal(p, i, z, cfg.budget) {
                    Ok(margin) => {
                        CheckRow::margin("conditional-diagonal", pair.clone(), margin, 0.0, cfg.tol)
                    }
                    Err(e) => CheckRow::failed("conditional-diagonal", pair.clone(), e.to_string()),
                });
                rows.push(match check_localization(p, i, z, cfg.budget) {
                    Ok((conditioned, fixed)) => CheckRow::residual(
                        "localization",
                        pair,
                        conditioned.max(fixed),
                        cfg.tol,
                    ),
                    Err(e) => CheckRow::failed("localization", pair, e.to_string()),
                });
            }
        }
        match verify_onebit_chain(p, cfg.budget) {
            Ok(report) => {
                for link in &report.links {
                    rows.push(CheckRow::margin(
                        &format!("chain-{}", link.id),
                        format!(
                            "{detail} {} (measured error {})",
                            link.detail,
                            fmt_rational(&report.delta)
                        ),
                        link.lhs,
                        link.rhs,
                        cfg.tol,
                    ));
                }
            }
            Err(e) => rows.push(CheckRow::failed("chain", detail.clone(), e.to_string())),
        }
    }
    rows
}

// ---------------------------------------------------------------------
// directsum
// ---------------------------------------------------------------------

fn directsum_suite(base: &Protocol, cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let detail = format!("embedding of {}", detail_for(base));
    match check_direct_sum_lemma(base, cfg.budget) {
        Ok(check) => {
            for (i, (mode, input)) in check.margins.iter().enumerate() {
                rows.push(CheckRow::margin(
                    "embedding-mode-term",
                    format!("{detail} player {i}"),
                    *mode,
                    0.0,
                    cfg.tol,
                ));
                rows.push(CheckRow::margin(
                    "embedding-input-term",
                    format!("{detail} player {i}"),
                    *input,
                    0.0,
                    cfg.tol,
                ));
            }
            let delta = base
                .error_probability(disj_output, cfg.budget)
                .unwrap_or_else(|_| Rational::zero());
            let eps = Rational::new(1.into(), (3u64 * (1u64 << (base.k() - 1))).into());
            let bound = delta + Rational::from_integer((base.n() as i64).into()) * eps;
            rows.push(CheckRow::exact(
                "embedding-error-bound",
                detail,
                fmt_rational(&check.embedded_error),
                fmt_rational(&bound),
                check.embedded_error <= bound,
            ));
        }
        Err(e) => rows.push(CheckRow::failed("embedding", detail, e.to_string())),
    }
    rows
}

// ---------------------------------------------------------------------
// taskalloc
// ---------------------------------------------------------------------

fn taskalloc_suite(cfg: &ExperimentConfig) -> Vec<CheckRow> {
    let (n, k) = (cfg.n, cfg.k);
    let mut rows = Vec::new();
    for encoding in [ZEncoding::Vector, ZEncoding::List] {
        for players_learn in [false, true] {
            let ta = if players_learn {
                greedy_ta_players_learn_protocol(n, k)
            } else {
                greedy_ta_protocol(n, k)
            };
            let p = disj_via_ta(&ta, encoding);
            let id = "reduction-correctness";
            let detail = format!(
                "n={n} k={k} {encoding:?} {}",
                if players_learn {
                    "players-validate-own"
                } else {
                    "coordinator-dispatches"
                }
            );
            rows.push(match p.error_probability(disj_output, cfg.budget) {
                Ok(err) => CheckRow::exact(
                    id,
                    detail,
                    fmt_rational(&err),
                    fmt_rational(&Rational::zero()),
                    err.is_zero(),
                ),
                Err(e) => CheckRow::failed(id, detail, e.to_string()),
            });
        }
    }
    for encoding in [ZEncoding::Vector, ZEncoding::List] {
        let ta = greedy_ta_protocol(n, k);
        let p = disj_via_ta(&ta, encoding);
        let detail = format!("n={n} k={k} {encoding:?}");
        let mut worst = 0u64;
        let mut failed = None;
        for input in InputMatrix::enumerate(k, n) {
            let complement = InputMatrix::from_rows(
                (0..k)
                    .map(|i| input.row(i).iter().map(|b| !b).collect())
                    .collect(),
            );
            let composed = run_deterministic(&p, &input);
            let inner = run_deterministic(&ta.protocol, &complement);
            match (composed, inner) {
                (Ok(c), Ok(i)) => worst = worst.max(c.total_bits() - i.total_bits()),
                (Err(e), _) | (_, Err(e)) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        rows.push(match failed {
            Some(e) => CheckRow::failed("reduction-overhead", detail, e),
            None => {
                let want = reduction_overhead_bits(n, k, encoding);
                CheckRow::exact(
                    "reduction-overhead",
                    detail,
                    worst.to_string(),
                    want.to_string(),
                    worst == want,
                )
            }
        });
    }
    // Search-transcript compression: exact length and round-trip identity.
    let p = sequential_search_protocol(n, k);
    let mut round_trip = true;
    let mut length_ok = true;
    let mut failed = None;
    for input in InputMatrix::enumerate(k, n) {
        match run_deterministic(&p, &input) {
            Err(e) => {
                failed = Some(e);
                break;
            }
            Ok(t) => match compress_search_transcript(&t, n, k) {
                Err(e) => {
                    failed = Some(e.to_string());
                    break;
                }
                Ok(c) => {
                    length_ok &= c.len() == n * search_symbol_width(k);
                    round_trip &= decompress_search_transcript(&c, n, k).ok() == Some(t);
                }
            },
        }
    }
    let detail = format!("seq-search n={n} k={k}");
    rows.push(match failed {
        Some(e) => CheckRow::failed("compression-round-trip", detail, e),
        None => CheckRow::exact(
            "compression-round-trip",
            detail,
            format!("length-exact={length_ok}"),
            format!("{} bits per run", n * search_symbol_width(k)),
            round_trip && length_ok,
        ),
    });
    rows
}

fn run_deterministic(p: &Protocol, input: &InputMatrix) -> Result<Transcript, String> {
    p.execute(
        input,
        &coordlab::model::JointTapes {
            coordinator: vec![],
            players: vec![vec![]; p.k()],
        },
    )
    .map_err(|e| e.to_string())
}
