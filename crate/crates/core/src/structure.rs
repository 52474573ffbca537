//! Structural properties of private-coin protocols in the coordinator
//! model: the rectangle (cross-ratio) identity, the diagonal inequalities,
//! localization of Hellinger distance to a single player's channel,
//! per-player usefulness, and the full inequality chain that lower-bounds
//! the switched information cost of a correct one-bit AND protocol.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::costs::switched_ic;
use crate::distributions::{hard_one_bit, zeros_at, DistError, SwitchedSample};
use crate::infotheory::{conditional_mutual_information_by, Pmf, Rational};
use crate::model::{InputMatrix, ModelError, PlayerView, Protocol, Transcript};
use crate::protolib::and_output;
use crate::report::fmt_rational;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("conditioning event (x={x}, m={m}, z={z}) has probability zero")]
    ZeroProbabilityCondition { x: bool, m: bool, z: usize },
    #[error("player and pointer coincide (i = z = {0}); the statement needs i != z")]
    SamePlayer(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Exact joint of ((X, M, Z), transcript) under the one-bit hard
/// distribution for this protocol's player count.
fn hard_joint(
    protocol: &Protocol,
    budget: u64,
) -> Result<Pmf<(SwitchedSample, Transcript)>, StructureError> {
    let xi = hard_one_bit(protocol.k())?;
    Ok(crate::costs::switched_transcript_joint(
        &xi, protocol, budget,
    )?)
}

/// Player i's view distribution conditioned on (X^i = x, M = m, Z = z)
/// under the hard distribution. Errors when the event has probability zero
/// (in particular x = 0, m = 1, z != i).
pub fn conditional_view_law(
    protocol: &Protocol,
    player: usize,
    x: bool,
    m: bool,
    z: usize,
    budget: u64,
) -> Result<Pmf<PlayerView>, StructureError> {
    Ok(conditional_transcript_law(protocol, player, x, m, z, budget)?.map(|t| t.view(player)))
}

/// Full-transcript distribution conditioned on (X^i = x, M = m, Z = z)
/// under the hard distribution.
pub fn conditional_transcript_law(
    protocol: &Protocol,
    player: usize,
    x: bool,
    m: bool,
    z: usize,
    budget: u64,
) -> Result<Pmf<Transcript>, StructureError> {
    condition_joint(&hard_joint(protocol, budget)?, player, x, m, z)
}

fn condition_joint(
    joint: &Pmf<(SwitchedSample, Transcript)>,
    player: usize,
    x: bool,
    m: bool,
    z: usize,
) -> Result<Pmf<Transcript>, StructureError> {
    let conditioned = joint
        .condition(|(s, _)| s.x.get(player, 0) == x && s.m[0] == m && s.z[0] == z)
        .map_err(|_| StructureError::ZeroProbabilityCondition { x, m, z })?;
    Ok(conditioned.map(|(_, t)| t.clone()))
}

/// Report of the cross-ratio rectangle check for one player.
#[derive(Debug, Clone)]
pub struct RectangleReport {
    pub pass: bool,
    pub violation: Option<RectangleViolation>,
}

#[derive(Debug, Clone)]
pub struct RectangleViolation {
    pub x: InputMatrix,
    pub y: InputMatrix,
    /// "transcript" or "view".
    pub scope: &'static str,
    pub lhs: String,
    pub rhs: String,
}

/// Cross-ratio rectangle check against precomputed transcript laws: for all
/// input pairs and all transcripts,
/// `P[τ|X] · P[τ|Y] = P[τ|(X^i, Y^{-i})] · P[τ|(Y^i, X^{-i})]`
/// as exact rationals, and the same for player i's views. Passing certifies
/// the product decomposition of the transcript law without constructing it.
pub fn check_rectangle_on_laws(
    player: usize,
    laws: &BTreeMap<InputMatrix, Pmf<Transcript>>,
) -> RectangleReport {
    let inputs: Vec<&InputMatrix> = laws.keys().collect();
    let views: BTreeMap<&InputMatrix, Pmf<PlayerView>> = laws
        .iter()
        .map(|(x, law)| (x, law.map(|t| t.view(player))))
        .collect();
    for &x in &inputs {
        for &y in &inputs {
            let swapped_xy = y.with_row(player, x.row(player));
            let swapped_yx = x.with_row(player, y.row(player));
            let (a, b) = (&laws[x], &laws[y]);
            let (c, d) = (&laws[&swapped_xy], &laws[&swapped_yx]);
            let mut universe: BTreeSet<&Transcript> = a.support().collect();
            universe.extend(b.support());
            universe.extend(c.support());
            universe.extend(d.support());
            for t in universe {
                let lhs = a.prob(t) * b.prob(t);
                let rhs = c.prob(t) * d.prob(t);
                if lhs != rhs {
                    return RectangleReport {
                        pass: false,
                        violation: Some(RectangleViolation {
                            x: x.clone(),
                            y: y.clone(),
                            scope: "transcript",
                            lhs: fmt_rational(&lhs),
                            rhs: fmt_rational(&rhs),
                        }),
                    };
                }
            }
            let (av, bv) = (&views[x], &views[y]);
            let (cv, dv) = (&views[&swapped_xy], &views[&swapped_yx]);
            let mut universe: BTreeSet<&PlayerView> = av.support().collect();
            universe.extend(bv.support());
            universe.extend(cv.support());
            universe.extend(dv.support());
            for v in universe {
                let lhs = av.prob(v) * bv.prob(v);
                let rhs = cv.prob(v) * dv.prob(v);
                if lhs != rhs {
                    return RectangleReport {
                        pass: false,
                        violation: Some(RectangleViolation {
                            x: x.clone(),
                            y: y.clone(),
                            scope: "view",
                            lhs: fmt_rational(&lhs),
                            rhs: fmt_rational(&rhs),
                        }),
                    };
                }
            }
        }
    }
    RectangleReport {
        pass: true,
        violation: None,
    }
}

/// All transcript laws of a protocol, one per input.
pub fn all_transcript_laws(
    protocol: &Protocol,
    budget: u64,
) -> Result<BTreeMap<InputMatrix, Pmf<Transcript>>, ModelError> {
    let mut laws = BTreeMap::new();
    for input in InputMatrix::enumerate(protocol.k(), protocol.n()) {
        let law = protocol.transcript_distribution(&input, budget)?;
        laws.insert(input, law);
    }
    Ok(laws)
}

/// Cross-ratio rectangle check for one player over every input pair.
pub fn check_rectangle(
    protocol: &Protocol,
    player: usize,
    budget: u64,
) -> Result<RectangleReport, ModelError> {
    Ok(check_rectangle_on_laws(
        player,
        &all_transcript_laws(protocol, budget)?,
    ))
}

/// Signed margin of the diagonal inequality
/// `h²(Π(X), Π(Y)) ≥ ½·h²(Π(X), Π(Y with row ℓ replaced by X's row ℓ))`.
pub fn check_diagonal(
    protocol: &Protocol,
    x: &InputMatrix,
    y: &InputMatrix,
    row: usize,
    budget: u64,
) -> Result<f64, ModelError> {
    let mixed = y.with_row(row, x.row(row));
    let px = protocol.transcript_distribution(x, budget)?;
    let py = protocol.transcript_distribution(y, budget)?;
    let pm = protocol.transcript_distribution(&mixed, budget)?;
    Ok(px.hellinger_sq(&py) - 0.5 * px.hellinger_sq(&pm))
}

/// Signed margin of the conditional diagonal inequality for one-bit
/// protocols:
/// `h²(Π^i[0,0,z], Π^i[1,1,z]) ≥ ½·h²(Π^i on ē_{i,z}, Π^i on ē_z)`.
pub fn check_conditional_diagonal(
    protocol: &Protocol,
    player: usize,
    z: usize,
    budget: u64,
) -> Result<f64, StructureError> {
    if player == z {
        return Err(StructureError::SamePlayer(player));
    }
    let k = protocol.k();
    let joint = hard_joint(protocol, budget)?;
    let top_left = condition_joint(&joint, player, false, false, z)?.map(|t| t.view(player));
    let bottom_right = condition_joint(&joint, player, true, true, z)?.map(|t| t.view(player));
    let lhs = top_left.hellinger_sq(&bottom_right);
    let both = protocol.view_distribution(&zeros_at(&[player, z], k), player, budget)?;
    let one = protocol.view_distribution(&zeros_at(&[z], k), player, budget)?;
    Ok(lhs - 0.5 * both.hellinger_sq(&one))
}

/// Residuals of the two localization identities: changing only player i's
/// input moves the full-transcript distance exactly as much as the distance
/// on player i's own channel.
pub fn check_localization(
    protocol: &Protocol,
    player: usize,
    z: usize,
    budget: u64,
) -> Result<(f64, f64), StructureError> {
    if player == z {
        return Err(StructureError::SamePlayer(player));
    }
    let k = protocol.k();
    // Conditioned laws with M = 0 and the pointer fixed, player i's bit 0 vs 1.
    let joint = hard_joint(protocol, budget)?;
    let full_zero = condition_joint(&joint, player, false, false, z)?;
    let full_one = condition_joint(&joint, player, true, false, z)?;
    let view_zero = full_zero.map(|t| t.view(player));
    let view_one = full_one.map(|t| t.view(player));
    let conditioned = (full_zero.hellinger(&full_one) - view_zero.hellinger(&view_one)).abs();
    // Fixed inputs: only a pointer zero vs a pointer zero plus player i's zero.
    let both = zeros_at(&[player, z], k);
    let one = zeros_at(&[z], k);
    let full_both = protocol.transcript_distribution(&both, budget)?;
    let full_one = protocol.transcript_distribution(&one, budget)?;
    let fixed = (full_both.hellinger(&full_one)
        - full_both
            .map(|t| t.view(player))
            .hellinger(&full_one.map(|t| t.view(player))))
    .abs();
    Ok((conditioned, fixed))
}

/// Usefulness of every player: the mean over other players z of the squared
/// Hellinger distance between player i's view on "zeros at {i, z}" and on
/// "zero at z only" — how sensitive the protocol is to player i's zero when
/// another zero already exists.
pub fn usefulness(protocol: &Protocol, budget: u64) -> Result<Vec<f64>, ModelError> {
    let k = protocol.k();
    assert!(k >= 2, "usefulness needs at least two players");
    let mut gammas = Vec::with_capacity(k);
    for i in 0..k {
        let mut total = 0.0;
        for z in 0..k {
            if z == i {
                continue;
            }
            let both = protocol.view_distribution(&zeros_at(&[i, z], k), i, budget)?;
            let one = protocol.view_distribution(&zeros_at(&[z], k), i, budget)?;
            total += both.hellinger_sq(&one);
        }
        gammas.push(total / (k - 1) as f64);
    }
    Ok(gammas)
}

/// One evaluated link of the one-bit chain.
#[derive(Debug, Clone)]
pub struct ChainLink {
    pub id: &'static str,
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl ChainLink {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

impl serde::Serialize for ChainLink {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ChainLink", 5)?;
        s.serialize_field("id", self.id)?;
        s.serialize_field("detail", &self.detail)?;
        s.serialize_field("lhs", &crate::report::fmt_float(self.lhs))?;
        s.serialize_field("rhs", &crate::report::fmt_float(self.rhs))?;
        s.serialize_field("margin", &crate::report::fmt_float(self.margin()))?;
        s.end()
    }
}

/// Every link of the lower-bound chain for a one-bit AND protocol, with the
/// protocol's exactly measured worst-case error.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ChainReport {
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub delta: Rational,
    pub links: Vec<ChainLink>,
}

impl ChainReport {
    pub fn all_pass(&self, tol: f64) -> bool {
        self.links.iter().all(|l| l.margin() >= -tol)
    }
}

/// Evaluates the full chain on a one-bit AND protocol:
///
/// 1. per (player, pointer): the two switched-cost terms conditioned on the
///    pointer dominate a third of the squared view distance between
///    "zeros at {i, z}" and "zero at z";
/// 2. per player: the unconditioned terms dominate usefulness/6;
/// 3. per player pair: the squared transcript distances to the two-zero
///    input dominate (1−δ)²/8;
/// 4. total usefulness dominates k(1−δ)²/16;
/// 5. the switched information cost dominates (1−δ)²/96.
///
/// δ is measured exactly against the AND truth before evaluating.
pub fn verify_onebit_chain(protocol: &Protocol, budget: u64) -> Result<ChainReport, StructureError> {
    let k = protocol.k();
    let delta = protocol.error_probability(and_output, budget)?;
    let delta_f = crate::infotheory::rational_to_f64(&delta);
    let one_minus_delta_sq = (1.0 - delta_f) * (1.0 - delta_f);
    let xi = hard_one_bit(k)?;
    let joint = crate::costs::switched_transcript_joint(&xi, protocol, budget)?;
    let mut links = Vec::new();

    // Link 1: pointer-conditioned information vs view distance.
    for i in 0..k {
        for z in 0..k {
            if z == i {
                continue;
            }
            let given_z = joint
                .condition(|(s, _)| s.z[0] == z)
                .expect("every pointer value has positive mass");
            let mode_term = conditional_mutual_information_by(
                &given_z,
                |(s, _): &(SwitchedSample, Transcript)| s.m[0],
                |(_, t): &(SwitchedSample, Transcript)| t.view(i),
                |(s, _): &(SwitchedSample, Transcript)| s.x.get(i, 0),
            );
            let input_term = conditional_mutual_information_by(
                &given_z,
                |(s, _): &(SwitchedSample, Transcript)| s.x.get(i, 0),
                |(_, t): &(SwitchedSample, Transcript)| t.view(i),
                |(s, _): &(SwitchedSample, Transcript)| s.m[0],
            );
            let both = protocol.view_distribution(&zeros_at(&[i, z], k), i, budget)?;
            let one = protocol.view_distribution(&zeros_at(&[z], k), i, budget)?;
            links.push(ChainLink {
                id: "pointer-information",
                detail: format!("player {i}, pointer {z}"),
                lhs: mode_term + input_term,
                rhs: both.hellinger_sq(&one) / 3.0,
            });
        }
    }

    // Link 2: per-player information vs usefulness/6.
    let gammas = usefulness(protocol, budget)?;
    let sic = switched_ic(&xi, protocol, budget)?;
    for (i, gamma) in gammas.iter().enumerate() {
        links.push(ChainLink {
            id: "player-usefulness",
            detail: format!("player {i}"),
            lhs: sic.mode_terms[i] + sic.input_terms[i],
            rhs: gamma / 6.0,
        });
    }

    // Link 3: per-pair distinguishing distance.
    for i in 0..k {
        for j in i + 1..k {
            let only_i = protocol.transcript_distribution(&zeros_at(&[i], k), budget)?;
            let only_j = protocol.transcript_distribution(&zeros_at(&[j], k), budget)?;
            let both = protocol.transcript_distribution(&zeros_at(&[i, j], k), budget)?;
            links.push(ChainLink {
                id: "pair-distance",
                detail: format!("players {i},{j}"),
                lhs: only_i.hellinger_sq(&both) + only_j.hellinger_sq(&both),
                rhs: one_minus_delta_sq / 8.0,
            });
        }
    }

    // Link 4: total usefulness.
    links.push(ChainLink {
        id: "total-usefulness",
        detail: String::new(),
        lhs: gammas.iter().sum(),
        rhs: k as f64 * one_minus_delta_sq / 16.0,
    });

    // Link 5: the switched-cost floor.
    links.push(ChainLink {
        id: "sic-floor",
        detail: String::new(),
        lhs: sic.total,
        rhs: one_minus_delta_sq / 96.0,
    });

    Ok(ChainReport { delta, links })
}

/// Signed margin of `h(Π on ē_i, Π on ē_j) ≥ (1 − δ)/2` for i != j: a
/// correct protocol must locate a zero, not merely detect one.
pub fn check_pair_distinguishing(
    protocol: &Protocol,
    i: usize,
    j: usize,
    delta: &Rational,
    budget: u64,
) -> Result<f64, StructureError> {
    if i == j {
        return Err(StructureError::SamePlayer(i));
    }
    let k = protocol.k();
    let pi = protocol.transcript_distribution(&zeros_at(&[i], k), budget)?;
    let pj = protocol.transcript_distribution(&zeros_at(&[j], k), budget)?;
    let delta_f = crate::infotheory::rational_to_f64(delta);
    Ok(pi.hellinger(&pj) - (1.0 - delta_f) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infotheory::{ratio, TOLERANCE};
    use crate::model::{Message, Output, Payload, DEFAULT_BUDGET};
    use crate::protolib::{
        and_poll_protocol, constant_protocol, naive_protocol, sequential_search_protocol,
    };

    #[test]
    fn conditional_law_matches_fixed_input_when_forced() {
        // Given X^i = 1, M = 1, Z = z (z != i), the input is exactly the
        // single-zero vector at z, so the conditional law is the fixed-input
        // law as an identical pmf.
        let p = and_poll_protocol(3);
        for i in 0..3 {
            for z in 0..3 {
                if z == i {
                    continue;
                }
                let conditioned =
                    conditional_view_law(&p, i, true, true, z, DEFAULT_BUDGET).unwrap();
                let fixed = p
                    .view_distribution(&zeros_at(&[z], 3), i, DEFAULT_BUDGET)
                    .unwrap();
                assert_eq!(conditioned, fixed);
            }
        }
    }

    #[test]
    fn conditional_law_matches_mixture_oracle() {
        // Independent route for the easy-mode conditional: given X^i = 0,
        // M = 0, Z = z, the other rows are i.i.d. fair bits, so the view
        // law is the uniform mixture of fixed-input view laws.
        let p = and_poll_protocol(3);
        let k = 3usize;
        for i in 0..k {
            for z in 0..k {
                if z == i {
                    continue;
                }
                let conditioned =
                    conditional_view_law(&p, i, false, false, z, DEFAULT_BUDGET).unwrap();
                let mut entries: Vec<(crate::model::PlayerView, Rational)> = Vec::new();
                for code in 0u64..(1 << (k - 1)) {
                    let mut column = Vec::with_capacity(k);
                    let mut pos = 0;
                    for player in 0..k {
                        if player == i {
                            column.push(false);
                        } else {
                            column.push((code >> pos) & 1 == 1);
                            pos += 1;
                        }
                    }
                    let input = InputMatrix::from_column(&column);
                    let weight = Rational::new(1.into(), (1u64 << (k - 1)).into());
                    for (view, prob) in p
                        .view_distribution(&input, i, DEFAULT_BUDGET)
                        .unwrap()
                        .iter()
                    {
                        entries.push((view.clone(), prob * &weight));
                    }
                }
                let oracle = Pmf::new(entries).unwrap();
                assert_eq!(conditioned, oracle, "player {i}, pointer {z}");
            }
        }
    }

    #[test]
    fn chain_report_serializes_with_margins() {
        let p = and_poll_protocol(2);
        let report = verify_onebit_chain(&p, DEFAULT_BUDGET).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["delta"], "0/1");
        let link = &json["links"][0];
        assert!(link["lhs"].is_string());
        assert!(link["rhs"].is_string());
        assert!(link["margin"].is_string());
    }

    #[test]
    fn impossible_conditioning_is_an_error() {
        let p = and_poll_protocol(3);
        match conditional_view_law(&p, 0, false, true, 1, DEFAULT_BUDGET) {
            Err(StructureError::ZeroProbabilityCondition { .. }) => {}
            other => panic!("expected zero-probability error, got {other:?}"),
        }
    }

    #[test]
    fn rectangles_hold_for_harness_protocols() {
        let protocols = [
            naive_protocol(1, 3),
            naive_protocol(2, 2),
            sequential_search_protocol(2, 2),
            and_poll_protocol(3),
        ];
        for p in &protocols {
            for i in 0..p.k() {
                let report = check_rectangle(p, i, DEFAULT_BUDGET).unwrap();
                assert!(
                    report.pass,
                    "{} fails rectangle for player {i}: {:?}",
                    p.name(),
                    report.violation
                );
            }
        }
    }

    #[test]
    fn rectangle_fails_when_a_message_leaks_another_row() {
        // A fake law where player 1's single reply bit is the XOR of both
        // players' bits, which no private-channel protocol can produce.
        let mut laws = BTreeMap::new();
        for input in InputMatrix::enumerate(2, 1) {
            let bit = input.get(0, 0) ^ input.get(1, 0);
            let t = Transcript {
                messages: vec![
                    Message::to_player(0, Payload::bit(true)),
                    Message::to_coordinator(0, Payload::bit(bit)),
                ],
                output: Output::Bit(false),
            };
            laws.insert(input, Pmf::point_mass(t));
        }
        let report = check_rectangle_on_laws(0, &laws);
        assert!(!report.pass);
        assert!(report.violation.is_some());
    }

    #[test]
    fn diagonal_margin_zero_on_equal_inputs() {
        let p = and_poll_protocol(3);
        let x = zeros_at(&[1], 3);
        let margin = check_diagonal(&p, &x, &x, 0, DEFAULT_BUDGET).unwrap();
        assert!(margin.abs() <= TOLERANCE);
    }

    #[test]
    fn diagonal_holds_exhaustively_for_and_poll() {
        let p = and_poll_protocol(3);
        let inputs: Vec<InputMatrix> = InputMatrix::enumerate(3, 1).collect();
        for x in &inputs {
            for y in &inputs {
                for row in 0..3 {
                    let margin = check_diagonal(&p, x, y, row, DEFAULT_BUDGET).unwrap();
                    assert!(margin >= -TOLERANCE, "({x}, {y}, {row}): {margin}");
                }
            }
        }
    }

    #[test]
    fn conditional_diagonal_and_poll_all_pairs() {
        let p = and_poll_protocol(3);
        for i in 0..3 {
            for z in 0..3 {
                if i == z {
                    assert!(check_conditional_diagonal(&p, i, z, DEFAULT_BUDGET).is_err());
                    continue;
                }
                let margin = check_conditional_diagonal(&p, i, z, DEFAULT_BUDGET).unwrap();
                assert!(margin >= -TOLERANCE, "({i},{z}): {margin}");
            }
        }
    }

    #[test]
    fn conditional_diagonal_on_oblivious_protocol_is_zero() {
        let p = constant_protocol(3, 1, Output::Bit(false));
        let margin = check_conditional_diagonal(&p, 0, 1, DEFAULT_BUDGET).unwrap();
        assert!(margin.abs() <= TOLERANCE);
    }

    #[test]
    fn localization_residuals_vanish() {
        for p in [
            constant_protocol(3, 1, Output::Bit(false)),
            and_poll_protocol(3),
            naive_protocol(1, 3),
        ] {
            for i in 0..3 {
                for z in 0..3 {
                    if i == z {
                        continue;
                    }
                    let (conditioned, fixed) =
                        check_localization(&p, i, z, DEFAULT_BUDGET).unwrap();
                    assert!(conditioned <= TOLERANCE, "{} ({i},{z})", p.name());
                    assert!(fixed <= TOLERANCE, "{} ({i},{z})", p.name());
                }
            }
        }
    }

    #[test]
    fn usefulness_extremes() {
        // The naive protocol's views reveal the player's own bit, so the
        // two fixed inputs produce disjoint view supports.
        let gammas = usefulness(&naive_protocol(1, 3), DEFAULT_BUDGET).unwrap();
        for g in gammas {
            assert!((g - 1.0).abs() <= TOLERANCE);
        }
        let gammas =
            usefulness(&constant_protocol(3, 1, Output::Bit(false)), DEFAULT_BUDGET).unwrap();
        for g in gammas {
            assert!(g.abs() <= TOLERANCE);
        }
    }

    #[test]
    fn and_poll_total_usefulness_floor() {
        let gammas = usefulness(&and_poll_protocol(3), DEFAULT_BUDGET).unwrap();
        let total: f64 = gammas.iter().sum();
        assert!(total >= 3.0 / 16.0 - TOLERANCE);
    }

    #[test]
    fn chain_passes_for_correct_protocols() {
        for p in [and_poll_protocol(3), naive_protocol(1, 3)] {
            let report = verify_onebit_chain(&p, DEFAULT_BUDGET).unwrap();
            assert_eq!(report.delta, ratio(0, 1));
            assert!(
                report.all_pass(TOLERANCE),
                "{} fails: {:?}",
                p.name(),
                report
                    .links
                    .iter()
                    .filter(|l| l.margin() < -TOLERANCE)
                    .collect::<Vec<_>>()
            );
            let floor = report.links.iter().find(|l| l.id == "sic-floor").unwrap();
            assert!((floor.rhs - 1.0 / 96.0).abs() <= TOLERANCE);
        }
    }

    #[test]
    fn correct_protocols_distinguish_single_zero_inputs() {
        let p = and_poll_protocol(3);
        let delta = ratio(0, 1);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let margin =
                    check_pair_distinguishing(&p, i, j, &delta, DEFAULT_BUDGET).unwrap();
                assert!(margin >= -TOLERANCE);
            }
        }
    }
}
