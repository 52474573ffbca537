//! The direct-sum embedding: given a protocol for the n-coordinate
//! disjointness problem, build a protocol for the one-bit AND problem by
//! planting the one-bit input at a random coordinate of a sampled
//! n-coordinate instance and running the base protocol on the result.
//!
//! Setup phase: the coordinator samples the planted coordinate j, pointers
//! for every other coordinate, modes for coordinates below j, and full
//! (mode, column) pairs for coordinates above j. It sends each player one
//! fixed-width setup message carrying j, the off-coordinate pointers, the
//! modes below j and the player's own bits above j; the player acknowledges
//! with one bit (the model has no broadcast channel, and every coordinator
//! message is answered). Players then sample their own bits below j from
//! private coins. The base protocol runs on the assembled input and its
//! output is passed through.

use num::One;

use crate::infotheory::{ratio, Pmf, Rational};
use crate::model::{
    CoordinatorAction, Message, Payload, Protocol, TapeValue,
};

use super::{field_width, BuildError};

/// Parameters and declared randomness budgets for one embedding.
#[derive(Debug, Clone)]
pub struct EmbeddingConfig {
    base: Protocol,
    /// Declared support size of the coordinator tape (setup sampling times
    /// the base coordinator tape).
    coordinator_outcomes: u64,
    /// Declared fair coins per player for below-j sampling.
    player_coins: usize,
}

impl EmbeddingConfig {
    pub fn new(base: &Protocol) -> Result<EmbeddingConfig, BuildError> {
        let (n, k) = (base.n(), base.k());
        if k < 2 {
            return Err(BuildError::TooFewPlayers(k));
        }
        let mut setup_outcomes: u64 = 0;
        for j in 0..n {
            let below = 1u64 << j;
            let above = (1u64 << k) + 1; // per coordinate: 2^k easy columns + 1 hard
            let pointers = (k as u64).pow((n - 1) as u32);
            setup_outcomes += pointers * below * above.pow((n - 1 - j) as u32);
        }
        Ok(EmbeddingConfig {
            base: base.clone(),
            coordinator_outcomes: setup_outcomes
                * base.coordinator_tape().support_len() as u64,
            player_coins: n - 1,
        })
    }

    pub fn base(&self) -> &Protocol {
        &self.base
    }

    pub fn coordinator_outcomes(&self) -> u64 {
        self.coordinator_outcomes
    }

    pub fn player_coins(&self) -> usize {
        self.player_coins
    }
}

/// Width of the per-player setup message. The mode part (j entries) and the
/// own-bits part (n−1−j entries) always total n−1 bits, so the width does
/// not depend on the sampled j.
fn setup_width(n: usize, k: usize) -> usize {
    field_width(n) + (n - 1) * field_width(k) + (n - 1)
}

/// Tape layout: [j, pointers (n−1), modes below j (j), (mode, column) pairs
/// above j (2·(n−1−j)), base coordinator tape…].
fn prefix_len(n: usize, j: usize) -> usize {
    1 + (n - 1) + j + 2 * (n - 1 - j)
}

pub(crate) struct SetupSample<'a> {
    pub j: usize,
    /// Pointer per off coordinate, ascending; index by [`Self::pointer`].
    pointers: &'a [u64],
    /// Modes for coordinates below j, ascending.
    pub modes_below: &'a [u64],
    /// (mode, column-code) per coordinate above j, ascending.
    pub above: Vec<(u64, u64)>,
    pub base_tape: &'a [u64],
}

impl SetupSample<'_> {
    #[allow(dead_code)] // exercised by the distribution-fidelity tests
    pub fn pointer(&self, coord: usize) -> usize {
        let idx = if coord < self.j { coord } else { coord - 1 };
        self.pointers[idx] as usize
    }
}

pub(crate) fn decode_coordinator_tape<'a>(tape: &'a [u64], n: usize) -> SetupSample<'a> {
    let j = tape[0] as usize;
    let pointers = &tape[1..n];
    let modes_below = &tape[n..n + j];
    let above: Vec<(u64, u64)> = (0..n - 1 - j)
        .map(|t| (tape[n + j + 2 * t], tape[n + j + 2 * t + 1]))
        .collect();
    SetupSample {
        j,
        pointers,
        modes_below,
        above,
        base_tape: &tape[prefix_len(n, j)..],
    }
}

/// Column code for the all-ones column with a zero at `z`: bit i is player
/// i's bit.
fn hard_column_code(z: usize, k: usize) -> u64 {
    ((1u64 << k) - 1) & !(1u64 << z)
}

fn build_coordinator_tape(base: &Protocol) -> Pmf<TapeValue> {
    let (n, k) = (base.n(), base.k());
    let mode_probs = [(0u64, ratio(2, 3)), (1u64, ratio(1, 3))];
    let mut entries: Vec<(TapeValue, Rational)> = Vec::new();
    let base_entries: Vec<(&TapeValue, &Rational)> = base.coordinator_tape().iter().collect();
    for j in 0..n {
        // Partial values paired with their setup probability, grown field
        // by field.
        let mut partials: Vec<(TapeValue, Rational)> =
            vec![(vec![j as u64], ratio(1, n as i64))];
        for _ in 0..n - 1 {
            partials = partials
                .into_iter()
                .flat_map(|(value, prob)| {
                    (0..k as u64).map(move |z| {
                        let mut v = value.clone();
                        v.push(z);
                        (v, prob.clone() * ratio(1, k as i64))
                    })
                })
                .collect();
        }
        for _ in 0..j {
            partials = partials
                .into_iter()
                .flat_map(|(value, prob)| {
                    mode_probs.clone().map(move |(m, p)| {
                        let mut v = value.clone();
                        v.push(m);
                        (v, prob.clone() * p)
                    })
                })
                .collect();
        }
        for t in 0..n - 1 - j {
            let easy_cell = ratio(2, 3) * Rational::new(1.into(), (1u64 << k).into());
            partials = partials
                .into_iter()
                .flat_map(|(value, prob)| {
                    // The pointer for the (j+1+t)-th coordinate sits at
                    // index 1 + (j + t) of the value (ascending skip of j).
                    let z = value[1 + j + t] as usize;
                    let mut options: Vec<(u64, u64, Rational)> = (0..1u64 << k)
                        .map(|code| (0u64, code, easy_cell.clone()))
                        .collect();
                    options.push((1, hard_column_code(z, k), ratio(1, 3)));
                    options.into_iter().map(move |(m, code, p)| {
                        let mut v = value.clone();
                        v.push(m);
                        v.push(code);
                        (v, prob.clone() * p)
                    })
                })
                .collect();
        }
        for (value, prob) in partials {
            for (base_value, base_prob) in &base_entries {
                let mut v = value.clone();
                v.extend_from_slice(base_value);
                entries.push((v, prob.clone() * *base_prob));
            }
        }
    }
    Pmf::new(entries).expect("embedding coordinator tape normalizes")
}

fn build_player_tape(base: &Protocol, player: usize) -> Pmf<TapeValue> {
    let n = base.n();
    let mut partials: Vec<(TapeValue, Rational)> = vec![(Vec::new(), Rational::one())];
    for _ in 0..n - 1 {
        partials = partials
            .into_iter()
            .flat_map(|(value, prob)| {
                [0u64, 1].map(move |c| {
                    let mut v = value.clone();
                    v.push(c);
                    (v, prob.clone() * ratio(1, 2))
                })
            })
            .collect();
    }
    let mut entries = Vec::new();
    for (value, prob) in partials {
        for (base_value, base_prob) in base.player_tape(player).iter() {
            let mut v = value.clone();
            v.extend_from_slice(base_value);
            entries.push((v, prob.clone() * base_prob));
        }
    }
    Pmf::new(entries).expect("embedding player tape normalizes")
}

fn encode_setup(tape: &[u64], n: usize, k: usize, player: usize) -> Payload {
    let s = decode_coordinator_tape(tape, n);
    let mut payload = Payload::from_uint(s.j as u64, field_width(n));
    for &z in s.pointers {
        payload = payload.concat(&Payload::from_uint(z, field_width(k)));
    }
    for &m in s.modes_below {
        payload = payload.concat(&Payload::bit(m == 1));
    }
    for &(_, code) in &s.above {
        payload = payload.concat(&Payload::bit((code >> player) & 1 == 1));
    }
    debug_assert_eq!(payload.len(), setup_width(n, k));
    payload
}

struct PlayerSetup {
    j: usize,
    pointers: Vec<usize>,
    modes_below: Vec<bool>,
    own_bits_above: Vec<bool>,
}

impl PlayerSetup {
    fn pointer(&self, coord: usize) -> usize {
        if coord < self.j {
            self.pointers[coord]
        } else {
            self.pointers[coord - 1]
        }
    }
}

fn decode_setup(payload: &Payload, n: usize, k: usize) -> PlayerSetup {
    let wj = field_width(n);
    let wz = field_width(k);
    let j = payload.slice(0, wj).as_uint() as usize;
    let pointers = (0..n - 1)
        .map(|t| payload.slice(wj + t * wz, wz).as_uint() as usize)
        .collect();
    let tail = wj + (n - 1) * wz;
    let modes_below = (0..j).map(|t| payload.bits()[tail + t]).collect();
    let own_bits_above = (j..n - 1).map(|t| payload.bits()[tail + t]).collect();
    PlayerSetup {
        j,
        pointers,
        modes_below,
        own_bits_above,
    }
}

/// Builds the one-bit AND protocol that embeds its input at a random
/// coordinate of the base protocol's input space.
pub fn direct_sum_protocol(cfg: &EmbeddingConfig) -> Result<Protocol, BuildError> {
    let base = cfg.base.clone();
    let (n, k) = (base.n(), base.k());
    if n == 0 {
        return Err(BuildError::EmptyBase);
    }
    let coordinator_tape = build_coordinator_tape(&base);
    let player_tapes: Vec<Pmf<TapeValue>> =
        (0..k).map(|i| build_player_tape(&base, i)).collect();
    let built = coordinator_tape.support_len() as u64;
    if built != cfg.coordinator_outcomes {
        return Err(BuildError::CoinBudgetMismatch {
            declared: cfg.coordinator_outcomes,
            built,
        });
    }
    let setup_rounds = if n >= 2 { k } else { 0 };
    let coins = cfg.player_coins;

    let base_coord = base.clone();
    let coordinator = move |messages: &[Message], tape: &[u64]| {
        if messages.len() < 2 * setup_rounds {
            let player = messages.len() / 2;
            return CoordinatorAction::Send {
                player,
                payload: encode_setup(tape, n, k, player),
            };
        }
        let s = decode_coordinator_tape(tape, n);
        base_coord.run_coordinator(&messages[2 * setup_rounds..], s.base_tape)
    };

    let base_player = base.clone();
    let player = move |i: usize, row: &[bool], view: &[Message], tape: &[u64]| {
        if setup_rounds > 0 && view.len() == 1 {
            return Payload::bit(true); // setup acknowledgement
        }
        let mut base_row = Vec::with_capacity(n);
        if setup_rounds > 0 {
            let setup = decode_setup(&view[0].payload, n, k);
            for coord in 0..n {
                if coord < setup.j {
                    let bit = if setup.modes_below[coord] {
                        setup.pointer(coord) != i
                    } else {
                        tape[coord] == 1
                    };
                    base_row.push(bit);
                } else if coord == setup.j {
                    base_row.push(row[0]);
                } else {
                    base_row.push(setup.own_bits_above[coord - setup.j - 1]);
                }
            }
        } else {
            base_row.push(row[0]);
        }
        let base_view = if setup_rounds > 0 { &view[2..] } else { view };
        base_player.run_player(i, &base_row, base_view, &tape[coins..])
    };

    Ok(Protocol::new(
        format!("direct-sum({})", base.name()),
        k,
        1,
        setup_rounds + base.max_rounds(),
        coordinator_tape,
        player_tapes,
        coordinator,
        player,
    ))
}
