//! Coordinator message-passing model: k players, each holding one row of a
//! boolean input matrix, plus an input-less coordinator. Every player shares
//! a private two-way channel with the coordinator only; there are no
//! player-to-player channels. The model is sequential and round based: the
//! coordinator addresses exactly one player per round and that player
//! replies before the coordinator acts again, so messages on each channel
//! strictly alternate starting coordinator-first.
//!
//! All randomness lives in per-party finite tapes fixed up front, which
//! makes exhaustive enumeration of transcript distributions well-defined and
//! exact.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::infotheory::{Pmf, PmfError, Rational, Value};

/// Default guard on the number of enumerated (input, tape) tuples.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("input is {got_k}x{got_n} but the protocol expects {want_k}x{want_n}")]
    DimensionMismatch {
        got_k: usize,
        got_n: usize,
        want_k: usize,
        want_n: usize,
    },
    #[error("player index {player} out of range for k={k}")]
    PlayerOutOfRange { player: usize, k: usize },
    #[error("round bound {bound} exceeded without halting")]
    RoundBoundExceeded { bound: usize },
    #[error("model violation: {0}")]
    ModelViolation(String),
    #[error("enumeration needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("tape assignment has {got} player tapes, expected {want}")]
    TapeArityMismatch { got: usize, want: usize },
    #[error(transparent)]
    Pmf(#[from] PmfError),
}

/// A finite bit string, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Payload(Vec<bool>);

impl Payload {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Payload {
        Payload(bits.into_iter().collect())
    }

    pub fn bit(b: bool) -> Payload {
        Payload(vec![b])
    }

    /// Encodes `value` in exactly `width` bits, most significant first.
    pub fn from_uint(value: u64, width: usize) -> Payload {
        assert!(width == 64 || value < (1u64 << width), "value does not fit width");
        Payload((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn as_uint(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Payload) -> Payload {
        Payload(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn slice(&self, start: usize, len: usize) -> Payload {
        Payload(self.0[start..start + len].to_vec())
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl Serialize for Payload {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Payload {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(serde::de::Error::custom("payload must be a 0/1 string")),
            }
        }
        Ok(Payload(bits))
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    ToPlayer,
    ToCoordinator,
}

/// One message on one coordinator-player channel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Message {
    pub direction: Direction,
    pub channel: usize,
    pub payload: Payload,
}

impl Message {
    pub fn to_player(channel: usize, payload: Payload) -> Message {
        Message {
            direction: Direction::ToPlayer,
            channel,
            payload,
        }
    }

    pub fn to_coordinator(channel: usize, payload: Payload) -> Message {
        Message {
            direction: Direction::ToCoordinator,
            channel,
            payload,
        }
    }
}

/// Protocol output, recorded by the coordinator at halt.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Bit(bool),
    /// One task set per player, used by allocation-style protocols.
    Sets(Vec<BTreeSet<usize>>),
}

/// The full ordered message record of one protocol run.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transcript {
    pub messages: Vec<Message>,
    pub output: Output,
}

impl Transcript {
    /// Total bits sent on all channels.
    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.payload.len() as u64).sum()
    }

    pub fn view(&self, player: usize) -> PlayerView {
        PlayerView {
            channel: player,
            messages: restrict_messages(&self.messages, player),
        }
    }

    /// Canonical label for use as a joint-pmf component.
    pub fn to_value(&self) -> Value {
        Value::Seq(
            self.messages
                .iter()
                .map(message_value)
                .chain(std::iter::once(output_value(&self.output)))
                .collect(),
        )
    }
}

/// A transcript's restriction to one player's channel, order preserved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlayerView {
    pub channel: usize,
    pub messages: Vec<Message>,
}

impl PlayerView {
    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.payload.len() as u64).sum()
    }

    pub fn to_value(&self) -> Value {
        Value::Seq(self.messages.iter().map(message_value).collect())
    }
}

fn message_value(m: &Message) -> Value {
    Value::Seq(vec![
        Value::Bit(m.direction == Direction::ToPlayer),
        Value::Int(m.channel as i64),
        Value::bits(m.payload.bits().iter().copied()),
    ])
}

fn output_value(o: &Output) -> Value {
    match o {
        Output::Bit(b) => Value::Bit(*b),
        Output::Sets(sets) => Value::Seq(
            sets.iter()
                .map(|s| Value::ints(s.iter().map(|&t| t as i64)))
                .collect(),
        ),
    }
}

/// Returns the channel-`player` subsequence of a message list.
pub fn restrict_messages(messages: &[Message], player: usize) -> Vec<Message> {
    messages
        .iter()
        .filter(|m| m.channel == player)
        .cloned()
        .collect()
}

/// Returns a transcript's player view; errors if the player is out of range
/// for the given player count.
pub fn restrict_view(
    transcript: &Transcript,
    player: usize,
    k: usize,
) -> Result<PlayerView, ModelError> {
    if player >= k {
        return Err(ModelError::PlayerOutOfRange { player, k });
    }
    Ok(transcript.view(player))
}

/// A k×n boolean input matrix; row i is player i's input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputMatrix {
    k: usize,
    n: usize,
    bits: Vec<bool>, // row-major
}

impl InputMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> InputMatrix {
        let k = rows.len();
        assert!(k >= 1, "need at least one player row");
        let n = rows[0].len();
        assert!(n >= 1, "need at least one coordinate");
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        InputMatrix {
            k,
            n,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    /// Parses rows like `["110", "011"]`.
    pub fn from_row_strings(rows: &[&str]) -> InputMatrix {
        InputMatrix::from_rows(
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
        )
    }

    /// A one-column matrix from a length-k bit vector.
    pub fn from_column(column: &[bool]) -> InputMatrix {
        InputMatrix::from_rows(column.iter().map(|&b| vec![b]).collect())
    }

    pub fn all_ones(k: usize, n: usize) -> InputMatrix {
        InputMatrix::from_rows(vec![vec![true; n]; k])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, player: usize, coord: usize) -> bool {
        self.bits[player * self.n + coord]
    }

    pub fn row(&self, player: usize) -> &[bool] {
        &self.bits[player * self.n..(player + 1) * self.n]
    }

    pub fn column(&self, coord: usize) -> Vec<bool> {
        (0..self.k).map(|i| self.get(i, coord)).collect()
    }

    pub fn with_row(&self, player: usize, row: &[bool]) -> InputMatrix {
        assert_eq!(row.len(), self.n);
        let mut out = self.clone();
        out.bits[player * self.n..(player + 1) * self.n].copy_from_slice(row);
        out
    }

    /// Inserts a column at position `coord`, shifting later coordinates.
    pub fn insert_column(&self, coord: usize, column: &[bool]) -> InputMatrix {
        assert!(coord <= self.n);
        assert_eq!(column.len(), self.k);
        let rows = (0..self.k)
            .map(|i| {
                let mut row: Vec<bool> = self.row(i).to_vec();
                row.insert(coord, column[i]);
                row
            })
            .collect();
        InputMatrix::from_rows(rows)
    }

    /// Removes the column at `coord`; requires n ≥ 2.
    pub fn remove_column(&self, coord: usize) -> InputMatrix {
        assert!(coord < self.n);
        assert!(self.n >= 2);
        let rows = (0..self.k)
            .map(|i| {
                let mut row: Vec<bool> = self.row(i).to_vec();
                row.remove(coord);
                row
            })
            .collect();
        InputMatrix::from_rows(rows)
    }

    /// All 2^(k·n) matrices in a fixed order.
    pub fn enumerate(k: usize, n: usize) -> impl Iterator<Item = InputMatrix> {
        let cells = k * n;
        assert!(cells < 64, "input space too large to enumerate");
        (0u64..(1 << cells)).map(move |code| InputMatrix {
            k,
            n,
            bits: (0..cells).map(|c| (code >> c) & 1 == 1).collect(),
        })
    }

    /// Row i deleted; the remaining rows keep their order. Used as an
    /// opaque "everyone but i" label, not as a runnable input.
    pub fn without_row(&self, player: usize) -> Vec<Vec<bool>> {
        (0..self.k)
            .filter(|&i| i != player)
            .map(|i| self.row(i).to_vec())
            .collect()
    }

    pub fn to_value(&self) -> Value {
        Value::Seq(
            (0..self.k)
                .map(|i| Value::bits(self.row(i).iter().copied()))
                .collect(),
        )
    }
}

impl fmt::Display for InputMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            if i > 0 {
                write!(f, "|")?;
            }
            for &b in self.row(i) {
                write!(f, "{}", u8::from(b))?;
            }
        }
        Ok(())
    }
}

/// One fixed tape value per party.
pub type TapeValue = Vec<u64>;

/// A party's tape distribution: a finite set of tape values with exact
/// probabilities summing to 1. Parties' tapes are mutually independent.
pub type TapeDistribution = Pmf<TapeValue>;

/// Tape distribution of a party that uses no randomness.
pub fn deterministic_tape() -> TapeDistribution {
    Pmf::point_mass(Vec::new())
}

/// One joint tape assignment: a tape value for the coordinator and each player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JointTapes {
    pub coordinator: TapeValue,
    pub players: Vec<TapeValue>,
}

/// What the coordinator does with the floor: address one player or halt.
#[derive(Debug, Clone)]
pub enum CoordinatorAction {
    Send { player: usize, payload: Payload },
    Halt(Output),
}

type CoordinatorFn = dyn Fn(&[Message], &[u64]) -> CoordinatorAction + Send + Sync;
type PlayerFn = dyn Fn(usize, &[bool], &[Message], &[u64]) -> Payload + Send + Sync;

/// A protocol as a deterministic state machine over explicit tapes.
///
/// The coordinator step function sees the full transcript so far plus its
/// own tape; each player's step function sees only its index, its own input
/// row, its own channel view so far (including the message being answered)
/// and its own tape. Player privacy is enforced structurally by the
/// signature.
#[derive(Clone)]
pub struct Protocol {
    name: String,
    k: usize,
    n: usize,
    max_rounds: usize,
    coordinator_tape: TapeDistribution,
    player_tapes: Vec<TapeDistribution>,
    coordinator: Arc<CoordinatorFn>,
    player: Arc<PlayerFn>,
}

impl fmt::Debug for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Protocol")
            .field("name", &self.name)
            .field("k", &self.k)
            .field("n", &self.n)
            .field("max_rounds", &self.max_rounds)
            .finish_non_exhaustive()
    }
}

impl Protocol {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        k: usize,
        n: usize,
        max_rounds: usize,
        coordinator_tape: TapeDistribution,
        player_tapes: Vec<TapeDistribution>,
        coordinator: impl Fn(&[Message], &[u64]) -> CoordinatorAction + Send + Sync + 'static,
        player: impl Fn(usize, &[bool], &[Message], &[u64]) -> Payload + Send + Sync + 'static,
    ) -> Protocol {
        assert!(k >= 1 && n >= 1, "protocol needs k, n >= 1");
        assert_eq!(player_tapes.len(), k, "one tape distribution per player");
        Protocol {
            name: name.into(),
            k,
            n,
            max_rounds,
            coordinator_tape,
            player_tapes,
            coordinator: Arc::new(coordinator),
            player: Arc::new(player),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_rounds(&self) -> usize {
        self.max_rounds
    }

    pub fn coordinator_tape(&self) -> &TapeDistribution {
        &self.coordinator_tape
    }

    pub fn player_tape(&self, player: usize) -> &TapeDistribution {
        &self.player_tapes[player]
    }

    fn check_dims(&self, input: &InputMatrix) -> Result<(), ModelError> {
        if input.k() != self.k || input.n() != self.n {
            return Err(ModelError::DimensionMismatch {
                got_k: input.k(),
                got_n: input.n(),
                want_k: self.k,
                want_n: self.n,
            });
        }
        Ok(())
    }

    /// Runs the protocol to completion under one joint tape assignment.
    /// Pure: identical arguments always produce the identical transcript.
    pub fn execute(
        &self,
        input: &InputMatrix,
        tapes: &JointTapes,
    ) -> Result<Transcript, ModelError> {
        self.check_dims(input)?;
        if tapes.players.len() != self.k {
            return Err(ModelError::TapeArityMismatch {
                got: tapes.players.len(),
                want: self.k,
            });
        }
        let mut messages: Vec<Message> = Vec::new();
        let mut rounds = 0usize;
        loop {
            match (self.coordinator)(&messages, &tapes.coordinator) {
                CoordinatorAction::Halt(output) => {
                    return Ok(Transcript { messages, output });
                }
                CoordinatorAction::Send { player, payload } => {
                    if player >= self.k {
                        return Err(ModelError::PlayerOutOfRange { player, k: self.k });
                    }
                    if payload.is_empty() {
                        return Err(ModelError::ModelViolation(
                            "coordinator sent an empty payload".into(),
                        ));
                    }
                    if rounds == self.max_rounds {
                        return Err(ModelError::RoundBoundExceeded {
                            bound: self.max_rounds,
                        });
                    }
                    rounds += 1;
                    messages.push(Message::to_player(player, payload));
                    let view = restrict_messages(&messages, player);
                    let reply =
                        (self.player)(player, input.row(player), &view, &tapes.players[player]);
                    if reply.is_empty() {
                        return Err(ModelError::ModelViolation(format!(
                            "player {player} sent an empty payload"
                        )));
                    }
                    messages.push(Message::to_coordinator(player, reply));
                }
            }
        }
    }

    fn tape_space_size(&self) -> u64 {
        let mut size: u64 = self.coordinator_tape.support_len() as u64;
        for t in &self.player_tapes {
            size = size.saturating_mul(t.support_len() as u64);
        }
        size
    }

    /// Exact transcript distribution on one input, by enumerating every
    /// joint tape assignment and weighting by its exact probability.
    pub fn transcript_distribution(
        &self,
        input: &InputMatrix,
        budget: u64,
    ) -> Result<Pmf<Transcript>, ModelError> {
        self.check_dims(input)?;
        let needed = self.tape_space_size();
        if needed > budget {
            return Err(ModelError::BudgetExceeded { needed, budget });
        }
        let mut entries: Vec<(Transcript, Rational)> = Vec::new();
        self.for_each_joint_tape(|tapes, prob| {
            let transcript = self.execute(input, tapes)?;
            entries.push((transcript, prob));
            Ok(())
        })?;
        Ok(Pmf::new(entries)?)
    }

    /// Exact distribution of one player's view on one input: the
    /// push-forward of the transcript distribution under channel restriction.
    pub fn view_distribution(
        &self,
        input: &InputMatrix,
        player: usize,
        budget: u64,
    ) -> Result<Pmf<PlayerView>, ModelError> {
        if player >= self.k {
            return Err(ModelError::PlayerOutOfRange { player, k: self.k });
        }
        Ok(self
            .transcript_distribution(input, budget)?
            .map(|t| t.view(player)))
    }

    /// Worst-case total bits over all inputs and all tape assignments.
    pub fn communication_cost(&self, budget: u64) -> Result<u64, ModelError> {
        let inputs = 1u64
            .checked_shl((self.k * self.n) as u32)
            .ok_or(ModelError::BudgetExceeded {
                needed: u64::MAX,
                budget,
            })?;
        let needed = inputs.saturating_mul(self.tape_space_size());
        if needed > budget {
            return Err(ModelError::BudgetExceeded { needed, budget });
        }
        let mut worst = 0u64;
        for input in InputMatrix::enumerate(self.k, self.n) {
            self.for_each_joint_tape(|tapes, _| {
                worst = worst.max(self.execute(&input, tapes)?.total_bits());
                Ok(())
            })?;
        }
        Ok(worst)
    }

    /// Worst-case error against a reference truth function: the maximum over
    /// inputs of the exact tape-probability mass of wrong outputs.
    pub fn error_probability(
        &self,
        truth: impl Fn(&InputMatrix) -> Output,
        budget: u64,
    ) -> Result<Rational, ModelError> {
        let inputs = 1u64
            .checked_shl((self.k * self.n) as u32)
            .ok_or(ModelError::BudgetExceeded {
                needed: u64::MAX,
                budget,
            })?;
        let needed = inputs.saturating_mul(self.tape_space_size());
        if needed > budget {
            return Err(ModelError::BudgetExceeded { needed, budget });
        }
        let mut worst = Rational::zero();
        for input in InputMatrix::enumerate(self.k, self.n) {
            let want = truth(&input);
            let mut wrong = Rational::zero();
            self.for_each_joint_tape(|tapes, prob| {
                if self.execute(&input, tapes)?.output != want {
                    wrong += prob;
                }
                Ok(())
            })?;
            if wrong > worst {
                worst = wrong;
            }
        }
        Ok(worst)
    }

    /// Visits every joint tape assignment with its exact probability.
    pub fn for_each_joint_tape(
        &self,
        mut visit: impl FnMut(&JointTapes, Rational) -> Result<(), ModelError>,
    ) -> Result<(), ModelError> {
        let supports: Vec<Vec<(&TapeValue, &Rational)>> =
            std::iter::once(&self.coordinator_tape)
                .chain(self.player_tapes.iter())
                .map(|t| t.iter().collect())
                .collect();
        let mut idx = vec![0usize; supports.len()];
        loop {
            let mut prob = Rational::one();
            for (party, &i) in idx.iter().enumerate() {
                prob *= supports[party][i].1;
            }
            let tapes = JointTapes {
                coordinator: supports[0][idx[0]].0.clone(),
                players: (1..supports.len())
                    .map(|p| supports[p][idx[p]].0.clone())
                    .collect(),
            };
            visit(&tapes, prob)?;
            // Odometer increment.
            let mut party = supports.len();
            loop {
                if party == 0 {
                    return Ok(());
                }
                party -= 1;
                idx[party] += 1;
                if idx[party] < supports[party].len() {
                    break;
                }
                idx[party] = 0;
            }
        }
    }

    /// Invokes the coordinator step function directly. Used by protocol
    /// transformers that run this protocol as a phase of a larger one.
    pub fn run_coordinator(&self, messages: &[Message], tape: &[u64]) -> CoordinatorAction {
        (self.coordinator)(messages, tape)
    }

    /// Invokes a player step function directly; see [`Self::run_coordinator`].
    pub fn run_player(
        &self,
        player: usize,
        row: &[bool],
        view: &[Message],
        tape: &[u64],
    ) -> Payload {
        (self.player)(player, row, view, tape)
    }

    /// Rebuilds the protocol with every payload relabeled through `forward`
    /// (a bijection on bit strings, with `backward` its inverse). Outputs
    /// and tape distributions are untouched.
    pub fn map_payloads(
        &self,
        forward: impl Fn(&Payload) -> Payload + Send + Sync + 'static,
        backward: impl Fn(&Payload) -> Payload + Send + Sync + 'static,
    ) -> Protocol {
        let forward = Arc::new(forward);
        let backward = Arc::new(backward);
        let inner_coord = Arc::clone(&self.coordinator);
        let inner_player = Arc::clone(&self.player);
        let (fc, bc) = (Arc::clone(&forward), Arc::clone(&backward));
        let coordinator = move |messages: &[Message], tape: &[u64]| {
            let original: Vec<Message> = messages
                .iter()
                .map(|m| Message {
                    payload: bc(&m.payload),
                    ..m.clone()
                })
                .collect();
            match inner_coord(&original, tape) {
                CoordinatorAction::Send { player, payload } => CoordinatorAction::Send {
                    player,
                    payload: fc(&payload),
                },
                halt => halt,
            }
        };
        let player = move |i: usize, row: &[bool], view: &[Message], tape: &[u64]| {
            let original: Vec<Message> = view
                .iter()
                .map(|m| Message {
                    payload: backward(&m.payload),
                    ..m.clone()
                })
                .collect();
            forward(&inner_player(i, row, &original, tape))
        };
        Protocol {
            name: format!("{}(relabeled)", self.name),
            k: self.k,
            n: self.n,
            max_rounds: self.max_rounds,
            coordinator_tape: self.coordinator_tape.clone(),
            player_tapes: self.player_tapes.clone(),
            coordinator: Arc::new(coordinator),
            player: Arc::new(player),
        }
    }
}
