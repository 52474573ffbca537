//! The task-allocation problem and the reduction from set disjointness to
//! it. In task allocation, k players hold capability sets over n tasks and
//! the tasks must be partitioned so that every task goes to a player whose
//! capability set contains it; the instance promises that the capability
//! sets jointly cover every task. The reduction runs an allocation protocol
//! on the complements of the disjointness inputs and then validates the
//! allocation in two steps: the coordinator checks that the claimed sets
//! form a partition, and each player checks its own set against its own
//! capabilities. Either check failing certifies an intersection.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{
    CoordinatorAction, InputMatrix, Message, Output, Payload, Protocol,
};
use crate::protolib::field_width;

/// An instance of the allocation problem: capability sets over `n` tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInstance {
    pub n: usize,
    pub k: usize,
    /// Capability set per player; sets serialize as sorted task lists.
    pub capabilities: Vec<BTreeSet<usize>>,
}

impl TaskInstance {
    pub fn new(n: usize, capabilities: Vec<BTreeSet<usize>>) -> TaskInstance {
        let k = capabilities.len();
        assert!(capabilities.iter().flatten().all(|&t| t < n));
        TaskInstance { n, k, capabilities }
    }

    /// The promise: every task is covered by some player's capabilities.
    pub fn satisfies_promise(&self) -> bool {
        (0..self.n).all(|t| self.capabilities.iter().any(|c| c.contains(&t)))
    }

    /// Row i bit j set iff player i can perform task j.
    pub fn to_matrix(&self) -> InputMatrix {
        InputMatrix::from_rows(
            self.capabilities
                .iter()
                .map(|c| (0..self.n).map(|t| c.contains(&t)).collect())
                .collect(),
        )
    }

    pub fn from_matrix(x: &InputMatrix) -> TaskInstance {
        TaskInstance {
            n: x.n(),
            k: x.k(),
            capabilities: (0..x.k())
                .map(|i| (0..x.n()).filter(|&t| x.get(i, t)).collect())
                .collect(),
        }
    }
}

/// A claimed allocation: one task set per player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    pub assigned: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AllocationViolation {
    /// A task assigned to more than one player.
    Overlap { task: usize, players: (usize, usize) },
    /// A task assigned to nobody.
    Uncovered { task: usize },
    /// A player assigned a task outside its capabilities.
    NotCapable { player: usize, task: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violation: Option<AllocationViolation>,
}

/// Checks partition, coverage and capability of a claimed allocation,
/// reporting the first violation found with its witness.
pub fn check_allocation(instance: &TaskInstance, allocation: &Allocation) -> ValidityReport {
    for task in 0..instance.n {
        let holders: Vec<usize> = (0..instance.k)
            .filter(|&i| allocation.assigned[i].contains(&task))
            .collect();
        if holders.len() > 1 {
            return ValidityReport {
                valid: false,
                violation: Some(AllocationViolation::Overlap {
                    task,
                    players: (holders[0], holders[1]),
                }),
            };
        }
        if holders.is_empty() {
            return ValidityReport {
                valid: false,
                violation: Some(AllocationViolation::Uncovered { task }),
            };
        }
    }
    for (player, assigned) in allocation.assigned.iter().enumerate() {
        for &task in assigned {
            if !instance.capabilities[player].contains(&task) {
                return ValidityReport {
                    valid: false,
                    violation: Some(AllocationViolation::NotCapable { player, task }),
                };
            }
        }
    }
    ValidityReport {
        valid: true,
        violation: None,
    }
}

/// Lowest-index greedy allocation of tasks to capable players. Tasks with
/// no capable player are left unassigned.
pub fn greedy_allocation(x: &InputMatrix) -> Vec<BTreeSet<usize>> {
    let mut assigned = vec![BTreeSet::new(); x.k()];
    for task in 0..x.n() {
        if let Some(player) = (0..x.k()).find(|&i| x.get(i, task)) {
            assigned[player].insert(task);
        }
    }
    assigned
}

/// An allocation protocol plus the phase metadata the reduction needs to
/// compose with it.
#[derive(Debug, Clone)]
pub struct TaProtocol {
    pub protocol: Protocol,
    /// Coordinator messages each player receives during the allocation
    /// phase. Must be input independent so a composed player can tell the
    /// allocation phase from the validation phase in its own view.
    pub coordinator_messages_per_player: Vec<usize>,
    /// When set, the last allocation-phase message to each player carries
    /// that player's assigned set as an n-bit membership vector.
    pub players_learn: bool,
}

/// Greedy allocation protocol: the coordinator pokes each player with one
/// bit, collects the n-bit capability rows, assigns every task to its
/// lowest-index capable player, and halts with the allocation. Zero error
/// on promise-satisfying instances; on promise violations the output is an
/// invalid allocation by construction.
pub fn greedy_ta_protocol(n: usize, k: usize) -> TaProtocol {
    let protocol = Protocol::new(
        "greedy-ta",
        k,
        n,
        k,
        crate::model::deterministic_tape(),
        vec![crate::model::deterministic_tape(); k],
        move |messages: &[Message], _| {
            let replies: Vec<&Message> = messages.iter().skip(1).step_by(2).collect();
            if replies.len() < k {
                return CoordinatorAction::Send {
                    player: replies.len(),
                    payload: Payload::bit(true),
                };
            }
            let rows: Vec<Vec<bool>> = replies.iter().map(|m| m.payload.bits().to_vec()).collect();
            CoordinatorAction::Halt(Output::Sets(greedy_allocation(&InputMatrix::from_rows(
                rows,
            ))))
        },
        |_, row: &[bool], _, _| Payload::from_bits(row.iter().copied()),
    );
    TaProtocol {
        protocol,
        coordinator_messages_per_player: vec![1; k],
        players_learn: false,
    }
}

/// Greedy allocation protocol that additionally downloads each player's
/// assigned set (n-bit vector, acknowledged with one bit) before halting.
pub fn greedy_ta_players_learn_protocol(n: usize, k: usize) -> TaProtocol {
    let protocol = Protocol::new(
        "greedy-ta-players-learn",
        k,
        n,
        2 * k,
        crate::model::deterministic_tape(),
        vec![crate::model::deterministic_tape(); k],
        move |messages: &[Message], _| {
            let replies: Vec<&Message> = messages.iter().skip(1).step_by(2).collect();
            if replies.len() < k {
                return CoordinatorAction::Send {
                    player: replies.len(),
                    payload: Payload::bit(true),
                };
            }
            let rows: Vec<Vec<bool>> = replies[..k]
                .iter()
                .map(|m| m.payload.bits().to_vec())
                .collect();
            let assigned = greedy_allocation(&InputMatrix::from_rows(rows));
            if replies.len() < 2 * k {
                let player = replies.len() - k;
                return CoordinatorAction::Send {
                    player,
                    payload: set_vector_payload(&assigned[player], n),
                };
            }
            CoordinatorAction::Halt(Output::Sets(assigned))
        },
        move |_, row: &[bool], view: &[Message], _| {
            let pokes = view
                .iter()
                .filter(|m| m.direction == crate::model::Direction::ToPlayer)
                .count();
            if pokes == 1 {
                Payload::from_bits(row.iter().copied())
            } else {
                Payload::bit(true) // acknowledge the download
            }
        },
    );
    TaProtocol {
        protocol,
        coordinator_messages_per_player: vec![2; k],
        players_learn: true,
    }
}

fn set_vector_payload(set: &BTreeSet<usize>, n: usize) -> Payload {
    Payload::from_bits((0..n).map(|t| set.contains(&t)))
}

fn set_from_vector(bits: &[bool]) -> BTreeSet<usize> {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(t, _)| t)
        .collect()
}

/// Encoding of an assigned set in the validation phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZEncoding {
    /// n-bit membership vector.
    Vector,
    /// Count-prefixed list of task indices.
    List,
}

fn encode_set(set: &BTreeSet<usize>, n: usize, encoding: ZEncoding) -> Payload {
    match encoding {
        ZEncoding::Vector => set_vector_payload(set, n),
        ZEncoding::List => {
            let mut p = Payload::from_uint(set.len() as u64, field_width(n + 1));
            for &task in set {
                if field_width(n) > 0 {
                    p = p.concat(&Payload::from_uint(task as u64, field_width(n)));
                }
            }
            p
        }
    }
}

fn decode_set(bits: &[bool], n: usize, encoding: ZEncoding) -> BTreeSet<usize> {
    match encoding {
        ZEncoding::Vector => set_from_vector(&bits[..n]),
        ZEncoding::List => {
            let payload = Payload::from_bits(bits.iter().copied());
            let cw = field_width(n + 1);
            let count = payload.slice(0, cw).as_uint() as usize;
            let tw = field_width(n);
            if tw == 0 {
                // Single task: the count alone determines the set.
                return if count == 1 { BTreeSet::from([0]) } else { BTreeSet::new() };
            }
            (0..count)
                .map(|t| payload.slice(cw + t * tw, tw).as_uint() as usize)
                .collect()
        }
    }
}

/// Builds a disjointness protocol from an allocation protocol.
///
/// Players run the allocation protocol on the complements of their
/// disjointness rows. When the allocation phase ends the coordinator checks
/// the partition property and, if it holds, each player validates its own
/// assigned set; the sets intersect exactly when some check fails.
///
/// With `players_learn`, validation is reversed: the coordinator pokes each
/// player, who echoes the assigned set it received along with its own
/// capability verdict, and the coordinator performs the partition check on
/// the echoes.
pub fn disj_via_ta(ta: &TaProtocol, encoding: ZEncoding) -> Protocol {
    let inner = ta.protocol.clone();
    let (n, k) = (inner.n(), inner.k());
    let inner_msgs = ta.coordinator_messages_per_player.clone();
    let players_learn = ta.players_learn;

    let inner_coord = inner.clone();
    let coordinator = move |messages: &[Message], tape: &[u64]| {
        // Replay the allocation phase against the accumulated transcript to
        // find where it ends and what it output.
        let mut consumed = 0;
        let allocation = loop {
            match inner_coord.run_coordinator(&messages[..consumed], tape) {
                CoordinatorAction::Send { player, payload } => {
                    if consumed + 2 <= messages.len() {
                        consumed += 2;
                    } else {
                        return CoordinatorAction::Send { player, payload };
                    }
                }
                CoordinatorAction::Halt(Output::Sets(sets)) => break sets,
                CoordinatorAction::Halt(other) => {
                    // Not an allocation protocol; pass the output through.
                    return CoordinatorAction::Halt(other);
                }
            }
        };
        let validation = &messages[consumed..];
        let sent = validation.len() / 2;
        if !players_learn {
            // Step 1: the claimed sets must partition the tasks.
            if !is_partition(&allocation, n) {
                return CoordinatorAction::Halt(Output::Bit(true));
            }
            // Step 2: download each player's set with a folded poke bit.
            if sent < k {
                let mut payload = Payload::bit(true);
                payload = payload.concat(&encode_set(&allocation[sent], n, encoding));
                return CoordinatorAction::Send {
                    player: sent,
                    payload,
                };
            }
            let all_ok = validation
                .iter()
                .skip(1)
                .step_by(2)
                .all(|m| m.payload.bits()[0]);
            CoordinatorAction::Halt(Output::Bit(!all_ok))
        } else {
            // Players echo their sets; poke each in turn.
            if sent < k {
                return CoordinatorAction::Send {
                    player: sent,
                    payload: Payload::bit(true),
                };
            }
            let mut echoed: Vec<BTreeSet<usize>> = Vec::with_capacity(k);
            let mut all_ok = true;
            for reply in validation.iter().skip(1).step_by(2) {
                let bits = reply.payload.bits();
                echoed.push(decode_set(&bits[..bits.len() - 1], n, encoding));
                all_ok &= bits[bits.len() - 1];
            }
            let disjoint = is_partition(&echoed, n) && all_ok;
            CoordinatorAction::Halt(Output::Bit(!disjoint))
        }
    };

    let inner_player = inner.clone();
    let player = move |i: usize, row: &[bool], view: &[Message], tape: &[u64]| {
        let complement: Vec<bool> = row.iter().map(|b| !b).collect();
        let pokes = view
            .iter()
            .filter(|m| m.direction == crate::model::Direction::ToPlayer)
            .count();
        if pokes <= inner_msgs[i] {
            return inner_player.run_player(i, &complement, view, tape);
        }
        // Validation phase.
        if !players_learn {
            let dispatch = view.last().expect("validation reply follows a dispatch");
            let assigned = decode_set(&dispatch.payload.bits()[1..], n, encoding);
            Payload::bit(assigned.iter().all(|&t| complement[t]))
        } else {
            // Echo the set delivered as the last allocation-phase message.
            let delivered = view
                .iter()
                .filter(|m| m.direction == crate::model::Direction::ToPlayer)
                .nth(inner_msgs[i] - 1)
                .expect("allocation phase delivered the assigned set");
            let assigned = set_from_vector(delivered.payload.bits());
            let ok = assigned.iter().all(|&t| complement[t]);
            encode_set(&assigned, n, encoding).concat(&Payload::bit(ok))
        }
    };

    Protocol::new(
        format!("disj-via-ta({})", inner.name()),
        k,
        n,
        inner.max_rounds() + k,
        inner.coordinator_tape().clone(),
        (0..k).map(|i| inner.player_tape(i).clone()).collect(),
        coordinator,
        player,
    )
}

fn is_partition(sets: &[BTreeSet<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    for set in sets {
        for &task in set {
            if task >= n || seen[task] {
                return false;
            }
            seen[task] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Exact validation-phase overhead of the reduction in bits, by encoding,
/// for the worst-case input (a full partition reaching every player).
pub fn reduction_overhead_bits(n: usize, k: usize, encoding: ZEncoding) -> u64 {
    match encoding {
        // Folded poke + n-bit vector down (or echoed up), 1-bit verdict.
        ZEncoding::Vector => (k * (n + 2)) as u64,
        // Folded poke + count prefix per player, task indices totalling one
        // partition, 1-bit verdict.
        ZEncoding::List => (k * (2 + field_width(n + 1)) + n * field_width(n)) as u64,
    }
}
