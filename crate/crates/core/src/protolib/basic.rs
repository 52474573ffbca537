use crate::model::{
    deterministic_tape, CoordinatorAction, InputMatrix, Message, Output, Payload, Protocol,
};

use super::index_width;

/// Set-disjointness truth: 1 iff some coordinate is all ones (the sets
/// intersect). For n = 1 this is the AND of all players' bits.
pub fn disj_output(x: &InputMatrix) -> Output {
    let intersecting = (0..x.n()).any(|j| (0..x.k()).all(|i| x.get(i, j)));
    Output::Bit(intersecting)
}

/// One-bit AND truth (alias for [`disj_output`] on one-coordinate inputs).
pub fn and_output(x: &InputMatrix) -> Output {
    disj_output(x)
}

/// A protocol that sends nothing and always halts with the given output.
pub fn constant_protocol(k: usize, n: usize, output: Output) -> Protocol {
    Protocol::new(
        "constant",
        k,
        n,
        0,
        deterministic_tape(),
        vec![deterministic_tape(); k],
        move |_, _| CoordinatorAction::Halt(output.clone()),
        |_, _, _, _| Payload::bit(true),
    )
}

/// The naive protocol: the coordinator pokes each player in turn with one
/// bit, each player replies with its full n-bit row, and the coordinator
/// outputs the disjointness answer. Zero error; cost k(n+1).
pub fn naive_protocol(n: usize, k: usize) -> Protocol {
    Protocol::new(
        "naive",
        k,
        n,
        k,
        deterministic_tape(),
        vec![deterministic_tape(); k],
        move |messages: &[Message], _| {
            let replies: Vec<&Message> = messages.iter().skip(1).step_by(2).collect();
            if replies.len() < k {
                CoordinatorAction::Send {
                    player: replies.len(),
                    payload: Payload::bit(true),
                }
            } else {
                let rows: Vec<Vec<bool>> =
                    replies.iter().map(|m| m.payload.bits().to_vec()).collect();
                CoordinatorAction::Halt(disj_output(&InputMatrix::from_rows(rows)))
            }
        },
        |_, row: &[bool], _, _| Payload::from_bits(row.iter().copied()),
    )
}

/// Width of the sequential-search poke payload: the queried coordinate
/// index in fixed width, at least one bit.
pub fn poke_width(n: usize) -> usize {
    index_width(n)
}

/// The sequential-search protocol: coordinate by coordinate, the
/// coordinator asks players in ascending order for their bit at the current
/// coordinate, abandoning the coordinate at the first zero. It halts with
/// "intersecting" the first time all k replies on a coordinate are one, and
/// with "disjoint" once every coordinate produced a zero. Each poke names
/// its coordinate so a player can answer from its own view alone.
pub fn sequential_search_protocol(n: usize, k: usize) -> Protocol {
    named_sequential_search("seq-search", n, k)
}

/// One-bit AND baseline: sequential search specialized to a single
/// coordinate. Polls players in order, halts 0 at the first zero, outputs 1
/// after k all-one replies.
pub fn and_poll_protocol(k: usize) -> Protocol {
    named_sequential_search("and-poll", 1, k)
}

fn named_sequential_search(name: &str, n: usize, k: usize) -> Protocol {
    let width = poke_width(n);
    Protocol::new(
        name,
        k,
        n,
        n * k,
        deterministic_tape(),
        vec![deterministic_tape(); k],
        move |messages: &[Message], _| {
            // Replay the replies to recover (coordinate, next player).
            let mut coord = 0usize;
            let mut player = 0usize;
            for reply in messages.iter().skip(1).step_by(2) {
                if reply.payload.bits()[0] {
                    player += 1;
                    if player == k {
                        return CoordinatorAction::Halt(Output::Bit(true));
                    }
                } else {
                    coord += 1;
                    player = 0;
                }
            }
            if coord == n {
                return CoordinatorAction::Halt(Output::Bit(false));
            }
            CoordinatorAction::Send {
                player,
                payload: Payload::from_uint(coord as u64, width),
            }
        },
        |_, row: &[bool], view: &[Message], _| {
            let poke = view.last().expect("player speaks only after a poke");
            Payload::bit(row[poke.payload.as_uint() as usize])
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{JointTapes, DEFAULT_BUDGET};

    fn run_deterministic(p: &Protocol, input: &InputMatrix) -> crate::model::Transcript {
        p.execute(
            input,
            &JointTapes {
                coordinator: vec![],
                players: vec![vec![]; p.k()],
            },
        )
        .unwrap()
    }

    #[test]
    fn naive_all_ones_trace() {
        let p = naive_protocol(2, 3);
        let t = run_deterministic(&p, &InputMatrix::all_ones(3, 2));
        assert_eq!(t.messages.len(), 6);
        let poke_bits: Vec<u64> = t
            .messages
            .iter()
            .step_by(2)
            .map(|m| m.payload.len() as u64)
            .collect();
        assert_eq!(poke_bits, vec![1, 1, 1]);
        let reply_bits: Vec<u64> = t
            .messages
            .iter()
            .skip(1)
            .step_by(2)
            .map(|m| m.payload.len() as u64)
            .collect();
        assert_eq!(reply_bits, vec![2, 2, 2]);
        assert_eq!(t.output, Output::Bit(true));
        assert_eq!(t.total_bits(), 9);
    }

    #[test]
    fn naive_cost_closed_form() {
        for (n, k) in [(1, 1), (1, 3), (2, 2), (2, 3)] {
            let p = naive_protocol(n, k);
            assert_eq!(
                p.communication_cost(DEFAULT_BUDGET).unwrap(),
                (k * (n + 1)) as u64
            );
        }
    }

    #[test]
    fn naive_is_zero_error() {
        for (n, k) in [(1, 2), (2, 2), (2, 3)] {
            let p = naive_protocol(n, k);
            let err = p.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
            assert_eq!(err, crate::infotheory::ratio(0, 1));
        }
    }

    #[test]
    fn search_skips_players_after_a_zero() {
        // Single coordinate, both players zero: player 2 is never contacted.
        let p = sequential_search_protocol(1, 2);
        let t = run_deterministic(&p, &InputMatrix::from_row_strings(&["0", "0"]));
        assert_eq!(t.messages.len(), 2);
        assert!(t.messages.iter().all(|m| m.channel == 0));
        assert_eq!(t.output, Output::Bit(false));
    }

    #[test]
    fn search_all_zeros_costs_one_poll_per_coordinate() {
        let p = sequential_search_protocol(2, 3);
        let t = run_deterministic(&p, &InputMatrix::from_row_strings(&["00", "00", "00"]));
        // One poke + one reply per coordinate, 1-bit pokes at this n.
        assert_eq!(t.total_bits(), 4);
        assert_eq!(t.output, Output::Bit(false));
    }

    #[test]
    fn search_all_ones_halts_inside_first_coordinate() {
        let p = sequential_search_protocol(2, 3);
        let t = run_deterministic(&p, &InputMatrix::all_ones(3, 2));
        assert_eq!(t.messages.len(), 6);
        assert!(t.messages.iter().skip(1).step_by(2).all(|m| m.payload.bits()[0]));
        assert_eq!(t.output, Output::Bit(true));
        assert_eq!(t.total_bits(), 6);
    }

    #[test]
    fn search_is_zero_error_exhaustively() {
        for (n, k) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)] {
            let p = sequential_search_protocol(n, k);
            let err = p.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
            assert_eq!(err, crate::infotheory::ratio(0, 1));
        }
    }

    #[test]
    fn search_worst_case_cost_from_enumeration() {
        // Frozen from the exhaustive oracle: the worst case puts the first
        // zero at the last player on every coordinate.
        let p = sequential_search_protocol(2, 3);
        assert_eq!(p.communication_cost(DEFAULT_BUDGET).unwrap(), 12);
        let p = sequential_search_protocol(1, 2);
        assert_eq!(p.communication_cost(DEFAULT_BUDGET).unwrap(), 4);
    }

    #[test]
    fn and_poll_traces() {
        let p = and_poll_protocol(3);
        let t = run_deterministic(&p, &InputMatrix::all_ones(3, 1));
        assert_eq!(t.output, Output::Bit(true));
        let t = run_deterministic(&p, &InputMatrix::from_row_strings(&["0", "1", "1"]));
        assert_eq!(t.messages.len(), 2);
        assert_eq!(t.output, Output::Bit(false));
    }

    #[test]
    fn and_poll_zero_error_up_to_four_players() {
        for k in 1..=4 {
            let p = and_poll_protocol(k);
            let err = p.error_probability(and_output, DEFAULT_BUDGET).unwrap();
            assert_eq!(err, crate::infotheory::ratio(0, 1));
        }
    }

    #[test]
    fn constant_protocol_costs_nothing() {
        let p = constant_protocol(3, 2, Output::Bit(false));
        assert_eq!(p.communication_cost(DEFAULT_BUDGET).unwrap(), 0);
        // Error 1 against AND truth, achieved at the all-ones input.
        let err = p.error_probability(disj_output, DEFAULT_BUDGET).unwrap();
        assert_eq!(err, crate::infotheory::ratio(1, 1));
    }
}
