use thiserror::Error;

use crate::model::{Direction, Message, Output, Payload, Transcript};

use super::basic::poke_width;
use super::field_width;

#[derive(Debug, Error)]
pub enum CompressError {
    #[error("malformed sequential-search transcript: {0}")]
    MalformedTranscript(String),
    #[error("compressed form has {got} bits, expected exactly {want}")]
    WrongLength { got: usize, want: usize },
    #[error("symbol {symbol} out of range 0..={k}")]
    SymbolOutOfRange { symbol: u64, k: usize },
    #[error("nonzero padding after the halting symbol")]
    NonCanonicalPadding,
}

/// Bits per compressed coordinate symbol: one of {0, 1, …, k}, where 0
/// means "no player held a zero" and t means "first zero at player t".
pub fn search_symbol_width(k: usize) -> usize {
    field_width(k + 1)
}

/// Losslessly compresses a sequential-search transcript into exactly
/// `n·⌈log₂(k+1)⌉` bits: one first-zero symbol per coordinate, zero-padded
/// past an early halt.
pub fn compress_search_transcript(
    transcript: &Transcript,
    n: usize,
    k: usize,
) -> Result<Payload, CompressError> {
    let symbols = replay_symbols(transcript, n, k)?;
    let width = search_symbol_width(k);
    let mut payload = Payload::from_bits([]);
    for coord in 0..n {
        let symbol = symbols.get(coord).copied().unwrap_or(0);
        payload = payload.concat(&Payload::from_uint(symbol, width));
    }
    Ok(payload)
}

/// Reconstructs the unique sequential-search transcript a compressed form
/// came from. Only canonical forms (zero padding after a halting symbol)
/// are accepted.
pub fn decompress_search_transcript(
    bits: &Payload,
    n: usize,
    k: usize,
) -> Result<Transcript, CompressError> {
    let width = search_symbol_width(k);
    if bits.len() != n * width {
        return Err(CompressError::WrongLength {
            got: bits.len(),
            want: n * width,
        });
    }
    let pw = poke_width(n);
    let mut messages = Vec::new();
    let mut halted = false;
    for coord in 0..n {
        let symbol = bits.slice(coord * width, width).as_uint();
        if symbol > k as u64 {
            return Err(CompressError::SymbolOutOfRange { symbol, k });
        }
        if halted {
            if symbol != 0 {
                return Err(CompressError::NonCanonicalPadding);
            }
            continue;
        }
        let polls = if symbol == 0 { k } else { symbol as usize };
        for player in 0..polls {
            messages.push(Message::to_player(
                player,
                Payload::from_uint(coord as u64, pw),
            ));
            let bit = !(symbol != 0 && player + 1 == symbol as usize);
            messages.push(Message::to_coordinator(player, Payload::bit(bit)));
        }
        if symbol == 0 {
            halted = true;
        }
    }
    Ok(Transcript {
        messages,
        output: Output::Bit(halted),
    })
}

/// Replays a transcript against the sequential-search schedule, returning
/// the per-coordinate first-zero symbols for the processed coordinates.
fn replay_symbols(transcript: &Transcript, n: usize, k: usize) -> Result<Vec<u64>, CompressError> {
    let pw = poke_width(n);
    let mut symbols: Vec<u64> = Vec::new();
    let mut coord = 0usize;
    let mut player = 0usize;
    let mut halted = false;
    let mut msgs = transcript.messages.iter();
    loop {
        let poke = match msgs.next() {
            None => break,
            Some(m) => m,
        };
        if halted || coord == n {
            return Err(CompressError::MalformedTranscript(
                "messages after the protocol halted".into(),
            ));
        }
        if poke.direction != Direction::ToPlayer
            || poke.channel != player
            || poke.payload.len() != pw
            || poke.payload.as_uint() != coord as u64
        {
            return Err(CompressError::MalformedTranscript(format!(
                "unexpected poke at coordinate {coord}, player {player}"
            )));
        }
        let reply = msgs.next().ok_or_else(|| {
            CompressError::MalformedTranscript("poke without a reply".into())
        })?;
        if reply.direction != Direction::ToCoordinator
            || reply.channel != player
            || reply.payload.len() != 1
        {
            return Err(CompressError::MalformedTranscript(format!(
                "unexpected reply at coordinate {coord}, player {player}"
            )));
        }
        if reply.payload.bits()[0] {
            player += 1;
            if player == k {
                symbols.push(0);
                halted = true;
            }
        } else {
            symbols.push(player as u64 + 1);
            coord += 1;
            player = 0;
        }
    }
    if !halted && coord != n {
        return Err(CompressError::MalformedTranscript(
            "transcript stops mid-coordinate".into(),
        ));
    }
    let want_output = Output::Bit(halted);
    if transcript.output != want_output {
        return Err(CompressError::MalformedTranscript(
            "output does not match the replies".into(),
        ));
    }
    Ok(symbols)
}
