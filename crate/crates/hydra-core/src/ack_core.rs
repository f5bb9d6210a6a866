//! Validity and sign of Ackermann words.
//!
//! Each function runs a fresh [`Engine`]; use the engine directly to share
//! the bounds memo, collect [`Stats`](crate::engine::Stats) or trace.

use crate::engine::{BoundsTable, Engine};
use crate::error::EngineError;
use crate::word::{Ack, AckWord, Rewrite, Verdict};

type Res<T> = Result<T, EngineError>;

fn engine() -> Engine<Ack> {
    Engine::new()
}

/// Every `(r, n, A_r(n))` with `r >= 2`, `n >= 3` and `A_r(n) <= ell`.
pub fn bounds(ell: i64) -> BoundsTable {
    engine().bounds(ell).expect("bounds never trips the guard")
}

/// Closed forms: `A_0`, `A_1` everywhere and `A_r` on `0..=2`.
pub fn ack_direct_small(r: u32, n: i64) -> Option<i64> {
    match (r, n) {
        (0, _) => n.checked_add(1),
        (1, _) => n.checked_mul(2),
        (_, 0) => Some(1),
        (_, 1) => Some(2),
        (_, 2) => Some(4),
        _ => None,
    }
}

/// Requires `eta(w) = 0`.
pub fn positive(w: &AckWord) -> Res<Verdict> {
    engine().positive_word(w)
}

/// `A_r^-1 u A_r v` with `u` on `A_0` only.
pub fn base_pinch(w: &AckWord) -> Res<Rewrite<AckWord>> {
    engine().base_pinch_word(w)
}

pub fn one_to_zero(w: &AckWord) -> Res<AckWord> {
    engine().one_to_zero_word(w)
}

pub fn pinch(r: u32, w: &AckWord) -> Res<Rewrite<AckWord>> {
    engine().pinch_word(r, w)
}

pub fn cut_rank(r: u32, w: &AckWord) -> Res<Rewrite<AckWord>> {
    engine().cut_rank_word(r, w)
}

pub fn final_pinch(r: u32, w: &AckWord) -> Res<Rewrite<AckWord>> {
    engine().final_pinch_word(r, w)
}

/// Remove the rightmost `A_r^-1` with `r >= 1`.
pub fn reduce(w: &AckWord) -> Res<Rewrite<AckWord>> {
    engine().reduce_word(w)
}

/// Validity and sign of `w(0)`. An `Err` is a broken internal invariant.
pub fn ackermann(w: &AckWord) -> Res<Verdict> {
    engine().sign(w)
}
