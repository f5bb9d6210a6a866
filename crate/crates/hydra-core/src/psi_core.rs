//! Validity and sign of psi words. Mirrors [`crate::ack_core`].

use crate::engine::{BoundsTable, Engine};
use crate::error::EngineError;
use crate::word::{Psi, PsiWord, Rewrite, Verdict};

type Res<T> = Result<T, EngineError>;

fn engine() -> Engine<Psi> {
    Engine::new()
}

/// Every `(r, n, psi_r(n))` with `r >= 3`, `n <= -2`, `|psi_r(n)| <= ell`.
pub fn bounds2(ell: i64) -> BoundsTable {
    engine().bounds(ell).expect("bounds never trips the guard")
}

/// `psi_1`, `psi_2` everywhere, `psi_3` on `n <= 0`, and `psi_r(0)`,
/// `psi_r(-1)`.
pub fn psi_direct_small(r: u32, n: i64) -> Option<i64> {
    match (r, n) {
        (0, _) => None,
        (1, _) => n.checked_sub(1),
        (2, _) => n.checked_mul(2)?.checked_sub(1),
        (_, 0) => Some(-1),
        (_, -1) => Some(-(r as i64) - 1),
        (3, n) if n < 0 => {
            let p = 1i64.checked_shl(u32::try_from(-n).ok()?).filter(|p| *p > 0)?;
            2i64.checked_sub(p.checked_mul(3)?)
        }
        _ => None,
    }
}

pub fn positive2(f: &PsiWord) -> Res<Verdict> {
    engine().positive_word(f)
}

pub fn base_pinch2(f: &PsiWord) -> Res<Rewrite<PsiWord>> {
    engine().base_pinch_word(f)
}

pub fn one_to_zero2(f: &PsiWord) -> Res<PsiWord> {
    engine().one_to_zero_word(f)
}

pub fn pinch2(r: u32, f: &PsiWord) -> Res<Rewrite<PsiWord>> {
    engine().pinch_word(r, f)
}

pub fn cut_rank2(r: u32, f: &PsiWord) -> Res<Rewrite<PsiWord>> {
    engine().cut_rank_word(r, f)
}

pub fn final_pinch2(r: u32, f: &PsiWord) -> Res<Rewrite<PsiWord>> {
    engine().final_pinch_word(r, f)
}

/// Remove the rightmost `psi_r^-1` with `r >= 2`.
pub fn reduce2(f: &PsiWord) -> Res<Rewrite<PsiWord>> {
    engine().reduce_word(f)
}

/// Validity and sign of `f(0)`.
pub fn psi_sign(f: &PsiWord) -> Res<Verdict> {
    engine().sign(f)
}
