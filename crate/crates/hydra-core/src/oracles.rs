//! Slow, exact reference implementations used to test the engines.
//!
//! Every evaluator takes a magnitude cap and abstains with
//! [`ExactResult::Overflow`] rather than compute past it. Nothing here
//! shares code with the rewriting engines or the membership pipeline.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::hydra_alg::{Gen, GenLetter, GroupWord};
use crate::word::{AckWord, PsiWord, Sign, Verdict};

/// Default magnitude cap for the exact evaluators.
pub const DEFAULT_CAP: u64 = 10_000_000;
/// Default word length for [`member_enum_oracle`].
pub const DEFAULT_ENUM_LEN: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactResult {
    Invalid,
    /// Some magnitude went past the cap.
    Overflow,
    Value(BigInt),
}

impl ExactResult {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            ExactResult::Value(v) => Some(v),
            _ => None,
        }
    }

    /// The verdict this result implies, or `None` on overflow.
    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            ExactResult::Invalid => Some(Verdict::Invalid),
            ExactResult::Overflow => None,
            ExactResult::Value(v) => Some(Verdict::Valid(match v.sign() {
                num_bigint::Sign::Minus => Sign::Neg,
                num_bigint::Sign::NoSign => Sign::Zero,
                num_bigint::Sign::Plus => Sign::Pos,
            })),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetExact {
    /// The word is not in `a_1..a_k, t`.
    Invalid,
    Overflow,
    NotInAnyCoset,
    /// `w` lies in `H_k t^s`.
    Value(BigInt),
}

enum Stop {
    Invalid,
    Overflow,
}

type Ex = Result<BigInt, Stop>;

fn capped(x: BigInt, cap: &BigInt) -> Ex {
    if x.abs() > *cap {
        Err(Stop::Overflow)
    } else {
        Ok(x)
    }
}

fn finish(r: Ex) -> ExactResult {
    match r {
        Ok(v) => ExactResult::Value(v),
        Err(Stop::Invalid) => ExactResult::Invalid,
        Err(Stop::Overflow) => ExactResult::Overflow,
    }
}

fn big(cap: u64) -> BigInt {
    BigInt::from(cap)
}

// ----- Ackermann -------------------------------------------------------

fn ack(r: u32, n: &BigInt, cap: &BigInt) -> Ex {
    match r {
        0 => capped(n + 1, cap),
        1 => capped(n * 2, cap),
        _ => {
            if n.is_negative() {
                return Err(Stop::Invalid);
            }
            if n > cap {
                return Err(Stop::Overflow);
            }
            let steps = n.to_u64().unwrap();
            let mut x = BigInt::one();
            for _ in 0..steps {
                x = ack(r - 1, &x, cap)?;
            }
            Ok(x)
        }
    }
}

fn ack_inv(r: u32, n: &BigInt, cap: &BigInt) -> Ex {
    match r {
        0 => capped(n - 1, cap),
        1 => {
            if (n % 2u32).is_zero() {
                Ok(n / 2)
            } else {
                Err(Stop::Invalid)
            }
        }
        _ => {
            let mut m = BigInt::zero();
            loop {
                match ack(r, &m, cap) {
                    Ok(v) if v == *n => return Ok(m),
                    Ok(v) if v < *n => m += 1,
                    _ => return Err(Stop::Invalid),
                }
            }
        }
    }
}

/// `A_r(n)`.
pub fn ack_fn_exact(r: u32, n: i64, cap: u64) -> ExactResult {
    finish(ack(r, &BigInt::from(n), &big(cap)))
}

/// `w(0)` for an Ackermann word.
pub fn eval_ack_exact(w: &AckWord, cap: u64) -> ExactResult {
    let cap = big(cap);
    let mut x = BigInt::zero();
    for l in w.letters().iter().rev() {
        let r = if l.inv { ack_inv(l.level, &x, &cap) } else { ack(l.level, &x, &cap) };
        match r {
            Ok(v) => x = v,
            Err(e) => return finish(Err(e)),
        }
    }
    ExactResult::Value(x)
}

// ----- psi ------------------------------------------------------------

fn psi(r: u32, n: &BigInt, cap: &BigInt) -> Ex {
    match r {
        0 => Err(Stop::Invalid),
        1 => capped(n - 1, cap),
        2 => capped(n * 2 - 1, cap),
        _ => {
            if n.is_positive() {
                return Err(Stop::Invalid);
            }
            let steps = (-n).to_u64().filter(|&s| BigInt::from(s) <= *cap).ok_or(Stop::Overflow)?;
            if r == 3 {
                // 2 - 3 * 2^-n
                if steps > cap.bits() + 2 {
                    return Err(Stop::Overflow);
                }
                return capped(BigInt::from(2) - (BigInt::from(3) << steps), cap);
            }
            let mut x = BigInt::from(-1);
            for _ in 0..steps {
                x = psi(r - 1, &x, cap)? - 1;
                x = capped(x, cap)?;
            }
            Ok(x)
        }
    }
}

fn psi_inv(r: u32, n: &BigInt, cap: &BigInt) -> Ex {
    match r {
        1 => capped(n + 1, cap),
        2 => {
            if (n % 2u32).is_zero() {
                Err(Stop::Invalid)
            } else {
                Ok((n + 1) / 2)
            }
        }
        _ => {
            // psi_r is increasing on -N with psi_r(m) <= m
            if !n.is_negative() {
                return Err(Stop::Invalid);
            }
            let (mut lo, mut hi) = (n.clone(), BigInt::zero());
            while lo <= hi {
                let mid = (&lo + &hi).div_floor(&BigInt::from(2));
                match psi(r, &mid, cap) {
                    Ok(v) if v == *n => return Ok(mid),
                    Ok(v) if v < *n => lo = mid + 1,
                    Ok(_) => hi = mid - 1,
                    Err(Stop::Overflow) => lo = mid + 1,
                    Err(Stop::Invalid) => unreachable!(),
                }
            }
            Err(Stop::Invalid)
        }
    }
}

/// `psi_r(n)`.
pub fn psi_fn_exact(r: u32, n: i64, cap: u64) -> ExactResult {
    psi_fn_exact_big(r, &BigInt::from(n), &big(cap))
}

/// As [`psi_fn_exact`] with an arbitrary cap, e.g. `10^40`.
pub fn psi_fn_exact_big(r: u32, n: &BigInt, cap: &BigInt) -> ExactResult {
    finish(psi(r, n, cap))
}

/// `f(0)` for a psi word.
pub fn eval_psi_exact(f: &PsiWord, cap: u64) -> ExactResult {
    let cap = big(cap);
    let mut x = BigInt::zero();
    for l in f.letters().iter().rev() {
        let r = l.level + 1;
        let y = if l.inv { psi_inv(r, &x, &cap) } else { psi(r, &x, &cap) };
        match y {
            Ok(v) => x = v,
            Err(e) => return finish(Err(e)),
        }
    }
    ExactResult::Value(x)
}

// ----- hydra groups ---------------------------------------------------

/// `(index, inverse)` letters over `a_1..a_k`.
type AWord = Vec<(u32, bool)>;

fn free(w: impl IntoIterator<Item = (u32, bool)>) -> AWord {
    let mut out: AWord = Vec::new();
    for (i, e) in w {
        if out.last() == Some(&(i, !e)) {
            out.pop();
        } else {
            out.push((i, e));
        }
    }
    out
}

fn invert(w: &[(u32, bool)]) -> AWord {
    w.iter().rev().map(|&(i, e)| (i, !e)).collect()
}

/// `theta^{-1}(a_i)`, by `theta^{-1}(a_i) = a_i theta^{-1}(a_{i-1})^{-1}`.
fn theta_inv_gen(i: u32) -> AWord {
    if i == 1 {
        return vec![(1, false)];
    }
    let mut out = vec![(i, false)];
    out.extend(invert(&theta_inv_gen(i - 1)));
    free(out)
}

/// One application of `theta^{±1}` to a word, letter by letter.
fn theta_once(w: &[(u32, bool)], forward: bool) -> AWord {
    let mut out = Vec::new();
    for &(i, e) in w {
        let img = if forward {
            if i == 1 {
                vec![(1, false)]
            } else {
                vec![(i, false), (i - 1, false)]
            }
        } else {
            theta_inv_gen(i)
        };
        if e {
            out.extend(invert(&img));
        } else {
            out.extend(img);
        }
    }
    free(out)
}

fn theta_pow(w: &[(u32, bool)], n: i64) -> AWord {
    let mut cur = w.to_vec();
    for _ in 0..n.unsigned_abs() {
        cur = theta_once(&cur, n > 0);
    }
    cur
}

/// `t^r v` by moving one `t` at a time to the front.
fn collect_t(w: &GroupWord) -> Option<(i64, AWord)> {
    let mut r = 0i64;
    let mut body: AWord = Vec::new();
    // w = prefix . x ; processing from the left keeps t^r body as an invariant
    for l in w.letters() {
        match l.gen {
            Gen::A(i) => body = free(body.into_iter().chain([(i, l.inv)])),
            // t^r body t = t^{r+1} theta(body)
            Gen::T => {
                let e = if l.inv { -1 } else { 1 };
                body = theta_pow(&body, e);
                r += e;
            }
            Gen::P => return None,
        }
    }
    Some((r, body))
}

struct CosetOracle {
    cap: BigInt,
}

impl CosetOracle {
    fn psi(&self, r: u32, n: &BigInt) -> Ex {
        psi(r, n, &self.cap)
    }

    fn psi_inv(&self, r: u32, n: &BigInt) -> Ex {
        psi_inv(r, n, &self.cap)
    }

    /// `Some(s)` when `t^r v` lies in `H_k t^s`, `None` when in no coset.
    fn push(&self, m: u32, v: &[(u32, bool)], r: BigInt) -> Result<Option<BigInt>, Stop> {
        if m == 1 {
            let l: i64 = v.iter().map(|&(_, e)| if e { -1 } else { 1 }).sum();
            return capped(r - l, &self.cap).map(Some);
        }
        let mut s = r;
        for piece in split_pieces(v, m) {
            match self.piece(m, &piece, s)? {
                None => return Ok(None),
                Some(next) => s = next,
            }
        }
        Ok(Some(s))
    }

    fn piece(&self, m: u32, pi: &[(u32, bool)], r: BigInt) -> Result<Option<BigInt>, Stop> {
        let eps1 = pi.first() == Some(&(m, false));
        let eps2 = pi.len() > eps1 as usize && pi.last() == Some(&(m, true));
        let u = &pi[eps1 as usize..pi.len() - eps2 as usize];
        if m == 2 {
            let l: i64 = u.iter().map(|&(_, e)| if e { -1 } else { 1 }).sum();
            let mut x = r;
            if eps1 {
                x = self.psi(2, &x)?;
            }
            x = capped(x - l, &self.cap)?;
            if eps2 {
                return match self.psi_inv(2, &x) {
                    Ok(v) => Ok(Some(v)),
                    Err(Stop::Invalid) => Ok(None),
                    Err(e) => Err(e),
                };
            }
            return Ok(Some(x));
        }
        // conditions on the front of the piece
        let (delta, xu): (BigInt, AWord) = if !eps1 {
            (r, u.to_vec())
        } else if !r.is_positive() {
            (self.psi(m, &r)?, u.to_vec())
        } else {
            let rr = r.to_i64().filter(|&x| x as usize <= pi.len() + 1);
            let Some(rr) = rr else { return Ok(None) };
            let pre = theta_pow(&[(m, false)], rr - 1);
            if !pi.starts_with(&pre) {
                return Ok(None);
            }
            // x_r^{-1} u = theta^r(a_m)^{-1} a_m u
            let x_r = free([(m, true)].into_iter().chain(theta_pow(&[(m, false)], rr)));
            let body = free(invert(&x_r).into_iter().chain(u.iter().copied()));
            (r - 1, body)
        };
        // conditions on the back
        if !eps2 {
            return self.push(m - 1, &xu, delta);
        }
        if let Some(g) = self.push(m - 1, &xu, delta.clone())? {
            match self.psi_inv(m, &g) {
                Ok(s) if !s.is_positive() => return Ok(Some(s)),
                Ok(_) | Err(Stop::Invalid) => {}
                Err(e) => return Err(e),
            }
        }
        for s in 1..=pi.len() as i64 {
            let suffix = invert(&theta_pow(&[(m, false)], s - 1));
            if suffix.len() > pi.len() {
                break;
            }
            if !pi.ends_with(&suffix) {
                continue;
            }
            let x_s = free([(m, true)].into_iter().chain(theta_pow(&[(m, false)], s)));
            let word = free(xu.iter().copied().chain(x_s));
            if self.push(m - 1, &word, delta.clone())? == Some(BigInt::from(s - 1)) {
                return Ok(Some(BigInt::from(s)));
            }
        }
        Ok(None)
    }
}

/// Maximal subwords `a_m^e1 (rank < m)* a_m^-e2`, scanning left to right.
fn split_pieces(v: &[(u32, bool)], m: u32) -> Vec<AWord> {
    let mut out = Vec::new();
    let mut cur: AWord = Vec::new();
    for &(i, e) in v {
        let starts_new = i == m && !e;
        if starts_new && !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
        cur.push((i, e));
        if i == m && e {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// The `s` with `w` in `H_k t^s`, computed with exact integers.
pub fn coset_exponent_exact(k: u32, w: &GroupWord, cap: u64) -> CosetExact {
    if w.letters().iter().any(|l| matches!(l.gen, Gen::A(i) if i == 0 || i > k)) {
        return CosetExact::Invalid;
    }
    let Some((r, body)) = collect_t(w) else {
        return CosetExact::Invalid;
    };
    let oracle = CosetOracle { cap: big(cap) };
    match oracle.push(k, &body, BigInt::from(r)) {
        Ok(Some(s)) => CosetExact::Value(s),
        Ok(None) => CosetExact::NotInAnyCoset,
        Err(Stop::Overflow) => CosetExact::Overflow,
        Err(Stop::Invalid) => CosetExact::NotInAnyCoset,
    }
}

/// Normal forms of all reduced words of length at most `len` in the free
/// basis `a_1 t, ..., a_k t` of `H_k`.
pub fn enumerate_h(k: u32, len: usize) -> HashSet<(i64, AWord)> {
    // (generators so far, normal form of their product)
    type Node = (Vec<(u32, bool)>, (i64, AWord));
    let mut seen = HashSet::new();
    let mut frontier: Vec<Node> = vec![(Vec::new(), (0, Vec::new()))];
    seen.insert((0, Vec::new()));
    for _ in 0..len {
        let mut next = Vec::new();
        for (h, (r, body)) in &frontier {
            for i in 1..=k {
                for inv in [false, true] {
                    if h.last() == Some(&(i, !inv)) {
                        continue;
                    }
                    // (a_i t)^{±1} appended on the right of t^r body
                    let (r2, body2) = if inv {
                        let b = theta_pow(body, -1);
                        (r - 1, free(b.into_iter().chain([(i, true)])))
                    } else {
                        let b = free(body.iter().copied().chain([(i, false)]));
                        (r + 1, theta_pow(&b, 1))
                    };
                    let mut h2 = h.clone();
                    h2.push((i, inv));
                    seen.insert((r2, body2.clone()));
                    next.push((h2, (r2, body2)));
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Membership by enumeration. `Some(true)` if some `H_k` word of length at
/// most `len` has the same normal form; `Some(false)` only in the cases a
/// negative can be certified (`k = 1`, or a pure power of `t`); otherwise
/// `None`.
pub fn member_enum_oracle(k: u32, w: &GroupWord, len: usize) -> Option<bool> {
    member_enum_with(&enumerate_h(k, len), k, w)
}

/// As [`member_enum_oracle`] with a precomputed [`enumerate_h`].
pub fn member_enum_with(table: &HashSet<(i64, AWord)>, k: u32, w: &GroupWord) -> Option<bool> {
    if w.letters().iter().any(|l| matches!(l.gen, Gen::A(i) if i == 0 || i > k)) {
        return None;
    }
    let (r, body) = collect_t(w)?;
    if table.contains(&(r, body.clone())) {
        return Some(true);
    }
    if body.is_empty() && r != 0 {
        // H_k meets <t> trivially
        return Some(false);
    }
    if k == 1 {
        // G_1 = Z^2 and H_1 = <a_1 t>
        let l: i64 = body.iter().map(|&(_, e)| if e { -1 } else { 1 }).sum();
        return Some(l == r);
    }
    None
}

/// Convert a word from the group grammar to the oracle's letters.
pub fn a_letters(w: &GroupWord) -> Option<AWord> {
    w.letters().iter().map(|l: &GenLetter| l.a_index().map(|i| (i, l.inv))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_group_word;

    #[test]
    fn ack_table() {
        assert_eq!(ack_fn_exact(3, 4, 1_000_000), ExactResult::Value(65536.into()));
        assert_eq!(ack_fn_exact(4, 3, 1_000_000), ExactResult::Value(65536.into()));
        assert_eq!(ack_fn_exact(3, 5, 1_000_000), ExactResult::Overflow);
        assert_eq!(ack_fn_exact(2, -1, 100), ExactResult::Invalid);
    }

    #[test]
    fn psi_table() {
        assert_eq!(psi_fn_exact(3, -4, 1000), ExactResult::Value((-46).into()));
        let cap = BigInt::from(10u32).pow(40);
        let want = BigInt::one() - (BigInt::from(3) << 95u32);
        assert_eq!(psi_fn_exact_big(4, &BigInt::from(-3), &cap), ExactResult::Value(want));
        assert_eq!(psi_fn_exact(3, 1, 1000), ExactResult::Invalid);
    }

    #[test]
    fn psi_inverse_search() {
        let cap = big(1000);
        assert_eq!(psi_inv(3, &BigInt::from(-22), &cap).ok(), Some(BigInt::from(-3)));
        assert!(psi_inv(3, &BigInt::from(-21), &cap).is_err());
        assert_eq!(psi_inv(4, &BigInt::from(-95), &cap).ok(), Some(BigInt::from(-2)));
    }

    #[test]
    fn coset_examples() {
        let g = |s: &str| parse_group_word(s).unwrap();
        assert_eq!(coset_exponent_exact(3, &g("t^-2 a3 a1"), DEFAULT_CAP), CosetExact::Value((-11).into()));
        assert_eq!(coset_exponent_exact(3, &g("a3^4 a2 t a1 a2^-1 a3^-4"), u64::MAX), CosetExact::Value(0.into()));
        assert_eq!(coset_exponent_exact(2, &g("a1"), DEFAULT_CAP), CosetExact::Value((-1).into()));
    }

    #[test]
    fn enumeration_examples() {
        let g = |s: &str| parse_group_word(s).unwrap();
        assert_eq!(member_enum_oracle(2, &g("a2 t"), 4), Some(true));
        assert_eq!(member_enum_oracle(2, &g("t"), 4), Some(false));
        assert_eq!(member_enum_oracle(3, &g("a3^3 a2 t a1 a2^-1 a3^-3"), 4), None);
    }
}
