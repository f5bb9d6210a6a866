//! The rewriting engine shared by `ack_core` and `psi_core`.
//!
//! Everything here works in oriented coordinates (see [`Family`]). Internal
//! routines take a word already split as `H_r^-1 u H_r v` and report the
//! result as a power `l` meaning the word `U^l v`; the public wrappers in
//! the two family modules rebuild words from that.

use std::marker::PhantomData;

use crate::error::EngineError;
use crate::word::{eta, max_level, Family, Letter, Rewrite, Sign, Verdict, Word};

type Res<T> = Result<T, EngineError>;

/// Counters collected while an engine runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Length budgets checked (each one either held or raised an error).
    pub budget_checks: u64,
    /// Largest absolute value of any integer the engine stored.
    pub max_abs: i64,
    pub positive_calls: u64,
    pub pinch_calls: u64,
    pub reduce_calls: u64,
}

/// One rewriting step, recorded when tracing is on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub op: &'static str,
    pub before: String,
    pub after: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Pinched {
    Invalid,
    /// The input is equivalent to `U^l v`.
    Power(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Cut {
    Invalid,
    /// Equivalent to `U^l v`.
    Done(i64),
    /// Equivalent to `U^i H_r^-1 u H_r v` with `rank(u) <= r - 2`.
    Reduced { i: i64, u: Vec<Letter> },
}

/// Rewriting context: bounds memo, arithmetic guard, statistics, trace.
pub struct Engine<F: Family> {
    rows: Vec<Vec<i64>>,
    ceiling: i64,
    guard: Option<i64>,
    stats: Stats,
    trace: Option<Vec<TraceEvent>>,
    _family: PhantomData<F>,
}

impl<F: Family> Default for Engine<F> {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn upow(l: i64) -> Vec<Letter> {
    vec![Letter::unit(l < 0); l.unsigned_abs() as usize]
}

fn unit_sum(u: &[Letter]) -> i64 {
    u.iter().map(|l| l.unit_step()).sum()
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

impl<F: Family> Engine<F> {
    pub fn new() -> Self {
        Engine {
            rows: Vec::new(),
            ceiling: -1,
            guard: None,
            stats: Stats::default(),
            trace: None,
            _family: PhantomData,
        }
    }

    /// Record every rewriting step from now on.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    /// Fail with an invariant error if any stored integer exceeds `limit`.
    pub(crate) fn set_guard(&mut self, limit: i64) {
        self.guard = Some(limit);
    }

    fn note(&mut self, x: i64) -> Res<()> {
        let a = x.abs();
        if a > self.stats.max_abs {
            self.stats.max_abs = a;
        }
        match self.guard {
            Some(g) if a > g => Err(EngineError::invariant(
                "arithmetic guard",
                format!("integer {x} exceeds bound {g}"),
            )),
            _ => Ok(()),
        }
    }

    fn budget(&mut self, op: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Res<()> {
        self.stats.budget_checks += 1;
        if ok {
            Ok(())
        } else {
            Err(EngineError::invariant(op, format!("length budget: {}", detail())))
        }
    }

    fn render(ls: &[Letter]) -> String {
        Word::<F>::from_letters(ls.to_vec()).to_string()
    }

    fn log(&mut self, op: &'static str, before: impl FnOnce() -> String, after: impl FnOnce() -> String) {
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceEvent { op, before: before(), after: after() });
        }
    }

    fn log_pinch(&mut self, op: &'static str, r: u32, u: &[Letter], v: &[Letter], out: Pinched) {
        if self.trace.is_some() {
            let before = Self::render(&cat(&[&[Letter::new(r, true)], u, &[Letter::new(r, false)], v]));
            let after = match out {
                Pinched::Invalid => "invalid".to_string(),
                Pinched::Power(l) => Self::render(&cat(&[&upow(l), v])),
            };
            self.log(op, || before, || after);
        }
    }

    // ----- bounds -------------------------------------------------------

    /// Make the table complete for every value up to `c`.
    pub(crate) fn ensure_table(&mut self, c: i64) -> Res<()> {
        if c <= self.ceiling {
            return Ok(());
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        // level 2 from the doubling map
        let mut row = vec![1i64];
        loop {
            let x = *row.last().unwrap();
            let next = F::EPS + F::DELTA + 2 * x;
            if next > c {
                break;
            }
            row.push(next);
        }
        rows.push(row);
        loop {
            let prev = rows.last().unwrap();
            let mut row = vec![1i64];
            loop {
                let y = *row.last().unwrap();
                let Some(&h) = prev.get(y as usize) else { break };
                let next = F::EPS + h;
                if next > c {
                    break;
                }
                row.push(next);
            }
            let done = row.len() as i64 <= F::SMALL_N + 1;
            rows.push(row);
            if done || rows.len() > 64 {
                break;
            }
        }
        for row in &rows {
            for &x in row {
                self.note(x)?;
            }
        }
        self.rows = rows;
        self.ceiling = c;
        Ok(())
    }

    /// `H_level(n)` when it is at most `ceil`, else `None`. Requires
    /// `level >= 2` and `n >= 0`.
    pub(crate) fn lookup(&mut self, level: u32, n: i64, ceil: i64) -> Res<Option<i64>> {
        debug_assert!(level >= 2 && n >= 0);
        if n <= F::SMALL_N {
            let v = F::small(level, n);
            return Ok((v <= ceil).then_some(v));
        }
        self.ensure_table(ceil)?;
        let v = self
            .rows
            .get(level as usize - 2)
            .and_then(|row| row.get(n as usize))
            .copied();
        Ok(v.filter(|&v| v <= ceil))
    }

    /// Oriented triples `(level, n, H_level(n))` with `n > SMALL_N`.
    pub(crate) fn table_triples(&mut self, c: i64) -> Res<Vec<(u32, i64, i64)>> {
        self.ensure_table(c.max(0))?;
        let mut out = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                if n as i64 > F::SMALL_N && v <= c {
                    out.push((j as u32 + 2, n as i64, v));
                }
            }
        }
        Ok(out)
    }

    // ----- positive -----------------------------------------------------

    /// Validity and oriented sign of a word with `eta = 0`, never storing an
    /// integer larger than its length.
    pub(crate) fn positive(&mut self, w: &[Letter]) -> Res<Verdict> {
        self.stats.positive_calls += 1;
        if eta(w) > 0 {
            return Err(EngineError::contract("positive", "word contains an inverse letter of level >= 1"));
        }
        let n = w.len() as i64;
        let mut x = 0i64;
        for idx in (0..w.len()).rev() {
            let l = w[idx];
            let y = match l.level {
                0 => x + l.unit_step(),
                1 => 2 * x + F::DELTA,
                lv => {
                    if x < 0 {
                        return Ok(Verdict::Invalid);
                    }
                    match self.lookup(lv, x, n)? {
                        Some(y) => y,
                        None => return Ok(Verdict::Valid(Sign::Pos)),
                    }
                }
            };
            if y > n {
                return Ok(Verdict::Valid(Sign::Pos));
            }
            if y < -n {
                let high_left = w[..idx].iter().any(|l| l.level >= 2);
                return Ok(if high_left { Verdict::Invalid } else { Verdict::Valid(Sign::Neg) });
            }
            self.note(y)?;
            x = y;
        }
        Ok(Verdict::Valid(Sign::of(x)))
    }

    fn sign_of(&mut self, parts: &[&[Letter]]) -> Res<Verdict> {
        let w = cat(parts);
        self.positive(&w)
    }

    // ----- pinching -----------------------------------------------------

    fn shrink_base(r: u32, u: &[Letter]) -> usize {
        if F::EPS == 0 || u.is_empty() {
            2
        } else if r >= 2 {
            4
        } else {
            3
        }
    }

    fn shrink_pinch(r: u32, u: &[Letter]) -> usize {
        if F::EPS == 0 || u.is_empty() {
            2
        } else if r >= 2 && max_level(u) == Some(0) {
            4
        } else {
            3
        }
    }

    fn check_shrink(&mut self, op: &'static str, out: Pinched, u: &[Letter], v: &[Letter], shrink: usize) -> Res<()> {
        if let Pinched::Power(l) = out {
            let before = u.len() + v.len() + 2;
            let after = l.unsigned_abs() as usize + v.len();
            self.budget(op, after + shrink <= before, || {
                format!("{before} letters became {after}, expected a drop of {shrink}")
            })?;
        }
        Ok(())
    }

    /// `H_r^-1 u H_r v` with `u` on level 0.
    pub(crate) fn base_pinch(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        let out = self.base_pinch_inner(r, u, v)?;
        self.check_shrink("base_pinch", out, u, v, Self::shrink_base(r, u))?;
        self.log_pinch("base_pinch", r, u, v, out);
        Ok(out)
    }

    fn base_pinch_inner(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        let h = [Letter::new(r, false)];
        let l = unit_sum(u);
        self.note(l)?;
        if self.sign_of(&[&h, v])? == Verdict::Invalid {
            return Ok(Pinched::Invalid);
        }
        if r >= 2 && self.positive(v)? == Verdict::Valid(Sign::Neg) {
            return Ok(Pinched::Invalid);
        }
        if l == 0 {
            return Ok(Pinched::Power(0));
        }
        if r == 1 {
            return Ok(if l % 2 == 0 { Pinched::Power(l / 2) } else { Pinched::Invalid });
        }
        let al = l.abs();
        if matches!(self.sign_of(&[&upow(l), &h, v])?, Verdict::Valid(Sign::Neg | Sign::Zero)) {
            return Ok(Pinched::Invalid);
        }
        if self.sign_of(&[&upow(-2 * al), &h, v])? == Verdict::Valid(Sign::Pos) {
            return Ok(Pinched::Invalid);
        }
        let mut v0 = None;
        for i in 0..=al {
            if self.sign_of(&[&upow(-i), v])? == Verdict::Valid(Sign::Zero) {
                v0 = Some(i);
                break;
            }
        }
        let Some(v0) = v0 else {
            return Err(EngineError::invariant("base_pinch", "v(0) not found in [0, |l|]"));
        };
        self.note(v0)?;
        let ceil = 3 * al;
        let Some(a) = self.lookup(r, v0, ceil)? else {
            return Err(EngineError::invariant("base_pinch", "H_r v(0) missing from bounds table"));
        };
        let m = a + l;
        self.note(a)?;
        self.note(m)?;
        let mut c = 0;
        loop {
            match self.lookup(r, c, ceil)? {
                Some(y) if y < m => c += 1,
                Some(y) if y == m => {
                    self.note(c)?;
                    return Ok(Pinched::Power(c - v0));
                }
                _ => return Ok(Pinched::Invalid),
            }
        }
    }

    /// `U^-v(0) v`, for a valid `H_r^-1 u H_r v` whose inner value is 1.
    pub(crate) fn one_to_zero(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<i64> {
        let limit = (u.len() + v.len() + 2) as i64;
        for m in 0..=limit {
            if self.sign_of(&[&upow(-m), v])? == Verdict::Valid(Sign::Zero) {
                self.note(m)?;
                let out = Pinched::Power(-m);
                let shrink = if F::EPS == 0 { 2 } else { 3 };
                self.check_shrink("one_to_zero", out, u, v, shrink)?;
                self.log_pinch("one_to_zero", r, u, v, out);
                return Ok(-m);
            }
        }
        Err(EngineError::invariant("one_to_zero", "v(0) not found"))
    }

    /// `H_r^-1 u H_r v` with `rank(u) <= r - 1`.
    pub(crate) fn pinch(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        self.stats.pinch_calls += 1;
        if r == 1 {
            return self.base_pinch(1, u, v);
        }
        let out = self.pinch_inner(r, u, v)?;
        self.check_shrink("pinch", out, u, v, Self::shrink_pinch(r, u))?;
        self.log_pinch("pinch", r, u, v, out);
        Ok(out)
    }

    fn pinch_inner(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        let h = [Letter::new(r, false)];
        if matches!(self.positive(v)?, Verdict::Invalid | Verdict::Valid(Sign::Neg)) {
            return Ok(Pinched::Invalid);
        }
        if matches!(self.sign_of(&[u, &h, v])?, Verdict::Invalid | Verdict::Valid(Sign::Neg | Sign::Zero)) {
            return Ok(Pinched::Invalid);
        }
        let total = match self.cut_rank(r, u, v)? {
            Cut::Invalid => return Ok(Pinched::Invalid),
            Cut::Done(l) => l,
            // H_r^-1 H_r v ~ v, as v(0) >= 0 here
            Cut::Reduced { i, u } if u.is_empty() => i,
            Cut::Reduced { i, u } => match self.final_pinch(r, &u, v)? {
                Pinched::Invalid => return Ok(Pinched::Invalid),
                Pinched::Power(l) => i + l,
            },
        };
        if self.sign_of(&[&upow(total), v])? == Verdict::Invalid {
            return Ok(Pinched::Invalid);
        }
        Ok(Pinched::Power(total))
    }

    /// Remove every `H_{r-1}` from `u`.
    pub(crate) fn cut_rank(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Cut> {
        let out = self.cut_rank_inner(r, u, v)?;
        let before = u.len() + v.len() + 2;
        match &out {
            Cut::Done(l) => {
                let shrink = if F::EPS == 0 || u.is_empty() { 2 } else { 3 };
                let after = l.unsigned_abs() as usize + v.len();
                self.budget("cut_rank", after + shrink <= before, || format!("{before} -> {after}"))?;
            }
            Cut::Reduced { i, u: u2 } => {
                let after = i.unsigned_abs() as usize + u2.len() + v.len() + 2;
                self.budget("cut_rank", after <= before, || format!("{before} -> {after}"))?;
            }
            Cut::Invalid => {}
        }
        if self.trace.is_some() {
            let before = Self::render(&cat(&[&[Letter::new(r, true)], u, &[Letter::new(r, false)], v]));
            let after = match &out {
                Cut::Invalid => "invalid".to_string(),
                Cut::Done(l) => Self::render(&cat(&[&upow(*l), v])),
                Cut::Reduced { i, u } => Self::render(&cat(&[
                    &upow(*i),
                    &[Letter::new(r, true)],
                    u,
                    &[Letter::new(r, false)],
                    v,
                ])),
            };
            self.log("cut_rank", || before, || after);
        }
        Ok(out)
    }

    fn cut_rank_inner(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Cut> {
        let h = [Letter::new(r, false)];
        if matches!(self.positive(v)?, Verdict::Invalid | Verdict::Valid(Sign::Neg)) {
            return Ok(Cut::Invalid);
        }
        if u.is_empty() {
            return Ok(Cut::Done(0));
        }
        let mut i = 0i64;
        let mut u = u.to_vec();
        while max_level(&u) == Some(r - 1) {
            if self.sign_of(&[&upow(-1), &u, &h, v])? == Verdict::Valid(Sign::Zero) {
                let l = self.one_to_zero(r, &u, v)?;
                return Ok(Cut::Done(i + l));
            }
            if matches!(self.sign_of(&[&u, &h, v])?, Verdict::Invalid | Verdict::Valid(Sign::Neg | Sign::Zero)) {
                return Ok(Cut::Invalid);
            }
            let k = u.iter().position(|l| l.level == r - 1).unwrap();
            i += 1;
            // H_r^-1 -> U H_r^-1 H_{r-1}^-1 U^-EPS
            let inner = cat(&[&upow(-F::EPS), &u[..k]]);
            let rest = cat(&[&u[k + 1..], &h, v]);
            match self.pinch(r - 1, &inner, &rest)? {
                Pinched::Invalid => return Ok(Cut::Invalid),
                Pinched::Power(s) => u = cat(&[&upow(s), &u[k + 1..]]),
            }
        }
        Ok(Cut::Reduced { i, u })
    }

    /// `H_r^-1 u H_r v` with `u` nonempty and `rank(u) < r - 1`.
    pub(crate) fn final_pinch(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        let out = self.final_pinch_inner(r, u, v)?;
        self.check_shrink("final_pinch", out, u, v, 2)?;
        self.log_pinch("final_pinch", r, u, v, out);
        Ok(out)
    }

    fn final_pinch_inner(&mut self, r: u32, u: &[Letter], v: &[Letter]) -> Res<Pinched> {
        let h = [Letter::new(r, false)];
        match self.sign_of(&[&upow(-1), u, &h, v])? {
            Verdict::Invalid | Verdict::Valid(Sign::Neg) => return Ok(Pinched::Invalid),
            Verdict::Valid(Sign::Zero) => return Ok(Pinched::Power(self.one_to_zero(r, u, v)?)),
            Verdict::Valid(Sign::Pos) => {}
        }
        match self.positive(v)? {
            Verdict::Invalid | Verdict::Valid(Sign::Neg) => Ok(Pinched::Invalid),
            Verdict::Valid(Sign::Zero) => {
                if r == 2 {
                    return self.base_pinch(2, u, v);
                }
                // H_r v ~ H_{r-1} v since v(0) = 0
                let inner = cat(&[&upow(-F::EPS), u]);
                let l = match self.pinch(r - 1, &inner, v)? {
                    Pinched::Invalid => return Ok(Pinched::Invalid),
                    Pinched::Power(l) => l,
                };
                if l <= 0 {
                    return Ok(Pinched::Invalid);
                }
                // U^l v ~ U^(l-1) H_r v
                match self.base_pinch(r, &upow(l - 1), v)? {
                    Pinched::Invalid => Ok(Pinched::Invalid),
                    Pinched::Power(l2) => Ok(Pinched::Power(l2 + 1)),
                }
            }
            Verdict::Valid(Sign::Pos) => {
                // H_r -> U^EPS H_{r-1} H_r U^-1 and H_r^-1 -> U H_r^-1 H_{r-1}^-1 U^-EPS
                let inner = cat(&[&upow(-F::EPS), u, &upow(F::EPS)]);
                let tail = cat(&[&h, &upow(-1), v]);
                let l = match self.pinch(r - 1, &inner, &tail)? {
                    Pinched::Invalid => return Ok(Pinched::Invalid),
                    Pinched::Power(l) => l,
                };
                let v1 = cat(&[&upow(-1), v]);
                match self.base_pinch(r, &upow(l), &v1)? {
                    Pinched::Invalid => Ok(Pinched::Invalid),
                    Pinched::Power(l2) => Ok(Pinched::Power(l2)),
                }
            }
        }
    }

    // ----- reduce -------------------------------------------------------

    /// Remove the rightmost inverse letter of level >= 1. `None` if invalid.
    pub(crate) fn reduce(&mut self, w: &[Letter]) -> Res<Option<Vec<Letter>>> {
        self.stats.reduce_calls += 1;
        let Some(pos) = w.iter().rposition(|l| l.inv && l.level >= 1) else {
            return Err(EngineError::contract("reduce", "eta(w) = 0"));
        };
        let out = self.reduce_inner(w, pos)?;
        if let Some(o) = &out {
            let k = (max_level(w).unwrap() + F::OFFSET) as usize;
            let (lw, lo) = (w.len(), o.len());
            self.budget("reduce", lo <= lw + F::CHAIN_GROWTH * k, || {
                format!("{lw} -> {lo} exceeds +{}k with k = {k}", F::CHAIN_GROWTH)
            })?;
            let (ew, eo) = (eta(w), eta(o));
            self.budget("reduce", eo + 1 == ew, || format!("eta {ew} -> {eo}"))?;
        }
        if self.trace.is_some() {
            let after = out.as_ref().map_or("invalid".to_string(), |o| Self::render(o));
            self.log("reduce", || Self::render(w), || after);
        }
        Ok(out)
    }

    fn reduce_inner(&mut self, w: &[Letter], pos: usize) -> Res<Option<Vec<Letter>>> {
        let (w1, r, w2) = (&w[..pos], w[pos].level, &w[pos + 1..]);
        let rank2 = max_level(w2);
        let finish = |p: Pinched, suffix: &[Letter]| match p {
            Pinched::Invalid => None,
            Pinched::Power(l) => Some(cat(&[w1, &upow(l), suffix])),
        };
        if r >= 2 && rank2.is_none_or(|s| s < r) {
            // U^-1 H_r (0) = 0
            let u = cat(&[w2, &upow(-1)]);
            let p = self.pinch(r, &u, &[])?;
            return Ok(finish(p, &[]));
        }
        if r == 1 && rank2.is_none_or(|s| s == 0) {
            // U^-DELTA D (0) = 0
            let u = cat(&[w2, &upow(-F::DELTA)]);
            let p = self.pinch(1, &u, &[])?;
            return Ok(finish(p, &[]));
        }
        let k = w2.iter().position(|l| l.level >= r).unwrap();
        let (w3, s, w4) = (&w2[..k], w2[k].level, &w2[k + 1..]);
        if r == 1 && s == 1 {
            let p = self.pinch(1, w3, w4)?;
            return Ok(finish(p, w4));
        }
        match self.positive(w4)? {
            Verdict::Invalid | Verdict::Valid(Sign::Neg) => Ok(None),
            Verdict::Valid(Sign::Zero) => {
                // H_s(0) = 1 = U^(1-DELTA) D(0) = H_r(0)
                let u = if r == 1 { cat(&[w3, &upow(1 - F::DELTA)]) } else { w3.to_vec() };
                let p = self.pinch(r, &u, w4)?;
                Ok(finish(p, w4))
            }
            Verdict::Valid(Sign::Pos) => {
                // H_s v ~ U^(EPS(s-r)) H_r (H_{r+1} U^-1) ... (H_s U^-1) v
                let u = cat(&[w3, &upow(F::EPS * (s - r) as i64)]);
                let mut v = Vec::with_capacity(2 * (s - r) as usize + w4.len());
                for j in r + 1..=s {
                    v.push(Letter::new(j, false));
                    v.push(Letter::unit(true));
                }
                v.extend_from_slice(w4);
                let p = self.pinch(r, &u, &v)?;
                Ok(finish(p, &v))
            }
        }
    }

    /// Validity and oriented sign of any word.
    pub(crate) fn decide(&mut self, w: &[Letter]) -> Res<Verdict> {
        let mut cur = w.to_vec();
        while eta(&cur) > 0 {
            match self.reduce(&cur)? {
                None => return Ok(Verdict::Invalid),
                Some(next) => cur = next,
            }
        }
        self.positive(&cur)
    }
}

/// Orient a verdict back to actual signs.
pub(crate) fn actual<F: Family>(v: Verdict) -> Verdict {
    match v {
        Verdict::Valid(s) if F::SIGMA < 0 => Verdict::Valid(s.flip()),
        other => other,
    }
}

/// The `H_r^-1 u H_r v` shape: returns `(r, u, v)`.
pub(crate) fn split_pinch_shape<'a>(
    op: &'static str,
    w: &'a [Letter],
    r: Option<u32>,
    min_r: u32,
) -> Res<(u32, &'a [Letter], &'a [Letter])> {
    let first = w.first().ok_or_else(|| EngineError::contract(op, "empty word"))?;
    if !first.inv || first.level < min_r {
        return Err(EngineError::contract(op, "word must start with an inverse high letter"));
    }
    let r0 = first.level;
    if let Some(r) = r {
        if r != r0 {
            return Err(EngineError::contract(op, format!("first letter has level {r0}, expected {r}")));
        }
    }
    let k = w[1..]
        .iter()
        .position(|l| l.level >= r0)
        .map(|k| k + 1)
        .ok_or_else(|| EngineError::contract(op, "no matching positive letter"))?;
    if w[k].inv || w[k].level != r0 {
        return Err(EngineError::contract(op, "letter after u must be the matching positive letter"));
    }
    let (u, v) = (&w[1..k], &w[k + 1..]);
    if eta(u) > 0 || eta(v) > 0 {
        return Err(EngineError::contract(op, "u and v must not contain inverse letters of level >= 1"));
    }
    Ok((r0, u, v))
}

/// All integers in `H_j(n)` form, in actual coordinates: `(index, n, value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsTable {
    pub ceiling: i64,
    pub triples: Vec<(u32, i64, i64)>,
}

impl<F: Family> Engine<F> {
    fn guarded<T>(&mut self, w: &Word<F>, f: impl FnOnce(&mut Self) -> Res<T>) -> Res<T> {
        let outer = self.guard;
        if outer.is_none() {
            self.set_guard(3 * w.len() as i64);
        }
        let out = f(self);
        self.guard = outer;
        out
    }

    fn level_of(op: &'static str, index: u32, min_level: u32) -> Res<u32> {
        match index.checked_sub(F::OFFSET) {
            Some(l) if l >= min_level => Ok(l),
            _ => Err(EngineError::contract(op, format!("index {index} too small"))),
        }
    }

    fn pinched_word(out: Pinched, v: &[Letter]) -> Rewrite<Word<F>> {
        match out {
            Pinched::Invalid => Rewrite::Invalid,
            Pinched::Power(l) => Rewrite::Word(Word::from_letters(cat(&[&upow(l), v]))),
        }
    }

    /// Complete table of high values with `n` past the closed forms and
    /// `|value| <= ell`.
    pub fn bounds(&mut self, ell: i64) -> Res<BoundsTable> {
        let mut triples: Vec<(u32, i64, i64)> = self
            .table_triples(ell)?
            .into_iter()
            .map(|(lv, n, v)| (lv + F::OFFSET, F::SIGMA * n, F::SIGMA * v))
            .collect();
        triples.sort_by_key(|&(r, n, _)| (r, n.abs()));
        Ok(BoundsTable { ceiling: ell, triples })
    }

    /// Verdict for a word with `eta = 0`.
    pub fn positive_word(&mut self, w: &Word<F>) -> Res<Verdict> {
        self.guarded(w, |e| e.positive(w.letters()).map(actual::<F>))
    }

    pub fn base_pinch_word(&mut self, w: &Word<F>) -> Res<Rewrite<Word<F>>> {
        let (r, u, v) = split_pinch_shape("base_pinch", w.letters(), None, 1)?;
        if max_level(u).unwrap_or(0) > 0 {
            return Err(EngineError::contract("base_pinch", "u must consist of unit letters"));
        }
        self.guarded(w, |e| Ok(Self::pinched_word(e.base_pinch(r, u, v)?, v)))
    }

    pub fn one_to_zero_word(&mut self, w: &Word<F>) -> Res<Word<F>> {
        let (r, u, v) = split_pinch_shape("one_to_zero", w.letters(), None, 2)?;
        if u.is_empty() {
            return Err(EngineError::contract("one_to_zero", "u must be nonempty"));
        }
        self.guarded(w, |e| {
            let h = [Letter::new(r, false)];
            if e.sign_of(&[&upow(-1), u, &h, v])? != Verdict::Valid(Sign::Zero) {
                return Err(EngineError::contract("one_to_zero", "inner value is not the unit value"));
            }
            let l = e.one_to_zero(r, u, v)?;
            Ok(Word::from_letters(cat(&[&upow(l), v])))
        })
    }

    pub fn pinch_word(&mut self, index: u32, w: &Word<F>) -> Res<Rewrite<Word<F>>> {
        let r = Self::level_of("pinch", index, 1)?;
        let (r, u, v) = split_pinch_shape("pinch", w.letters(), Some(r), 1)?;
        self.guarded(w, |e| Ok(Self::pinched_word(e.pinch(r, u, v)?, v)))
    }

    pub fn cut_rank_word(&mut self, index: u32, w: &Word<F>) -> Res<Rewrite<Word<F>>> {
        let r = Self::level_of("cut_rank", index, 2)?;
        let (r, u, v) = split_pinch_shape("cut_rank", w.letters(), Some(r), 2)?;
        self.guarded(w, |e| {
            Ok(match e.cut_rank(r, u, v)? {
                Cut::Invalid => Rewrite::Invalid,
                Cut::Done(l) => Self::pinched_word(Pinched::Power(l), v),
                Cut::Reduced { i, u } => Rewrite::Word(Word::from_letters(cat(&[
                    &upow(i),
                    &[Letter::new(r, true)],
                    &u,
                    &[Letter::new(r, false)],
                    v,
                ]))),
            })
        })
    }

    pub fn final_pinch_word(&mut self, index: u32, w: &Word<F>) -> Res<Rewrite<Word<F>>> {
        let r = Self::level_of("final_pinch", index, 2)?;
        let (r, u, v) = split_pinch_shape("final_pinch", w.letters(), Some(r), 2)?;
        if u.is_empty() || max_level(u).unwrap() + 1 >= r {
            return Err(EngineError::contract("final_pinch", "u must be nonempty of rank below r - 1"));
        }
        self.guarded(w, |e| Ok(Self::pinched_word(e.final_pinch(r, u, v)?, v)))
    }

    pub fn reduce_word(&mut self, w: &Word<F>) -> Res<Rewrite<Word<F>>> {
        self.guarded(w, |e| {
            Ok(match e.reduce(w.letters())? {
                None => Rewrite::Invalid,
                Some(o) => Rewrite::Word(Word::from_letters(o)),
            })
        })
    }

    /// Validity and sign of `w(0)` for any word.
    pub fn sign(&mut self, w: &Word<F>) -> Res<Verdict> {
        self.guarded(w, |e| e.decide(w.letters()).map(actual::<F>))
    }

    /// As [`Engine::sign`] without the arithmetic guard.
    pub fn sign_unguarded(&mut self, w: &Word<F>) -> Res<Verdict> {
        let outer = self.guard.take();
        let out = self.decide(w.letters()).map(actual::<F>);
        self.guard = outer;
        out
    }
}
