//! Membership in `H_k = <a_1 t, ..., a_k t>` and word problems for `G_k`
//! and `Gamma_k`.
//!
//! A power `t^r` is pushed left to right through the normal form of the
//! input, one piece at a time. The exponent is never expanded: it is carried
//! as a psi word `f` with `f(0) = r`, and the psi engine decides signs.

use crate::engine::{Engine, TraceEvent};
use crate::error::EngineError;
use crate::hydra_alg::{normal_form_with, piece_decomposition, reduce_letters, Gen, GenLetter, GroupWord, Piece, Theta};
use crate::word::{Letter, Psi, PsiWord, Sign, Verdict};

type Res<T> = Result<T, EngineError>;

/// Whether `t^{f(0)} v` lies in some coset `H_k t^s`; if so `s = g(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetResult {
    NotInAnyCoset,
    InCoset(PsiWord),
}

/// `t^r pi` and `t^{f'(0)} pi'` lie in the same cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontResult {
    pub pi_prime: GroupWord,
    pub f_prime: PsiWord,
}

fn psi(m: u32, inv: bool) -> Letter {
    Letter::new(m - 1, inv)
}

/// `psi_m^e f`.
fn pre(m: u32, e: i64, f: &PsiWord) -> PsiWord {
    f.prepend(m, e)
}

fn inv_a(m: u32) -> GenLetter {
    GenLetter::a(m).inverse()
}

fn reduced(parts: &[&[GenLetter]]) -> GroupWord {
    GroupWord::from_letters(reduce_letters(parts.iter().flat_map(|p| p.iter().copied()), GenLetter::inverse))
}

fn psi_rank(f: &PsiWord) -> u32 {
    f.rank().unwrap_or(0)
}

/// Shared state for one membership computation: the psi engine, the theta
/// memo and a count of checked budgets.
pub struct Pusher {
    eng: Engine<Psi>,
    theta: Theta,
    budget_checks: u64,
}

impl Default for Pusher {
    fn default() -> Self {
        Self::new()
    }
}

impl Pusher {
    pub fn new() -> Self {
        Pusher { eng: Engine::new(), theta: Theta::new(), budget_checks: 0 }
    }

    /// Record the psi engine's rewriting steps.
    pub fn with_trace(mut self) -> Self {
        self.eng = self.eng.with_trace();
        self
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.eng.take_trace()
    }

    pub fn budget_checks(&self) -> u64 {
        self.budget_checks + self.eng.stats().budget_checks
    }

    pub fn engine(&self) -> &Engine<Psi> {
        &self.eng
    }

    fn budget(&mut self, op: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Res<()> {
        self.budget_checks += 1;
        if ok {
            Ok(())
        } else {
            Err(EngineError::invariant(op, format!("length budget: {}", detail())))
        }
    }

    fn check_out(&mut self, op: &'static str, out: &CosetResult, f: &PsiWord, extra: usize, m: u32) -> Res<()> {
        if let CosetResult::InCoset(g) = out {
            let (lg, lf) = (g.len(), f.len());
            self.budget(op, lg <= lf + extra, || format!("psi word grew from {lf} to {lg}, allowed +{extra}"))?;
            let (rg, rf) = (psi_rank(g), psi_rank(f));
            self.budget(op, rg <= rf.max(m), || format!("rank {rg} exceeds max({rf}, {m})"))?;
        }
        Ok(())
    }

    pub fn psi_sign(&mut self, f: &PsiWord) -> Res<Verdict> {
        self.eng.sign(f)
    }

    fn valid_sign(&mut self, op: &'static str, f: &PsiWord) -> Res<Sign> {
        match self.psi_sign(f)? {
            Verdict::Valid(s) => Ok(s),
            Verdict::Invalid => Err(EngineError::contract(op, "psi word must be valid")),
        }
    }

    /// Largest `i > 0` with `theta^{i-1}(a_m)` a prefix of `pi`.
    pub fn prefix(&mut self, m: u32, pi: &GroupWord) -> Res<Option<usize>> {
        if pi.letters().first() != Some(&GenLetter::a(m)) {
            return Err(EngineError::contract("prefix", "piece must begin with a_m"));
        }
        let mut best = None;
        for i in 1.. {
            let cand = self.theta.power(i as i64 - 1, m);
            if cand.len() > pi.len() {
                break;
            }
            if pi.letters().starts_with(cand) {
                best = Some(i);
            }
            if m < 2 {
                break;
            }
        }
        Ok(best)
    }

    pub fn front(&mut self, m: u32, pi: &Piece, f: &PsiWord) -> Res<Option<FrontResult>> {
        let out = self.front_inner(m, pi, f)?;
        if let Some(fr) = &out {
            let (lp, lq) = (pi.len(), fr.pi_prime.len());
            self.budget("front", lq <= lp, || format!("piece grew from {lp} to {lq}"))?;
            let (lf, lg) = (f.len(), fr.f_prime.len());
            self.budget("front", lg <= lf + 1, || format!("psi word grew from {lf} to {lg}"))?;
            if fr.pi_prime.letters().first() == Some(&GenLetter::a(m)) {
                return Err(EngineError::invariant("front", "pi' begins with a_m"));
            }
        }
        Ok(out)
    }

    fn front_inner(&mut self, m: u32, pi: &Piece, f: &PsiWord) -> Res<Option<FrontResult>> {
        let rest = Piece { eps1: false, ..pi.clone() }.to_word();
        if !pi.eps1 {
            return Ok(Some(FrontResult { pi_prime: rest, f_prime: f.clone() }));
        }
        if self.valid_sign("front", f)? != Sign::Pos {
            return Ok(Some(FrontResult { pi_prime: rest, f_prime: pre(m, 1, f) }));
        }
        let word = pi.to_word();
        let Some(i) = self.prefix(m, &word)? else {
            return Ok(None);
        };
        if self.valid_sign("front", &pre(1, i as i64, f))? == Sign::Pos {
            return Ok(None);
        }
        let mut r = None;
        for j in 1..=i as i64 {
            if self.valid_sign("front", &pre(1, j, f))? == Sign::Zero {
                r = Some(j);
                break;
            }
        }
        let r = r.ok_or_else(|| EngineError::invariant("front", "f(0) not found in 1..=i"))?;
        let head = self.theta.letter(r, m, true);
        Ok(Some(FrontResult { pi_prime: reduced(&[&head, word.letters()]), f_prime: pre(1, 1, f) }))
    }

    /// `pi = u a_m^{-eps2}` with `rank(u) < m`.
    pub fn back(&mut self, m: u32, pi: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
        let out = self.back_inner(m, pi, f)?;
        self.check_out("back", &out, f, 2 * (m as usize - 1) * pi.len() + 1, m)?;
        Ok(out)
    }

    fn back_inner(&mut self, m: u32, pi: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
        let ls = pi.letters();
        let eps2 = ls.last() == Some(&inv_a(m));
        let u = GroupWord::from_letters(ls[..ls.len() - eps2 as usize].to_vec());
        if u.rank().unwrap_or(0) >= m {
            return Err(EngineError::contract("back", "u must have rank below m"));
        }
        let g = self.push(m - 1, &u, f)?;
        if !eps2 {
            return Ok(g);
        }
        if let CosetResult::InCoset(g) = &g {
            let h = pre(m, -1, g);
            if matches!(self.psi_sign(&h)?, Verdict::Valid(Sign::Neg | Sign::Zero)) {
                return Ok(CosetResult::InCoset(h));
            }
        }
        let Some(i) = self.prefix(m, &pi.inverse())? else {
            return Ok(CosetResult::NotInAnyCoset);
        };
        for s in 1..=i as i64 {
            let tail = self.theta.letter(s, m, false);
            let u2 = reduced(&[u.letters(), &[inv_a(m)], &tail]);
            if let CosetResult::InCoset(h) = self.push(m - 1, &u2, f)? {
                if self.valid_sign("back", &pre(1, s - 1, &h))? == Sign::Zero {
                    return Ok(CosetResult::InCoset(pre(1, -1, &h)));
                }
            }
        }
        Ok(CosetResult::NotInAnyCoset)
    }

    pub fn piece(&mut self, m: u32, pi: &Piece, f: &PsiWord) -> Res<CosetResult> {
        let out = self.piece_inner(m, pi, f)?;
        self.check_out("piece", &out, f, 2 * (m as usize - 1) * pi.len() + 2, m)?;
        Ok(out)
    }

    fn piece_inner(&mut self, m: u32, pi: &Piece, f: &PsiWord) -> Res<CosetResult> {
        if m == 2 {
            if pi.interior.rank().unwrap_or(1) != 1 {
                return Err(EngineError::contract("piece", "rank-2 piece interior must be a power of a_1"));
            }
            let l = pi.interior.exponent_sum(Gen::A(1));
            let g = pre(2, -(pi.eps2 as i64), &pre(1, l, &pre(2, pi.eps1 as i64, f)));
            return Ok(match self.psi_sign(&g)? {
                Verdict::Invalid => CosetResult::NotInAnyCoset,
                Verdict::Valid(_) => CosetResult::InCoset(g),
            });
        }
        match self.front(m, pi, f)? {
            None => Ok(CosetResult::NotInAnyCoset),
            Some(fr) => self.back(m, &fr.pi_prime, &fr.f_prime),
        }
    }

    /// `t^{f(0)} v` for a reduced `v` of rank at most `m`.
    pub fn push(&mut self, m: u32, v: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
        let out = self.push_inner(m, v, f)?;
        self.check_out("push", &out, f, 2 * m as usize * v.len(), m)?;
        Ok(out)
    }

    fn push_inner(&mut self, m: u32, v: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
        if m == 0 {
            return Err(EngineError::contract("push", "m must be positive"));
        }
        if m == 1 {
            if v.rank().unwrap_or(1) != 1 {
                return Err(EngineError::contract("push", "rank-1 word must be a power of a_1"));
            }
            return Ok(CosetResult::InCoset(pre(1, v.exponent_sum(Gen::A(1)), f)));
        }
        let mut g = f.clone();
        for pi in piece_decomposition(v, m)? {
            match self.piece(m, &pi, &g)? {
                CosetResult::NotInAnyCoset => return Ok(CosetResult::NotInAnyCoset),
                CosetResult::InCoset(h) => g = h,
            }
        }
        Ok(CosetResult::InCoset(g))
    }

    /// Coset of `w` and whether it is `H_k` itself.
    pub fn member_detail(&mut self, k: u32, w: &GroupWord) -> Res<(bool, CosetResult)> {
        check_alphabet("member", k, w, false)?;
        if w.is_empty() {
            return Ok((true, CosetResult::InCoset(PsiWord::empty())));
        }
        let nf = normal_form_with(&mut self.theta, w)?;
        let f = PsiWord::from_letters(vec![psi(1, nf.t_exp > 0); nf.t_exp.unsigned_abs() as usize]);
        let out = self.push(k, &nf.body, &f)?;
        let yes = match &out {
            CosetResult::NotInAnyCoset => false,
            CosetResult::InCoset(g) => self.psi_sign(g)? == Verdict::Valid(Sign::Zero),
        };
        Ok((yes, out))
    }

    pub fn member(&mut self, k: u32, w: &GroupWord) -> Res<bool> {
        Ok(self.member_detail(k, w)?.0)
    }
}

fn check_alphabet(op: &'static str, k: u32, w: &GroupWord, allow_p: bool) -> Res<()> {
    for l in w.letters() {
        match l.gen {
            Gen::A(i) if i == 0 || i > k => {
                return Err(EngineError::contract(op, format!("a{i} is outside a1..a{k}")));
            }
            Gen::P if !allow_p => return Err(EngineError::contract(op, "word contains p")),
            _ => {}
        }
    }
    Ok(())
}

/// Largest `i > 0` with `theta^{i-1}(a_m)` a prefix of `pi`.
pub fn prefix_m(m: u32, pi: &GroupWord) -> Res<Option<usize>> {
    Pusher::new().prefix(m, pi)
}

/// `None` when no condition on the front of the piece holds.
pub fn front_m(m: u32, pi: &Piece, f: &PsiWord) -> Res<Option<FrontResult>> {
    Pusher::new().front(m, pi, f)
}

pub fn back_m(m: u32, pi: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
    Pusher::new().back(m, pi, f)
}

pub fn piece_m(m: u32, pi: &Piece, f: &PsiWord) -> Res<CosetResult> {
    Pusher::new().piece(m, pi, f)
}

pub fn push_m(m: u32, v: &GroupWord, f: &PsiWord) -> Res<CosetResult> {
    Pusher::new().push(m, v, f)
}

/// Whether `w` (in `a_1..a_k, t`) represents an element of `H_k`.
pub fn member(k: u32, w: &GroupWord) -> Res<bool> {
    Pusher::new().member(k, w)
}

/// Whether `w = 1` in `G_k`.
pub fn gk_word_problem(k: u32, w: &GroupWord) -> Res<bool> {
    check_alphabet("gk_word_problem", k, w, false)?;
    let nf = normal_form_with(&mut Theta::new(), w)?;
    Ok(nf.t_exp == 0 && nf.body.is_empty())
}

/// Whether `x = 1` in `Gamma_k`, by deleting pinches `p^e w p^-e` with
/// `w` in `H_k`.
pub fn gamma_word_problem(k: u32, x: &GroupWord) -> Res<bool> {
    check_alphabet("gamma_word_problem", k, x, true)?;
    let mut pusher = Pusher::new();
    let mut cur: Vec<GenLetter> = reduce_letters(x.letters().iter().copied(), GenLetter::inverse);
    'outer: loop {
        let ps: Vec<usize> = (0..cur.len()).filter(|&i| cur[i].gen == Gen::P).collect();
        if ps.is_empty() {
            return gk_word_problem(k, &GroupWord::from_letters(cur));
        }
        for pair in ps.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            if cur[i].inv == cur[j].inv {
                continue;
            }
            let inner = GroupWord::from_letters(cur[i + 1..j].to_vec());
            if pusher.member(k, &inner)? {
                cur.remove(j);
                cur.remove(i);
                cur = reduce_letters(cur, GenLetter::inverse);
                continue 'outer;
            }
        }
        return Ok(false);
    }
}
