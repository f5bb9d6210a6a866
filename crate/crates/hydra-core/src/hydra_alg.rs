//! Words in `a_1..a_k, t, p`, the automorphism `theta`, normal forms
//! `t^r v`, rank-`m` pieces and the hydra battle.

use std::collections::HashMap;
use std::fmt;

use crate::error::EngineError;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    A(u32),
    T,
    P,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: Gen,
    pub inv: bool,
}

impl GenLetter {
    pub const fn new(gen: Gen, inv: bool) -> Self {
        GenLetter { gen, inv }
    }

    pub const fn a(i: u32) -> Self {
        GenLetter::new(Gen::A(i), false)
    }

    pub fn inverse(self) -> Self {
        GenLetter::new(self.gen, !self.inv)
    }

    /// Index of an `a`-letter.
    pub fn a_index(self) -> Option<u32> {
        match self.gen {
            Gen::A(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<GenLetter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn from_letters(letters: Vec<GenLetter>) -> Self {
        GroupWord { letters }
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<GenLetter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        GroupWord::from_letters(v)
    }

    /// Largest `a` index, `None` if there are no `a`-letters.
    pub fn rank(&self) -> Option<u32> {
        self.letters.iter().filter_map(|l| l.a_index()).max()
    }

    pub fn exponent_sum(&self, gen: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inv { -1 } else { 1 })
            .sum()
    }

    pub fn has(&self, gen: Gen) -> bool {
        self.letters.iter().any(|l| l.gen == gen)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_group(&self.letters))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `t^t_exp body` with `body` a reduced word in the `a`-letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    pub t_exp: i64,
    pub body: GroupWord,
}

/// `a_m^eps1 interior a_m^-eps2` with `rank(interior) < m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub rank: u32,
    pub eps1: bool,
    pub interior: GroupWord,
    pub eps2: bool,
}

impl Piece {
    pub fn to_word(&self) -> GroupWord {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        if self.eps1 {
            v.push(GenLetter::a(self.rank));
        }
        v.extend_from_slice(self.interior.letters());
        if self.eps2 {
            v.push(GenLetter::a(self.rank).inverse());
        }
        GroupWord::from_letters(v)
    }

    pub fn len(&self) -> usize {
        self.interior.len() + self.eps1 as usize + self.eps2 as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) fn reduce_letters<T: Copy + PartialEq>(ls: impl IntoIterator<Item = T>, inv: impl Fn(T) -> T) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for l in ls {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn free_reduce(w: &GroupWord) -> GroupWord {
    GroupWord::from_letters(reduce_letters(w.letters.iter().copied(), GenLetter::inverse))
}

/// Memo of `theta^n(a_m)`, reduced.
#[derive(Default)]
pub struct Theta {
    memo: HashMap<(u32, i64), Vec<GenLetter>>,
}

impl Theta {
    pub fn new() -> Self {
        Self::default()
    }

    /// `theta^n(a_m)`.
    pub fn power(&mut self, n: i64, m: u32) -> &[GenLetter] {
        if !self.memo.contains_key(&(m, n)) {
            let w = self.build(n, m);
            self.memo.insert((m, n), w);
        }
        &self.memo[&(m, n)]
    }

    fn build(&mut self, n: i64, m: u32) -> Vec<GenLetter> {
        if m <= 1 || n == 0 {
            return vec![GenLetter::a(m)];
        }
        let mut out = vec![GenLetter::a(m)];
        if n > 0 {
            for j in 0..n {
                out.extend_from_slice(self.power(j, m - 1));
            }
        } else {
            for j in 1..=-n {
                let inner = self.power(-j, m - 1);
                out.extend(inner.iter().rev().map(|l| l.inverse()));
            }
        }
        reduce_letters(out, GenLetter::inverse)
    }

    /// `theta^n(a_m^{±1})`.
    pub fn letter(&mut self, n: i64, m: u32, inv: bool) -> Vec<GenLetter> {
        let w = self.power(n, m);
        if inv {
            w.iter().rev().map(|l| l.inverse()).collect()
        } else {
            w.to_vec()
        }
    }
}

/// `theta^n(a_m^exp)`, `exp = ±1`.
pub fn theta_letter(n: i64, m: u32, exp: i64) -> GroupWord {
    GroupWord::from_letters(Theta::new().letter(n, m, exp < 0))
}

fn require_a_only(op: &'static str, w: &GroupWord) -> Result<(), EngineError> {
    if w.letters.iter().any(|l| l.a_index().is_none()) {
        Err(EngineError::contract(op, "word must contain only a-letters"))
    } else {
        Ok(())
    }
}

/// `theta^n(w)` for `n = ±1`.
pub fn theta_word(n: i64, w: &GroupWord) -> Result<GroupWord, EngineError> {
    if n.abs() != 1 {
        return Err(EngineError::contract("theta_word", "exponent must be 1 or -1"));
    }
    require_a_only("theta_word", w)?;
    let mut th = Theta::new();
    let mut out = Vec::new();
    for l in &w.letters {
        out.extend(th.letter(n, l.a_index().unwrap(), l.inv));
    }
    Ok(GroupWord::from_letters(reduce_letters(out, GenLetter::inverse)))
}

/// Collect the `t`s at the front: `w = t^r v` in `G_k`.
pub fn normal_form(w: &GroupWord) -> Result<NormalForm, EngineError> {
    normal_form_with(&mut Theta::new(), w)
}

pub(crate) fn normal_form_with(th: &mut Theta, w: &GroupWord) -> Result<NormalForm, EngineError> {
    if w.has(Gen::P) {
        return Err(EngineError::contract("normal_form", "word contains p"));
    }
    let mut s = 0i64;
    let mut parts: Vec<Vec<GenLetter>> = Vec::new();
    for l in w.letters.iter().rev() {
        match l.gen {
            Gen::T => s += if l.inv { -1 } else { 1 },
            Gen::A(i) => parts.push(th.letter(s, i, l.inv)),
            Gen::P => unreachable!(),
        }
    }
    let body = reduce_letters(parts.into_iter().rev().flatten(), GenLetter::inverse);
    Ok(NormalForm { t_exp: s, body: GroupWord::from_letters(body) })
}

/// Greedy rank-`m` pieces of a reduced word of rank at most `m`.
pub fn piece_decomposition(v: &GroupWord, m: u32) -> Result<Vec<Piece>, EngineError> {
    require_a_only("piece_decomposition", v)?;
    if v.rank().unwrap_or(0) > m {
        return Err(EngineError::contract("piece_decomposition", format!("rank exceeds {m}")));
    }
    let top = GenLetter::a(m);
    let ls = &v.letters;
    let mut out = Vec::new();
    let mut i = 0;
    while i < ls.len() {
        let eps1 = ls[i] == top;
        if eps1 {
            i += 1;
        }
        let start = i;
        while i < ls.len() && ls[i].a_index().unwrap() < m {
            i += 1;
        }
        let interior = GroupWord::from_letters(ls[start..i].to_vec());
        let eps2 = i < ls.len() && ls[i] == top.inverse();
        if eps2 {
            i += 1;
        }
        out.push(Piece { rank: m, eps1, interior, eps2 });
    }
    Ok(out)
}

fn positive_a_word(op: &'static str, w: &GroupWord) -> Result<Vec<u32>, EngineError> {
    w.letters
        .iter()
        .map(|l| match (l.gen, l.inv) {
            (Gen::A(i), false) => Ok(i),
            _ => Err(EngineError::contract(op, "hydra must be a positive word in the a-letters")),
        })
        .collect()
}

/// Remove the first letter, then `a_i -> a_i a_{i-1}` for every `i > 1`.
pub fn hydra_step(w: &GroupWord) -> Result<GroupWord, EngineError> {
    let ls = positive_a_word("hydra_step", w)?;
    if ls.is_empty() {
        return Err(EngineError::contract("hydra_step", "empty hydra"));
    }
    let mut out = Vec::with_capacity(2 * ls.len());
    for &i in &ls[1..] {
        out.push(GenLetter::a(i));
        if i > 1 {
            out.push(GenLetter::a(i - 1));
        }
    }
    Ok(GroupWord::from_letters(out))
}

/// Default step cap for [`hydra_count`] and friends.
pub const HYDRA_CAP: u64 = 1_000_000;

/// Runs the battle on a compressed state. A run `(i, born, count)` stands
/// for `theta^(T-born)(a_i) theta^(T-born+1)(a_i) ...` at time `T`, which
/// is what the letters freshly exposed by a cut look like.
fn battle(ls: &[u32], cap: u64, mut emit: impl FnMut(u32, u64)) -> Option<u64> {
    let mut stack: Vec<(u32, u64, u64)> = ls.iter().rev().map(|&i| (i, 0, 1)).collect();
    let mut time = 0u64;
    while let Some((i, born, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if i == 1 {
            time = time.checked_add(count).filter(|&t| t <= cap)?;
            emit(1, count);
            continue;
        }
        if time >= cap {
            return None;
        }
        emit(i, 1);
        if count > 1 {
            stack.push((i, born - 1, count - 1));
        }
        stack.push((i - 1, time, time - born));
        time += 1;
    }
    Some(time)
}

/// Number of steps to kill a hydra, or `None` past `cap` steps.
pub fn hydra_count(w: &GroupWord, cap: u64) -> Result<Option<u64>, EngineError> {
    let ls = positive_a_word("hydra_count", w)?;
    Ok(battle(&ls, cap, |_, _| {}))
}

/// Successive hydras, starting with `w` and ending with the empty word.
/// `None` if the battle outlasts `max_steps` or a hydra outgrows `max_len`.
pub fn hydra_battle(w: &GroupWord, max_steps: u64, max_len: usize) -> Result<Option<Vec<GroupWord>>, EngineError> {
    positive_a_word("hydra_battle", w)?;
    let mut out = vec![w.clone()];
    let mut cur = w.clone();
    while !cur.is_empty() {
        if out.len() as u64 > max_steps {
            return Ok(None);
        }
        cur = hydra_step(&cur)?;
        if cur.len() > max_len {
            return Ok(None);
        }
        out.push(cur.clone());
    }
    Ok(Some(out))
}

/// `u_{k,n}`: the word `(a_{i_1} t)(a_{i_2} t)...` where `a_{i_j}` is the
/// letter cut at step `j` of the battle against `a_k^n`. Equal to
/// `a_k^n t^H` in `G_k`.
pub fn hydra_witness(k: u32, n: u64, cap: u64) -> Result<Option<GroupWord>, EngineError> {
    if k == 0 {
        return Err(EngineError::contract("hydra_witness", "k must be positive"));
    }
    let ls = vec![k; n as usize];
    let mut out = Vec::new();
    let done = battle(&ls, cap, |i, c| {
        for _ in 0..c {
            out.push(GenLetter::a(i));
            out.push(GenLetter::new(Gen::T, false));
        }
    });
    Ok(done.map(|_| GroupWord::from_letters(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_group_word;

    fn g(s: &str) -> GroupWord {
        parse_group_word(s).unwrap()
    }

    #[test]
    fn theta_breakdown_small() {
        assert_eq!(theta_letter(3, 2, 1), g("a2 a1^3"));
        assert_eq!(theta_letter(2, 3, 1), g("a3 a2 a2 a1"));
        assert_eq!(theta_letter(-1, 3, 1), g("a3 a1 a2^-1"));
        assert_eq!(theta_letter(5, 1, -1), g("a1^-1"));
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&g("a3^4 a2 t a1 a2^-1 a3^-4")).unwrap();
        assert_eq!(nf.t_exp, 1);
        assert_eq!(nf.body, g("a3 a2 a3 a2 a3 a2 a3 a2 a2 a1^2 a2^-1 a3^-4"));
        let nf = normal_form(&g("a2 t a2^-1 t^-1")).unwrap();
        assert_eq!((nf.t_exp, nf.body), (0, g("a2 a1 a2^-1")));
    }

    #[test]
    fn battle_is_compressed_correctly() {
        for w in ["a2 a3 a1", "a2^3", "a3 a3", "a2 a1 a3 a2", "a3^2 a1 a2"] {
            let w = g(w);
            let slow = hydra_battle(&w, 100_000, 1 << 20).unwrap().unwrap().len() as u64 - 1;
            assert_eq!(hydra_count(&w, HYDRA_CAP).unwrap(), Some(slow));
        }
    }

    #[test]
    fn witness_u23() {
        let u = hydra_witness(2, 3, HYDRA_CAP).unwrap().unwrap();
        assert_eq!(u, g("a2 t a2 t a1 t a2 t a1 t a1 t a1 t"));
    }
}
