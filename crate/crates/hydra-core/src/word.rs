//! Function words shared by the Ackermann and psi engines.
//!
//! Both families are stored by *level*: level 0 is the unit shift, level 1
//! the doubling map and level `j >= 2` the `j`-th fast-growing function. The
//! letter index shown to users is `level + F::OFFSET`, so `A_i` has level `i`
//! and `p_i` has level `i - 1`.

use std::fmt;
use std::marker::PhantomData;

/// A function family. All rewriting is done in "oriented" coordinates in
/// which the high functions map `N -> N`, send `0` to `1`, and satisfy
/// `H_{j+1}(n) = EPS + H_j(H_{j+1}(n - 1))`.
pub trait Family: Copy + Clone + Default + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
    /// Printed letter prefix.
    const SYMBOL: char;
    /// `index = level + OFFSET`.
    const OFFSET: u32;
    /// Actual value = `SIGMA * oriented value`.
    const SIGMA: i64;
    /// Oriented doubling is `n -> 2n + DELTA`.
    const DELTA: i64;
    /// Extra unit in the high recursion; also the power of `U` in the
    /// substitution `H_{j+1} -> U^EPS H_j H_{j+1} U^-1`.
    const EPS: i64;
    /// Largest `n` covered by the closed forms for high levels.
    const SMALL_N: i64;
    /// Letters gained per level by the substitution chain in `reduce`.
    const CHAIN_GROWTH: usize;

    /// Closed forms of the high functions for `0 <= n <= SMALL_N`.
    fn small(level: u32, n: i64) -> i64;
}

/// The Ackermann functions `A_0, A_1, ...`.
#[derive(Copy, Clone, Default, Debug, PartialEq, Eq, Hash)]
pub struct Ack;

/// The psi functions `psi_1, psi_2, ...`.
#[derive(Copy, Clone, Default, Debug, PartialEq, Eq, Hash)]
pub struct Psi;

impl Family for Ack {
    const NAME: &'static str = "ack";
    const SYMBOL: char = 'A';
    const OFFSET: u32 = 0;
    const SIGMA: i64 = 1;
    const DELTA: i64 = 0;
    const EPS: i64 = 0;
    const SMALL_N: i64 = 2;
    const CHAIN_GROWTH: usize = 2;

    fn small(_level: u32, n: i64) -> i64 {
        match n {
            0 => 1,
            1 => 2,
            _ => 4,
        }
    }
}

impl Family for Psi {
    const NAME: &'static str = "psi";
    const SYMBOL: char = 'p';
    const OFFSET: u32 = 1;
    const SIGMA: i64 = -1;
    const DELTA: i64 = 1;
    const EPS: i64 = 1;
    const SMALL_N: i64 = 1;
    const CHAIN_GROWTH: usize = 3;

    fn small(level: u32, n: i64) -> i64 {
        if n == 0 {
            1
        } else {
            level as i64 + 2
        }
    }
}

/// One letter `X^{+1}` or `X^{-1}`, stored by level.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub level: u32,
    pub inv: bool,
}

impl Letter {
    pub const fn new(level: u32, inv: bool) -> Self {
        Letter { level, inv }
    }

    pub const fn unit(inv: bool) -> Self {
        Letter { level: 0, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { level: self.level, inv: !self.inv }
    }

    /// Oriented contribution of a level-0 letter.
    pub(crate) fn unit_step(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Sign of an integer.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        match x.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Neg => "neg",
            Sign::Zero => "zero",
            Sign::Pos => "pos",
        }
    }
}

/// Whether `w(0)` is defined, and its sign if so.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Invalid,
    Valid(Sign),
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        matches!(self, Verdict::Valid(_))
    }
}

/// Outcome of a rewriting step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rewrite<W> {
    Invalid,
    Word(W),
}

impl<W> Rewrite<W> {
    pub fn word(self) -> Option<W> {
        match self {
            Rewrite::Invalid => None,
            Rewrite::Word(w) => Some(w),
        }
    }
}

/// A word in one family, written so that the leftmost letter is applied last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word<F: Family> {
    letters: Vec<Letter>,
    _family: PhantomData<F>,
}

pub type AckWord = Word<Ack>;
pub type PsiWord = Word<Psi>;

impl<F: Family> Default for Word<F> {
    fn default() -> Self {
        Word::empty()
    }
}

impl<F: Family> Word<F> {
    pub fn empty() -> Self {
        Word { letters: Vec::new(), _family: PhantomData }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters, _family: PhantomData }
    }

    /// Build from `(index, exponent)` pairs; `(2, -1)` is `X_2^-1`.
    /// Exponents other than `±1` are expanded.
    ///
    /// # Panics
    /// If an index is below the family's first index.
    pub fn from_powers(powers: &[(u32, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(index, exp) in powers {
            assert!(index >= F::OFFSET, "index {index} below {}", F::OFFSET);
            let l = Letter::new(index - F::OFFSET, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Word::from_letters(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter index of a level.
    pub fn index_of(level: u32) -> u32 {
        level + F::OFFSET
    }

    /// Largest letter index, `None` for the empty word.
    pub fn rank(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.level + F::OFFSET).max()
    }

    /// Number of inverse letters of level at least one.
    pub fn eta(&self) -> usize {
        eta(&self.letters)
    }

    /// `X^e` on the left of `self`.
    pub fn prepend(&self, index: u32, exp: i64) -> Self {
        let mut out = Word::<F>::from_powers(&[(index, exp)]).letters;
        out.extend_from_slice(&self.letters);
        Word::from_letters(out)
    }
}

impl<F: Family> fmt::Display for Word<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_levels(F::SYMBOL, F::OFFSET, &self.letters))
    }
}

impl<F: Family> fmt::Debug for Word<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", F::NAME, self)
    }
}

pub(crate) fn eta(ls: &[Letter]) -> usize {
    ls.iter().filter(|l| l.inv && l.level >= 1).count()
}

pub(crate) fn max_level(ls: &[Letter]) -> Option<u32> {
    ls.iter().map(|l| l.level).max()
}

/// Rank and eta of a word.
pub fn classify<F: Family>(w: &Word<F>) -> (Option<u32>, usize) {
    (w.rank(), w.eta())
}
