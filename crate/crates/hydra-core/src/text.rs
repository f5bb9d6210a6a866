//! The three word grammars and their renderers.
//!
//! A word is a whitespace-separated list of tokens `X<i>` or `X<i>^<n>`.
//! Powers are expanded at parse time; a negative power repeats the inverse.

use crate::error::ParseError;
use crate::hydra_alg::{Gen, GenLetter, GroupWord};
use crate::word::{Ack, Family, Letter, Psi, Word};

/// Refuse inputs that would expand to more letters than this.
pub const MAX_LETTERS: usize = 1 << 22;

struct Token<'a> {
    start: usize,
    text: &'a str,
}

fn tokens(s: &str) -> impl Iterator<Item = Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push(Token { start: b, text: &s[b..i] });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push(Token { start: b, text: &s[b..] });
    }
    out.into_iter()
}

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError { offset, message: message.into() }
}

/// Parse `^<signed>` at the tail of a token. Returns 1 when absent.
fn exponent(tok: &Token, at: usize) -> Result<i64, ParseError> {
    let rest = &tok.text[at..];
    if rest.is_empty() {
        return Ok(1);
    }
    let caret = tok.start + at;
    let Some(num) = rest.strip_prefix('^') else {
        return Err(err(caret, format!("unexpected `{}`", &rest[..rest.chars().next().unwrap().len_utf8()])));
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(caret, "expected a signed integer after `^`"));
    }
    num.parse::<i64>().map_err(|_| err(caret, "exponent out of range"))
}

/// Leading symbol then decimal index; returns (index, bytes consumed).
fn indexed(tok: &Token, symbol: char) -> Result<(u32, usize), ParseError> {
    let body = &tok.text[symbol.len_utf8()..];
    let n = body.bytes().take_while(|b| b.is_ascii_digit()).count();
    if n == 0 {
        return Err(err(tok.start + symbol.len_utf8(), format!("expected an index after `{symbol}`")));
    }
    let idx = body[..n]
        .parse::<u32>()
        .map_err(|_| err(tok.start + symbol.len_utf8(), "index out of range"))?;
    Ok((idx, symbol.len_utf8() + n))
}

fn push_power<T: Copy>(out: &mut Vec<T>, pos: T, neg: T, exp: i64, offset: usize) -> Result<(), ParseError> {
    let n = exp.unsigned_abs() as usize;
    if out.len() + n > MAX_LETTERS {
        return Err(err(offset, "word too long"));
    }
    out.extend(std::iter::repeat_n(if exp < 0 { neg } else { pos }, n));
    Ok(())
}

fn parse_family<F: Family>(s: &str) -> Result<Word<F>, ParseError> {
    let mut out = Vec::new();
    for tok in tokens(s) {
        if !tok.text.starts_with(F::SYMBOL) {
            return Err(err(tok.start, format!("expected `{}<index>`", F::SYMBOL)));
        }
        let (idx, used) = indexed(&tok, F::SYMBOL)?;
        if idx < F::OFFSET {
            return Err(err(tok.start, format!("indices start at {}", F::OFFSET)));
        }
        let exp = exponent(&tok, used)?;
        let level = idx - F::OFFSET;
        push_power(&mut out, Letter::new(level, false), Letter::new(level, true), exp, tok.start)?;
    }
    Ok(Word::from_letters(out))
}

/// `A<i>[^n]` tokens, e.g. `A2^-1 A1 A1 A0`.
pub fn parse_ack_word(s: &str) -> Result<Word<Ack>, ParseError> {
    parse_family::<Ack>(s)
}

/// `p<i>[^n]` tokens with `i >= 1`, e.g. `p3^-1 p1^2 p2^2 p3`.
pub fn parse_psi_word(s: &str) -> Result<Word<Psi>, ParseError> {
    parse_family::<Psi>(s)
}

/// `a<i>`, `t`, `p` tokens, each with an optional `^n`.
pub fn parse_group_word(s: &str) -> Result<GroupWord, ParseError> {
    let mut out = Vec::new();
    for tok in tokens(s) {
        let (gen, used) = match tok.text.chars().next() {
            Some('a') => {
                let (idx, used) = indexed(&tok, 'a')?;
                if idx == 0 {
                    return Err(err(tok.start, "generator indices start at 1"));
                }
                (Gen::A(idx), used)
            }
            Some('t') => (Gen::T, 1),
            Some('p') => (Gen::P, 1),
            _ => return Err(err(tok.start, "expected `a<index>`, `t` or `p`")),
        };
        let exp = exponent(&tok, used)?;
        push_power(&mut out, GenLetter::new(gen, false), GenLetter::new(gen, true), exp, tok.start)?;
    }
    Ok(GroupWord::from_letters(out))
}

fn render_runs<T: PartialEq + Copy>(items: &[T], name: impl Fn(T) -> (String, bool)) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let mut j = i + 1;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        let (base, inv) = name(items[i]);
        let n = (j - i) as i64;
        let e = if inv { -n } else { n };
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        i = j;
    }
    parts.join(" ")
}

pub(crate) fn render_levels(symbol: char, offset: u32, ls: &[Letter]) -> String {
    render_runs(ls, |l| (format!("{symbol}{}", l.level + offset), l.inv))
}

pub(crate) fn render_group(ls: &[GenLetter]) -> String {
    render_runs(ls, |l| {
        let base = match l.gen {
            Gen::A(i) => format!("a{i}"),
            Gen::T => "t".to_string(),
            Gen::P => "p".to_string(),
        };
        (base, l.inv)
    })
}
