//! Word families used by the benchmarks.

use hydra_core::{AckWord, GroupWord, Letter};

/// `A_0^n`.
pub fn unit_run(n: usize) -> AckWord {
    AckWord::from_powers(&[(0, n as i64)])
}

/// Alternating `A_2^-1 A_1 A_2` and `A_1^-1 A_0^2 A_1` blocks on `A_0`
/// padding, `len` letters in all. Each block adds one, so the word is valid.
pub fn pinch_chain(len: usize) -> AckWord {
    let mut ls = Vec::with_capacity(len);
    let mut odd = false;
    while ls.len() + 4 <= len {
        if odd {
            ls.extend([Letter::new(1, true), Letter::unit(false), Letter::unit(false), Letter::new(1, false)]);
        } else {
            ls.extend([Letter::new(2, true), Letter::new(1, false), Letter::new(2, false)]);
        }
        odd = !odd;
    }
    while ls.len() < len {
        ls.push(Letter::unit(false));
    }
    AckWord::from_letters(ls)
}

/// `a_k^n a_2 t a_1 a_2^-1 a_k^-n`.
pub fn hydra_conjugate(k: u32, n: usize) -> GroupWord {
    let text = format!("a{k}^{n} a2 t a1 a2^-1 a{k}^-{n}");
    hydra_core::parse_group_word(&text).expect("well-formed")
}
