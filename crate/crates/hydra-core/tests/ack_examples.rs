use hydra_core::ack_core::*;
use hydra_core::oracles::{ack_fn_exact, eval_ack_exact, ExactResult, DEFAULT_CAP};
use hydra_core::{classify, parse_ack_word, AckWord, Rewrite, Sign, Verdict};
use num_bigint::BigInt;

fn w(s: &str) -> AckWord {
    parse_ack_word(s).unwrap()
}

fn word(r: Rewrite<AckWord>) -> AckWord {
    r.word().expect("expected a word, got Invalid")
}

/// Same validity, same value.
fn assert_equiv(a: &AckWord, b: &AckWord) {
    let (x, y) = (eval_ack_exact(a, DEFAULT_CAP), eval_ack_exact(b, DEFAULT_CAP));
    assert_ne!(x, ExactResult::Overflow);
    assert_eq!(x, y, "{a} vs {b}");
}

fn value(a: &AckWord) -> i64 {
    match eval_ack_exact(a, DEFAULT_CAP) {
        ExactResult::Value(v) => i64::try_from(v).unwrap(),
        other => panic!("{a}: {other:?}"),
    }
}

#[test]
fn classify_rank_and_eta() {
    assert_eq!(classify(&w("A4^-1 A3 A0^-1 A1^-1 A2")), (Some(4), 2));
    assert_eq!(classify(&AckWord::empty()), (None, 0));
    assert_eq!(classify(&w("A0^-5")), (Some(0), 0));
}

#[test]
fn bounds_tables() {
    assert_eq!(bounds(17).triples, vec![(2, 3, 8), (2, 4, 16), (3, 3, 16)]);
    assert!(bounds(1).triples.is_empty());
    let mut expect = Vec::new();
    for r in 2..8u32 {
        for n in 3..12i64 {
            if let ExactResult::Value(v) = ack_fn_exact(r, n, 100) {
                expect.push((r, n, i64::try_from(v).unwrap()));
            }
        }
    }
    assert_eq!(bounds(100).triples, expect);
    assert_eq!(expect, vec![(2, 3, 8), (2, 4, 16), (2, 5, 32), (2, 6, 64), (3, 3, 16)]);
}

#[test]
fn direct_small_values() {
    assert_eq!(ack_direct_small(5, 1), Some(2));
    assert_eq!(ack_direct_small(3, 2), Some(4));
    assert_eq!(ack_direct_small(1, -3), Some(-6));
    assert_eq!(ack_direct_small(2, 3), None);
}

#[test]
fn positive_examples() {
    assert_eq!(positive(&w("A0^-6 A1 A0^-1 A5 A0^-4 A2 A1 A2 A0")).unwrap(), Verdict::Valid(Sign::Pos));
    assert_eq!(positive(&AckWord::empty()).unwrap(), Verdict::Valid(Sign::Zero));
    assert_eq!(positive(&w("A2 A0^-1")).unwrap(), Verdict::Invalid);
    assert_eq!(positive(&w("A0^-2 A0^-6 A1 A0^-1 A5 A0^-4 A2 A1 A2 A0")).unwrap(), Verdict::Valid(Sign::Pos));
    assert!(positive(&w("A1^-1 A1")).is_err());
}

#[test]
fn base_pinch_examples() {
    let a = w("A1^-1 A0^2 A1 A2 A0^-1 A0");
    let out = word(base_pinch(&a).unwrap());
    assert_eq!(out, w("A0 A2 A0^-1 A0"));
    assert_equiv(&a, &out);

    assert_eq!(word(base_pinch(&w("A2^-1 A2 A0")).unwrap()), w("A0"));

    let b = w("A2^-1 A0 A2 A0^-1 A0");
    let out = word(base_pinch(&b).unwrap());
    assert_eq!(out, w("A0 A0^-1 A0"));
    assert_equiv(&b, &out);

    assert_eq!(base_pinch(&w("A2^-1 A0^-1 A2 A0^-1 A3 A0^-1 A0^100")).unwrap(), Rewrite::Invalid);
}

#[test]
fn one_to_zero_examples() {
    for (input, expect) in [
        ("A3^-1 A0^-1 A3 A0", "A0^-1 A0"),
        ("A4^-1 A0^-1 A4 A0", "A0^-1 A0"),
        ("A3^-1 A0^-3 A3 A0^2", "A0^-2 A0^2"),
    ] {
        let out = one_to_zero(&w(input)).unwrap();
        assert_eq!(out, w(expect));
        assert_equiv(&w(input), &out);
    }
    assert!(one_to_zero(&w("A3^-1 A0 A3 A0")).is_err());
}

#[test]
fn pinch_examples() {
    let a = w("A2^-1 A0^2 A2 A0");
    let out = word(pinch(2, &a).unwrap());
    assert_eq!(out, w("A0^2"));
    assert_eq!(value(&a), 2);
    assert_eq!(word(pinch(1, &w("A1^-1 A1")).unwrap()), AckWord::empty());
    assert_eq!(word(pinch(3, &w("A3^-1 A0^-1 A3 A0")).unwrap()), w("A0^-1 A0"));
}

#[test]
fn cut_rank_examples() {
    let a = w("A2^-1 A1 A0^2 A2 A0");
    let out = word(cut_rank(2, &a).unwrap());
    assert_eq!(out, w("A0 A2^-1 A0^2 A2 A0"));
    assert_equiv(&a, &out);
    let b = w("A3^-1 A0^-1 A3 A0");
    assert_eq!(word(cut_rank(3, &b).unwrap()), b);
    assert_eq!(word(cut_rank(2, &w("A2^-1 A2 A0")).unwrap()), w("A0"));
}

#[test]
fn final_pinch_examples() {
    let a = w("A2^-1 A0^2 A2 A0");
    assert_eq!(word(final_pinch(2, &a).unwrap()), w("A0^2"));
    assert_eq!(word(final_pinch(3, &w("A3^-1 A0^-1 A3 A0")).unwrap()), w("A0^-1 A0"));
    assert_eq!(final_pinch(2, &w("A2^-1 A0^-1 A2 A0^-1 A3 A0^-1 A0^100")).unwrap(), Rewrite::Invalid);
}

#[test]
fn reduce_examples() {
    assert_eq!(reduce(&w("A2^-1 A0^-2 A3 A0^100")).unwrap(), Rewrite::Invalid);
    let a = w("A0 A2^-1 A1 A0^2 A2 A0");
    let out = word(reduce(&a).unwrap());
    assert_eq!(out, w("A0^4"));
    assert_eq!(value(&a), 4);
    assert_eq!(word(reduce(&w("A1^-1 A1")).unwrap()), AckWord::empty());
}

#[test]
fn ackermann_examples() {
    assert_eq!(ackermann(&w("A2^-1 A1 A1 A0")).unwrap(), Verdict::Valid(Sign::Pos));
    assert_eq!(ackermann(&w("A1 A1^-1 A0")).unwrap(), Verdict::Invalid);
    assert_eq!(ackermann(&w("A3^-1 A0^-1 A3 A0")).unwrap(), Verdict::Valid(Sign::Zero));
    assert_eq!(ackermann(&w("A0 A2^-1 A1 A0^2 A2 A0")).unwrap(), Verdict::Valid(Sign::Pos));
    assert_eq!(value(&w("A2^-1 A1 A1 A0")), 2);
    assert_eq!(eval_ack_exact(&w("A1 A1^-1 A0"), DEFAULT_CAP), ExactResult::Invalid);
}

#[test]
fn ackermann_table_values() {
    let cap = 1u64 << 20;
    for (r, n, v) in [(0, 4, 5), (1, 4, 8), (2, 4, 16), (3, 3, 16), (3, 4, 65536), (4, 3, 65536)] {
        assert_eq!(ack_fn_exact(r, n, cap), ExactResult::Value(BigInt::from(v)));
    }
    assert_eq!(ack_fn_exact(3, 5, 1_000_000), ExactResult::Overflow);
}
