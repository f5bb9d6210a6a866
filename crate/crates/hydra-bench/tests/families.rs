use hydra_bench::{hydra_conjugate, pinch_chain, unit_run};
use hydra_core::oracles::{eval_ack_exact, ExactResult};
use hydra_core::{ack_core, membership, Sign, Verdict};
use num_bigint::BigInt;

#[test]
fn families_have_the_stated_shape() {
    for n in [5usize, 64, 100] {
        assert_eq!(unit_run(n).len(), n);
        let w = pinch_chain(n);
        assert_eq!(w.len(), n);
        assert_eq!(ack_core::ackermann(&w).unwrap(), Verdict::Valid(Sign::Pos));
    }
    let w = pinch_chain(20);
    // 5 blocks of 3 or 4 letters use 17 letters; 3 units of padding.
    assert_eq!(eval_ack_exact(&w, 1 << 20), ExactResult::Value(BigInt::from(5 + 3)));
    assert!(membership::member(3, &hydra_conjugate(3, 2)).unwrap());
}
