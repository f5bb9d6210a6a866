mod common;

use common::{free_reduced, g, gk_eval, gk_trivial, theta_once};
use hydra_core::hydra_alg::*;
use hydra_core::{GenLetter, GroupWord};

#[test]
fn free_reduction() {
    assert_eq!(free_reduce(&g("a1 a1^-1 a2")), g("a2"));
    assert_eq!(free_reduce(&g("a3 a2 a1 a1^-1 a2^-1")), g("a3"));
    assert_eq!(free_reduce(&GroupWord::empty()), GroupWord::empty());
}

#[test]
fn theta_examples() {
    for r in 0..6 {
        let expect = GroupWord::from_letters(
            std::iter::once(GenLetter::a(2)).chain(std::iter::repeat_n(GenLetter::a(1), r)).collect(),
        );
        assert_eq!(theta_letter(r as i64, 2, 1), expect);
    }
    assert_eq!(theta_letter(2, 3, 1), g("a3 a2 a2 a1"));
    assert_eq!(theta_once(&theta_once(g("a3").letters(), true), true), g("a3 a2 a2 a1").letters());
    assert_eq!(theta_letter(-1, 3, 1), g("a3 a1 a2^-1"));
    assert_eq!(theta_once(g("a3 a1 a2^-1").letters(), true), g("a3").letters());
    assert_eq!(theta_word(1, &g("a3 a2")).unwrap(), g("a3 a2 a2 a1"));
    assert_eq!(theta_word(1, &g("a1")).unwrap(), g("a1"));
    let w = g("a3 a1^-2 a2 a4^-1 a2");
    assert_eq!(theta_word(-1, &theta_word(1, &w).unwrap()).unwrap(), w);
}

#[test]
fn normal_form_examples() {
    let nf = normal_form(&g("a3^4 a2 t a1 a2^-1 a3^-4")).unwrap();
    assert_eq!(nf.t_exp, 1);
    assert_eq!(nf.body, g("a3 a2 a3 a2 a3 a2 a3 a2 a2 a1^2 a2^-1 a3^-4"));
    let nf = normal_form(&g("t a1 t^-1")).unwrap();
    assert_eq!((nf.t_exp, nf.body), (0, g("a1")));
    let w = g("a2 t a2^-1 t^-1");
    let nf = normal_form(&w).unwrap();
    assert_eq!((nf.t_exp, nf.body.clone()), (0, g("a2 a1 a2^-1")));
    assert_eq!(gk_eval(&w), (0, nf.body.letters().to_vec()));
}

fn pieces(v: &str, m: u32) -> Vec<GroupWord> {
    piece_decomposition(&g(v), m).unwrap().iter().map(Piece::to_word).collect()
}

#[test]
fn piece_examples() {
    assert_eq!(
        pieces("a5 a3 a5^-1 a2 a5 a1 a5^-1 a1 a5^-1", 5),
        vec![g("a5 a3 a5^-1"), g("a2"), g("a5 a1 a5^-1"), g("a1 a5^-1")]
    );
    let v = "a3 a2 a3 a2 a3 a2 a3 a2 a2 a1^2 a2^-1 a3^-4";
    let expect: Vec<GroupWord> = ["a3 a2", "a3 a2", "a3 a2", "a3 a2^2 a1^2 a2^-1 a3^-1", "a3^-1", "a3^-1", "a3^-1"]
        .iter()
        .map(|s| g(s))
        .collect();
    assert_eq!(pieces(v, 3), expect);
    assert!(pieces("", 3).is_empty());
}

#[test]
fn hydra_step_examples() {
    assert_eq!(hydra_step(&g("a2 a3 a1")).unwrap(), g("a3 a2 a1"));
    assert_eq!(hydra_step(&g("a1")).unwrap(), GroupWord::empty());
    assert_eq!(hydra_step(&g("a3 a2 a1")).unwrap(), g("a2 a1 a1"));
    assert!(hydra_step(&GroupWord::empty()).is_err());
    assert!(hydra_step(&g("a2^-1")).is_err());
}

#[test]
fn hydra_counts() {
    assert_eq!(hydra_count(&g("a2 a3 a1"), HYDRA_CAP).unwrap(), Some(5));
    assert_eq!(hydra_count(&g("a2^3"), HYDRA_CAP).unwrap(), Some(7));
    assert_eq!(hydra_count(&GroupWord::empty(), HYDRA_CAP).unwrap(), Some(0));
    assert_eq!(hydra_count(&g("a4^3"), 1000).unwrap(), None);
}

#[test]
fn hydra_witnesses() {
    let u23 = hydra_witness(2, 3, HYDRA_CAP).unwrap().unwrap();
    assert_eq!(u23, g("a2 t a2 t a1 t a2 t a1 t a1 t a1 t"));
    assert_eq!(hydra_witness(2, 1, HYDRA_CAP).unwrap().unwrap(), g("a2 t"));
    assert!(gk_trivial(&u23.concat(&g("t^-7 a2^-3"))));
    assert_eq!(free_reduced(&u23).len(), u23.len());
}
