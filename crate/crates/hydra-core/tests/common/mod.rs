//! Test-side reference arithmetic in `G_k`, written without the library's
//! theta memo or normal form.

#![allow(dead_code)]

use hydra_core::{Gen, GenLetter, GroupWord};

pub fn g(s: &str) -> GroupWord {
    hydra_core::parse_group_word(s).unwrap()
}

fn push_reduced(out: &mut Vec<GenLetter>, l: GenLetter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn theta_image(i: u32, forward: bool) -> Vec<GenLetter> {
    if i == 1 {
        return vec![GenLetter::a(1)];
    }
    let mut out = vec![GenLetter::a(i)];
    if forward {
        out.push(GenLetter::a(i - 1));
    } else {
        // theta^-1(a_i) = a_i theta^-1(a_{i-1})^-1
        for l in theta_image(i - 1, false).into_iter().rev() {
            push_reduced(&mut out, l.inverse());
        }
    }
    out
}

/// `theta^{+-1}` applied letter by letter, then freely reduced.
pub fn theta_once(v: &[GenLetter], forward: bool) -> Vec<GenLetter> {
    let mut out = Vec::new();
    for &l in v {
        let i = l.a_index().expect("a-letter");
        let img = theta_image(i, forward);
        if l.inv {
            for x in img.into_iter().rev() {
                push_reduced(&mut out, x.inverse());
            }
        } else {
            for x in img {
                push_reduced(&mut out, x);
            }
        }
    }
    out
}

/// `(r, v)` with `w = t^r v` in `G_k`, by left-to-right multiplication.
pub fn gk_eval(w: &GroupWord) -> (i64, Vec<GenLetter>) {
    let (mut r, mut v) = (0i64, Vec::new());
    for &l in w.letters() {
        match l.gen {
            Gen::T => {
                v = theta_once(&v, !l.inv);
                r += if l.inv { -1 } else { 1 };
            }
            Gen::A(_) => push_reduced(&mut v, l),
            Gen::P => panic!("p in a G_k word"),
        }
    }
    (r, v)
}

pub fn gk_trivial(w: &GroupWord) -> bool {
    gk_eval(w) == (0, Vec::new())
}

pub fn free_reduced(w: &GroupWord) -> Vec<GenLetter> {
    let mut out = Vec::new();
    for &l in w.letters() {
        push_reduced(&mut out, l);
    }
    out
}
