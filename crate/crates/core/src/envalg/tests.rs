use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::liealg::make_sl;
use crate::rational::{frac, int};
use crate::symalg::berezin_bracket;

fn sl3() -> Envelope {
    Envelope::new(Arc::new(make_sl(3).unwrap()))
}

#[test]
fn multiply_examples() {
    let u = sl3();
    let e21 = u.generator_named("E21").unwrap();
    let e12 = u.generator_named("E12").unwrap();
    assert_eq!(u.text(&u.multiply(&e21, &e12)), "E12*E21 - H1");
    let h1 = u.generator_named("H1").unwrap();
    let h2 = u.generator_named("H2").unwrap();
    assert_eq!(u.multiply(&h1, &h2), u.multiply(&h2, &h1));
    assert_eq!(u.text(&u.multiply(&h2, &h1)), "H1*H2");
    let e23 = u.generator_named("E23").unwrap();
    let left = u.multiply(&u.multiply(&e12, &e21), &e23);
    let right = u.multiply(&e12, &u.multiply(&e21, &e23));
    assert_eq!(left, right);
}

#[test]
fn commutator_examples() {
    let u = sl3();
    let g = |l: &str| u.generator_named(l).unwrap();
    assert_eq!(u.text(&u.commutator(&g("E12"), &g("E21"))), "H1");
    let a = u.parse("E12*E21 + 3*H1").unwrap();
    assert!(u.commutator(&a, &a).is_zero());
    let w = u.product(&[&g("E12"), &g("E23"), &g("E31")]);
    assert!(u.commutator(&g("H1"), &w).is_zero());
    assert!(u.commutator(&g("H2"), &w).is_zero());
}

#[test]
fn symmetrize_examples() {
    let u = sl3();
    let t = u.symmetric_table().clone();
    let p = |s: &str| CommPoly::parse(s, &t).unwrap();
    assert_eq!(u.text(&u.symmetrize(&p("e12*e21")).unwrap()), "E12*E21 - 1/2*H1");
    // S(ABC) = average of all six orderings
    let (a, b, c) =
        (u.generator_named("E12").unwrap(), u.generator_named("E23").unwrap(), u.generator_named("E31").unwrap());
    let six = [
        u.product(&[&a, &b, &c]),
        u.product(&[&a, &c, &b]),
        u.product(&[&b, &a, &c]),
        u.product(&[&b, &c, &a]),
        u.product(&[&c, &a, &b]),
        u.product(&[&c, &b, &a]),
    ];
    let avg = six.iter().fold(NCPoly::zero(), |acc, x| &acc + x).scale(&frac(1, 6));
    assert_eq!(u.symmetrize(&p("e12*e23*e31")).unwrap(), avg);
    assert_eq!(u.sym_product(&[a.clone(), b.clone(), c.clone()]).unwrap(), avg);
    // repeated variables
    let sq = u.symmetrize(&p("e12^2*e21")).unwrap();
    let e21 = u.generator_named("E21").unwrap();
    let manual =
        (&(&u.product(&[&a, &a, &e21]) + &u.product(&[&a, &e21, &a])) + &u.product(&[&e21, &a, &a])).scale(&frac(1, 3));
    assert_eq!(sq, manual);
}

#[test]
fn sym_product_examples() {
    let u = sl3();
    let a = u.generator_named("E12").unwrap();
    let b = u.generator_named("E21").unwrap();
    assert_eq!(u.sym_product(std::slice::from_ref(&a)).unwrap(), a);
    let half = (&u.multiply(&a, &b) + &u.multiply(&b, &a)).scale(&frac(1, 2));
    assert_eq!(u.sym_product(&[a.clone(), b.clone()]).unwrap(), half);
    let h1 = u.generator_named("H1").unwrap();
    let h2 = u.generator_named("H2").unwrap();
    assert_eq!(u.sym_product(&[h1.clone(), h2.clone()]).unwrap(), u.multiply(&h1, &h2));
    assert_eq!(u.sym_product(&[]), Err(Error::EmptyProduct));
}

#[test]
fn text_round_trip() {
    let u = sl3();
    let p = u.parse("2*E21*E12 - 1/2*H1 + E12^2*E21 + 7").unwrap();
    let text = u.text(&p);
    assert_eq!(text, "E12^2*E21 + 2*E12*E21 - 5/2*H1 + 7");
    assert_eq!(u.parse(&text).unwrap(), p);
}

#[test]
fn symbols_of_symmetrized_monomials() {
    // top symbol of S(m) is m for every degree <= 4 monomial over sl(3)
    let u = sl3();
    let t = u.symmetric_table().clone();
    let d = t.len();
    for degree in 1..=4usize {
        for combo in itertools::Itertools::combinations_with_replacement(0..d, degree) {
            let mut e = vec![0; d];
            for &i in &combo {
                e[i] += 1;
            }
            let m = CommPoly::monomial(&t, e, int(1));
            let s = u.symmetrize(&m).unwrap();
            assert_eq!(u.symbol(&s, degree), m);
            assert!(s.degree() == Some(degree));
        }
    }
}

#[test]
fn weight_zero_symmetrizations_commute_with_cartan() {
    let u = sl3();
    let t = u.symmetric_table().clone();
    let p = |s: &str| CommPoly::parse(s, &t).unwrap();
    for text in ["e12*e21", "e13*e31*h1", "e12*e23*e31", "e13*e32*e21*h2", "e12^2*e21^2"] {
        let s = u.symmetrize(&p(text)).unwrap();
        for h in ["H1", "H2"] {
            assert!(u.commutator(&u.generator_named(h).unwrap(), &s).is_zero(), "{text}");
        }
    }
}

#[test]
fn classical_limit_on_samples() {
    let u = sl3();
    let t = u.symmetric_table().clone();
    let p = |s: &str| CommPoly::parse(s, &t).unwrap();
    let pairs = [("e12*e21", "e23*e32"), ("e12*e23*e31", "e13*e31"), ("h1*e12", "e21^2*e13")];
    for (a, b) in pairs {
        let (fa, fb) = (p(a), p(b));
        let c = u.commutator(&u.symmetrize(&fa).unwrap(), &u.symmetrize(&fb).unwrap());
        let top = fa.degree().unwrap() + fb.degree().unwrap() - 1;
        assert!(c.degree().unwrap_or(0) as i64 <= top);
        assert_eq!(u.symbol(&c, top as usize), berezin_bracket(&fa, &fb, u.spec()).unwrap());
    }
}

#[test]
fn matrix_representations_respect_brackets() {
    let u = sl3();
    let spec = u.spec().clone();
    for mats in [defining_matrices(&spec).unwrap(), adjoint_matrices(&spec)] {
        for i in 0..spec.dim() {
            for j in 0..spec.dim() {
                let lhs = mats[i].commutator(&mats[j]);
                let mut rhs = Matrix::zero(lhs.size());
                for (k, c) in spec.bracket(i, j) {
                    rhs.add_scaled(&mats[*k], c);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn normal_form_agrees_with_matrix_evaluation() {
    let u = sl3();
    let mats = defining_matrices(u.spec()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let len = rng.gen_range(1..6);
        let w: Word = (0..len).map(|_| rng.gen_range(0..8u8)).collect();
        let mut raw = NCPoly::zero();
        raw.add_term(w.clone(), int(1));
        assert_eq!(evaluate(&raw, &mats), evaluate(&u.normalize(&raw), &mats));
    }
}

fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..8, 0..6)
}

proptest! {
    #[test]
    fn rewriting_is_confluent(w in word_strategy(), seed in any::<u64>()) {
        let u = sl3();
        let mut raw = NCPoly::zero();
        raw.add_term(w.clone(), int(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = u.normalize_with(&raw, |inv| rng.gen_range(0..inv.len()));
        let rightmost = u.normalize_with(&raw, |inv| inv.len() - 1);
        let memo = u.normalize(&raw);
        prop_assert!(memo.is_normal());
        prop_assert_eq!(&random, &memo);
        prop_assert_eq!(&rightmost, &memo);
    }

    #[test]
    fn multiplication_is_associative(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
        let u = sl3();
        let mk = |w: &Vec<u8>| u.normalize_word(w).as_ref().clone();
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(u.multiply(&u.multiply(&x, &y), &z), u.multiply(&x, &u.multiply(&y, &z)));
    }

    #[test]
    fn commutator_lowers_filtration(a in word_strategy(), b in word_strategy()) {
        let u = sl3();
        let (x, y) = (u.normalize_word(&a), u.normalize_word(&b));
        let c = u.commutator(&x, &y);
        if let Some(d) = c.degree() {
            prop_assert!(d < a.len() + b.len());
        }
    }
}
