mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use interpkit_core::arith::model::arith_language;
use interpkit_core::logic::{
    classify, parse_formula, prenex_classify, rectify, substitute, Formula, FormulaClass, Term,
};
use interpkit_core::semantics::{eval_finite, Assignment};

use common::*;

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn arithmetic_print_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_arith_formula(&mut rng, &vars(&["x", "y"]), 4);
        let back = parse_formula(&f.to_string(), &arith_language()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn relational_print_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lang = graph_language();
        let f = random_sentence(&mut rng, &lang, 4);
        prop_assert_eq!(parse_formula(&f.to_string(), &lang).unwrap(), f);
    }

    #[test]
    fn substitution_removes_the_variable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_arith_formula(&mut rng, &vars(&["x", "y"]), 3);
        let t = Term::plus(Term::var("y"), Term::num(1));
        let g = substitute(&f, "x", &t);
        let mut want: BTreeSet<String> = f.free_vars();
        if want.remove("x") {
            want.insert("y".into());
        }
        prop_assert_eq!(g.free_vars(), want);
    }

    #[test]
    fn rectify_and_prenex_preserve_truth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lang = graph_language();
        let f = random_sentence(&mut rng, &lang, 3);
        let r = rectify(&f, &BTreeSet::new());
        let (p, class) = prenex_classify(&f);
        prop_assert_eq!(classify(&f), class);
        for _ in 0..4 {
            let s = random_structure(&mut rng, &lang, 4);
            let truth = eval_finite(&s, &f, &Assignment::new()).unwrap();
            prop_assert_eq!(eval_finite(&s, &r, &Assignment::new()).unwrap(), truth);
            prop_assert_eq!(eval_finite(&s, &p, &Assignment::new()).unwrap(), truth);
        }
    }
}

#[test]
fn capture_is_avoided() {
    let lang = arith_language();
    let f = parse_formula("exists y (x < y)", &lang).unwrap();
    let g = substitute(&f, "x", &Term::var("y"));
    let Formula::Quant(_, bound, _) = &g else {
        panic!("quantifier expected")
    };
    assert_ne!(bound, "y");
    assert!(g.is_free("y"));
}

#[test]
fn known_classes() {
    let lang = arith_language();
    let c = |s: &str| classify(&parse_formula(s, &lang).unwrap());
    assert_eq!(c("forall x < 3 (x = x)"), FormulaClass::Delta0);
    assert_eq!(c("exists x (forall y (x < y))"), FormulaClass::Sigma(2));
    assert_eq!(c("not exists x (forall y (x < y))"), FormulaClass::Pi(2));
    assert_eq!(
        c("(exists x (x = 0)) -> forall y (y = y)"),
        FormulaClass::Pi(1)
    );
}
