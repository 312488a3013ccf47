mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use interpkit_core::arith::model::{arith_language, standard_model};
use interpkit_core::interp::check::quotient;
use interpkit_core::interp::{
    build_initial_embedding, check_interpretation, compose, graph_translation,
    identity_translation, translate_formula, NatHost, Translation,
};
use interpkit_core::logic::{parse_formula, Language};
use interpkit_core::semantics::{eval_finite, Assignment, FiniteStructure};

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_matches_translation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lang = graph_language();
        let s = random_structure(&mut rng, &lang, 5);
        if let Some(m) = random_interpretation(&mut rng, &lang, &s, 20) {
            let q = quotient(&m, &s).unwrap();
            for _ in 0..5 {
                let f = random_sentence(&mut rng, &lang, 3);
                let there = eval_finite(&s, &translate_formula(&m, &f).unwrap(), &Assignment::new()).unwrap();
                prop_assert_eq!(there, eval_finite(&q.structure, &f, &Assignment::new()).unwrap());
            }
        }
    }

    #[test]
    fn identity_is_neutral(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lang = graph_language();
        let s = random_structure(&mut rng, &lang, 5);
        let id = identity_translation(&lang);
        // the law needs a reflexive equality and a nonempty domain
        let Some(m) = random_interpretation(&mut rng, &lang, &s, 20) else { return Ok(()) };
        let f = random_sentence(&mut rng, &lang, 3);
        let truth = |t: &Translation| eval_finite(&s, &translate_formula(t, &f).unwrap(), &Assignment::new()).unwrap();
        let direct = truth(&m);
        prop_assert_eq!(truth(&compose(&id, &m).unwrap()), direct);
        prop_assert_eq!(truth(&compose(&m, &id).unwrap()), direct);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lang = graph_language();
        let m = random_translation(&mut rng, &lang);
        prop_assert_eq!(Translation::from_json(&m.to_json()).unwrap(), m);
        let s = random_structure(&mut rng, &lang, 5);
        prop_assert_eq!(FiniteStructure::from_json(&s.to_json()).unwrap(), s);
    }
}

#[test]
fn empty_domain_is_rejected() {
    let lang = graph_language();
    let s = FiniteStructure::on_range(lang.clone(), 2, Default::default()).unwrap();
    let m = Translation::new(
        lang.clone(),
        lang.clone(),
        parse_formula("not x = x", &lang).unwrap(),
        [
            ("E".to_string(), parse_formula("x = y", &lang).unwrap()),
            ("P".to_string(), parse_formula("x = x", &lang).unwrap()),
        ]
        .into_iter()
        .collect(),
        parse_formula("x = y", &lang).unwrap(),
        Vec::new(),
    )
    .unwrap();
    let r = check_interpretation(&m, &s).unwrap();
    assert!(!r.pass);
    assert!(quotient(&m, &s).is_err());
}

#[test]
fn successor_embedding_on_naturals() {
    let lang = arith_language();
    let n = graph_translation(&lang, parse_formula("x = x", &lang).unwrap());
    let e = build_initial_embedding(
        &NatHost {
            model: standard_model(1000),
            spread: 1,
        },
        &n,
        50,
    )
    .unwrap();
    assert!(e.len() >= 10);
    for (k, v) in e.iter().enumerate().take(10) {
        assert_eq!(v.to_string(), k.to_string());
    }
}

#[test]
fn iso_reports_parameters() {
    use interpkit_core::interp::check::check_iso_of_interpretations;
    let lang = Language::new("pc", &[("P", 1)], &[("c", 0)]).unwrap();
    let s = FiniteStructure::on_range(
        lang.clone(),
        2,
        [("P".to_string(), [vec![0]].into())].into(),
    )
    .unwrap()
    .with_constant("c", 0)
    .unwrap();
    let id = identity_translation(&lang);
    let r = check_iso_of_interpretations(
        &s,
        &id,
        &id,
        &parse_formula("x = y and (x = c or not x = c)", &lang).unwrap(),
    )
    .unwrap();
    assert!(r.pass);
    assert_eq!(r.parameters, vec!["c".to_string()]);
    let r = check_iso_of_interpretations(&s, &id, &id, &parse_formula("x = y", &lang).unwrap())
        .unwrap();
    assert!(r.parameters.is_empty());
}
