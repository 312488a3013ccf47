mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use interpkit_core::arith::coding::{pair, seq, unpair, unseq};
use interpkit_core::arith::model::arith_language;
use interpkit_core::arith::proof::identity_proof;
use interpkit_core::arith::{
    decode, diagonal_fixpoint, encode_formula, numeral, standard_model, val, verify_proof,
    ProofObject, Syntax,
};
use interpkit_core::logic::{parse_formula, Formula, Term};
use interpkit_core::semantics::{eval_oracle, Truth};
use interpkit_core::theories::AxiomStream;

use common::*;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

proptest! {
    #[test]
    fn pairs_and_sequences(a in any::<u64>(), b in any::<u64>(), xs in proptest::collection::vec(any::<u32>(), 0..8)) {
        prop_assert_eq!(unpair(&pair(&big(a), &big(b))).unwrap(), (big(a), big(b)));
        let items: Vec<BigUint> = xs.iter().map(|&x| BigUint::from(x)).collect();
        prop_assert_eq!(unseq(&seq(&items)).unwrap(), items);
    }

    #[test]
    fn numerals_denote_themselves(k in 0u64..5000) {
        prop_assert_eq!(val(&numeral(k)).unwrap(), big(k));
    }

    #[test]
    fn codes_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_arith_formula(&mut rng, &["x".to_string(), "y".to_string()], 4);
        prop_assert_eq!(decode(&encode_formula(&f)).unwrap(), Syntax::Formula(f));
    }

    #[test]
    fn arithmetic_agrees_with_machine(a in 0u64..1000, b in 0u64..1000) {
        let m = standard_model(100);
        let f = Formula::eq(
            Term::plus(Term::num(a), Term::times(Term::num(b), Term::num(a))),
            Term::num(a + b * a),
        );
        prop_assert_eq!(eval_oracle(&m, &f, &BTreeMap::new()).unwrap(), Truth::True);
    }
}

#[test]
fn diagonal_certificate() {
    let lang = interpkit_core::arith::model::code_language("L_code", &[]);
    let rho = parse_formula("Sent(v) and 0 < v", &lang).unwrap();
    let d = diagonal_fixpoint(&rho, "v").unwrap();
    assert!(d.certificate.holds());
    assert_eq!(d.certificate.code, encode_formula(&d.formula));
}

#[test]
fn proof_serialization() {
    let lang = arith_language();
    let p = identity_proof(&parse_formula("0 < 1", &lang).unwrap());
    assert_eq!(ProofObject::from_json(&p.to_json(), &lang).unwrap(), p);
    assert_eq!(ProofObject::decode(&p.encode()).unwrap(), p);
    let t = AxiomStream::empty(lang.clone());
    assert!(verify_proof(&p, &t, &parse_formula("0 < 1 -> 0 < 1", &lang).unwrap()).is_ok());
    assert!(verify_proof(&p, &t, &parse_formula("0 < 1", &lang).unwrap()).is_err());
}
