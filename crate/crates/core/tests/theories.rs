use interpkit_core::arith::model::arith_language;
use interpkit_core::theories::catalog::LEVELED;
use interpkit_core::theories::{
    ct_axioms, ct_clauses, named_stream, tautology, AxiomStream, STREAM_NAMES,
};

fn build(name: &str) -> AxiomStream {
    let level = LEVELED.contains(&name).then_some(1);
    named_stream(name, level).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn every_stream_builds_and_is_deterministic() {
    for name in STREAM_NAMES {
        let a = build(name).take(60);
        let b = build(name).take(60);
        assert_eq!(a, b, "{name}");
        let lang = build(name).language().clone();
        for f in &a {
            assert!(f.is_sentence(), "{name}: `{f}` has free variables");
            for (r, k) in f.relation_symbols() {
                assert_eq!(
                    lang.relation_arity(&r),
                    Some(k),
                    "{name}: `{r}` outside the language"
                );
            }
        }
    }
}

#[test]
fn random_access_matches_prefix() {
    let t = build("pa");
    let head = t.take(120);
    for i in [119u64, 0, 57, 3, 101] {
        assert_eq!(t.axiom_at(i), head[i as usize]);
    }
}

#[test]
fn finite_streams_pad_with_a_tautology() {
    let t = AxiomStream::finite("two", arith_language(), vec![tautology(), tautology()]);
    assert_eq!(t.finite_len(), Some(2));
    assert_eq!(t.axiom_at(40), tautology());
}

#[test]
fn ct_contains_each_level() {
    let head = ct_axioms(2).take(100);
    for j in 1..=2 {
        for c in ct_clauses(j) {
            assert!(head.contains(&c));
        }
    }
    assert_eq!(ct_clauses(1).len(), 4);
    assert_eq!(ct_clauses(2).len(), 5);
}
