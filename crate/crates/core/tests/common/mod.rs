//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use interpkit_core::interp::check::check_interpretation;
use interpkit_core::interp::Translation;
use interpkit_core::logic::{Conn, Formula, Language, Quant, Term};
use interpkit_core::semantics::FiniteStructure;

/// One binary and one unary relation.
pub fn graph_language() -> Language {
    Language::new("g", &[("E", 2), ("P", 1)], &[]).unwrap()
}

pub fn random_structure(rng: &mut impl Rng, lang: &Language, max: usize) -> FiniteStructure {
    let n = rng.gen_range(1..=max);
    let mut rels = BTreeMap::new();
    for (r, a) in &lang.relations {
        let density: f64 = rng.gen_range(0.1..0.9);
        let set: BTreeSet<Vec<usize>> = (0..n.pow(*a as u32))
            .map(|mut k| {
                (0..*a)
                    .map(|_| {
                        let d = k % n;
                        k /= n;
                        d
                    })
                    .collect()
            })
            .filter(|_| rng.gen_bool(density))
            .collect();
        rels.insert(r.clone(), set);
    }
    FiniteStructure::on_range(lang.clone(), n, rels).unwrap()
}

fn random_atom(rng: &mut impl Rng, lang: &Language, vars: &[String]) -> Formula {
    let v = |rng: &mut dyn rand::RngCore| Term::var(vars.choose(rng).unwrap());
    let k = rng.gen_range(0..=lang.relations.len());
    if k == lang.relations.len() {
        return Formula::eq(v(rng), v(rng));
    }
    let (r, a) = &lang.relations[k];
    Formula::rel(r, (0..*a).map(|_| v(rng)).collect())
}

/// A formula of quantifier/connective depth at most `depth` whose free
/// variables lie in `free`; bound variables come from `pool`.
pub fn random_formula(
    rng: &mut impl Rng,
    lang: &Language,
    free: &[String],
    pool: &[&str],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        if free.is_empty() {
            let v = pool.choose(rng).unwrap().to_string();
            let body = random_formula(rng, lang, std::slice::from_ref(&v), pool, 0);
            return Formula::exists(&v, body);
        }
        return random_atom(rng, lang, free);
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, lang, free, pool, depth - 1)),
        1 => {
            let c = *[Conn::And, Conn::Or, Conn::Implies, Conn::Iff]
                .choose(rng)
                .unwrap();
            Formula::Bin(
                c,
                Box::new(random_formula(rng, lang, free, pool, depth - 1)),
                Box::new(random_formula(rng, lang, free, pool, depth - 1)),
            )
        }
        _ => {
            let v = pool.choose(rng).unwrap().to_string();
            let mut inner: Vec<String> = free.iter().filter(|w| **w != v).cloned().collect();
            inner.push(v.clone());
            let q = if rng.gen_bool(0.5) {
                Quant::Forall
            } else {
                Quant::Exists
            };
            Formula::Quant(
                q,
                v,
                Box::new(random_formula(rng, lang, &inner, pool, depth - 1)),
            )
        }
    }
}

pub fn random_sentence(rng: &mut impl Rng, lang: &Language, depth: usize) -> Formula {
    random_formula(rng, lang, &[], &["x", "y", "z"], depth)
}

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// A random translation of `lang` into itself, with components of depth at
/// most 2 over the bound variables `u`, `w`.
pub fn random_translation(rng: &mut impl Rng, lang: &Language) -> Translation {
    let pool = ["u", "w"];
    let domain = if rng.gen_bool(0.4) {
        Formula::eq(Term::var("x"), Term::var("x"))
    } else {
        random_formula(rng, lang, &vars(&["x"]), &pool, 2)
    };
    let equality = match rng.gen_range(0..3) {
        0 => random_formula(rng, lang, &vars(&["x", "y"]), &pool, 2),
        _ => Formula::eq(Term::var("x"), Term::var("y")),
    };
    let mut rels = BTreeMap::new();
    for (r, a) in &lang.relations {
        let args: Vec<String> = interpkit_core::interp::check::component_vars(*a);
        rels.insert(r.clone(), random_formula(rng, lang, &args, &pool, 2));
    }
    Translation::new(
        lang.clone(),
        lang.clone(),
        domain,
        rels,
        equality,
        Vec::new(),
    )
    .unwrap()
}

/// A random translation that is an interpretation in `s`, if one is found
/// within `tries` attempts.
pub fn random_interpretation(
    rng: &mut impl Rng,
    lang: &Language,
    s: &FiniteStructure,
    tries: usize,
) -> Option<Translation> {
    (0..tries)
        .map(|_| random_translation(rng, lang))
        .find(|m| check_interpretation(m, s).is_ok_and(|r| r.pass))
}

pub fn random_arith_term(rng: &mut impl Rng, vars: &[String], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        if vars.is_empty() || rng.gen_bool(0.4) {
            return Term::num(rng.gen_range(0..4));
        }
        return Term::var(vars.choose(rng).unwrap());
    }
    let a = random_arith_term(rng, vars, depth - 1);
    let b = random_arith_term(rng, vars, depth - 1);
    if rng.gen_bool(0.5) {
        Term::plus(a, b)
    } else {
        Term::app("*", vec![a, b])
    }
}

/// An arithmetic formula with free variables among `free`, including
/// bounded quantifiers.
pub fn random_arith_formula(rng: &mut impl Rng, free: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let a = random_arith_term(rng, free, 2);
        let b = random_arith_term(rng, free, 2);
        return if rng.gen_bool(0.5) {
            Formula::eq(a, b)
        } else {
            Formula::lt(a, b)
        };
    }
    let pool = ["x", "y", "z"];
    match rng.gen_range(0..5) {
        0 => Formula::not(random_arith_formula(rng, free, depth - 1)),
        1 | 2 => {
            let c = *[Conn::And, Conn::Or, Conn::Implies, Conn::Iff]
                .choose(rng)
                .unwrap();
            Formula::Bin(
                c,
                Box::new(random_arith_formula(rng, free, depth - 1)),
                Box::new(random_arith_formula(rng, free, depth - 1)),
            )
        }
        k => {
            let v = pool.choose(rng).unwrap().to_string();
            let mut inner: Vec<String> = free.iter().filter(|w| **w != v).cloned().collect();
            inner.push(v.clone());
            let q = if rng.gen_bool(0.5) {
                Quant::Forall
            } else {
                Quant::Exists
            };
            let body = Box::new(random_arith_formula(rng, &inner, depth - 1));
            if k == 3 {
                Formula::Quant(q, v, body)
            } else {
                let bound = random_arith_term(rng, free, 1);
                Formula::Bounded(q, v, bound, body)
            }
        }
    }
}
