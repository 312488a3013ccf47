//! Reflection streams and guarded unions of theories.

use std::sync::Arc;

use num_integer::Roots;
use thiserror::Error;

use super::enumerate::FormulaEnumeration;
use super::schemes::{base_scheme, exp_language, BaseKind};
use super::stream::AxiomStream;
use crate::arith::model::prov_symbol;
use crate::arith::sentences::{gamma_con_instance, provability_language, reflection_instance};
use crate::logic::{classify, Formula, FormulaClass, Language};
use crate::semantics::OracleModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombineError {
    #[error("no provability predicate `{0}` is registered")]
    Unregistered(String),
    #[error("symbol `{0}` has conflicting arities")]
    ArityConflict(String),
    #[error("guard {0} uses symbols outside the combined language")]
    GuardLanguage(usize),
    #[error("guard {0} is not a sentence")]
    OpenGuard(usize),
    #[error("{streams} streams but {guards} guards")]
    Count { streams: usize, guards: usize },
}

/// Cantor pairing on machine integers.
pub fn cantor_pair(k: u64, i: u64) -> u64 {
    (k + i) * (k + i + 1) / 2 + i
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let w = ((8 * z as u128 + 1).sqrt() as u64 - 1) / 2;
    let i = z - w * (w + 1) / 2;
    (w - i, i)
}

/// The smallest language containing all of `langs`, symbols in order of
/// first appearance.
pub fn union_language(name: &str, langs: &[&Language]) -> Result<Language, CombineError> {
    let mut out = Language {
        name: name.to_string(),
        relations: Vec::new(),
        functions: Vec::new(),
    };
    for l in langs {
        for (r, a) in &l.relations {
            match out.relations.iter().find(|(s, _)| s == r) {
                Some((_, b)) if b != a => return Err(CombineError::ArityConflict(r.clone())),
                Some(_) => {}
                None => out.relations.push((r.clone(), *a)),
            }
        }
        for (g, a) in &l.functions {
            match out.functions.iter().find(|(s, _)| s == g) {
                Some((_, b)) if b != a => return Err(CombineError::ArityConflict(g.clone())),
                Some(_) => {}
                None => out.functions.push((g.clone(), *a)),
            }
        }
    }
    for (r, _) in &out.relations {
        if out.functions.iter().any(|(g, _)| g == r) {
            return Err(CombineError::ArityConflict(r.clone()));
        }
    }
    Ok(out)
}

fn one_free_in(class: FormulaClass) -> impl Fn(&Formula) -> bool + Send + Sync {
    move |f: &Formula| f.free_vars().len() <= 1 && class.contains(classify(f))
}

fn over_base(
    name: String,
    t: &AxiomStream,
    gamma: FormulaClass,
    model: &OracleModel,
    instance: fn(&AxiomStream, &Formula) -> Result<Formula, crate::arith::sentences::ShapeError>,
) -> Result<AxiomStream, CombineError> {
    let prov = prov_symbol(t);
    if !model.has_predicate(&prov) {
        return Err(CombineError::Unregistered(prov));
    }
    let lang = union_language(&name, &[&exp_language(), &provability_language(t)])?;
    let base = base_scheme(BaseKind::IDelta0Exp);
    let phis = FormulaEnumeration::new(crate::arith::model::arith_language(), one_free_in(gamma));
    let t = t.clone();
    Ok(AxiomStream::new(name, lang, move |i| {
        if i % 2 == 0 {
            base.axiom_at(i / 2)
        } else {
            instance(&t, &phis.get((i / 2) as usize)).expect("at most one free variable")
        }
    }))
}

/// Uniform reflection for `t` over arithmetic formulas of `gamma` with at
/// most one free variable, interleaved with the base theory (even indices).
pub fn reflection_stream(
    t: &AxiomStream,
    gamma: FormulaClass,
    model: &OracleModel,
) -> Result<AxiomStream, CombineError> {
    over_base(
        format!("rfn_{}_{gamma}", t.name()),
        t,
        gamma,
        model,
        reflection_instance,
    )
}

/// The consistency-with-instances scheme, laid out like [`reflection_stream`].
pub fn gamma_con_stream(
    t: &AxiomStream,
    gamma: FormulaClass,
    model: &OracleModel,
) -> Result<AxiomStream, CombineError> {
    over_base(
        format!("con_{}_{gamma}", t.name()),
        t,
        gamma,
        model,
        gamma_con_instance,
    )
}

fn check_guards(lang: &Language, guards: &[Formula]) -> Result<(), CombineError> {
    for (k, g) in guards.iter().enumerate() {
        if !g.is_sentence() {
            return Err(CombineError::OpenGuard(k));
        }
        if !crate::arith::predicates::formula_in_language(g, lang) {
            return Err(CombineError::GuardLanguage(k));
        }
    }
    Ok(())
}

/// `{guard_k -> psi : psi in streams[k]}` for a finite family. Index `i`
/// holds axiom `i / m` of stream `i % m`, where `m` is the family size.
pub fn oplus(
    name: &str,
    streams: Vec<AxiomStream>,
    guards: Vec<Formula>,
) -> Result<AxiomStream, CombineError> {
    if streams.len() != guards.len() {
        return Err(CombineError::Count {
            streams: streams.len(),
            guards: guards.len(),
        });
    }
    let langs: Vec<&Language> = streams.iter().map(|s| s.language()).collect();
    let lang = union_language(name, &langs)?;
    check_guards(&lang, &guards)?;
    if streams.is_empty() {
        return Ok(AxiomStream::finite(name, lang, Vec::new()));
    }
    let m = streams.len() as u64;
    Ok(AxiomStream::new(name, lang, move |i| {
        let k = (i % m) as usize;
        Formula::implies(guards[k].clone(), streams[k].axiom_at(i / m))
    }))
}

/// `(a | not psi) + (b | psi)`.
pub fn oplus2(
    name: &str,
    a: AxiomStream,
    b: AxiomStream,
    psi: &Formula,
) -> Result<AxiomStream, CombineError> {
    oplus(
        name,
        vec![a, b],
        vec![Formula::not(psi.clone()), psi.clone()],
    )
}

/// A member of an infinite family: its stream and guard.
pub type FamilyMember = (AxiomStream, Formula);

/// `{guard_k -> psi : psi in stream_k}` for the infinite family `member`;
/// index `cantor_pair(k, i)` holds the guarded axiom `i` of member `k`.
/// Members are computed once and kept.
pub fn oplus_family(
    name: &str,
    lang: Language,
    member: impl Fn(u64) -> FamilyMember + Send + Sync + 'static,
) -> AxiomStream {
    let cache: Arc<std::sync::Mutex<Vec<Option<FamilyMember>>>> = Arc::default();
    AxiomStream::new(name, lang, move |z| {
        let (k, i) = cantor_unpair(z);
        let (stream, guard) = {
            let mut c = cache.lock().unwrap_or_else(|e| e.into_inner());
            let k = k as usize;
            if c.len() <= k {
                c.resize(k + 1, None);
            }
            c[k].get_or_insert_with(|| member(k as u64)).clone()
        };
        Formula::implies(guard, stream.axiom_at(i))
    })
}

/// Streams interleaved round robin, without guards.
pub fn interleave(name: &str, streams: Vec<AxiomStream>) -> Result<AxiomStream, CombineError> {
    let langs: Vec<&Language> = streams.iter().map(|s| s.language()).collect();
    let lang = union_language(name, &langs)?;
    if streams.is_empty() {
        return Ok(AxiomStream::finite(name, lang, Vec::new()));
    }
    let m = streams.len() as u64;
    Ok(AxiomStream::new(name, lang, move |i| {
        streams[(i % m) as usize].axiom_at(i / m)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::model::{register_theory, standard_model};
    use crate::logic::{parse_formula, print_formula};
    use crate::theories::tautology;

    #[test]
    fn pairing_round_trip() {
        for z in 0..5000 {
            let (k, i) = cantor_unpair(z);
            assert_eq!(cantor_pair(k, i), z);
        }
        assert_eq!(cantor_unpair(0), (0, 0));
        assert_eq!(cantor_unpair(1), (1, 0));
        assert_eq!(cantor_unpair(2), (0, 1));
    }

    #[test]
    fn reflection_requires_registration() {
        let t = AxiomStream::empty(crate::arith::model::arith_language());
        assert!(matches!(
            reflection_stream(&t, FormulaClass::Sigma(1), &standard_model(10)),
            Err(CombineError::Unregistered(_))
        ));
        let m = register_theory(standard_model(10), &t);
        let r = reflection_stream(&t, FormulaClass::Sigma(1), &m).unwrap();
        assert_eq!(r.axiom_at(0), base_scheme(BaseKind::IDelta0Exp).axiom_at(0));
        for i in 0..50 {
            let f = r.axiom_at(i);
            assert!(f.is_sentence());
            assert_eq!(parse_formula(&print_formula(&f), r.language()).unwrap(), f);
        }
    }

    #[test]
    fn guarded_positions() {
        let pa = crate::arith::model::arith_language();
        let a = base_scheme(BaseKind::PaMinus);
        let b = base_scheme(BaseKind::ISigma(1));
        let psi = parse_formula("0 = 1", &pa).unwrap();
        let s = oplus2("demo", a.clone(), b.clone(), &psi).unwrap();
        for i in 0..20 {
            assert_eq!(
                s.axiom_at(2 * i),
                Formula::implies(Formula::not(psi.clone()), a.axiom_at(i))
            );
            assert_eq!(
                s.axiom_at(2 * i + 1),
                Formula::implies(psi.clone(), b.axiom_at(i))
            );
        }
        let empty = oplus("none", Vec::new(), Vec::new()).unwrap();
        assert_eq!(empty.axiom_at(3), tautology());
    }

    #[test]
    fn family_positions() {
        let pa = crate::arith::model::arith_language();
        let fam = oplus_family("fam", pa.clone(), move |k| {
            (
                base_scheme(BaseKind::ISigma(k as u32 + 1)),
                Formula::eq(crate::logic::Term::num(k), crate::logic::Term::num(k)),
            )
        });
        for (k, i) in [(0, 0), (2, 3), (1, 5)] {
            let g = Formula::eq(crate::logic::Term::num(k), crate::logic::Term::num(k));
            let psi = base_scheme(BaseKind::ISigma(k as u32 + 1)).axiom_at(i);
            assert_eq!(fam.axiom_at(cantor_pair(k, i)), Formula::implies(g, psi));
        }
    }
}
