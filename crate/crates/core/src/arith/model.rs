//! The standard model of arithmetic with the code functions, the syntactic
//! code predicates, partial satisfaction, iterated truth, and per-theory
//! provability registered as oracle symbols.
//!
//! Code functions are total: an argument that is not a code of the right
//! shape yields 0, which is never a code.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::coding::{
    build, cantor_unpair, decode, decode_formula, decode_term, encode_formula, encode_term,
    var_code, Syntax,
};
use super::numeral::{numeral, subst_code_open, subst_var_code, val};
use super::predicates::{formula_in_language, term_in_language};
use super::proof::{verify_proof, ProofObject};
use crate::logic::{classify, Conn, Formula, FormulaClass, Language, Quant, Term};
use crate::semantics::{
    eval_oracle, OracleError, OracleFunction, OracleModel, OraclePredicate, TermEval, Truth,
};
use crate::theories::AxiomStream;

/// Highest level for which the class-indexed symbols are registered.
pub const MAX_LEVEL: u32 = 8;

/// `SatSigma(k, phi, x)`: satisfaction for Sigma(k) formulas of L_PA with at
/// most one free variable, uniformly in `k` (level 0 is Delta0).
pub const SAT_LEVEL: &str = "SatSigma";

pub fn arith_language() -> Language {
    Language::new("L_PA", &[("<", 2)], &[("+", 2), ("*", 2)]).expect("valid")
}

/// Code functions with their arities.
pub const CODE_FUNCTIONS: [(&str, usize); 15] = [
    ("sub", 2),
    ("subv", 3),
    ("name", 1),
    ("quote", 1),
    ("val", 1),
    ("cneg", 1),
    ("cand", 2),
    ("cor", 2),
    ("cimp", 2),
    ("ciff", 2),
    ("call", 2),
    ("cex", 2),
    ("ceq", 2),
    ("fst", 1),
    ("snd", 1),
];

/// Syntactic code predicates.
pub const CODE_PREDICATES: [(&str, usize); 6] = [
    ("Form", 1),
    ("Form1", 1),
    ("Sent", 1),
    ("Term", 1),
    ("ClTerm", 1),
    ("Var", 1),
];

/// L_PA with the code functions, the code predicates and `extra` relations.
pub fn code_language(name: &str, extra: &[(String, usize)]) -> Language {
    let mut rels: Vec<(String, usize)> = vec![("<".into(), 2)];
    rels.extend(CODE_PREDICATES.iter().map(|(r, a)| (r.to_string(), *a)));
    for e in extra {
        if !rels.contains(e) {
            rels.push(e.clone());
        }
    }
    let mut funs: Vec<(String, usize)> = vec![("+".into(), 2), ("*".into(), 2)];
    funs.extend(CODE_FUNCTIONS.iter().map(|(g, a)| (g.to_string(), *a)));
    Language {
        name: name.into(),
        relations: rels,
        functions: funs,
    }
}

/// `L_PA` with truth predicates `P1..Pj`.
pub fn truth_language(j: u32) -> Language {
    let extra: Vec<(String, usize)> = (1..=j).map(|i| (truth_symbol(i), 1)).collect();
    arith_language()
        .with_relations(&extra)
        .renamed(format!("L_{j}"))
}

pub fn truth_symbol(i: u32) -> String {
    format!("P{i}")
}

pub fn prov_symbol(t: &AxiomStream) -> String {
    format!("Prov_{}", t.name())
}

pub fn proof_symbol(t: &AxiomStream) -> String {
    format!("Proof_{}", t.name())
}

fn class_tag(c: FormulaClass) -> String {
    match c {
        FormulaClass::Sigma(k) => format!("S{k}"),
        FormulaClass::Pi(k) => format!("P{k}"),
        FormulaClass::Delta0 => "D0".into(),
    }
}

/// `Form<S|P>k`: formulas of L_PA in the class.
pub fn form_symbol(c: FormulaClass) -> String {
    format!("Form{}", class_tag(c))
}

/// `Form1<S|P>k`: formulas of L_PA in the class with at most one free variable.
pub fn form1_symbol(c: FormulaClass) -> String {
    format!("Form1{}", class_tag(c))
}

pub fn sat_symbol(c: FormulaClass) -> String {
    format!("Sat_{}", class_tag(c))
}

pub fn tr_symbol(c: FormulaClass) -> String {
    format!("Tr_{}", class_tag(c))
}

pub fn sent_level_symbol(j: u32) -> String {
    format!("SentL{j}")
}

pub fn form1_level_symbol(j: u32) -> String {
    format!("Form1L{j}")
}

struct Func<F>(usize, F);

impl<F> OracleFunction for Func<F>
where
    F: Fn(&[BigUint]) -> BigUint + Send + Sync,
{
    fn arity(&self) -> usize {
        self.0
    }

    fn apply(&self, args: &[BigUint], _: &OracleModel) -> Result<BigUint, OracleError> {
        Ok((self.1)(args))
    }
}

struct Pred<F>(usize, F);

impl<F> OraclePredicate for Pred<F>
where
    F: Fn(&[BigUint], &OracleModel) -> Result<Truth, OracleError> + Send + Sync,
{
    fn arity(&self) -> usize {
        self.0
    }

    fn decide(&self, args: &[BigUint], m: &OracleModel) -> Result<Truth, OracleError> {
        (self.1)(args, m)
    }
}

fn func(
    m: &mut OracleModel,
    name: &str,
    arity: usize,
    f: impl Fn(&[BigUint]) -> BigUint + Send + Sync + 'static,
) {
    m.register_function(name, Arc::new(Func(arity, f)));
}

fn pred(
    m: &mut OracleModel,
    name: &str,
    arity: usize,
    f: impl Fn(&[BigUint], &OracleModel) -> Result<Truth, OracleError> + Send + Sync + 'static,
) {
    m.register_predicate(name, Arc::new(Pred(arity, f)));
}

fn syntactic(
    m: &mut OracleModel,
    name: &str,
    test: impl Fn(&BigUint) -> bool + Send + Sync + 'static,
) {
    pred(m, name, 1, move |a, _| Ok(Truth::from_bool(test(&a[0]))));
}

fn formula_of(c: &BigUint) -> Option<Formula> {
    decode_formula(c).ok()
}

fn le1(f: &Formula) -> bool {
    f.free_vars().len() <= 1
}

/// Evaluates a formula with at most one free variable at `x`.
fn eval_at(m: &OracleModel, f: &Formula, x: Option<&BigUint>) -> Result<Truth, OracleError> {
    let mut a = BTreeMap::new();
    if let Some(v) = f.free_vars().into_iter().next() {
        match x {
            Some(x) => {
                a.insert(v, x.clone());
            }
            None => return Ok(Truth::False),
        }
    }
    eval_oracle(m, f, &a)
}

/// The standard model with the code functions and the code predicates.
pub fn standard_model(fuel: u64) -> OracleModel {
    let mut m = OracleModel::new(fuel);
    let pa = arith_language();

    func(&mut m, "sub", 2, |a| {
        subst_code_open(&a[0], &a[1]).unwrap_or_default()
    });
    func(&mut m, "subv", 3, |a| {
        subst_var_code(&a[0], &a[1], &a[2]).unwrap_or_default()
    });
    func(&mut m, "name", 1, |a| match a[0].to_u64() {
        Some(k) => encode_term(&numeral(k)),
        None => BigUint::zero(),
    });
    func(&mut m, "quote", 1, |a| build::num(&a[0]));
    func(&mut m, "val", 1, |a| {
        decode_term(&a[0])
            .ok()
            .and_then(|t| val(&t).ok())
            .unwrap_or_default()
    });
    func(&mut m, "cneg", 1, |a| build::neg(&a[0]));
    for (name, c) in [
        ("cand", Conn::And),
        ("cor", Conn::Or),
        ("cimp", Conn::Implies),
        ("ciff", Conn::Iff),
    ] {
        func(&mut m, name, 2, move |a| build::conn(c, &a[0], &a[1]));
    }
    func(&mut m, "call", 2, |a| {
        build::quant(Quant::Forall, &a[0], &a[1])
    });
    func(&mut m, "cex", 2, |a| {
        build::quant(Quant::Exists, &a[0], &a[1])
    });
    func(&mut m, "ceq", 2, |a| build::eq(&a[0], &a[1]));
    func(&mut m, "fst", 1, |a| cantor_unpair(&a[0]).0);
    func(&mut m, "snd", 1, |a| cantor_unpair(&a[0]).1);

    syntactic(&mut m, "Form", |c| formula_of(c).is_some());
    syntactic(&mut m, "Form1", |c| formula_of(c).is_some_and(|f| le1(&f)));
    syntactic(&mut m, "Sent", |c| {
        formula_of(c).is_some_and(|f| f.is_sentence())
    });
    let p2 = pa.clone();
    syntactic(&mut m, "Term", move |c| {
        decode_term(c).is_ok_and(|t| term_in_language(&t, &p2))
    });
    let p2 = pa.clone();
    syntactic(&mut m, "ClTerm", move |c| {
        decode_term(c).is_ok_and(|t| t.is_closed() && term_in_language(&t, &p2))
    });
    syntactic(&mut m, "Var", |c| {
        matches!(decode(c), Ok(Syntax::Term(Term::Var(_))))
    });

    for k in 1..=MAX_LEVEL {
        for class in [FormulaClass::Sigma(k), FormulaClass::Pi(k)] {
            let in_class = {
                let pa = pa.clone();
                move |f: &Formula| formula_in_language(f, &pa) && class.contains(classify(f))
            };
            let ic = in_class.clone();
            syntactic(&mut m, &form_symbol(class), move |c| {
                formula_of(c).is_some_and(|f| ic(&f))
            });
            let ic = in_class.clone();
            syntactic(&mut m, &form1_symbol(class), move |c| {
                formula_of(c).is_some_and(|f| le1(&f) && ic(&f))
            });
            let ic = in_class.clone();
            pred(
                &mut m,
                &sat_symbol(class),
                2,
                move |a, m| match formula_of(&a[0]) {
                    Some(f) if le1(&f) && ic(&f) => eval_at(m, &f, Some(&a[1])),
                    _ => Ok(Truth::False),
                },
            );
            let ic = in_class;
            pred(&mut m, &tr_symbol(class), 1, move |a, m| {
                match formula_of(&a[0]) {
                    Some(f) if f.is_sentence() && ic(&f) => eval_at(m, &f, None),
                    _ => Ok(Truth::False),
                }
            });
        }
    }
    let pa2 = pa.clone();
    pred(&mut m, SAT_LEVEL, 3, move |a, m| {
        let class = match a[0].to_u32() {
            Some(0) => FormulaClass::Delta0,
            Some(k) => FormulaClass::Sigma(k),
            None => return Ok(Truth::False),
        };
        match formula_of(&a[1]) {
            Some(f) if le1(&f) && formula_in_language(&f, &pa2) && class.contains(classify(&f)) => {
                eval_at(m, &f, Some(&a[2]))
            }
            _ => Ok(Truth::False),
        }
    });
    m
}

/// Iterated truth `P_i`: true of the codes of true sentences of `L_{i-1}`.
struct IteratedTruth {
    lang: Language,
}

impl IteratedTruth {
    fn truth_of(&self, c: &BigUint, m: &OracleModel) -> Result<Truth, OracleError> {
        match formula_of(c) {
            Some(f) if f.is_sentence() && formula_in_language(&f, &self.lang) => {
                eval_oracle(m, &f, &BTreeMap::new())
            }
            _ => Ok(Truth::False),
        }
    }
}

impl OraclePredicate for IteratedTruth {
    fn arity(&self) -> usize {
        1
    }

    fn decide(&self, args: &[BigUint], m: &OracleModel) -> Result<Truth, OracleError> {
        self.truth_of(&args[0], m)
    }

    /// `Q y P_i(sub(t, name(y)))` is the truth of `Q v phi` where `t` codes
    /// `phi` with free variable `v`.
    fn quantified(
        &self,
        q: Quant,
        arg: &Term,
        var: &str,
        eval: &mut TermEval<'_>,
        m: &OracleModel,
    ) -> Result<Option<Truth>, OracleError> {
        let Term::App(g, args) = arg else {
            return Ok(None);
        };
        if g != "sub" || args[0].has_var(var) {
            return Ok(None);
        }
        if args[1] != Term::app("name", vec![Term::var(var)]) {
            return Ok(None);
        }
        let Some(c) = eval(&args[0])? else {
            return Ok(None);
        };
        let f = match formula_of(&c) {
            Some(f) if le1(&f) && formula_in_language(&f, &self.lang) => f,
            // every instance fails to be a sentence of the level
            _ => return Ok(Some(Truth::False)),
        };
        let closed = match f.free_vars().into_iter().next() {
            Some(v) => Formula::Quant(q, v, Box::new(f)),
            None => f,
        };
        eval_oracle(m, &closed, &BTreeMap::new()).map(Some)
    }
}

/// Adds `P1..Pn`, `SentL0..SentLn` and `Form1L0..Form1Ln`.
pub fn with_truth_levels(mut m: OracleModel, n: u32) -> OracleModel {
    for j in 0..=n {
        let lang = truth_language(j);
        let l2 = lang.clone();
        syntactic(&mut m, &sent_level_symbol(j), move |c| {
            formula_of(c).is_some_and(|f| f.is_sentence() && formula_in_language(&f, &l2))
        });
        let l2 = lang.clone();
        syntactic(&mut m, &form1_level_symbol(j), move |c| {
            formula_of(c).is_some_and(|f| le1(&f) && formula_in_language(&f, &l2))
        });
        if j >= 1 {
            m.register_predicate(
                &truth_symbol(j),
                Arc::new(IteratedTruth {
                    lang: truth_language(j - 1),
                }),
            );
        }
    }
    m
}

/// Registers `Proof_<name>` and `Prov_<name>` for the theory.
///
/// `Proof_t(z, x)` checks the decoded proof. `Prov_t(x)` is semi-decided:
/// true when the formula is one of the first `fuel` axioms (capped at 1000),
/// false on non-formulas, unknown otherwise.
pub fn register_theory(mut m: OracleModel, t: &AxiomStream) -> OracleModel {
    let t1 = t.clone();
    pred(&mut m, &proof_symbol(t), 2, move |a, _| {
        let (Ok(p), Some(goal)) = (ProofObject::decode(&a[0]), formula_of(&a[1])) else {
            return Ok(Truth::False);
        };
        Ok(Truth::from_bool(verify_proof(&p, &t1, &goal).is_ok()))
    });
    let t2 = t.clone();
    pred(&mut m, &prov_symbol(t), 1, move |a, m| {
        let Some(f) = formula_of(&a[0]) else {
            return Ok(Truth::False);
        };
        let cap = m.fuel.min(1000).min(t2.finite_len().unwrap_or(u64::MAX));
        if (0..cap).any(|i| t2.axiom_at(i) == f) {
            return Ok(Truth::True);
        }
        Ok(Truth::Unknown)
    });
    m
}

/// Code of the formula as a literal.
pub fn code_literal(f: &Formula) -> Term {
    Term::Num(encode_formula(f))
}

/// Code of the variable as a literal.
pub fn var_literal(v: &str) -> Term {
    Term::Num(var_code(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn sat_and_truth() {
        let m = with_truth_levels(standard_model(200), 2);
        let lang = truth_language(1).with_relations(&[("Sat_S1".into(), 2)]);
        let phi = parse_formula("exists y (x = y + y)", &arith_language()).unwrap();
        let c = encode_formula(&phi);
        let f = parse_formula(&format!("Sat_S1({c}, 6) and not Sat_S1({c}, 7)"), &lang).unwrap();
        assert_eq!(eval_oracle(&m, &f, &BTreeMap::new()).unwrap(), Truth::True);
        let s = encode_formula(&parse_formula("forall x (x + 0 = x)", &arith_language()).unwrap());
        let g = parse_formula(&format!("P1({s})"), &lang).unwrap();
        assert_eq!(eval_oracle(&m, &g, &BTreeMap::new()).unwrap(), Truth::True);
    }
}
