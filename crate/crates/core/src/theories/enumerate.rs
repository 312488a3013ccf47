//! Deterministic enumeration of formulas, used to instantiate schemes.
//!
//! Formulas are built over the variables `x, y, z`, the constants `0` and
//! `1`, the symbols of a language, the connectives `not, and, or, ->`, both
//! quantifiers, and bounded quantifiers whose bound is a variable or
//! constant. They are listed by increasing weight (number of syntax nodes,
//! terms included) and, within one weight, by increasing code.

use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use crate::arith::coding::encode_formula;
use crate::logic::{Conn, Formula, Language, Quant, Term};

pub const ENUM_VARS: [&str; 3] = ["x", "y", "z"];

type Filter = dyn Fn(&Formula) -> bool + Send + Sync;

/// Lazily grown, filtered list of formulas in enumeration order.
#[derive(Clone)]
pub struct FormulaEnumeration {
    inner: Arc<Inner>,
}

struct Inner {
    lang: Language,
    filter: Box<Filter>,
    state: Mutex<State>,
}

#[derive(Default)]
struct State {
    terms: Vec<Vec<Term>>,
    formulas: Vec<Vec<Formula>>,
    out: Vec<Formula>,
}

/// Weight of a term: one per node.
pub fn term_weight(t: &Term) -> usize {
    t.size()
}

/// Weight of a formula: one per connective, quantifier and atom, plus the
/// weights of all terms it contains.
pub fn formula_weight(f: &Formula) -> usize {
    match f {
        Formula::Rel(_, args) => 1 + args.iter().map(term_weight).sum::<usize>(),
        Formula::Eq(a, b) => 1 + term_weight(a) + term_weight(b),
        Formula::Not(g) => 1 + formula_weight(g),
        Formula::Bin(_, a, b) => 1 + formula_weight(a) + formula_weight(b),
        Formula::Quant(_, _, b) => 1 + formula_weight(b),
        Formula::Bounded(_, _, t, b) => 1 + term_weight(t) + formula_weight(b),
    }
}

impl FormulaEnumeration {
    pub fn new(
        lang: Language,
        filter: impl Fn(&Formula) -> bool + Send + Sync + 'static,
    ) -> FormulaEnumeration {
        FormulaEnumeration {
            inner: Arc::new(Inner {
                lang,
                filter: Box::new(filter),
                state: Mutex::new(State::default()),
            }),
        }
    }

    /// Every formula of the language.
    pub fn all(lang: Language) -> FormulaEnumeration {
        FormulaEnumeration::new(lang, |_| true)
    }

    pub fn language(&self) -> &Language {
        &self.inner.lang
    }

    /// The `i`-th formula passing the filter. The filter must accept
    /// infinitely many formulas.
    pub fn get(&self, i: usize) -> Formula {
        let mut st = self.inner.state.lock().unwrap_or_else(|e| e.into_inner());
        while st.out.len() <= i {
            let w = st.formulas.len();
            let layer = formulas_of_weight(&self.inner.lang, &mut st, w);
            let keep: Vec<Formula> = layer
                .iter()
                .filter(|f| (self.inner.filter)(f))
                .cloned()
                .collect();
            st.formulas.push(layer);
            st.out.extend(keep);
        }
        st.out[i].clone()
    }

    pub fn take(&self, n: usize) -> Vec<Formula> {
        (0..n).map(|i| self.get(i)).collect()
    }
}

fn leaves() -> Vec<Term> {
    let mut v: Vec<Term> = ENUM_VARS.iter().map(|x| Term::var(x)).collect();
    v.push(Term::num(0));
    v.push(Term::num(1));
    v
}

fn terms_of_weight(lang: &Language, st: &mut State, w: usize) -> Vec<Term> {
    while st.terms.len() <= w {
        let k = st.terms.len();
        let layer = build_terms(lang, st, k);
        st.terms.push(layer);
    }
    st.terms[w].clone()
}

fn build_terms(lang: &Language, st: &mut State, w: usize) -> Vec<Term> {
    match w {
        0 => Vec::new(),
        1 => leaves(),
        _ => {
            let mut out = Vec::new();
            for (g, arity) in &lang.functions {
                for args in term_tuples(lang, st, *arity, w - 1) {
                    out.push(Term::App(g.clone(), args));
                }
            }
            out
        }
    }
}

/// All tuples of `n` terms whose weights sum to `total`.
fn term_tuples(lang: &Language, st: &mut State, n: usize, total: usize) -> Vec<Vec<Term>> {
    if n == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(n - 1) {
        let heads = terms_of_weight(lang, st, first);
        if heads.is_empty() {
            continue;
        }
        for rest in term_tuples(lang, st, n - 1, total - first) {
            for h in &heads {
                let mut v = Vec::with_capacity(n);
                v.push(h.clone());
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

fn formulas_of_weight(lang: &Language, st: &mut State, w: usize) -> Vec<Formula> {
    if w < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (r, arity) in &lang.relations {
        if *arity == 0 {
            continue;
        }
        for args in term_tuples(lang, st, *arity, w - 1) {
            out.push(Formula::Rel(r.clone(), args));
        }
    }
    for args in term_tuples(lang, st, 2, w - 1) {
        let mut it = args.into_iter();
        let (a, b) = (it.next().expect("pair"), it.next().expect("pair"));
        out.push(Formula::Eq(a, b));
    }
    let sub =
        |st: &State, k: usize| -> Vec<Formula> { st.formulas.get(k).cloned().unwrap_or_default() };
    for g in sub(st, w - 1) {
        out.push(Formula::not(g.clone()));
        for q in [Quant::Forall, Quant::Exists] {
            for v in ENUM_VARS {
                out.push(Formula::Quant(q, v.to_string(), Box::new(g.clone())));
            }
        }
    }
    for left in 2..w.saturating_sub(2) {
        let right = w - 1 - left;
        let ls = sub(st, left);
        let rs = sub(st, right);
        for a in &ls {
            for b in &rs {
                for c in [Conn::And, Conn::Or, Conn::Implies] {
                    out.push(Formula::Bin(c, Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
    }
    if w >= 4 {
        for body in sub(st, w - 2) {
            for q in [Quant::Forall, Quant::Exists] {
                for v in ENUM_VARS {
                    for bound in leaves() {
                        if bound == Term::var(v) {
                            continue;
                        }
                        out.push(Formula::Bounded(
                            q,
                            v.to_string(),
                            bound,
                            Box::new(body.clone()),
                        ));
                    }
                }
            }
        }
    }
    let mut keyed: Vec<(BigUint, Formula)> =
        out.into_iter().map(|f| (encode_formula(&f), f)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, f)| f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::model::arith_language;

    #[test]
    fn weights_are_nondecreasing_and_distinct() {
        let e = FormulaEnumeration::all(arith_language());
        let fs = e.take(3000);
        for w in fs.windows(2) {
            let (a, b) = (formula_weight(&w[0]), formula_weight(&w[1]));
            assert!(a <= b);
            if a == b {
                assert!(encode_formula(&w[0]) < encode_formula(&w[1]));
            }
        }
        assert_eq!(formula_weight(&fs[0]), 3);
    }

    #[test]
    fn layer_counts_match_weight() {
        let e = FormulaEnumeration::all(arith_language());
        for f in e.take(2000) {
            let w = formula_weight(&f);
            assert!(w >= 3);
        }
    }

    #[test]
    fn filter_applies() {
        let e = FormulaEnumeration::new(arith_language(), |f| f.is_sentence());
        for f in e.take(50) {
            assert!(f.is_sentence());
        }
    }
}
