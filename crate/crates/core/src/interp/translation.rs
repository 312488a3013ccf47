//! One-dimensional translations between relational languages.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::relational::{graph_symbol, literal_symbol};
use crate::logic::subst::rename_free;
use crate::logic::{
    classify, fresh_var, parse_formula, print_formula, relationalize, substitute, Formula,
    FormulaClass, Language, ParseError, Quant, Term,
};

/// Free variable of the domain formula.
pub const DOMAIN_VAR: &str = "x";

const ARG_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Argument variables of an `n`-ary relation formula: `x, y, z, u, v, w`,
/// then `x7, x8, ...`.
pub fn arg_vars(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match ARG_NAMES.get(i) {
            Some(s) => s.to_string(),
            None => format!("x{}", i + 1),
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslationError {
    #[error("symbol `{0}` is not translated")]
    MissingSymbol(String),
    #[error("formula for `{symbol}` has unexpected free variables {extra:?}")]
    FreeVariables { symbol: String, extra: Vec<String> },
    #[error("source language must be relational; found function `{0}`")]
    NotRelational(String),
    #[error("parameter `{0}` is not a constant of the target language")]
    Parameter(String),
    #[error("language mismatch: {0}")]
    LanguageMismatch(String),
    #[error("cannot read formula for `{symbol}`: {error}")]
    Parse { symbol: String, error: ParseError },
    #[error("malformed translation document: {0}")]
    Json(String),
}

/// A component formula with its argument variables. `guarded` is the
/// stored form: the domain formula at every argument, conjoined with `raw`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub args: Vec<String>,
    pub raw: Formula,
    pub guarded: Formula,
}

impl Component {
    /// The guarded formula with the argument variables replaced by `actual`,
    /// simultaneously and without capture.
    pub fn at(&self, actual: &[Term]) -> Formula {
        instantiate(&self.guarded, &self.args, actual)
    }
}

/// Simultaneous capture-avoiding substitution of `actual` for `formal`.
pub fn instantiate(f: &Formula, formal: &[String], actual: &[Term]) -> Formula {
    let mut taken = f.all_vars();
    for t in actual {
        t.collect_vars(&mut taken);
    }
    let mut tmp = Vec::with_capacity(formal.len());
    let mut g = f.clone();
    for v in formal {
        let w = fresh_var(&format!("{v}'"), &taken);
        taken.insert(w.clone());
        g = rename_free(&g, v, &w);
        tmp.push(w);
    }
    for (w, t) in tmp.iter().zip(actual) {
        g = substitute(&g, w, t);
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub source: Language,
    pub target: Language,
    pub domain: Formula,
    pub relations: BTreeMap<String, Component>,
    pub equality: Component,
    pub parameters: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawTranslation {
    source: Language,
    target: Language,
    delta: String,
    relations: BTreeMap<String, String>,
    equality: String,
    #[serde(default)]
    parameters: Vec<String>,
}

fn check_free(symbol: &str, f: &Formula, allowed: &[String]) -> Result<(), TranslationError> {
    let extra: Vec<String> = f
        .free_vars()
        .into_iter()
        .filter(|v| !allowed.contains(v))
        .collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(TranslationError::FreeVariables {
            symbol: symbol.to_string(),
            extra,
        })
    }
}

impl Translation {
    /// Builds a translation, guarding every component by the domain formula.
    pub fn new(
        source: Language,
        target: Language,
        domain: Formula,
        relations: BTreeMap<String, Formula>,
        equality: Formula,
        parameters: Vec<String>,
    ) -> Result<Translation, TranslationError> {
        if let Some((g, _)) = source.functions.first() {
            return Err(TranslationError::NotRelational(g.clone()));
        }
        for p in &parameters {
            if target.function_arity(p) != Some(0) {
                return Err(TranslationError::Parameter(p.clone()));
            }
        }
        check_free("domain", &domain, &[DOMAIN_VAR.to_string()])?;
        let guard = |args: &[String], raw: Formula| -> Formula {
            let mut parts: Vec<Formula> = args
                .iter()
                .map(|a| substitute(&domain, DOMAIN_VAR, &Term::var(a)))
                .collect();
            parts.push(raw);
            Formula::conj(parts).expect("non-empty")
        };
        let mut rels = BTreeMap::new();
        for (r, arity) in &source.relations {
            let raw = relations
                .get(r)
                .cloned()
                .ok_or_else(|| TranslationError::MissingSymbol(r.clone()))?;
            let args = arg_vars(*arity);
            check_free(r, &raw, &args)?;
            let guarded = guard(&args, raw.clone());
            rels.insert(r.clone(), Component { args, raw, guarded });
        }
        if let Some(extra) = relations
            .keys()
            .find(|r| source.relation_arity(r).is_none())
        {
            return Err(TranslationError::LanguageMismatch(format!(
                "`{extra}` is not a relation of the source"
            )));
        }
        let args = arg_vars(2);
        check_free("=", &equality, &args)?;
        let guarded = guard(&args, equality.clone());
        Ok(Translation {
            source,
            target,
            domain,
            relations: rels,
            equality: Component {
                args,
                raw: equality,
                guarded,
            },
            parameters,
        })
    }

    /// The domain formula at `v`.
    pub fn domain_at(&self, v: &Term) -> Formula {
        substitute(&self.domain, DOMAIN_VAR, v)
    }

    pub fn relation(&self, r: &str) -> Option<&Component> {
        self.relations.get(r)
    }

    pub fn from_json(text: &str) -> Result<Translation, TranslationError> {
        let raw: RawTranslation =
            serde_json::from_str(text).map_err(|e| TranslationError::Json(e.to_string()))?;
        let read = |symbol: &str, s: &str| {
            parse_formula(s, &raw.target).map_err(|error| TranslationError::Parse {
                symbol: symbol.to_string(),
                error,
            })
        };
        let domain = read("domain", &raw.delta)?;
        let equality = read("=", &raw.equality)?;
        let mut rels = BTreeMap::new();
        for (r, s) in &raw.relations {
            rels.insert(r.clone(), read(r, s)?);
        }
        Translation::new(
            raw.source.clone(),
            raw.target.clone(),
            domain,
            rels,
            equality,
            raw.parameters.clone(),
        )
    }

    /// Document form; component formulas are written unguarded.
    pub fn to_json(&self) -> String {
        let raw = RawTranslation {
            source: self.source.clone(),
            target: self.target.clone(),
            delta: print_formula(&self.domain),
            relations: self
                .relations
                .iter()
                .map(|(r, c)| (r.clone(), print_formula(&c.raw)))
                .collect(),
            equality: print_formula(&self.equality.raw),
            parameters: self.parameters.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("translation serializes")
    }
}

/// `delta := x = x`, every relation to itself.
pub fn identity_translation(lang: &Language) -> Translation {
    let source = Language {
        name: lang.name.clone(),
        relations: lang.relations.clone(),
        functions: Vec::new(),
    };
    let x = Term::var(DOMAIN_VAR);
    let rels = source
        .relations
        .iter()
        .map(|(r, a)| {
            let args = arg_vars(*a).into_iter().map(Term::Var).collect();
            (r.clone(), Formula::rel(r, args))
        })
        .collect();
    let eq = Formula::eq(Term::var("x"), Term::var("y"));
    Translation::new(
        source,
        lang.clone(),
        Formula::eq(x.clone(), x),
        rels,
        eq,
        Vec::new(),
    )
    .expect("identity is well formed")
}

/// Relational counterpart of `lang`: its relations, the graph of every
/// function of positive arity, and the literals `R_0`, `R_1`.
pub fn relational_signature(lang: &Language) -> Language {
    let mut relations = lang.relations.clone();
    for (g, a) in &lang.functions {
        if *a > 0 {
            relations.push((graph_symbol(g), a + 1));
        }
    }
    for k in [0u32, 1] {
        let r = literal_symbol(&BigUint::from(k));
        if !relations.iter().any(|(s, _)| *s == r) {
            relations.push((r, 1));
        }
    }
    Language {
        name: format!("{}_rel", lang.name),
        relations,
        functions: Vec::new(),
    }
}

/// Interprets the relational counterpart of `lang` in `lang` on the set
/// defined by `domain`: graphs become equations, relations stay.
pub fn graph_translation(lang: &Language, domain: Formula) -> Translation {
    reading_translation(&relational_signature(lang), lang, domain, BTreeMap::new())
        .expect("graph translation is well formed")
}

fn literal_value(r: &str) -> Option<BigUint> {
    let digits = r.strip_prefix("R_")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// A translation of the relational `source` into `target` on `domain`.
/// Each relation takes its formula from `overrides`, else the relation of
/// the same name in `target`, else the equation of the function whose graph
/// it names, else (for `R_<k>`) the equation with the numeral `k`.
pub fn reading_translation(
    source: &Language,
    target: &Language,
    domain: Formula,
    mut overrides: BTreeMap<String, Formula>,
) -> Result<Translation, TranslationError> {
    let mut rels = BTreeMap::new();
    for (r, a) in &source.relations {
        let args: Vec<Term> = arg_vars(*a).into_iter().map(Term::Var).collect();
        let f = if let Some(f) = overrides.remove(r) {
            f
        } else if target.relation_arity(r) == Some(*a) {
            Formula::rel(r, args)
        } else if let Some((g, _)) = target
            .functions
            .iter()
            .find(|(g, b)| *b + 1 == *a && graph_symbol(g) == *r)
        {
            let mut args = args;
            let value = args.pop().expect("graph has positive arity");
            Formula::eq(Term::app(g, args), value)
        } else if let (Some(k), 1) = (literal_value(r), *a) {
            Formula::eq(args[0].clone(), Term::Num(k))
        } else {
            return Err(TranslationError::MissingSymbol(r.clone()));
        };
        rels.insert(r.clone(), f);
    }
    if let Some(extra) = overrides.keys().next() {
        return Err(TranslationError::LanguageMismatch(format!(
            "`{extra}` is not a relation of the source"
        )));
    }
    let eq = Formula::eq(Term::var("x"), Term::var("y"));
    Translation::new(source.clone(), target.clone(), domain, rels, eq, Vec::new())
}

/// Closed term `1 + 1 + ...` in binary (Horner) form denoting `k`.
pub fn binary_numeral(k: &BigUint) -> Term {
    if k.is_zero() {
        return Term::num(0);
    }
    let bits = k.bits();
    let two = Term::plus(Term::num(1), Term::num(1));
    let mut t = Term::num(1);
    for i in (0..bits - 1).rev() {
        t = Term::times(t, two.clone());
        if k.bit(i) {
            t = Term::plus(t, Term::num(1));
        }
    }
    t
}

fn expand_literals_term(t: &Term, keep: &dyn Fn(&BigUint) -> bool) -> Term {
    match t {
        Term::Num(k) if !keep(k) => binary_numeral(k),
        Term::App(g, args) => Term::App(
            g.clone(),
            args.iter().map(|a| expand_literals_term(a, keep)).collect(),
        ),
        _ => t.clone(),
    }
}

fn map_terms(f: &Formula, g: &dyn Fn(&Term) -> Term) -> Formula {
    match f {
        Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(g).collect()),
        Formula::Eq(a, b) => Formula::Eq(g(a), g(b)),
        Formula::Not(h) => Formula::not(map_terms(h, g)),
        Formula::Bin(c, a, b) => {
            Formula::Bin(*c, Box::new(map_terms(a, g)), Box::new(map_terms(b, g)))
        }
        Formula::Quant(q, v, b) => Formula::Quant(*q, v.clone(), Box::new(map_terms(b, g))),
        Formula::Bounded(q, v, t, b) => {
            Formula::Bounded(*q, v.clone(), g(t), Box::new(map_terms(b, g)))
        }
    }
}

fn needs_flattening(f: &Formula) -> bool {
    let mut deep = f.uses_bounded() || f.uses_numerals();
    f.visit_terms(&mut |t| {
        if let Term::App(_, args) = t {
            if !args.is_empty() {
                deep = true;
            }
        }
    });
    deep
}

/// Brings `f` into the relational shape expected by `m.source`: nested
/// terms become graph relations, bounded quantifiers become guarded ones and
/// numerals become `R_<k>` atoms. Numerals without an `R_<k>` symbol in the
/// source are first rewritten in binary over `0`, `1`, `+` and `*`.
/// Constants (0-ary symbols) are kept as terms.
pub fn relational_form(source: &Language, f: &Formula) -> Formula {
    if !needs_flattening(f) {
        return f.clone();
    }
    let keep = |k: &BigUint| -> bool {
        k.is_zero() || k.is_one() || source.relation_arity(&literal_symbol(k)) == Some(1)
    };
    let g = map_terms(f, &|t| expand_literals_term(t, &keep));
    // constants are hidden behind fresh variables while flattening
    let mut consts = BTreeSet::new();
    g.visit_terms(&mut |t| {
        if let Term::App(c, args) = t {
            if args.is_empty() {
                consts.insert(c.clone());
            }
        }
    });
    let mut taken = g.all_vars();
    let mut hidden = Vec::new();
    for c in &consts {
        let v = fresh_var(&format!("{c}_"), &taken);
        taken.insert(v.clone());
        hidden.push((c.clone(), v));
    }
    let g = map_terms(&g, &|t| {
        hidden.iter().fold(t.clone(), |acc, (c, v)| {
            replace_const(&acc, c, &Term::var(v))
        })
    });
    let funs: Vec<(String, usize)> = g.function_symbols().into_iter().collect();
    let lang = Language {
        name: "flat".into(),
        relations: Vec::new(),
        functions: funs,
    };
    let (_, flat) = relationalize(&lang, &g);
    hidden.iter().fold(flat, |acc, (c, v)| {
        substitute(&acc, v, &Term::app(c, Vec::new()))
    })
}

fn replace_const(t: &Term, c: &str, by: &Term) -> Term {
    match t {
        Term::App(g, args) if args.is_empty() && g == c => by.clone(),
        Term::App(g, args) => Term::App(
            g.clone(),
            args.iter().map(|a| replace_const(a, c, by)).collect(),
        ),
        _ => t.clone(),
    }
}

/// `f^m`: atoms go to their (guarded) component formulas, connectives
/// commute, and quantifiers are relativized to the domain formula.
pub fn translate_formula(m: &Translation, f: &Formula) -> Result<Formula, TranslationError> {
    let f = relational_form(&m.source, f);
    for (r, a) in f.relation_symbols() {
        if m.source.relation_arity(&r) != Some(a) {
            return Err(TranslationError::MissingSymbol(r));
        }
    }
    Ok(tr(m, &f))
}

fn tr(m: &Translation, f: &Formula) -> Formula {
    match f {
        Formula::Rel(r, args) => m.relations[r].at(args),
        Formula::Eq(a, b) => m.equality.at(&[a.clone(), b.clone()]),
        Formula::Not(g) => Formula::not(tr(m, g)),
        Formula::Bin(c, a, b) => Formula::Bin(*c, Box::new(tr(m, a)), Box::new(tr(m, b))),
        Formula::Quant(q, v, body) => {
            let d = m.domain_at(&Term::var(v));
            let inner = tr(m, body);
            let guarded = match q {
                Quant::Forall => Formula::implies(d, inner),
                Quant::Exists => Formula::and(d, inner),
            };
            Formula::Quant(*q, v.clone(), Box::new(guarded))
        }
        Formula::Bounded(..) => unreachable!("bounded quantifiers are flattened first"),
    }
}

/// The composite `mn`: first `m`, then `n`, so that `f^{mn}` is `(f^m)^n`.
///
/// Parameters of `m` stay constants of the composite's target, followed by
/// those of `n`.
pub fn compose(m: &Translation, n: &Translation) -> Result<Translation, TranslationError> {
    for (r, a) in &m.target.relations {
        if n.source.relation_arity(r) != Some(*a) {
            // symbols unused by m's components do not matter
            let used = std::iter::once(&m.domain)
                .chain(m.relations.values().map(|c| &c.raw))
                .chain(std::iter::once(&m.equality.raw))
                .any(|f| f.relation_symbols().contains(&(r.clone(), *a)));
            if used {
                return Err(TranslationError::LanguageMismatch(format!(
                    "`{r}` of the middle language is not translated"
                )));
            }
        }
    }
    let mut target = n.target.clone();
    for p in &m.parameters {
        if target.symbol(p).is_none() {
            target.functions.push((p.clone(), 0));
        }
    }
    let x = Term::var(DOMAIN_VAR);
    let domain = Formula::and(n.domain_at(&x), translate_formula(n, &m.domain)?);
    // each component: domain of n at every argument, then the translated
    // component of m (already guarded by m's domain)
    let lift = |c: &Component| -> Result<Formula, TranslationError> {
        let mut parts: Vec<Formula> = c.args.iter().map(|a| n.domain_at(&Term::var(a))).collect();
        parts.push(translate_formula(n, &c.guarded)?);
        Ok(Formula::conj(parts).expect("non-empty"))
    };
    let mut rels = BTreeMap::new();
    for (r, c) in &m.relations {
        let body = lift(c)?;
        rels.insert(
            r.clone(),
            Component {
                args: c.args.clone(),
                raw: body.clone(),
                guarded: body,
            },
        );
    }
    let eq = lift(&m.equality)?;
    let mut parameters = m.parameters.clone();
    parameters.extend(n.parameters.iter().cloned());
    Ok(Translation {
        source: m.source.clone(),
        target,
        domain,
        relations: rels,
        equality: Component {
            args: m.equality.args.clone(),
            raw: eq.clone(),
            guarded: eq,
        },
        parameters,
    })
}

/// Least `Sigma(n)` containing the domain formula and every component.
pub fn restriction_class(m: &Translation) -> FormulaClass {
    let mut c = FormulaClass::Sigma(1);
    let all = std::iter::once(&m.domain)
        .chain(m.relations.values().map(|c| &c.guarded))
        .chain(std::iter::once(&m.equality.guarded));
    for f in all {
        c = c.sigma_join(classify(f));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph() -> Language {
        Language::new("graph", &[("E", 2)], &[]).unwrap()
    }

    fn reversal() -> Translation {
        let l = graph();
        let e = parse_formula("E(y, x)", &l).unwrap();
        Translation::new(
            l.clone(),
            l.clone(),
            parse_formula("x = x", &l).unwrap(),
            BTreeMap::from([("E".to_string(), e)]),
            parse_formula("x = y", &l).unwrap(),
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn quantifier_clause() {
        let l = Language::new("p", &[("P", 1)], &[]).unwrap();
        let delta = parse_formula("exists y (P(y) and x = y)", &l).unwrap();
        let m = Translation::new(
            l.clone(),
            l.clone(),
            delta,
            BTreeMap::from([("P".to_string(), parse_formula("P(x)", &l).unwrap())]),
            parse_formula("x = y", &l).unwrap(),
            Vec::new(),
        )
        .unwrap();
        let f = parse_formula("forall x (P(x))", &l).unwrap();
        let t = translate_formula(&m, &f).unwrap();
        let d = m.domain_at(&Term::var("x"));
        let p = Formula::rel("P", vec![Term::var("x")]);
        let expect = Formula::forall("x", Formula::implies(d.clone(), Formula::and(d, p)));
        assert_eq!(t, expect);
    }

    #[test]
    fn reversal_components() {
        let m = reversal();
        let f = parse_formula("exists x (forall y (E(y, x)))", &graph()).unwrap();
        let t = translate_formula(&m, &f).unwrap();
        assert_eq!(
            print_formula(&t),
            "exists x (x = x and forall y (y = y -> (y = y and (x = x and E(x,y)))))"
        );
    }

    #[test]
    fn composition_domain_bullet() {
        let m = reversal();
        let c = compose(&m, &m).unwrap();
        let expect = Formula::and(m.domain.clone(), translate_formula(&m, &m.domain).unwrap());
        assert_eq!(c.domain, expect);
    }

    #[test]
    fn binary_numerals() {
        let lang = Language::new("a", &[], &[("+", 2), ("*", 2)]).unwrap();
        for k in 0u32..40 {
            let t = binary_numeral(&BigUint::from(k));
            let s = t.to_string();
            let back = crate::logic::parse_term(&s, &lang).unwrap();
            assert_eq!(crate::arith::numeral::val(&back).unwrap(), BigUint::from(k));
        }
    }

    #[test]
    fn json_round_trip() {
        let m = reversal();
        let back = Translation::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn restriction_of_quantifier_free() {
        assert_eq!(restriction_class(&reversal()), FormulaClass::Sigma(1));
        assert_eq!(
            restriction_class(&identity_translation(&graph())),
            FormulaClass::Sigma(1)
        );
    }
}
