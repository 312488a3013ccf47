use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Conn, Formula, Language, Quant, Term};

/// Variable assignment; values are indices into the universe.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("free variable `{0}` is not assigned")]
    Uncovered(String),
    #[error("symbol `{0}` is not interpreted by the structure")]
    LanguageMismatch(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
}

/// A finite relational structure. Constants (0-ary functions) may be given
/// an interpretation so that translations with parameters can be evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    pub language: Language,
    pub universe: Vec<String>,
    pub relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
    pub constants: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    language: Language,
    universe: Vec<String>,
    relations: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    constants: BTreeMap<String, String>,
}

impl FiniteStructure {
    /// Builds a structure from index tuples, checking arities and ranges.
    pub fn new(
        language: Language,
        universe: Vec<String>,
        relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
    ) -> Result<FiniteStructure, EvalError> {
        let s = FiniteStructure {
            language,
            universe,
            relations,
            constants: BTreeMap::new(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Structure on `0..n` named by decimal numerals.
    pub fn on_range(
        language: Language,
        n: usize,
        relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
    ) -> Result<FiniteStructure, EvalError> {
        FiniteStructure::new(language, (0..n).map(|i| i.to_string()).collect(), relations)
    }

    pub fn with_constant(mut self, c: &str, element: usize) -> Result<FiniteStructure, EvalError> {
        self.constants.insert(c.to_string(), element);
        self.validate()?;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if self.universe.is_empty() {
            return Err(EvalError::Malformed("empty universe".into()));
        }
        let distinct: BTreeSet<&String> = self.universe.iter().collect();
        if distinct.len() != self.universe.len() {
            return Err(EvalError::Malformed("duplicate universe element".into()));
        }
        for (r, tuples) in &self.relations {
            let arity = self
                .language
                .relation_arity(r)
                .ok_or_else(|| EvalError::LanguageMismatch(r.clone()))?;
            for t in tuples {
                if t.len() != arity {
                    return Err(EvalError::Malformed(format!(
                        "tuple of wrong arity for `{r}`"
                    )));
                }
                if t.iter().any(|&e| e >= self.universe.len()) {
                    return Err(EvalError::Malformed(format!(
                        "tuple outside universe for `{r}`"
                    )));
                }
            }
        }
        for (c, &e) in &self.constants {
            if self.language.function_arity(c) != Some(0) {
                return Err(EvalError::LanguageMismatch(c.clone()));
            }
            if e >= self.universe.len() {
                return Err(EvalError::Malformed(format!(
                    "constant `{c}` outside universe"
                )));
            }
        }
        Ok(())
    }

    pub fn holds(&self, r: &str, tuple: &[usize]) -> bool {
        self.relations.get(r).is_some_and(|t| t.contains(tuple))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|u| u == name)
    }

    pub fn from_json(text: &str) -> Result<FiniteStructure, EvalError> {
        let raw: RawStructure =
            serde_json::from_str(text).map_err(|e| EvalError::Malformed(e.to_string()))?;
        let index: BTreeMap<&str, usize> = raw
            .universe
            .iter()
            .enumerate()
            .map(|(i, u)| (u.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| EvalError::Malformed(format!("unknown element `{name}`")))
        };
        let mut relations = BTreeMap::new();
        for (r, tuples) in &raw.relations {
            let mut set = BTreeSet::new();
            for t in tuples {
                set.insert(t.iter().map(|e| lookup(e)).collect::<Result<Vec<_>, _>>()?);
            }
            relations.insert(r.clone(), set);
        }
        let mut constants = BTreeMap::new();
        for (c, e) in &raw.constants {
            constants.insert(c.clone(), lookup(e)?);
        }
        let s = FiniteStructure {
            language: raw.language.clone(),
            universe: raw.universe.clone(),
            relations,
            constants,
        };
        s.language
            .validate()
            .map_err(|e| EvalError::Malformed(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// Deterministic JSON: keys sorted, tuples sorted by element index, every
    /// relation of the language listed.
    pub fn to_json(&self) -> String {
        let mut relations = BTreeMap::new();
        for (r, _) in &self.language.relations {
            let tuples = self
                .relations
                .get(r)
                .map(|ts| {
                    ts.iter()
                        .map(|t| t.iter().map(|&e| self.universe[e].clone()).collect())
                        .collect()
                })
                .unwrap_or_default();
            relations.insert(r.clone(), tuples);
        }
        let raw = RawStructure {
            language: self.language.clone(),
            universe: self.universe.clone(),
            relations,
            constants: self
                .constants
                .iter()
                .map(|(c, &e)| (c.clone(), self.universe[e].clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("structure serializes")
    }

    /// Checks that every symbol of `f` is interpreted with the right arity.
    pub fn check_formula(&self, f: &Formula) -> Result<(), EvalError> {
        for (r, a) in f.relation_symbols() {
            if self.language.relation_arity(&r) != Some(a) {
                return Err(EvalError::LanguageMismatch(r));
            }
        }
        for (g, a) in f.function_symbols() {
            if a != 0 || !self.constants.contains_key(&g) {
                return Err(EvalError::LanguageMismatch(g));
            }
        }
        if f.uses_numerals() {
            return Err(EvalError::LanguageMismatch("numeral".into()));
        }
        Ok(())
    }
}

struct Env<'a> {
    s: &'a FiniteStructure,
    stack: Vec<(&'a str, usize)>,
}

impl<'a> Env<'a> {
    fn lookup(&self, v: &str) -> usize {
        self.stack
            .iter()
            .rev()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .expect("free variables checked before evaluation")
    }

    fn term(&self, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.lookup(v),
            Term::App(c, _) => self.s.constants[c],
            Term::Num(_) => unreachable!("numerals rejected before evaluation"),
        }
    }

    fn eval(&mut self, f: &'a Formula) -> bool {
        match f {
            Formula::Rel(r, args) => {
                let tuple: Vec<usize> = args.iter().map(|a| self.term(a)).collect();
                self.s.holds(r, &tuple)
            }
            Formula::Eq(a, b) => self.term(a) == self.term(b),
            Formula::Not(g) => !self.eval(g),
            Formula::Bin(c, a, b) => match c {
                Conn::And => self.eval(a) && self.eval(b),
                Conn::Or => self.eval(a) || self.eval(b),
                Conn::Implies => !self.eval(a) || self.eval(b),
                Conn::Iff => self.eval(a) == self.eval(b),
            },
            Formula::Quant(q, v, body) => {
                let n = self.s.size();
                let want = *q == Quant::Exists;
                for e in 0..n {
                    self.stack.push((v, e));
                    let r = self.eval(body);
                    self.stack.pop();
                    if r == want {
                        return want;
                    }
                }
                !want
            }
            Formula::Bounded(..) => unreachable!("bounded quantifiers rejected before evaluation"),
        }
    }
}

/// Classical satisfaction of `f` in `s` under `a`.
pub fn eval_finite(s: &FiniteStructure, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    s.check_formula(f)?;
    if f.uses_bounded() {
        return Err(EvalError::LanguageMismatch("<".into()));
    }
    for v in f.free_vars() {
        match a.get(&v) {
            Some(&e) if e < s.size() => {}
            Some(_) => {
                return Err(EvalError::Malformed(format!(
                    "`{v}` assigned outside universe"
                )))
            }
            None => return Err(EvalError::Uncovered(v)),
        }
    }
    let mut env = Env {
        s,
        stack: a.iter().map(|(v, &e)| (v.as_str(), e)).collect(),
    };
    Ok(env.eval(f))
}

/// All tuples over `vars` (in that order) satisfying `f`.
pub fn definable_relation(
    s: &FiniteStructure,
    f: &Formula,
    vars: &[String],
) -> Result<BTreeSet<Vec<usize>>, EvalError> {
    for v in f.free_vars() {
        if !vars.contains(&v) {
            return Err(EvalError::Uncovered(v));
        }
    }
    s.check_formula(f)?;
    let n = s.size();
    let mut out = BTreeSet::new();
    let mut tuple = vec![0usize; vars.len()];
    loop {
        let a: Assignment = vars.iter().cloned().zip(tuple.iter().copied()).collect();
        if eval_finite(s, f, &a)? {
            out.insert(tuple.clone());
        }
        // odometer increment, last position fastest
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn cycle3() -> FiniteStructure {
        let lang = Language::new("graph", &[("E", 2)], &[]).unwrap();
        let edges = [[0, 1], [1, 2], [2, 0]]
            .iter()
            .map(|e| e.to_vec())
            .collect();
        FiniteStructure::on_range(lang, 3, BTreeMap::from([("E".to_string(), edges)])).unwrap()
    }

    fn eval(s: &FiniteStructure, text: &str) -> bool {
        let f = parse_formula(text, &s.language).unwrap();
        eval_finite(s, &f, &Assignment::new()).unwrap()
    }

    #[test]
    fn cycle_examples() {
        let s = cycle3();
        assert!(eval(&s, "forall x (exists y (E(x,y)))"));
        assert!(!eval(&s, "exists x (forall y (not E(y,x)))"));
    }

    #[test]
    fn uncovered_variable() {
        let s = cycle3();
        let f = parse_formula("E(x,y)", &s.language).unwrap();
        let a = Assignment::from([("x".to_string(), 0)]);
        assert_eq!(
            eval_finite(&s, &f, &a),
            Err(EvalError::Uncovered("y".into()))
        );
    }

    #[test]
    fn definable_sets() {
        let s = cycle3();
        let vars = vec!["x".to_string()];
        let f = parse_formula("exists y (E(x,y))", &s.language).unwrap();
        assert_eq!(definable_relation(&s, &f, &vars).unwrap().len(), 3);
        let g = parse_formula("not x = x", &s.language).unwrap();
        assert!(definable_relation(&s, &g, &vars).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip_is_stable() {
        let s = cycle3();
        let text = s.to_json();
        let back = FiniteStructure::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }
}
