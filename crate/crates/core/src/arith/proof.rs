//! A Hilbert calculus with a fixed schema list, modus ponens and
//! generalization.
//!
//! | id | schema |
//! |----|--------|
//! | `K` | `A -> (B -> A)` |
//! | `S` | `(A -> (B -> C)) -> ((A -> B) -> (A -> C))` |
//! | `Contra` | `(not B -> not A) -> ((not B -> A) -> B)` |
//! | `AndE1`, `AndE2` | `(A and B) -> A`, `(A and B) -> B` |
//! | `AndI` | `A -> (B -> (A and B))` |
//! | `OrI1`, `OrI2` | `A -> (A or B)`, `B -> (A or B)` |
//! | `OrE` | `(A -> C) -> ((B -> C) -> ((A or B) -> C))` |
//! | `IffE1`, `IffE2` | `(A <-> B) -> (A -> B)`, `(A <-> B) -> (B -> A)` |
//! | `IffI` | `(A -> B) -> ((B -> A) -> (A <-> B))` |
//! | `Inst` | `forall x A -> A[x:=t]` |
//! | `Dist` | `forall x (A -> B) -> (A -> forall x B)`, `x` not free in `A` |
//! | `ExI` | `A[x:=t] -> exists x A` |
//! | `ExE` | `forall x (A -> B) -> (exists x A -> B)`, `x` not free in `B` |
//! | `BAll` | `forall x < t (A) <-> forall x (x < t -> A)`, `x` not in `t` |
//! | `BEx` | `exists x < t (A) <-> exists x (x < t and A)`, `x` not in `t` |
//! | `Refl` | `t = t` |
//! | `Leibniz` | `s = t -> (A[x:=s] -> A[x:=t])` |
//!
//! Substitution is the capture-avoiding one of the logic module, so an
//! instance is checked by rebuilding it from its arguments.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::coding::{
    decode_formula, decode_term, decode_var, encode_formula, encode_term, pair, seq, unpair, unseq,
    var_code, CodeError,
};
use crate::logic::{parse_formula, parse_term, substitute, Formula, Language, Term};
use crate::theories::AxiomStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    K,
    S,
    Contra,
    AndE1,
    AndE2,
    AndI,
    OrI1,
    OrI2,
    OrE,
    IffE1,
    IffE2,
    IffI,
    Inst,
    Dist,
    ExI,
    ExE,
    BAll,
    BEx,
    Refl,
    Leibniz,
}

pub const ALL_SCHEMAS: [Schema; 20] = [
    Schema::K,
    Schema::S,
    Schema::Contra,
    Schema::AndE1,
    Schema::AndE2,
    Schema::AndI,
    Schema::OrI1,
    Schema::OrI2,
    Schema::OrE,
    Schema::IffE1,
    Schema::IffE2,
    Schema::IffI,
    Schema::Inst,
    Schema::Dist,
    Schema::ExI,
    Schema::ExE,
    Schema::BAll,
    Schema::BEx,
    Schema::Refl,
    Schema::Leibniz,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Formula,
    Term,
    Var,
}

/// A schema argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Formula(Formula),
    Term(Term),
    Var(String),
}

impl Schema {
    pub fn index(self) -> usize {
        ALL_SCHEMAS.iter().position(|s| *s == self).expect("listed")
    }

    /// Metavariables in argument order.
    pub fn params(self) -> &'static [(&'static str, Sort)] {
        use Schema::*;
        use Sort::*;
        const AB: &[(&str, Sort)] = &[("A", Formula), ("B", Formula)];
        const ABC: &[(&str, Sort)] = &[("A", Formula), ("B", Formula), ("C", Formula)];
        match self {
            K | Contra | AndE1 | AndE2 | AndI | OrI1 | OrI2 | IffE1 | IffE2 | IffI => AB,
            S | OrE => ABC,
            Inst | ExI => &[("x", Var), ("t", Term), ("A", Formula)],
            Dist | ExE => &[("x", Var), ("A", Formula), ("B", Formula)],
            BAll | BEx => &[("x", Var), ("t", Term), ("A", Formula)],
            Refl => &[("t", Term)],
            Leibniz => &[("x", Var), ("s", Term), ("t", Term), ("A", Formula)],
        }
    }

    /// Builds the instance; `Err` when a side condition fails.
    pub fn instantiate(self, args: &[Arg]) -> Result<Formula, String> {
        let params = self.params();
        if args.len() != params.len() {
            return Err(format!("{self:?} takes {} arguments", params.len()));
        }
        let mut fs = BTreeMap::new();
        let mut ts = BTreeMap::new();
        let mut vs = BTreeMap::new();
        for ((name, sort), arg) in params.iter().zip(args) {
            match (sort, arg) {
                (Sort::Formula, Arg::Formula(f)) => {
                    fs.insert(*name, f.clone());
                }
                (Sort::Term, Arg::Term(t)) => {
                    ts.insert(*name, t.clone());
                }
                (Sort::Var, Arg::Var(v)) => {
                    vs.insert(*name, v.clone());
                }
                _ => return Err(format!("argument `{name}` of {self:?} has the wrong sort")),
            }
        }
        let f = |n: &str| fs[n].clone();
        let imp = Formula::implies;
        use Schema::*;
        Ok(match self {
            K => imp(f("A"), imp(f("B"), f("A"))),
            S => imp(
                imp(f("A"), imp(f("B"), f("C"))),
                imp(imp(f("A"), f("B")), imp(f("A"), f("C"))),
            ),
            Contra => imp(
                imp(Formula::not(f("B")), Formula::not(f("A"))),
                imp(imp(Formula::not(f("B")), f("A")), f("B")),
            ),
            AndE1 => imp(Formula::and(f("A"), f("B")), f("A")),
            AndE2 => imp(Formula::and(f("A"), f("B")), f("B")),
            AndI => imp(f("A"), imp(f("B"), Formula::and(f("A"), f("B")))),
            OrI1 => imp(f("A"), Formula::or(f("A"), f("B"))),
            OrI2 => imp(f("B"), Formula::or(f("A"), f("B"))),
            OrE => imp(
                imp(f("A"), f("C")),
                imp(
                    imp(f("B"), f("C")),
                    imp(Formula::or(f("A"), f("B")), f("C")),
                ),
            ),
            IffE1 => imp(Formula::iff(f("A"), f("B")), imp(f("A"), f("B"))),
            IffE2 => imp(Formula::iff(f("A"), f("B")), imp(f("B"), f("A"))),
            IffI => imp(
                imp(f("A"), f("B")),
                imp(imp(f("B"), f("A")), Formula::iff(f("A"), f("B"))),
            ),
            Inst => {
                let x = &vs["x"];
                imp(Formula::forall(x, f("A")), substitute(&f("A"), x, &ts["t"]))
            }
            ExI => {
                let x = &vs["x"];
                imp(substitute(&f("A"), x, &ts["t"]), Formula::exists(x, f("A")))
            }
            Dist => {
                let x = &vs["x"];
                if f("A").is_free(x) {
                    return Err(format!("`{x}` is free in A"));
                }
                imp(
                    Formula::forall(x, imp(f("A"), f("B"))),
                    imp(f("A"), Formula::forall(x, f("B"))),
                )
            }
            ExE => {
                let x = &vs["x"];
                if f("B").is_free(x) {
                    return Err(format!("`{x}` is free in B"));
                }
                imp(
                    Formula::forall(x, imp(f("A"), f("B"))),
                    imp(Formula::exists(x, f("A")), f("B")),
                )
            }
            BAll | BEx => {
                let x = &vs["x"];
                let t = &ts["t"];
                if t.has_var(x) {
                    return Err(format!("`{x}` occurs in the bound"));
                }
                let guard = Formula::lt(Term::var(x), t.clone());
                if self == BAll {
                    Formula::iff(
                        Formula::forall_lt(x, t.clone(), f("A")),
                        Formula::forall(x, imp(guard, f("A"))),
                    )
                } else {
                    Formula::iff(
                        Formula::exists_lt(x, t.clone(), f("A")),
                        Formula::exists(x, Formula::and(guard, f("A"))),
                    )
                }
            }
            Refl => Formula::eq(ts["t"].clone(), ts["t"].clone()),
            Leibniz => {
                let x = &vs["x"];
                let (s, t) = (&ts["s"], &ts["t"]);
                imp(
                    Formula::eq(s.clone(), t.clone()),
                    imp(substitute(&f("A"), x, s), substitute(&f("A"), x, t)),
                )
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Just {
    Logic {
        schema: Schema,
        args: Vec<Arg>,
    },
    /// Axiom of the theory at the given stream index.
    Axiom(u64),
    /// From line `i` (A) and line `j` (A -> B) infer B.
    ModusPonens(usize, usize),
    /// From line `i` (A) infer `forall x A`.
    Gen(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Just,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofObject {
    pub lines: Vec<Line>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("the proof is empty")]
    Empty,
    #[error("the last line is not the goal")]
    GoalMismatch,
    #[error("malformed proof: {0}")]
    Malformed(String),
}

fn line_err(line: usize, message: impl Into<String>) -> ProofError {
    ProofError::Line {
        line,
        message: message.into(),
    }
}

/// Checks every line and that the last one is `goal`.
pub fn verify_proof(p: &ProofObject, t: &AxiomStream, goal: &Formula) -> Result<(), ProofError> {
    for (n, line) in p.lines.iter().enumerate() {
        let ok = match &line.just {
            Just::Logic { schema, args } => {
                let inst = schema.instantiate(args).map_err(|m| line_err(n, m))?;
                inst == line.formula
            }
            Just::Axiom(i) => t.axiom_at(*i) == line.formula,
            Just::ModusPonens(i, j) => {
                if *i >= n || *j >= n {
                    return Err(line_err(n, "modus ponens must cite earlier lines"));
                }
                match &p.lines[*j].formula {
                    Formula::Bin(crate::logic::Conn::Implies, a, b) => {
                        **a == p.lines[*i].formula && **b == line.formula
                    }
                    _ => false,
                }
            }
            Just::Gen(i, x) => {
                if *i >= n {
                    return Err(line_err(n, "generalization must cite an earlier line"));
                }
                line.formula == Formula::forall(x, p.lines[*i].formula.clone())
            }
        };
        if !ok {
            return Err(line_err(n, "formula does not match its justification"));
        }
    }
    match p.lines.last() {
        None => Err(ProofError::Empty),
        Some(l) if l.formula == *goal => Ok(()),
        Some(_) => Err(ProofError::GoalMismatch),
    }
}

/// Whether `p` is a proof of `goal` from the axioms of `t`.
pub fn check_proof(p: &ProofObject, t: &AxiomStream, goal: &Formula) -> bool {
    verify_proof(p, t, goal).is_ok()
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawJust {
    Logic {
        schema: Schema,
        #[serde(default)]
        args: BTreeMap<String, String>,
    },
    Axiom(u64),
    Mp([usize; 2]),
    Gen((usize, String)),
}

#[derive(Serialize, Deserialize)]
struct RawLine {
    formula: String,
    just: RawJust,
}

impl ProofObject {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn push(&mut self, formula: Formula, just: Just) -> usize {
        self.lines.push(Line { formula, just });
        self.lines.len() - 1
    }

    /// Appends a schema instance, computing its formula.
    pub fn push_logic(&mut self, schema: Schema, args: Vec<Arg>) -> Result<usize, String> {
        let formula = schema.instantiate(&args)?;
        Ok(self.push(formula, Just::Logic { schema, args }))
    }

    /// Appends `B` from lines `i: A` and `j: A -> B`.
    pub fn push_mp(&mut self, i: usize, j: usize) -> Option<usize> {
        match &self.lines.get(j)?.formula {
            Formula::Bin(crate::logic::Conn::Implies, _, b) => {
                let b = (**b).clone();
                Some(self.push(b, Just::ModusPonens(i, j)))
            }
            _ => None,
        }
    }

    pub fn from_json(text: &str, lang: &Language) -> Result<ProofObject, ProofError> {
        let raw: Vec<RawLine> =
            serde_json::from_str(text).map_err(|e| ProofError::Malformed(e.to_string()))?;
        let mut lines = Vec::new();
        for (n, r) in raw.into_iter().enumerate() {
            let formula =
                parse_formula(&r.formula, lang).map_err(|e| line_err(n, e.to_string()))?;
            let just = match r.just {
                RawJust::Axiom(i) => Just::Axiom(i),
                RawJust::Mp([i, j]) => Just::ModusPonens(i, j),
                RawJust::Gen((i, x)) => Just::Gen(i, x),
                RawJust::Logic { schema, args } => {
                    let mut out = Vec::new();
                    for (name, sort) in schema.params() {
                        let text = args
                            .get(*name)
                            .ok_or_else(|| line_err(n, format!("missing argument `{name}`")))?;
                        out.push(match sort {
                            Sort::Formula => Arg::Formula(
                                parse_formula(text, lang)
                                    .map_err(|e| line_err(n, e.to_string()))?,
                            ),
                            Sort::Term => Arg::Term(
                                parse_term(text, lang).map_err(|e| line_err(n, e.to_string()))?,
                            ),
                            Sort::Var => Arg::Var(text.trim().to_string()),
                        });
                    }
                    Just::Logic { schema, args: out }
                }
            };
            lines.push(Line { formula, just });
        }
        Ok(ProofObject { lines })
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<RawLine> = self
            .lines
            .iter()
            .map(|l| RawLine {
                formula: l.formula.to_string(),
                just: match &l.just {
                    Just::Axiom(i) => RawJust::Axiom(*i),
                    Just::ModusPonens(i, j) => RawJust::Mp([*i, *j]),
                    Just::Gen(i, x) => RawJust::Gen((*i, x.clone())),
                    Just::Logic { schema, args } => RawJust::Logic {
                        schema: *schema,
                        args: schema
                            .params()
                            .iter()
                            .zip(args)
                            .map(|((name, _), a)| {
                                let text = match a {
                                    Arg::Formula(f) => f.to_string(),
                                    Arg::Term(t) => t.to_string(),
                                    Arg::Var(v) => v.clone(),
                                };
                                (name.to_string(), text)
                            })
                            .collect(),
                    },
                },
            })
            .collect();
        serde_json::to_string_pretty(&raw).expect("proof serializes")
    }

    /// Code: the sequence of `pair(formula, justification)` line codes.
    pub fn encode(&self) -> BigUint {
        let lines: Vec<BigUint> = self
            .lines
            .iter()
            .map(|l| pair(&encode_formula(&l.formula), &encode_just(&l.just)))
            .collect();
        seq(&lines)
    }

    pub fn decode(c: &BigUint) -> Result<ProofObject, CodeError> {
        let mut lines = Vec::new();
        for lc in unseq(c)? {
            let (f, j) = unpair(&lc)?;
            lines.push(Line {
                formula: decode_formula(&f)?,
                just: decode_just(&j)?,
            });
        }
        Ok(ProofObject { lines })
    }
}

fn encode_arg(a: &Arg) -> BigUint {
    match a {
        Arg::Formula(f) => encode_formula(f),
        Arg::Term(t) => encode_term(t),
        Arg::Var(v) => var_code(v),
    }
}

fn encode_just(j: &Just) -> BigUint {
    let b = BigUint::from;
    match j {
        Just::Logic { schema, args } => {
            let args: Vec<BigUint> = args.iter().map(encode_arg).collect();
            pair(&b(1u32), &pair(&b(schema.index() as u32), &seq(&args)))
        }
        Just::Axiom(i) => pair(&b(2u32), &BigUint::from(*i)),
        Just::ModusPonens(i, k) => pair(&b(3u32), &pair(&b(*i as u32), &b(*k as u32))),
        Just::Gen(i, x) => pair(&b(4u32), &pair(&b(*i as u32), &var_code(x))),
    }
}

fn small(c: &BigUint) -> Result<usize, CodeError> {
    c.to_usize()
        .filter(|&n| n < 1 << 32)
        .ok_or_else(|| CodeError("line index".into()))
}

fn decode_just(c: &BigUint) -> Result<Just, CodeError> {
    let (tag, payload) = unpair(c)?;
    match tag.to_u32() {
        Some(1) => {
            let (s, args) = unpair(&payload)?;
            let schema = *ALL_SCHEMAS
                .get(small(&s)?)
                .ok_or_else(|| CodeError("schema index".into()))?;
            let codes = unseq(&args)?;
            if codes.len() != schema.params().len() {
                return Err(CodeError("schema arity".into()));
            }
            let mut out = Vec::new();
            for ((_, sort), a) in schema.params().iter().zip(&codes) {
                out.push(match sort {
                    Sort::Formula => Arg::Formula(decode_formula(a)?),
                    Sort::Term => Arg::Term(decode_term(a)?),
                    Sort::Var => Arg::Var(decode_var(a)?),
                });
            }
            Ok(Just::Logic { schema, args: out })
        }
        Some(2) => Ok(Just::Axiom(
            payload
                .to_u64()
                .ok_or_else(|| CodeError("axiom index".into()))?,
        )),
        Some(3) => {
            let (i, j) = unpair(&payload)?;
            Ok(Just::ModusPonens(small(&i)?, small(&j)?))
        }
        Some(4) => {
            let (i, x) = unpair(&payload)?;
            Ok(Just::Gen(small(&i)?, decode_var(&x)?))
        }
        _ => Err(CodeError("justification tag".into())),
    }
}

/// The five-line proof of `A -> A` from `K` and `S`.
pub fn identity_proof(a: &Formula) -> ProofObject {
    let mut p = ProofObject::default();
    let fa = || Arg::Formula(a.clone());
    let aa = Formula::implies(a.clone(), a.clone());
    // S with B := A -> A, C := A
    let s = p
        .push_logic(Schema::S, vec![fa(), Arg::Formula(aa.clone()), fa()])
        .expect("S instance");
    let k1 = p
        .push_logic(Schema::K, vec![fa(), Arg::Formula(aa)])
        .expect("K instance");
    let m1 = p.push_mp(k1, s).expect("mp");
    let k2 = p
        .push_logic(Schema::K, vec![fa(), fa()])
        .expect("K instance");
    p.push_mp(k2, m1).expect("mp");
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang() -> Language {
        Language::new("p", &[("P", 0), ("Q", 0)], &[]).unwrap()
    }

    #[test]
    fn identity() {
        let a = parse_formula("P", &lang()).unwrap();
        let p = identity_proof(&a);
        let t = AxiomStream::empty(lang());
        let goal = Formula::implies(a.clone(), a);
        assert!(check_proof(&p, &t, &goal));
        let mut cut = p.clone();
        cut.lines.pop();
        assert!(!check_proof(&cut, &t, &goal));
        let back = ProofObject::from_json(&p.to_json(), &lang()).unwrap();
        assert_eq!(back, p);
        assert_eq!(ProofObject::decode(&p.encode()).unwrap(), p);
    }

    #[test]
    fn axiom_index_must_match() {
        let l = lang();
        let p_ = parse_formula("P", &l).unwrap();
        let q = parse_formula("Q", &l).unwrap();
        let t = AxiomStream::finite("t", l, vec![p_.clone(), q]);
        let mut good = ProofObject::default();
        good.push(p_.clone(), Just::Axiom(0));
        assert!(check_proof(&good, &t, &p_));
        let mut bad = ProofObject::default();
        bad.push(p_.clone(), Just::Axiom(1));
        assert!(!check_proof(&bad, &t, &p_));
    }
}
