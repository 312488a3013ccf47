//! The embedding of the standard numbers into an interpreted copy of
//! arithmetic, built by iterating the interpreted successor from the
//! interpreted zero.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigUint;
use thiserror::Error;

use super::translation::{relational_signature, Translation, DOMAIN_VAR};
use crate::arith::model::arith_language;
use crate::logic::{Formula, Language};
use crate::semantics::{eval_finite, eval_oracle, FiniteStructure, OracleModel};

/// Relational arithmetic: `<`, the graphs of addition and multiplication
/// and the literals `R_0`, `R_1`.
pub fn relational_arith_language() -> Language {
    relational_signature(&arith_language())
}

/// A model in which formulas can be evaluated at elements, with a finite
/// pool of candidate elements to search.
pub trait Host {
    type Elem: Clone + Debug + Eq;

    /// `None` when the model cannot decide the formula.
    fn holds(&self, f: &Formula, a: &BTreeMap<String, Self::Elem>) -> Result<Option<bool>, String>;

    /// Candidates examined when the embedding is computed up to `fuel`.
    fn pool(&self, fuel: usize) -> Vec<Self::Elem>;
}

impl Host for FiniteStructure {
    type Elem = usize;

    fn holds(&self, f: &Formula, a: &BTreeMap<String, usize>) -> Result<Option<bool>, String> {
        eval_finite(self, f, a).map(Some).map_err(|e| e.to_string())
    }

    fn pool(&self, _fuel: usize) -> Vec<usize> {
        (0..self.size()).collect()
    }
}

/// The naturals of an oracle model, searched up to `spread * fuel + spread`.
pub struct NatHost {
    pub model: OracleModel,
    pub spread: usize,
}

impl Host for NatHost {
    type Elem = BigUint;

    fn holds(&self, f: &Formula, a: &BTreeMap<String, BigUint>) -> Result<Option<bool>, String> {
        eval_oracle(&self.model, f, a)
            .map(|t| t.as_bool())
            .map_err(|e| e.to_string())
    }

    fn pool(&self, fuel: usize) -> Vec<BigUint> {
        (0..self.spread * (fuel + 1)).map(BigUint::from).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("interpretation lacks `{0}`")]
    MissingSymbol(String),
    #[error("no interpreted zero among the candidates")]
    MissingZero,
    #[error("no interpreted successor of the {0}-th element among the candidates")]
    MissingSuccessor(usize),
    #[error("{what} is not unique: {first} and {second}")]
    Ambiguous {
        what: String,
        first: String,
        second: String,
    },
    #[error("{condition} fails at {witness}")]
    Violation { condition: String, witness: String },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("evaluation failed: {0}")]
    Eval(String),
}

struct Ctx<'a, H: Host> {
    host: &'a H,
    n: &'a Translation,
}

impl<H: Host> Ctx<'_, H> {
    fn decide(&self, f: &Formula, vars: &[&str], elems: &[&H::Elem]) -> Result<bool, EmbedError> {
        let a: BTreeMap<String, H::Elem> = vars
            .iter()
            .map(|v| v.to_string())
            .zip(elems.iter().map(|e| (*e).clone()))
            .collect();
        self.host
            .holds(f, &a)
            .map_err(EmbedError::Eval)?
            .ok_or_else(|| EmbedError::Undecided(format!("{f} at {elems:?}")))
    }

    fn component(&self, sym: &str, elems: &[&H::Elem]) -> Result<bool, EmbedError> {
        let c = self
            .n
            .relation(sym)
            .ok_or_else(|| EmbedError::MissingSymbol(sym.to_string()))?;
        let vars: Vec<&str> = c.args.iter().map(String::as_str).collect();
        self.decide(&c.guarded, &vars, elems)
    }

    fn in_domain(&self, a: &H::Elem) -> Result<bool, EmbedError> {
        self.decide(&self.n.domain, &[DOMAIN_VAR], &[a])
    }

    fn eq(&self, a: &H::Elem, b: &H::Elem) -> Result<bool, EmbedError> {
        let c = &self.n.equality;
        let vars: Vec<&str> = c.args.iter().map(String::as_str).collect();
        self.decide(&c.guarded, &vars, &[a, b])
    }

    /// The unique element (modulo interpreted equality) satisfying `pred`.
    fn unique(
        &self,
        what: &str,
        dom: &[H::Elem],
        mut pred: impl FnMut(&H::Elem) -> Result<bool, EmbedError>,
    ) -> Result<Option<H::Elem>, EmbedError> {
        let mut found: Option<H::Elem> = None;
        for c in dom {
            if pred(c)? {
                match &found {
                    None => found = Some(c.clone()),
                    Some(f) => {
                        if !self.eq(f, c)? {
                            return Err(EmbedError::Ambiguous {
                                what: what.to_string(),
                                first: format!("{f:?}"),
                                second: format!("{c:?}"),
                            });
                        }
                    }
                }
            }
        }
        Ok(found)
    }
}

/// Computes `iota(0), ..., iota(fuel - 1)` for an interpretation `n` of
/// relational arithmetic in `host`, and checks on that prefix that the map
/// is injective modulo interpreted equality, preserves order and has an
/// initial segment of the interpreted order as image.
pub fn build_initial_embedding<H: Host>(
    host: &H,
    n: &Translation,
    fuel: usize,
) -> Result<Vec<H::Elem>, EmbedError> {
    let ctx = Ctx { host, n };
    let mut dom = Vec::new();
    for c in host.pool(fuel) {
        if ctx.in_domain(&c)? {
            dom.push(c);
        }
    }
    let zero = ctx
        .unique("interpreted zero", &dom, |c| ctx.component("R_0", &[c]))?
        .ok_or(EmbedError::MissingZero)?;
    let mut out = vec![zero];
    if fuel > 1 {
        let one = ctx
            .unique("interpreted one", &dom, |c| ctx.component("R_1", &[c]))?
            .ok_or(EmbedError::MissingSuccessor(0))?;
        while out.len() < fuel {
            let k = out.len() - 1;
            let prev = out[k].clone();
            let next = ctx
                .unique(&format!("successor of {prev:?}"), &dom, |c| {
                    ctx.component("R_add", &[&prev, &one, c])
                })?
                .ok_or(EmbedError::MissingSuccessor(k))?;
            out.push(next);
        }
    }
    let violation = |condition: &str, witness: String| EmbedError::Violation {
        condition: condition.to_string(),
        witness,
    };
    let ordered = n.relation("<").is_some();
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if ctx.eq(&out[i], &out[j])? {
                return Err(violation("injectivity", format!("{i}, {j}")));
            }
            if ordered && !ctx.component("<", &[&out[i], &out[j]])? {
                return Err(violation("order preservation", format!("{i}, {j}")));
            }
        }
    }
    if ordered {
        for c in &dom {
            let mut is_image = false;
            for v in &out {
                if ctx.eq(c, v)? {
                    is_image = true;
                    break;
                }
            }
            if is_image {
                continue;
            }
            for (k, v) in out.iter().enumerate() {
                if ctx.component("<", &[c, v])? {
                    return Err(violation(
                        "initial segment",
                        format!("{c:?} below iota({k})"),
                    ));
                }
            }
        }
    }
    Ok(out)
}
