//! Three-valued evaluation over the standard naturals with oracle symbols.
//!
//! Unbounded quantifiers are handled in stages: a generic pass with the bound
//! variable held abstract, an exact decision for bodies that are polynomial in
//! the bound variable, and finally a search over `0..fuel`. Only the search
//! depends on fuel, and it only ever produces answers that are correct, so a
//! definite answer never changes when fuel grows.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::logic::{Conn, Formula, Language, Quant, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        self != Truth::Unknown
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }

    pub fn iff(self, other: Truth) -> Truth {
        match (self.as_bool(), other.as_bool()) {
            (Some(a), Some(b)) => Truth::from_bool(a == b),
            _ => Truth::Unknown,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("symbol `{0}` is not interpreted by the oracle model")]
    UnknownSymbol(String),
    #[error("free variable `{0}` is not assigned")]
    Uncovered(String),
    #[error("oracle `{symbol}` failed: {message}")]
    Failure { symbol: String, message: String },
}

/// A term value during evaluation; `None` means not determined.
pub type Value = Option<BigUint>;

/// Evaluates a term in the current environment (used by uniform hooks).
pub type TermEval<'a> = dyn FnMut(&Term) -> Result<Value, OracleError> + 'a;

/// An executable predicate symbol.
pub trait OraclePredicate: Send + Sync {
    fn arity(&self) -> usize;

    fn decide(&self, args: &[BigUint], model: &OracleModel) -> Result<Truth, OracleError>;

    /// Decides `Q var (self(arg))` for all values of `var` at once, when the
    /// predicate knows how. `eval` evaluates terms not mentioning `var`.
    fn quantified(
        &self,
        _q: Quant,
        _arg: &Term,
        _var: &str,
        _eval: &mut TermEval<'_>,
        _model: &OracleModel,
    ) -> Result<Option<Truth>, OracleError> {
        Ok(None)
    }
}

/// An executable total function symbol.
pub trait OracleFunction: Send + Sync {
    fn arity(&self) -> usize;

    fn apply(&self, args: &[BigUint], model: &OracleModel) -> Result<BigUint, OracleError>;
}

pub const DEFAULT_EXACT_LIMIT: u64 = 1 << 20;

/// The standard naturals with `+`, `*`, `<`, the graph relations `R_add`,
/// `R_mul`, `R_<k>`, `R_<f>` for registered functions, the exponential graph
/// `Exp(x,y,z)` (x^y = z), and any registered oracle symbols.
#[derive(Clone)]
pub struct OracleModel {
    pub fuel: u64,
    /// Largest range enumerated exactly for bounded quantifiers and
    /// polynomial root bounds; beyond it only decisive witnesses are sought.
    pub exact_limit: u64,
    predicates: BTreeMap<String, Arc<dyn OraclePredicate>>,
    functions: BTreeMap<String, Arc<dyn OracleFunction>>,
}

impl fmt::Debug for OracleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleModel")
            .field("fuel", &self.fuel)
            .field("predicates", &self.predicates.keys().collect::<Vec<_>>())
            .field("functions", &self.functions.keys().collect::<Vec<_>>())
            .finish()
    }
}

const BUILTIN_RELATIONS: [(&str, usize); 4] = [("<", 2), ("Exp", 3), ("R_add", 3), ("R_mul", 3)];

impl OracleModel {
    pub fn new(fuel: u64) -> OracleModel {
        assert!(fuel > 0, "fuel must be positive");
        OracleModel {
            fuel,
            exact_limit: DEFAULT_EXACT_LIMIT,
            predicates: BTreeMap::new(),
            functions: BTreeMap::new(),
        }
    }

    pub fn with_fuel(&self, fuel: u64) -> OracleModel {
        assert!(fuel > 0, "fuel must be positive");
        OracleModel {
            fuel,
            ..self.clone()
        }
    }

    pub fn register_predicate(&mut self, name: &str, p: Arc<dyn OraclePredicate>) {
        self.predicates.insert(name.to_string(), p);
    }

    pub fn register_function(&mut self, name: &str, g: Arc<dyn OracleFunction>) {
        self.functions.insert(name.to_string(), g);
    }

    pub fn has_predicate(&self, name: &str) -> bool {
        self.predicates.contains_key(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&Arc<dyn OraclePredicate>> {
        self.predicates.get(name)
    }

    pub fn function(&self, name: &str) -> Option<&Arc<dyn OracleFunction>> {
        self.functions.get(name)
    }

    /// The extended language (literal graph relations `R_<k>` are implicit).
    pub fn language(&self) -> Language {
        let mut relations: Vec<(String, usize)> = BUILTIN_RELATIONS
            .iter()
            .map(|(r, a)| (r.to_string(), *a))
            .collect();
        for (g, f) in &self.functions {
            relations.push((format!("R_{g}"), f.arity() + 1));
        }
        for (p, o) in &self.predicates {
            relations.push((p.clone(), o.arity()));
        }
        let mut functions = vec![("+".to_string(), 2), ("*".to_string(), 2)];
        for (g, f) in &self.functions {
            functions.push((g.clone(), f.arity()));
        }
        Language {
            name: "arith_oracle".into(),
            relations,
            functions,
        }
    }

    fn relation_arity(&self, r: &str) -> Option<usize> {
        if let Some((_, a)) = BUILTIN_RELATIONS.iter().find(|(b, _)| *b == r) {
            return Some(*a);
        }
        if let Some(p) = self.predicates.get(r) {
            return Some(p.arity());
        }
        let rest = r.strip_prefix("R_")?;
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Some(1);
        }
        self.functions.get(rest).map(|g| g.arity() + 1)
    }

    fn function_arity(&self, g: &str) -> Option<usize> {
        match g {
            "+" | "*" => Some(2),
            _ => self.functions.get(g).map(|f| f.arity()),
        }
    }

    pub fn check_symbols(&self, f: &Formula) -> Result<(), OracleError> {
        for (r, a) in f.relation_symbols() {
            if self.relation_arity(&r) != Some(a) {
                return Err(OracleError::UnknownSymbol(r));
            }
        }
        for (g, a) in f.function_symbols() {
            if self.function_arity(&g) != Some(a) {
                return Err(OracleError::UnknownSymbol(g));
            }
        }
        Ok(())
    }

    /// Value of a closed term.
    pub fn eval_closed_term(&self, t: &Term) -> Result<BigUint, OracleError> {
        let mut ctx = Ctx::new(self, &BTreeMap::new());
        ctx.term(t)?.ok_or_else(|| OracleError::Failure {
            symbol: "term".into(),
            message: format!("value of `{t}` is undetermined"),
        })
    }
}

/// Kleene evaluation of `f` under `a`; see the module documentation.
pub fn eval_oracle(
    m: &OracleModel,
    f: &Formula,
    a: &BTreeMap<String, BigUint>,
) -> Result<Truth, OracleError> {
    m.check_symbols(f)?;
    for v in f.free_vars() {
        if !a.contains_key(&v) {
            return Err(OracleError::Uncovered(v));
        }
    }
    let mut ctx = Ctx::new(m, a);
    ctx.mark_closed(f);
    ctx.formula(f)
}

#[derive(Clone)]
enum Slot {
    Nat(BigUint),
    Generic(u32),
}

struct Ctx<'m> {
    m: &'m OracleModel,
    env: Vec<(String, Slot)>,
    next_generic: u32,
    touched: HashSet<u32>,
    closed: HashSet<*const Formula>,
    cache: HashMap<*const Formula, Truth>,
}

impl<'m> Ctx<'m> {
    fn new(m: &'m OracleModel, a: &BTreeMap<String, BigUint>) -> Ctx<'m> {
        Ctx {
            m,
            env: a
                .iter()
                .map(|(v, n)| (v.clone(), Slot::Nat(n.clone())))
                .collect(),
            next_generic: 0,
            touched: HashSet::new(),
            closed: HashSet::new(),
            cache: HashMap::new(),
        }
    }

    /// Records the closed subformulas worth caching; returns the free variables.
    fn mark_closed(&mut self, f: &Formula) -> Vec<String> {
        let fv = match f {
            Formula::Rel(..) | Formula::Eq(..) => f.free_vars().into_iter().collect(),
            Formula::Not(g) => self.mark_closed(g),
            Formula::Bin(_, a, b) => {
                let mut x = self.mark_closed(a);
                for v in self.mark_closed(b) {
                    if !x.contains(&v) {
                        x.push(v);
                    }
                }
                x
            }
            Formula::Quant(_, v, body) => {
                let mut x = self.mark_closed(body);
                x.retain(|w| w != v);
                x
            }
            Formula::Bounded(_, v, t, body) => {
                let mut x = self.mark_closed(body);
                x.retain(|w| w != v);
                for w in t.free_vars() {
                    if !x.contains(&w) {
                        x.push(w);
                    }
                }
                x
            }
        };
        if fv.is_empty() && !matches!(f, Formula::Eq(..)) {
            self.closed.insert(f as *const Formula);
        }
        fv
    }

    fn lookup(&mut self, v: &str) -> Result<Value, OracleError> {
        match self.env.iter().rev().find(|(w, _)| w == v) {
            Some((_, Slot::Nat(n))) => Ok(Some(n.clone())),
            Some((_, Slot::Generic(id))) => {
                let id = *id;
                self.touched.insert(id);
                Ok(None)
            }
            None => Err(OracleError::Uncovered(v.to_string())),
        }
    }

    fn term(&mut self, t: &Term) -> Result<Value, OracleError> {
        match t {
            Term::Var(v) => self.lookup(v),
            Term::Num(k) => Ok(Some(k.clone())),
            // Evaluation stops at the first undetermined argument, so that
            // variables in later arguments are not reported as consulted.
            Term::App(g, args) => match g.as_str() {
                "+" => {
                    let Some(a) = self.term(&args[0])? else {
                        return Ok(None);
                    };
                    Ok(self.term(&args[1])?.map(|b| a + b))
                }
                "*" => {
                    let a = self.term(&args[0])?;
                    if a.as_ref().is_some_and(Zero::is_zero) {
                        return Ok(a);
                    }
                    let b = self.term(&args[1])?;
                    Ok(match (a, b) {
                        (Some(a), Some(b)) => Some(a * b),
                        (_, Some(z)) if z.is_zero() => Some(z),
                        _ => None,
                    })
                }
                _ => {
                    let f = self
                        .m
                        .functions
                        .get(g)
                        .cloned()
                        .ok_or_else(|| OracleError::UnknownSymbol(g.clone()))?;
                    let Some(vals) = self.terms(args)? else {
                        return Ok(None);
                    };
                    f.apply(&vals, self.m).map(Some)
                }
            },
        }
    }

    fn terms(&mut self, args: &[Term]) -> Result<Option<Vec<BigUint>>, OracleError> {
        let mut out = Vec::with_capacity(args.len());
        for a in args {
            match self.term(a)? {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn atom(&mut self, r: &str, args: &[Term]) -> Result<Truth, OracleError> {
        let Some(vals) = self.terms(args)? else {
            return Ok(Truth::Unknown);
        };
        let t = match r {
            "<" => vals[0] < vals[1],
            "R_add" => &vals[0] + &vals[1] == vals[2],
            "R_mul" => &vals[0] * &vals[1] == vals[2],
            "Exp" => exp_graph(&vals[0], &vals[1], &vals[2]),
            _ => {
                if let Some(p) = self.m.predicates.get(r) {
                    return p.decide(&vals, self.m);
                }
                let rest = r.strip_prefix("R_").unwrap_or(r);
                if let Ok(k) = rest.parse::<BigUint>() {
                    vals[0] == k
                } else if let Some(g) = self.m.functions.get(rest) {
                    let (out, ins) = vals.split_last().expect("graph relation has an output");
                    g.apply(ins, self.m)? == *out
                } else {
                    return Err(OracleError::UnknownSymbol(r.to_string()));
                }
            }
        };
        Ok(Truth::from_bool(t))
    }

    fn formula(&mut self, f: &Formula) -> Result<Truth, OracleError> {
        let key = f as *const Formula;
        let cacheable = self.closed.contains(&key);
        if cacheable {
            if let Some(t) = self.cache.get(&key) {
                return Ok(*t);
            }
        }
        let out = self.formula_uncached(f)?;
        if cacheable {
            self.cache.insert(key, out);
        }
        Ok(out)
    }

    fn formula_uncached(&mut self, f: &Formula) -> Result<Truth, OracleError> {
        match f {
            Formula::Rel(r, args) => self.atom(r, args),
            Formula::Eq(a, b) => {
                if a == b {
                    return Ok(Truth::True);
                }
                let Some(x) = self.term(a)? else {
                    return Ok(Truth::Unknown);
                };
                Ok(match self.term(b)? {
                    Some(y) => Truth::from_bool(x == y),
                    None => Truth::Unknown,
                })
            }
            Formula::Not(g) => Ok(self.formula(g)?.not()),
            Formula::Bin(c, a, b) => {
                let l = self.formula(a)?;
                match (c, l) {
                    (Conn::And, Truth::False) => return Ok(Truth::False),
                    (Conn::Or, Truth::True) => return Ok(Truth::True),
                    (Conn::Implies, Truth::False) => return Ok(Truth::True),
                    _ => {}
                }
                let r = self.formula(b)?;
                Ok(match c {
                    Conn::And => l.and(r),
                    Conn::Or => l.or(r),
                    Conn::Implies => l.not().or(r),
                    Conn::Iff => l.iff(r),
                })
            }
            Formula::Quant(q, v, body) => self.quant(*q, v, body),
            Formula::Bounded(q, v, bound, body) => self.bounded(*q, v, bound, body),
        }
    }

    fn with_slot<T>(
        &mut self,
        v: &str,
        slot: Slot,
        k: impl FnOnce(&mut Self) -> Result<T, OracleError>,
    ) -> Result<T, OracleError> {
        self.env.push((v.to_string(), slot));
        let out = k(self);
        self.env.pop();
        out
    }

    fn at(&mut self, v: &str, n: u64, body: &Formula) -> Result<Truth, OracleError> {
        self.with_slot(v, Slot::Nat(BigUint::from(n)), |c| c.formula(body))
    }

    /// Evaluates the body with `v` abstract; returns the result and whether
    /// `v` was consulted.
    fn generic(&mut self, v: &str, body: &Formula) -> Result<(Truth, bool), OracleError> {
        let id = self.next_generic;
        self.next_generic += 1;
        let r = self.with_slot(v, Slot::Generic(id), |c| c.formula(body))?;
        Ok((r, self.touched.remove(&id)))
    }

    fn quant(&mut self, q: Quant, v: &str, body: &Formula) -> Result<Truth, OracleError> {
        if let Some(t) = self.hook(q, v, body)? {
            return Ok(t);
        }
        let (r, touched) = self.generic(v, body)?;
        if r.is_known() || !touched {
            return Ok(r);
        }
        if let Some(b) = self.uniform_bound(v, body)? {
            return self.range(q, v, body, b + 1);
        }
        let decisive = decisive(q);
        for n in 0..self.m.fuel {
            if self.at(v, n, body)? == decisive {
                return Ok(decisive);
            }
        }
        Ok(Truth::Unknown)
    }

    fn hook(&mut self, q: Quant, v: &str, body: &Formula) -> Result<Option<Truth>, OracleError> {
        let Formula::Rel(p, args) = body else {
            return Ok(None);
        };
        let Some(pred) = self.m.predicates.get(p).cloned() else {
            return Ok(None);
        };
        if args.len() != 1 || !args[0].has_var(v) {
            return Ok(None);
        }
        let m = self.m;
        let mut eval = |t: &Term| self.term(t);
        pred.quantified(q, &args[0], v, &mut eval, m)
    }

    /// Exact Kleene quantification over `0..n`.
    fn range(&mut self, q: Quant, v: &str, body: &Formula, n: u64) -> Result<Truth, OracleError> {
        let decisive = decisive(q);
        let mut acc = decisive.not();
        for i in 0..n {
            match self.at(v, i, body)? {
                t if t == decisive => return Ok(decisive),
                Truth::Unknown => acc = Truth::Unknown,
                _ => {}
            }
        }
        Ok(acc)
    }

    fn bounded(
        &mut self,
        q: Quant,
        v: &str,
        bound: &Term,
        body: &Formula,
    ) -> Result<Truth, OracleError> {
        let decisive = decisive(q);
        match self.term(bound)? {
            Some(b) => {
                if let Some(n) = b.to_u64().filter(|&n| n <= self.m.exact_limit) {
                    return self.range(q, v, body, n);
                }
                let (r, touched) = self.generic(v, body)?;
                if r.is_known() || !touched {
                    // the range is nonempty here
                    return Ok(r);
                }
                if let Some(u) = self.uniform_bound(v, body)? {
                    return self.range(q, v, body, u + 1);
                }
                for n in 0..self.m.exact_limit {
                    if self.at(v, n, body)? == decisive {
                        return Ok(decisive);
                    }
                }
                Ok(Truth::Unknown)
            }
            None => {
                // an empty range makes the quantifier non-decisive
                let (r, _) = self.generic(v, body)?;
                Ok(if r == decisive.not() {
                    r
                } else {
                    Truth::Unknown
                })
            }
        }
    }

    /// If every atom of `body` mentioning `v` compares polynomials in `v`,
    /// returns a bound beyond which the body's truth value is constant.
    fn uniform_bound(&mut self, v: &str, body: &Formula) -> Result<Option<u64>, OracleError> {
        let mut bound = BigUint::zero();
        if !self.collect_bound(v, body, &mut bound)? {
            return Ok(None);
        }
        Ok(bound.to_u64().filter(|&b| b < self.m.exact_limit))
    }

    fn collect_bound(
        &mut self,
        v: &str,
        f: &Formula,
        bound: &mut BigUint,
    ) -> Result<bool, OracleError> {
        if !f.is_free(v) {
            return Ok(true);
        }
        let diff = match f {
            Formula::Eq(a, b) => self.poly_diff(v, a, b)?,
            Formula::Rel(r, args) if r == "<" => self.poly_diff(v, &args[1], &args[0])?,
            Formula::Rel(r, args) if r == "R_add" || r == "R_mul" => {
                let op = if r == "R_add" { "+" } else { "*" };
                let lhs = Term::App(op.into(), vec![args[0].clone(), args[1].clone()]);
                self.poly_diff(v, &lhs, &args[2])?
            }
            Formula::Rel(..) => None,
            Formula::Not(g) => return self.collect_bound(v, g, bound),
            Formula::Bin(_, a, b) => {
                return Ok(self.collect_bound(v, a, bound)? && self.collect_bound(v, b, bound)?)
            }
            Formula::Quant(..) | Formula::Bounded(..) => None,
        };
        let Some(p) = diff else {
            return Ok(false);
        };
        let b = root_bound(&p);
        if b > *bound {
            *bound = b;
        }
        Ok(true)
    }

    fn poly_diff(
        &mut self,
        v: &str,
        a: &Term,
        b: &Term,
    ) -> Result<Option<Vec<BigInt>>, OracleError> {
        let (Some(pa), Some(pb)) = (self.poly(v, a)?, self.poly(v, b)?) else {
            return Ok(None);
        };
        Ok(Some(poly_sub(&pa, &pb)))
    }

    /// Coefficients (lowest first) of `t` as a polynomial in `v`.
    fn poly(&mut self, v: &str, t: &Term) -> Result<Option<Vec<BigInt>>, OracleError> {
        if !t.has_var(v) {
            return Ok(self.term(t)?.map(|n| vec![BigInt::from(n)]));
        }
        match t {
            Term::Var(_) => Ok(Some(vec![BigInt::zero(), BigInt::one()])),
            Term::App(g, args) if g == "+" || g == "*" => {
                let (Some(a), Some(b)) = (self.poly(v, &args[0])?, self.poly(v, &args[1])?) else {
                    return Ok(None);
                };
                Ok(Some(if g == "+" {
                    poly_add(&a, &b)
                } else {
                    poly_mul(&a, &b)
                }))
            }
            _ => Ok(None),
        }
    }
}

fn decisive(q: Quant) -> Truth {
    match q {
        Quant::Exists => Truth::True,
        Quant::Forall => Truth::False,
    }
}

fn exp_graph(x: &BigUint, y: &BigUint, z: &BigUint) -> bool {
    if x.is_zero() {
        return *z == BigUint::from(y.is_zero() as u8);
    }
    if x.is_one() {
        return z.is_one();
    }
    // x >= 2: x^y has at least y+1 bits
    match y.to_u64() {
        Some(e) if e <= z.bits() => x.pow(e as u32) == *z,
        _ => false,
    }
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let neg: Vec<BigInt> = b.iter().map(|c| -c).collect();
    poly_add(a, &neg)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Cauchy bound: every root of `p` lies below the returned value.
fn root_bound(p: &[BigInt]) -> BigUint {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return BigUint::zero();
    }
    let lead = p.last().unwrap().magnitude().clone();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    let q = (&max + &lead - 1u32) / &lead;
    debug_assert!(p.last().unwrap().sign() != Sign::NoSign);
    q + 1u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, relationalize};

    fn lang() -> Language {
        Language::new("arith", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap()
    }

    fn eval(text: &str, fuel: u64, a: &[(&str, u32)]) -> Truth {
        let f = parse_formula(text, &lang()).unwrap();
        let a = a
            .iter()
            .map(|(v, n)| (v.to_string(), BigUint::from(*n)))
            .collect();
        eval_oracle(&OracleModel::new(fuel), &f, &a).unwrap()
    }

    #[test]
    fn relationalized_identity() {
        let f = parse_formula("2 + 2 = 4", &lang()).unwrap();
        let (_, g) = relationalize(&lang(), &f);
        let m = OracleModel::new(10);
        assert_eq!(eval_oracle(&m, &g, &BTreeMap::new()).unwrap(), Truth::True);
    }

    #[test]
    fn witness_and_counterexample() {
        assert_eq!(eval("exists y (y = x + x)", 100, &[("x", 3)]), Truth::True);
        assert_eq!(eval("forall y (y < 5)", 6, &[]), Truth::False);
    }

    #[test]
    fn polynomial_bodies_are_decided() {
        assert_eq!(eval("forall x (x + 0 = x)", 1, &[]), Truth::True);
        assert_eq!(eval("exists x (x * x = 2)", 1, &[]), Truth::False);
        assert_eq!(eval("forall x (x < x * x + 1)", 1, &[]), Truth::True);
    }

    #[test]
    fn bounded_quantifiers_are_exact() {
        assert_eq!(eval("forall x < 10 (x * x < 100)", 1, &[]), Truth::True);
        assert_eq!(eval("exists x < 10 (x * x = 49)", 1, &[]), Truth::True);
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        let l = Language::new("p", &[("P", 1)], &[]).unwrap();
        let f = parse_formula("P(x)", &l).unwrap();
        let m = OracleModel::new(5);
        let a = BTreeMap::from([("x".to_string(), BigUint::zero())]);
        assert!(matches!(
            eval_oracle(&m, &f, &a),
            Err(OracleError::UnknownSymbol(_))
        ));
    }
}
