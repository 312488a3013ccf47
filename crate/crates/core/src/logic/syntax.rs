use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use super::language::{ORDER, PLUS, TIMES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
    /// Numeric literal; only legal in languages with `+`.
    Num(BigUint),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conn {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    Forall,
    Exists,
}

impl Quant {
    pub fn dual(self) -> Quant {
        match self {
            Quant::Forall => Quant::Exists,
            Quant::Exists => Quant::Forall,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quant::Forall => "forall",
            Quant::Exists => "exists",
        }
    }
}

impl Conn {
    pub fn keyword(self) -> &'static str {
        match self {
            Conn::And => "and",
            Conn::Or => "or",
            Conn::Implies => "->",
            Conn::Iff => "<->",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Rel(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    Bin(Conn, Box<Formula>, Box<Formula>),
    Quant(Quant, String, Box<Formula>),
    /// `Q x < bound (body)`; the bound lies outside the scope of `x`.
    Bounded(Quant, String, Term, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn num(k: u64) -> Term {
        Term::Num(BigUint::from(k))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::App(PLUS.to_string(), vec![a, b])
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::App(TIMES.to_string(), vec![a, b])
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Num(_) => {}
        }
    }

    pub fn has_var(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.has_var(v)),
            Term::Num(_) => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_closed),
            Term::Num(_) => true,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Num(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Num(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn rename_var(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Num(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.rename_var(from, to)).collect(),
            ),
        }
    }
}

impl Formula {
    pub fn rel(r: &str, args: Vec<Term>) -> Formula {
        Formula::Rel(r.to_string(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Rel(ORDER.to_string(), vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::Or, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::Implies, Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Bin(Conn::Iff, Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Quant(Quant::Forall, v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Quant(Quant::Exists, v.to_string(), Box::new(body))
    }

    pub fn forall_lt(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::Bounded(Quant::Forall, v.to_string(), bound, Box::new(body))
    }

    pub fn exists_lt(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::Bounded(Quant::Exists, v.to_string(), bound, Box::new(body))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn conj(mut parts: Vec<Formula>) -> Option<Formula> {
        let mut acc = parts.pop()?;
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        Some(acc)
    }

    pub fn forall_many(vars: &[String], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn exists_many(vars: &[String], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v, acc))
    }

    /// Universal closure over the free variables in name order.
    pub fn closure(&self) -> Formula {
        let vars: Vec<String> = self.free_vars().into_iter().collect();
        Formula::forall_many(&vars, self.clone())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            for v in vs {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Rel(_, args) => args.iter().for_each(|t| add_term(t, bound, out)),
            Formula::Eq(a, b) => {
                add_term(a, bound, out);
                add_term(b, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Bin(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Bounded(_, v, t, body) => {
                add_term(t, bound, out);
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, v: &str) -> bool {
        match self {
            Formula::Rel(_, args) => args.iter().any(|t| t.has_var(v)),
            Formula::Eq(a, b) => a.has_var(v) || b.has_var(v),
            Formula::Not(f) => f.is_free(v),
            Formula::Bin(_, a, b) => a.is_free(v) || b.is_free(v),
            Formula::Quant(_, w, body) => w != v && body.is_free(v),
            Formula::Bounded(_, w, t, body) => t.has_var(v) || (w != v && body.is_free(v)),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Rel(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all_vars(out),
            Formula::Bin(_, a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Quant(_, v, body) => {
                out.insert(v.clone());
                body.collect_all_vars(out);
            }
            Formula::Bounded(_, v, t, body) => {
                out.insert(v.clone());
                t.collect_vars(out);
                body.collect_all_vars(out);
            }
        }
    }

    /// Number of AST nodes, counting each atom as one node.
    pub fn size(&self) -> usize {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::Bin(_, a, b) => 1 + a.size() + b.size(),
            Formula::Quant(_, _, body) | Formula::Bounded(_, _, _, body) => 1 + body.size(),
        }
    }

    /// Nesting depth of connectives and quantifiers; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::Bin(_, a, b) => 1 + a.depth().max(b.depth()),
            Formula::Quant(_, _, body) | Formula::Bounded(_, _, _, body) => 1 + body.depth(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Bin(_, a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Quant(..) | Formula::Bounded(..) => false,
        }
    }

    /// Relation symbols used, with the arity of each occurrence.
    pub fn relation_symbols(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |f| {
            if let Formula::Rel(r, args) = f {
                out.insert((r.clone(), args.len()));
            }
        });
        out
    }

    pub fn function_symbols(&self) -> BTreeSet<(String, usize)> {
        fn walk(t: &Term, out: &mut BTreeSet<(String, usize)>) {
            if let Term::App(f, args) = t {
                out.insert((f.clone(), args.len()));
                args.iter().for_each(|a| walk(a, out));
            }
        }
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| walk(t, &mut out));
        out
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => f(self),
            Formula::Not(g) => g.visit_atoms(f),
            Formula::Bin(_, a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Quant(_, _, body) | Formula::Bounded(_, _, _, body) => body.visit_atoms(f),
        }
    }

    /// Visits every maximal term (atom arguments and quantifier bounds).
    pub fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Rel(_, args) => args.iter().for_each(&mut *f),
            Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(g) => g.visit_terms(f),
            Formula::Bin(_, a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::Quant(_, _, body) => body.visit_terms(f),
            Formula::Bounded(_, _, t, body) => {
                f(t);
                body.visit_terms(f);
            }
        }
    }

    pub fn uses_numerals(&self) -> bool {
        fn has(t: &Term) -> bool {
            match t {
                Term::Num(_) => true,
                Term::Var(_) => false,
                Term::App(_, args) => args.iter().any(has),
            }
        }
        let mut found = false;
        self.visit_terms(&mut |t| found |= has(t));
        found
    }

    pub fn uses_bounded(&self) -> bool {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => false,
            Formula::Not(f) => f.uses_bounded(),
            Formula::Bin(_, a, b) => a.uses_bounded() || b.uses_bounded(),
            Formula::Quant(_, _, body) => body.uses_bounded(),
            Formula::Bounded(..) => true,
        }
    }
}

/// Deterministic fresh name: `base`, `base'`, `base''`, ... avoiding `taken`.
pub fn fresh_var(base: &str, taken: &BTreeSet<String>) -> String {
    let root = base.trim_end_matches('\'');
    let mut cand = root.to_string();
    while taken.contains(&cand) {
        cand.push('\'');
    }
    cand
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Num(k) => write!(f, "{k}"),
            Term::App(op, args) if (op == PLUS || op == TIMES) && args.len() == 2 => {
                write!(f, "({}{}{})", args[0], op, args[1])
            }
            Term::App(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Formula {
    fn fmt_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bin(c, a, b) => write!(f, "{} {} {}", a, c.keyword(), b),
            other => write!(f, "{other}"),
        }
    }
}

struct Bare<'a>(&'a Formula);

impl fmt::Display for Bare<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_bare(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Rel(r, args) if r == ORDER && args.len() == 2 => {
                write!(f, "{} < {}", args[0], args[1])
            }
            Formula::Rel(r, args) if args.is_empty() => write!(f, "{r}"),
            Formula::Rel(r, args) => {
                write!(f, "{r}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(g) => write!(f, "not {g}"),
            Formula::Bin(c, a, b) => write!(f, "({} {} {})", a, c.keyword(), b),
            Formula::Quant(q, v, body) => write!(f, "{} {} ({})", q.keyword(), v, Bare(body)),
            Formula::Bounded(q, v, t, body) => {
                write!(f, "{} {} < {} ({})", q.keyword(), v, t, Bare(body))
            }
        }
    }
}

/// Canonical text rendering.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_quantifier_print() {
        let f = Formula::forall("x", Formula::rel("E", vec![Term::var("x"), Term::var("x")]));
        assert_eq!(print_formula(&f), "forall x (E(x,x))");
    }

    #[test]
    fn nested_connectives_are_parenthesized() {
        let p = Formula::rel("P", vec![]);
        let q = Formula::rel("Q", vec![]);
        let f = Formula::or(Formula::and(p.clone(), q.clone()), Formula::not(p));
        assert_eq!(print_formula(&f), "((P and Q) or not P)");
        let g = Formula::exists("x", Formula::and(q.clone(), q));
        assert_eq!(print_formula(&g), "exists x (Q and Q)");
    }

    #[test]
    fn fresh_names_use_primes() {
        let taken: BTreeSet<String> = ["x", "x'"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_var("x", &taken), "x''");
        assert_eq!(fresh_var("y", &taken), "y");
    }

    #[test]
    fn free_vars_respect_binders_and_bounds() {
        // forall x < y (x = z)
        let f = Formula::forall_lt(
            "x",
            Term::var("y"),
            Formula::eq(Term::var("x"), Term::var("z")),
        );
        let fv: Vec<_> = f.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["y".to_string(), "z".to_string()]);
    }
}
