//! Prenex normal forms and arithmetical-hierarchy classes.
//!
//! The class of a formula is the least one reachable by the classical
//! quantifier-pulling equivalences. For each subformula we track two numbers:
//! the shortest alternating frame beginning with `exists` (resp. `forall`)
//! into which some prenex prefix of it fits. Bounded quantifiers over a
//! Delta0 body stay in the matrix. Oracle atoms named by the convention in
//! [`declared_class`] count as if they carried the prefix of their class.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::subst::rectify;
use super::syntax::{Conn, Formula, Quant, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaClass {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl FormulaClass {
    pub fn dual(self) -> FormulaClass {
        match self {
            FormulaClass::Delta0 => FormulaClass::Delta0,
            FormulaClass::Sigma(n) => FormulaClass::Pi(n),
            FormulaClass::Pi(n) => FormulaClass::Sigma(n),
        }
    }

    pub fn level(self) -> u32 {
        match self {
            FormulaClass::Delta0 => 0,
            FormulaClass::Sigma(n) | FormulaClass::Pi(n) => n,
        }
    }

    /// Delta0 is coarsened into Sigma(1); other classes are unchanged.
    pub fn coarsen(self) -> FormulaClass {
        match self {
            FormulaClass::Delta0 => FormulaClass::Sigma(1),
            c => c,
        }
    }

    /// Whether every formula of class `other` belongs to `self`.
    pub fn contains(self, other: FormulaClass) -> bool {
        use FormulaClass::*;
        match (self, other) {
            (_, Delta0) => true,
            (Delta0, _) => false,
            (Sigma(n), Sigma(m)) | (Pi(n), Pi(m)) => m <= n,
            (Sigma(n), Pi(m)) | (Pi(n), Sigma(m)) => m < n,
        }
    }

    /// Least `Sigma(n)` containing both.
    pub fn sigma_join(self, other: FormulaClass) -> FormulaClass {
        let need = |c: FormulaClass| match c {
            FormulaClass::Delta0 => 1,
            FormulaClass::Sigma(n) => n,
            FormulaClass::Pi(n) => n + 1,
        };
        FormulaClass::Sigma(need(self).max(need(other)))
    }
}

impl fmt::Display for FormulaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaClass::Delta0 => write!(f, "Delta0"),
            FormulaClass::Sigma(n) => write!(f, "Sigma({n})"),
            FormulaClass::Pi(n) => write!(f, "Pi({n})"),
        }
    }
}

impl FromStr for FormulaClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("delta0") {
            return Ok(FormulaClass::Delta0);
        }
        let level = |rest: &str| -> Result<u32, String> {
            let digits = rest.trim_start_matches('(').trim_end_matches(')');
            match digits.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(format!("bad class level in `{s}`")),
            }
        };
        if let Some(rest) = s.strip_prefix("Sigma").or_else(|| s.strip_prefix("sigma")) {
            return Ok(FormulaClass::Sigma(level(rest)?));
        }
        if let Some(rest) = s.strip_prefix("Pi").or_else(|| s.strip_prefix("pi")) {
            return Ok(FormulaClass::Pi(level(rest)?));
        }
        Err(format!("unknown formula class `{s}`"))
    }
}

/// Class carried by an oracle relation symbol: `Sat_S<k>`/`Tr_S<k>` are
/// Sigma(k), `Sat_P<k>`/`Tr_P<k>` are Pi(k), `Prov*` is Sigma(1); every other
/// atom is Delta0.
pub fn declared_class(sym: &str) -> FormulaClass {
    for prefix in ["Sat_", "Tr_"] {
        if let Some(rest) = sym.strip_prefix(prefix) {
            let (kind, digits) = rest.split_at(rest.len().min(1));
            if let Ok(n) = digits.parse::<u32>() {
                if n >= 1 {
                    match kind {
                        "S" => return FormulaClass::Sigma(n),
                        "P" => return FormulaClass::Pi(n),
                        _ => {}
                    }
                }
            }
        }
    }
    if sym.starts_with("Prov") {
        return FormulaClass::Sigma(1);
    }
    FormulaClass::Delta0
}

/// Shortest alternating frames starting with `exists` / `forall`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fit {
    pub s: u32,
    pub p: u32,
}

impl Fit {
    const ZERO: Fit = Fit { s: 0, p: 0 };

    fn of_class(c: FormulaClass) -> Fit {
        match c {
            FormulaClass::Delta0 => Fit::ZERO,
            FormulaClass::Sigma(n) => Fit { s: n, p: n + 1 },
            FormulaClass::Pi(n) => Fit { s: n + 1, p: n },
        }
    }

    fn swap(self) -> Fit {
        Fit {
            s: self.p,
            p: self.s,
        }
    }

    fn join(self, o: Fit) -> Fit {
        Fit {
            s: self.s.max(o.s),
            p: self.p.max(o.p),
        }
    }

    fn under(q: Quant, body: Fit) -> Fit {
        let lead = body.get(q).max(1);
        match q {
            Quant::Exists => Fit {
                s: lead,
                p: lead + 1,
            },
            Quant::Forall => Fit {
                s: lead + 1,
                p: lead,
            },
        }
    }

    fn get(self, q: Quant) -> u32 {
        match q {
            Quant::Exists => self.s,
            Quant::Forall => self.p,
        }
    }

    pub fn is_delta0(self) -> bool {
        self.s == 0 && self.p == 0
    }
}

struct Summary {
    fit: Fit,
    /// Polarity-adjusted kind of the leftmost quantifier, real or declared.
    lead: Option<Quant>,
}

fn flip(q: Option<Quant>, neg: bool) -> Option<Quant> {
    if neg {
        q.map(Quant::dual)
    } else {
        q
    }
}

fn summarize(f: &Formula) -> Summary {
    match f {
        Formula::Eq(..) => Summary {
            fit: Fit::ZERO,
            lead: None,
        },
        Formula::Rel(r, _) => {
            let c = declared_class(r);
            Summary {
                fit: Fit::of_class(c),
                lead: match c {
                    FormulaClass::Delta0 => None,
                    FormulaClass::Sigma(_) => Some(Quant::Exists),
                    FormulaClass::Pi(_) => Some(Quant::Forall),
                },
            }
        }
        Formula::Not(g) => {
            let s = summarize(g);
            Summary {
                fit: s.fit.swap(),
                lead: flip(s.lead, true),
            }
        }
        Formula::Bin(c, a, b) => {
            let sa = summarize(a);
            let sb = summarize(b);
            let fit = match c {
                Conn::And | Conn::Or => sa.fit.join(sb.fit),
                Conn::Implies => sa.fit.swap().join(sb.fit),
                Conn::Iff => {
                    let m = sa.fit.s.max(sa.fit.p).max(sb.fit.s).max(sb.fit.p);
                    Fit { s: m, p: m }
                }
            };
            let neg_a = matches!(c, Conn::Implies | Conn::Iff);
            Summary {
                fit,
                lead: flip(sa.lead, neg_a).or(sb.lead),
            }
        }
        Formula::Quant(q, _, body) => Summary {
            fit: Fit::under(*q, summarize(body).fit),
            lead: Some(*q),
        },
        Formula::Bounded(q, _, _, body) => {
            let sb = summarize(body);
            if sb.fit.is_delta0() {
                Summary {
                    fit: Fit::ZERO,
                    lead: None,
                }
            } else {
                Summary {
                    fit: Fit::under(*q, sb.fit),
                    lead: Some(*q),
                }
            }
        }
    }
}

/// The frame sizes of `f`, see the module documentation.
pub fn fit_of(f: &Formula) -> Fit {
    summarize(f).fit
}

/// Least `n ≥ 1` with `f` in Sigma(n).
pub fn sigma_rank(f: &Formula) -> u32 {
    fit_of(f).s.max(1)
}

/// The class of `f` without building the prenex form.
pub fn classify(f: &Formula) -> FormulaClass {
    let s = summarize(f);
    class_of(s.fit, s.lead)
}

fn class_of(fit: Fit, lead: Option<Quant>) -> FormulaClass {
    if fit.is_delta0() {
        FormulaClass::Delta0
    } else if fit.s < fit.p {
        FormulaClass::Sigma(fit.s)
    } else if fit.p < fit.s || lead == Some(Quant::Forall) {
        FormulaClass::Pi(fit.p)
    } else {
        FormulaClass::Sigma(fit.s)
    }
}

type Prefix = Vec<(Quant, String)>;

struct Builder {
    taken: BTreeSet<String>,
}

impl Builder {
    /// Prenex form of `f` whose prefix fits the shortest frame led by `k`.
    fn pnf(&mut self, f: &Formula, k: Quant) -> (Prefix, Formula, Fit) {
        match f {
            Formula::Eq(..) => (Vec::new(), f.clone(), Fit::ZERO),
            Formula::Rel(r, _) => (Vec::new(), f.clone(), Fit::of_class(declared_class(r))),
            Formula::Not(g) => {
                let (p, m, fit) = self.pnf(g, k.dual());
                (dualize(p), Formula::not(m), fit.swap())
            }
            Formula::Bin(Conn::And | Conn::Or, a, b) => {
                let c = if let Formula::Bin(c, _, _) = f {
                    *c
                } else {
                    unreachable!()
                };
                let (pa, ma, fa) = self.pnf(a, k);
                let (pb, mb, fb) = self.pnf(b, k);
                (
                    interleave(pa, pb, k),
                    Formula::Bin(c, Box::new(ma), Box::new(mb)),
                    fa.join(fb),
                )
            }
            Formula::Bin(Conn::Implies, a, b) => {
                let (pa, ma, fa) = self.pnf(a, k.dual());
                let (pb, mb, fb) = self.pnf(b, k);
                (
                    interleave(dualize(pa), pb, k),
                    Formula::implies(ma, mb),
                    fa.swap().join(fb),
                )
            }
            Formula::Bin(Conn::Iff, a, b) => {
                let a2 = self.fresh_copy(a);
                let b2 = self.fresh_copy(b);
                let expanded = Formula::and(
                    Formula::implies((**a).clone(), (**b).clone()),
                    Formula::implies(b2, a2),
                );
                self.pnf(&expanded, k)
            }
            Formula::Quant(q, v, body) => {
                let (pb, mb, fb) = self.pnf(body, *q);
                let mut prefix = vec![(*q, v.clone())];
                prefix.extend(pb);
                (prefix, mb, Fit::under(*q, fb))
            }
            Formula::Bounded(q, v, t, body) => {
                let (pb, mb, fb) = self.pnf(body, *q);
                if fb.is_delta0() {
                    debug_assert!(pb.is_empty());
                    (
                        Vec::new(),
                        Formula::Bounded(*q, v.clone(), t.clone(), Box::new(mb)),
                        Fit::ZERO,
                    )
                } else {
                    let guard = Formula::lt(Term::Var(v.clone()), t.clone());
                    let matrix = match q {
                        Quant::Forall => Formula::implies(guard, mb),
                        Quant::Exists => Formula::and(guard, mb),
                    };
                    let mut prefix = vec![(*q, v.clone())];
                    prefix.extend(pb);
                    (prefix, matrix, Fit::under(*q, fb))
                }
            }
        }
    }

    fn fresh_copy(&mut self, f: &Formula) -> Formula {
        let copy = rectify(f, &self.taken);
        self.taken.extend(copy.all_vars());
        copy
    }
}

fn dualize(p: Prefix) -> Prefix {
    p.into_iter().map(|(q, v)| (q.dual(), v)).collect()
}

/// Merges two prefixes into a frame led by `k`, taking `a`'s block before
/// `b`'s at every frame position.
fn interleave(a: Prefix, b: Prefix, k: Quant) -> Prefix {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut kind = k;
    while i < a.len() || j < b.len() {
        while i < a.len() && a[i].0 == kind {
            out.push(a[i].clone());
            i += 1;
        }
        while j < b.len() && b[j].0 == kind {
            out.push(b[j].clone());
            j += 1;
        }
        kind = kind.dual();
    }
    out
}

/// Returns a logically equivalent prenex formula and its class.
pub fn prenex_classify(f: &Formula) -> (Formula, FormulaClass) {
    let summary = summarize(f);
    let class = class_of(summary.fit, summary.lead);
    let lead = match class {
        FormulaClass::Pi(_) => Quant::Forall,
        _ => Quant::Exists,
    };
    let rect = rectify(f, &BTreeSet::new());
    let mut b = Builder {
        taken: rect.all_vars(),
    };
    let (prefix, matrix, _) = b.pnf(&rect, lead);
    let out = prefix
        .into_iter()
        .rev()
        .fold(matrix, |acc, (q, v)| Formula::Quant(q, v, Box::new(acc)));
    (out, class)
}

/// Splits a prenex formula into its quantifier prefix and matrix.
pub fn split_prefix(f: &Formula) -> (Prefix, &Formula) {
    let mut prefix = Vec::new();
    let mut cur = f;
    while let Formula::Quant(q, v, body) = cur {
        prefix.push((*q, v.clone()));
        cur = body;
    }
    (prefix, cur)
}

/// Number of alternating blocks in a prefix and the kind of the first one.
pub fn prefix_shape(prefix: &[(Quant, String)]) -> (u32, Option<Quant>) {
    let mut blocks = 0;
    let mut last = None;
    for (q, _) in prefix {
        if last != Some(*q) {
            blocks += 1;
            last = Some(*q);
        }
    }
    (blocks, prefix.first().map(|(q, _)| *q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::language::Language;
    use crate::logic::parse::parse_formula;
    use crate::logic::syntax::print_formula;

    fn graph() -> Language {
        Language::new("graph", &[("E", 2), ("<", 2)], &[]).unwrap()
    }

    fn p(s: &str) -> Formula {
        parse_formula(s, &graph()).unwrap()
    }

    #[test]
    fn basic_classes() {
        assert_eq!(
            prenex_classify(&p("E(x,y) and not E(y,x)")).1,
            FormulaClass::Delta0
        );
        assert_eq!(
            prenex_classify(&p("exists x (forall y (E(x,y)))")).1,
            FormulaClass::Sigma(2)
        );
        assert_eq!(
            prenex_classify(&p("not exists x (E(x,x))")).1,
            FormulaClass::Pi(1)
        );
    }

    #[test]
    fn bounded_quantifiers_stay_delta0() {
        let (f, c) = prenex_classify(&p("forall x < y (exists z < x (E(z,x)))"));
        assert_eq!(c, FormulaClass::Delta0);
        assert_eq!(print_formula(&f), "forall x < y (exists z < x (E(z,x)))");
        let (_, c) = prenex_classify(&p("forall x < y (exists z (E(z,x)))"));
        assert_eq!(c, FormulaClass::Pi(2));
    }

    #[test]
    fn pulling_keeps_source_order_and_renames() {
        let (f, c) = prenex_classify(&p("(forall x (E(x,y)) and exists x (E(y,x)))"));
        assert_eq!(c, FormulaClass::Pi(2));
        assert_eq!(
            print_formula(&f),
            "forall x (exists x' (E(x,y) and E(y,x')))"
        );
    }

    #[test]
    fn interleaving_finds_shorter_prefix() {
        // Sigma(2) conjunct forces the other conjunct's prenexing to lead with exists.
        let f = p("((forall x (E(x,x)) and exists y (E(y,y))) and exists u (forall v (E(u,v))))");
        let (g, c) = prenex_classify(&f);
        assert_eq!(c, FormulaClass::Sigma(2));
        let (prefix, _) = split_prefix(&g);
        assert_eq!(prefix_shape(&prefix), (2, Some(Quant::Exists)));
    }

    #[test]
    fn implication_dualizes_antecedent() {
        let (_, c) = prenex_classify(&p("(exists x (E(x,x)) -> E(y,y))"));
        assert_eq!(c, FormulaClass::Pi(1));
    }

    #[test]
    fn declared_oracle_classes() {
        assert_eq!(declared_class("Sat_S3"), FormulaClass::Sigma(3));
        assert_eq!(declared_class("Tr_P2"), FormulaClass::Pi(2));
        assert_eq!(declared_class("Prov_T"), FormulaClass::Sigma(1));
        assert_eq!(declared_class("Form1"), FormulaClass::Delta0);
    }

    #[test]
    fn class_parse_display() {
        for c in [
            FormulaClass::Delta0,
            FormulaClass::Sigma(3),
            FormulaClass::Pi(1),
        ] {
            assert_eq!(c.to_string().parse::<FormulaClass>().unwrap(), c);
        }
        assert!(FormulaClass::Sigma(2).contains(FormulaClass::Pi(1)));
        assert!(!FormulaClass::Sigma(2).contains(FormulaClass::Pi(2)));
    }
}
