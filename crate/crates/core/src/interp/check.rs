//! Checking interpretations, quotients and isomorphisms on finite structures.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::translation::{
    arg_vars, compose, identity_translation, instantiate, Translation, TranslationError, DOMAIN_VAR,
};
use crate::logic::{Formula, Language, Term};
use crate::semantics::{definable_relation, EvalError, FiniteStructure};

/// Reports list at most this many witnesses per condition.
const WITNESS_CAP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Translation(#[from] TranslationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: String,
    /// Witness tuples, as element names of the structure.
    pub witnesses: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub failures: Vec<Failure>,
    /// Constants of the structure that an isomorphism formula mentions.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
}

impl CheckReport {
    fn new() -> CheckReport {
        CheckReport {
            pass: true,
            failures: Vec::new(),
            parameters: Vec::new(),
        }
    }

    fn fail(&mut self, condition: impl Into<String>, witness: Vec<String>) {
        let condition = condition.into();
        self.pass = false;
        match self.failures.iter_mut().find(|f| f.condition == condition) {
            Some(f) => {
                if f.witnesses.len() < WITNESS_CAP {
                    f.witnesses.push(witness);
                }
            }
            None => self.failures.push(Failure {
                condition,
                witnesses: vec![witness],
            }),
        }
    }

    /// Copies the failures of `other`, prefixing their condition names.
    fn absorb(&mut self, prefix: &str, other: &CheckReport) {
        for p in &other.parameters {
            if !self.parameters.contains(p) {
                self.parameters.push(p.clone());
            }
        }
        for f in &other.failures {
            self.pass = false;
            self.failures.push(Failure {
                condition: format!("{prefix}: {}", f.condition),
                witnesses: f.witnesses.clone(),
            });
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

/// The sets defined in a structure by the components of a translation.
#[derive(Clone, Debug)]
pub struct Definables {
    pub domain: Vec<bool>,
    pub equality: BTreeSet<Vec<usize>>,
    pub relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl Definables {
    pub fn compute(m: &Translation, s: &FiniteStructure) -> Result<Definables, CheckError> {
        let dset = definable_relation(s, &m.domain, &[DOMAIN_VAR.to_string()])?;
        let mut domain = vec![false; s.size()];
        for t in dset {
            domain[t[0]] = true;
        }
        let equality = definable_relation(s, &m.equality.guarded, &m.equality.args)?;
        let mut relations = BTreeMap::new();
        for (r, c) in &m.relations {
            relations.insert(r.clone(), definable_relation(s, &c.guarded, &c.args)?);
        }
        Ok(Definables {
            domain,
            equality,
            relations,
        })
    }

    fn eq(&self, a: usize, b: usize) -> bool {
        self.equality.contains(&vec![a, b])
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.domain
            .iter()
            .enumerate()
            .filter(|(_, d)| **d)
            .map(|(i, _)| i)
    }

    /// Least element equivalent to `a`.
    pub fn representative(&self, a: usize) -> usize {
        self.members().find(|&b| self.eq(a, b)).unwrap_or(a)
    }
}

fn names(s: &FiniteStructure, t: &[usize]) -> Vec<String> {
    t.iter().map(|&i| s.universe[i].clone()).collect()
}

fn check_definables(d: &Definables, s: &FiniteStructure) -> CheckReport {
    let mut r = CheckReport::new();
    let dom: Vec<usize> = d.members().collect();
    if dom.is_empty() {
        r.fail("nonempty domain", Vec::new());
        return r;
    }
    for &a in &dom {
        if !d.eq(a, a) {
            r.fail("equality reflexive", names(s, &[a]));
        }
    }
    for t in &d.equality {
        if !d.eq(t[1], t[0]) {
            r.fail("equality symmetric", names(s, t));
        }
        for &c in &dom {
            if d.eq(t[1], c) && !d.eq(t[0], c) {
                r.fail("equality transitive", names(s, &[t[0], t[1], c]));
            }
        }
    }
    for (sym, rel) in &d.relations {
        for t in rel {
            for i in 0..t.len() {
                for &e in &dom {
                    if e != t[i] && d.eq(t[i], e) {
                        let mut u = t.clone();
                        u[i] = e;
                        if !rel.contains(&u) {
                            let mut w = names(s, t);
                            w.extend(names(s, &u));
                            r.fail(format!("congruence {sym}"), w);
                        }
                    }
                }
            }
        }
    }
    r
}

/// Nonempty domain, equality an equivalence on it, and a congruence for
/// every relation formula.
pub fn check_interpretation(
    m: &Translation,
    s: &FiniteStructure,
) -> Result<CheckReport, CheckError> {
    let d = Definables::compute(m, s)?;
    Ok(check_definables(&d, s))
}

/// A quotient together with the class (index in the quotient) of each
/// element of the domain.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub structure: FiniteStructure,
    pub class_of: Vec<Option<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("not an interpretation in the structure")]
    NotInterpretation(CheckReport),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// The structure of equivalence classes, each named by its least element.
pub fn quotient(m: &Translation, s: &FiniteStructure) -> Result<Quotient, QuotientError> {
    let d = Definables::compute(m, s)?;
    let report = check_definables(&d, s);
    if !report.pass {
        return Err(QuotientError::NotInterpretation(report));
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![None; s.size()];
    for a in d.members().collect::<Vec<_>>() {
        let r = d.representative(a);
        let idx = match reps.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                reps.push(r);
                reps.len() - 1
            }
        };
        class_of[a] = Some(idx);
    }
    let mut relations = BTreeMap::new();
    for (sym, rel) in &d.relations {
        let lifted: BTreeSet<Vec<usize>> = rel
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&e| class_of[e].expect("guarded by domain"))
                    .collect()
            })
            .collect();
        relations.insert(sym.clone(), lifted);
    }
    let structure = FiniteStructure::new(
        m.source.clone(),
        reps.iter().map(|&r| s.universe[r].clone()).collect(),
        relations,
    )
    .map_err(CheckError::from)?;
    Ok(Quotient {
        structure,
        class_of,
    })
}

pub fn quotient_structure(
    m: &Translation,
    s: &FiniteStructure,
) -> Result<FiniteStructure, QuotientError> {
    quotient(m, s).map(|q| q.structure)
}

fn iota_pairs(s: &FiniteStructure, iota: &Formula) -> Result<BTreeSet<(usize, usize)>, CheckError> {
    let rel = definable_relation(s, iota, &["x".to_string(), "y".to_string()])?;
    Ok(rel.into_iter().map(|t| (t[0], t[1])).collect())
}

/// Whether `pairs` canonically determine an isomorphism between the
/// quotients given by `d1` and `d2`.
pub fn iso_core(
    s: &FiniteStructure,
    d1: &Definables,
    d2: &Definables,
    pairs: &BTreeSet<(usize, usize)>,
) -> CheckReport {
    let mut r = CheckReport::new();
    for &(a, b) in pairs {
        if !d1.domain[a] || !d2.domain[b] {
            r.fail("iota within the domains", names(s, &[a, b]));
        }
    }
    if !r.pass {
        return r;
    }
    let dom1: Vec<usize> = d1.members().collect();
    let dom2: Vec<usize> = d2.members().collect();
    for &(a, b) in pairs {
        for &a2 in &dom1 {
            for &b2 in &dom2 {
                if d1.eq(a, a2) && d2.eq(b, b2) && !pairs.contains(&(a2, b2)) {
                    r.fail("iota respects equality", names(s, &[a, b, a2, b2]));
                }
            }
        }
    }
    for &a in &dom1 {
        if !pairs.iter().any(|&(x, _)| x == a) {
            r.fail("iota total", names(s, &[a]));
        }
    }
    for &b in &dom2 {
        if !pairs.iter().any(|&(_, y)| y == b) {
            r.fail("iota onto", names(s, &[b]));
        }
    }
    for &(a, b) in pairs {
        for &(a2, b2) in pairs {
            if d1.eq(a, a2) != d2.eq(b, b2) {
                r.fail("iota injective and functional", names(s, &[a, b, a2, b2]));
            }
        }
    }
    if !r.pass {
        return r;
    }
    // a bijection of classes: compare relations through representatives
    let image: BTreeMap<usize, usize> = pairs
        .iter()
        .map(|&(a, b)| (d1.representative(a), d2.representative(b)))
        .collect();
    let reps1: Vec<usize> = image.keys().copied().collect();
    for (sym, rel1) in &d1.relations {
        let Some(rel2) = d2.relations.get(sym) else {
            r.fail(format!("preserves {sym}"), Vec::new());
            continue;
        };
        let arity = rel1
            .iter()
            .next()
            .map(Vec::len)
            .or_else(|| rel2.iter().next().map(Vec::len));
        let Some(arity) = arity else { continue };
        let mut idx = vec![0usize; arity];
        loop {
            let t1: Vec<usize> = idx.iter().map(|&i| reps1[i]).collect();
            let t2: Vec<usize> = t1.iter().map(|a| image[a]).collect();
            let in1 = rel1.contains(&t1);
            let in2 = rel2
                .iter()
                .any(|u| u.iter().zip(&t2).all(|(&x, &y)| d2.eq(x, y)));
            if in1 != in2 {
                let mut w = names(s, &t1);
                w.extend(names(s, &t2));
                r.fail(format!("preserves {sym}"), w);
            }
            let mut i = arity;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < reps1.len() {
                    break;
                }
                idx[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || arity == 0 {
                break;
            }
        }
    }
    r
}

/// Constants of `s` occurring in `f`, in order of first occurrence.
pub fn parameters_of(s: &FiniteStructure, f: &Formula) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    f.visit_terms(&mut |t| {
        if let Term::App(c, args) = t {
            if args.is_empty() && s.constants.contains_key(c) && !out.contains(c) {
                out.push(c.clone());
            }
        }
    });
    out
}

/// Checks that `iota(x, y)` defines an isomorphism between the structures
/// interpreted by `m1` and `m2` in `s`.
pub fn check_iso_of_interpretations(
    s: &FiniteStructure,
    m1: &Translation,
    m2: &Translation,
    iota: &Formula,
) -> Result<CheckReport, CheckError> {
    let mut r = CheckReport::new();
    let same: BTreeSet<_> = m1.source.relations.iter().collect();
    let other: BTreeSet<_> = m2.source.relations.iter().collect();
    if same != other {
        return Err(CheckError::Eval(EvalError::LanguageMismatch(
            "interpretations of different languages".into(),
        )));
    }
    let d1 = Definables::compute(m1, s)?;
    let d2 = Definables::compute(m2, s)?;
    r.absorb("first", &check_definables(&d1, s));
    r.absorb("second", &check_definables(&d2, s));
    if !r.pass {
        return Ok(r);
    }
    let pairs = iota_pairs(s, iota)?;
    let mut out = iso_core(s, &d1, &d2, &pairs);
    out.parameters = parameters_of(s, iota);
    Ok(out)
}

/// Checks that `n` (interpreting a structure in `s`) and `m` (interpreting a
/// copy of `s` back in that structure) form a retraction: the composite
/// `(s^n)^m` is isomorphic to `s` via `iota`. With `second`, additionally
/// checks in `s^n` that the composite the other way round is isomorphic to
/// the identity via `second`.
pub fn check_retraction(
    s: &FiniteStructure,
    n: &Translation,
    m: &Translation,
    iota: &Formula,
    second: Option<&Formula>,
) -> Result<CheckReport, CheckError> {
    let mut r = CheckReport::new();
    let q = match quotient(n, s) {
        Ok(q) => q,
        Err(QuotientError::NotInterpretation(rep)) => {
            r.absorb("n", &rep);
            return Ok(r);
        }
        Err(QuotientError::Check(e)) => return Err(e),
    };
    r.absorb("m", &check_interpretation(m, &q.structure)?);
    if !r.pass {
        return Ok(r);
    }
    let there_and_back = compose(m, n)?;
    let id = identity_translation(&s.language);
    r.absorb(
        "first",
        &check_iso_of_interpretations(s, &there_and_back, &id, iota)?,
    );
    if let Some(iota2) = second {
        let back_and_there = compose(n, m)?;
        let id2 = identity_translation(&q.structure.language);
        r.absorb(
            "second",
            &check_iso_of_interpretations(&q.structure, &back_and_there, &id2, iota2)?,
        );
    }
    Ok(r)
}

/// Sentence saying that `iota` is an isomorphism between the structures
/// interpreted by `m1` and `m2` (same source, same target).
pub fn iso_sentence(m1: &Translation, m2: &Translation, iota: &Formula) -> Formula {
    let xy = ["x".to_string(), "y".to_string()];
    let io = |a: &str, b: &str| instantiate(iota, &xy, &[Term::var(a), Term::var(b)]);
    let d1 = |a: &str| m1.domain_at(&Term::var(a));
    let d2 = |a: &str| m2.domain_at(&Term::var(a));
    let v = |s: &str| s.to_string();
    let mut parts = vec![
        Formula::forall_many(
            &[v("a"), v("b")],
            Formula::implies(io("a", "b"), Formula::and(d1("a"), d2("b"))),
        ),
        Formula::forall(
            "a",
            Formula::implies(d1("a"), Formula::exists("b", io("a", "b"))),
        ),
        Formula::forall(
            "b",
            Formula::implies(d2("b"), Formula::exists("a", io("a", "b"))),
        ),
        Formula::forall_many(
            &[v("a"), v("b"), v("c"), v("d")],
            Formula::implies(
                Formula::and(io("a", "b"), io("c", "d")),
                Formula::iff(
                    m1.equality.at(&[Term::var("a"), Term::var("c")]),
                    m2.equality.at(&[Term::var("b"), Term::var("d")]),
                ),
            ),
        ),
    ];
    for (sym, c1) in &m1.relations {
        let Some(c2) = m2.relations.get(sym) else {
            continue;
        };
        let n = c1.args.len();
        let xs: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        let ys: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
        let links: Vec<Formula> = xs.iter().zip(&ys).map(|(a, b)| io(a, b)).collect();
        let lhs = c1.at(&xs.iter().map(|a| Term::var(a)).collect::<Vec<_>>());
        let rhs = c2.at(&ys.iter().map(|b| Term::var(b)).collect::<Vec<_>>());
        let body = match Formula::conj(links) {
            Some(l) => Formula::implies(l, Formula::iff(lhs, rhs)),
            None => Formula::iff(lhs, rhs),
        };
        let mut vars = xs.clone();
        vars.extend(ys);
        parts.push(Formula::forall_many(&vars, body));
    }
    Formula::conj(parts).expect("non-empty")
}

/// Searches formulas over `lang` with free variables among `x, y` (and one
/// bound variable `z`), up to connective depth `depth` and at most `cap`
/// distinct definable relations, for one making `check` succeed. Formulas
/// are generated up to equivalence in `s`.
pub fn search_iota(
    s: &FiniteStructure,
    lang: &Language,
    depth: usize,
    cap: usize,
    mut check: impl FnMut(&Formula, &BTreeSet<(usize, usize)>) -> bool,
) -> Option<Formula> {
    let vars = ["x", "y", "z"];
    let n = s.size();
    let cells = n * n * n;
    let key = |f: &Formula| -> Option<Vec<bool>> {
        let rel = definable_relation(s, f, &vars.map(String::from)).ok()?;
        let mut bits = vec![false; cells];
        for t in rel {
            bits[(t[0] * n + t[1]) * n + t[2]] = true;
        }
        Some(bits)
    };
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut levels: Vec<Vec<(Formula, Vec<bool>)>> = Vec::new();
    let mut try_add = |f: Formula,
                       out: &mut Vec<(Formula, Vec<bool>)>,
                       seen: &mut BTreeSet<Vec<bool>>|
     -> Option<Formula> {
        let k = key(&f)?;
        if seen.contains(&k) {
            return None;
        }
        seen.insert(k.clone());
        let z_free = (0..n)
            .all(|a| (0..n).all(|b| (0..n).all(|c| k[(a * n + b) * n + c] == k[(a * n + b) * n])));
        if z_free {
            let pairs: BTreeSet<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| k[(a * n + b) * n])
                .collect();
            if check(&f, &pairs) {
                return Some(f);
            }
        }
        out.push((f, k));
        None
    };
    let mut atoms = Vec::new();
    let tv = |v: &str| Term::var(v);
    for a in vars {
        for b in vars {
            if let Some(f) = try_add(Formula::eq(tv(a), tv(b)), &mut atoms, &mut seen) {
                return Some(f);
            }
        }
    }
    for (r, arity) in &lang.relations {
        let mut idx = vec![0usize; *arity];
        loop {
            let args = idx.iter().map(|&i| tv(vars[i])).collect();
            if let Some(f) = try_add(Formula::rel(r, args), &mut atoms, &mut seen) {
                return Some(f);
            }
            let mut i = *arity;
            let mut done = true;
            while i > 0 {
                i -= 1;
                idx[i] += 1;
                if idx[i] < vars.len() {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    levels.push(atoms);
    for _ in 0..depth {
        let prev: Vec<(Formula, Vec<bool>)> = levels.iter().flatten().cloned().collect();
        let last = levels.last().cloned().unwrap_or_default();
        let mut next = Vec::new();
        for (f, _) in &last {
            if seen.len() >= cap {
                return None;
            }
            if let Some(g) = try_add(Formula::not(f.clone()), &mut next, &mut seen) {
                return Some(g);
            }
            for v in vars {
                for g in [Formula::exists(v, f.clone()), Formula::forall(v, f.clone())] {
                    if let Some(h) = try_add(g, &mut next, &mut seen) {
                        return Some(h);
                    }
                }
            }
        }
        for (f, _) in &last {
            for (g, _) in &prev {
                if seen.len() >= cap {
                    return None;
                }
                for h in [
                    Formula::and(f.clone(), g.clone()),
                    Formula::or(f.clone(), g.clone()),
                ] {
                    if let Some(w) = try_add(h, &mut next, &mut seen) {
                        return Some(w);
                    }
                }
            }
        }
        levels.push(next);
    }
    None
}

/// Searches for a formula witnessing that `(n, m)` is a retraction in `s`.
pub fn find_retraction_iota(
    s: &FiniteStructure,
    n: &Translation,
    m: &Translation,
    depth: usize,
    cap: usize,
) -> Result<Option<Formula>, CheckError> {
    let there_and_back = match quotient(n, s) {
        Ok(q) if check_interpretation(m, &q.structure)?.pass => compose(m, n)?,
        Ok(_) | Err(QuotientError::NotInterpretation(_)) => return Ok(None),
        Err(QuotientError::Check(e)) => return Err(e),
    };
    let id = identity_translation(&s.language);
    let d1 = Definables::compute(&there_and_back, s)?;
    let d2 = Definables::compute(&id, s)?;
    Ok(search_iota(s, &s.language, depth, cap, |_, pairs| {
        iso_core(s, &d1, &d2, pairs).pass
    }))
}

/// Argument variables of the `i`-th source relation, for callers building
/// sentences over components.
pub fn component_vars(arity: usize) -> Vec<String> {
    arg_vars(arity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn parity_structure() -> FiniteStructure {
        let lang = Language::new("par", &[("Even", 1), ("Q", 1), ("Z", 1)], &[]).unwrap();
        let even = [[0], [2]].iter().map(|t| t.to_vec()).collect();
        let q = [[0], [2]].iter().map(|t| t.to_vec()).collect();
        let z = [[0]].iter().map(|t| t.to_vec()).collect();
        FiniteStructure::on_range(
            lang,
            4,
            BTreeMap::from([
                ("Even".to_string(), even),
                ("Q".to_string(), q),
                ("Z".to_string(), z),
            ]),
        )
        .unwrap()
    }

    fn parity(q: &str) -> Translation {
        let s = parity_structure();
        let src = Language::new("q", &[("Q", 1)], &[]).unwrap();
        let p = |t: &str| parse_formula(t, &s.language).unwrap();
        Translation::new(
            src,
            s.language.clone(),
            p("x = x"),
            BTreeMap::from([("Q".to_string(), p(q))]),
            p("Even(x) <-> Even(y)"),
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn parity_passes_and_quotients() {
        let s = parity_structure();
        let m = parity("Even(x)");
        assert!(check_interpretation(&m, &s).unwrap().pass);
        let q = quotient_structure(&m, &s).unwrap();
        assert_eq!(q.universe, vec!["0".to_string(), "1".to_string()]);
        assert_eq!(q.relations["Q"], BTreeSet::from([vec![0]]));
    }

    #[test]
    fn congruence_failure_has_witness() {
        let s = parity_structure();
        let m = parity("Z(x)");
        let r = check_interpretation(&m, &s).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures[0].condition, "congruence Q");
        assert_eq!(r.failures[0].witnesses[0], vec!["0", "2"]);
        assert!(quotient_structure(&m, &s).is_err());
    }

    #[test]
    fn empty_domain_fails() {
        let s = parity_structure();
        let lang = s.language.clone();
        let m = Translation::new(
            Language::new("q", &[("Q", 1)], &[]).unwrap(),
            lang.clone(),
            parse_formula("not x = x", &lang).unwrap(),
            BTreeMap::from([("Q".to_string(), parse_formula("Q(x)", &lang).unwrap())]),
            parse_formula("x = y", &lang).unwrap(),
            Vec::new(),
        )
        .unwrap();
        let r = check_interpretation(&m, &s).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures[0].condition, "nonempty domain");
    }
}
