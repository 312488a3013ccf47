//! Theories assembled from pluggable interpretations: the truth-interpreting
//! theories, their case-split and disjoint-sum variants, and the theory of
//! the nonnegative integer polynomials.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use super::combine::{interleave, oplus2, oplus_family, union_language, CombineError};
use super::ct::{ct_axioms, ct_language};
use super::enumerate::FormulaEnumeration;
use super::schemes::{
    base_scheme, bsigma_sentence, exp_axioms, exp_language, fragment_language, induction_scheme,
    isigma_sentence, pa_minus_axioms, prefixed, BaseKind,
};
use super::stream::AxiomStream;
use crate::arith::model::{arith_language, form1_level_symbol, sent_level_symbol, truth_symbol};
use crate::arith::proof::ProofObject;
use crate::interp::check::iso_sentence;
use crate::interp::translation::{
    compose, graph_translation, identity_translation, reading_translation, relational_signature,
    translate_formula, Translation, TranslationError,
};
use crate::logic::subst::rename_free;
use crate::logic::{parse_formula, substitute, Formula, FormulaClass, Language, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateTheory {
    /// The truth-interpreting theory at level `n`.
    ItN,
    /// PA when `B Sigma(n+1)` holds, the truth-interpreting theory otherwise.
    TN,
    /// The theory with a cut that cannot see its own isomorphism, summed
    /// with PA along `I Sigma(n)`.
    SN,
    /// The theory of the nonnegative integer polynomials.
    U,
    /// Disjoint sum over `k >= n` of truth-interpreting theories pinned by
    /// a flexible formula.
    TdN,
    /// Disjoint sum over `k >= n` of theories interpreting `k` levels of
    /// truth.
    TfN,
}

impl TemplateTheory {
    pub fn parse(s: &str) -> Option<TemplateTheory> {
        Some(match s {
            "it_n" => TemplateTheory::ItN,
            "t_n" => TemplateTheory::TN,
            "s_n" => TemplateTheory::SN,
            "u" => TemplateTheory::U,
            "td_n" => TemplateTheory::TdN,
            "tf_n" => TemplateTheory::TfN,
            _ => return None,
        })
    }
}

/// Opaque formula objects consumed by the templates.
#[derive(Clone, Debug, Default)]
pub struct TheoryComponents {
    /// Interprets the arithmetic (with truth, where relevant) in the theory.
    pub g: Option<Translation>,
    /// Interprets the theory's own structure back inside `g`'s source.
    pub h: Option<Translation>,
    /// Isomorphism from the identity to `g` followed by `h`; free `x, y`
    /// and possibly the parameter `z`.
    pub i_iso: Option<Formula>,
    /// Isomorphism from the identity to `h` followed by `g`, stated inside
    /// `g`; free `x, y`.
    pub j_iso: Option<Formula>,
    /// The cut, free `x`.
    pub delta_n: Option<Formula>,
    /// Free `x`.
    pub flexible: Option<Formula>,
    /// `h_z(x) = y`; free `x, y, z`.
    pub hmap: Option<Formula>,
}

pub type ComponentFamily = Arc<dyn Fn(u32) -> TheoryComponents + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemplateError {
    #[error("component `{0}` is required")]
    MissingSlot(&'static str),
    #[error("component `{slot}` must have free variables among {allowed:?}")]
    Arity {
        slot: &'static str,
        allowed: Vec<&'static str>,
    },
    #[error("component `{0}` does not fit the template's languages")]
    Language(&'static str),
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error(transparent)]
    Combine(#[from] CombineError),
}

fn slot<'a, T>(v: &'a Option<T>, name: &'static str) -> Result<&'a T, TemplateError> {
    v.as_ref().ok_or(TemplateError::MissingSlot(name))
}

fn formula_slot<'a>(
    v: &'a Option<Formula>,
    name: &'static str,
    allowed: &[&'static str],
) -> Result<&'a Formula, TemplateError> {
    let f = slot(v, name)?;
    if f.free_vars().iter().any(|x| !allowed.contains(&x.as_str())) {
        return Err(TemplateError::Arity {
            slot: name,
            allowed: allowed.to_vec(),
        });
    }
    Ok(f)
}

/// Language of the truth-interpreting theories and of the polynomial-cut
/// theory: arithmetic with exponentiation and the single-sentence forms of
/// induction and collection.
pub fn interpreting_language() -> Language {
    union_language("L_it", &[&exp_language(), &fragment_language()]).expect("compatible")
}

fn x() -> Term {
    Term::var("x")
}

/// `theta` at the term `t` (its free variable is `x`).
fn at(theta: &Formula, t: Term) -> Formula {
    substitute(theta, "x", &t)
}

/// `theta` contains 0, is closed under successor and downward closed.
pub fn cut_formula(theta: &Formula) -> Formula {
    let succ = Formula::forall(
        "x",
        Formula::implies(at(theta, x()), at(theta, Term::plus(x(), Term::num(1)))),
    );
    let down = Formula::forall_many(
        &["x".into(), "y".into()],
        Formula::implies(
            Formula::and(at(theta, Term::var("y")), Formula::lt(x(), Term::var("y"))),
            at(theta, x()),
        ),
    );
    Formula::conj(vec![at(theta, Term::num(0)), succ, down]).expect("non-empty")
}

/// `Cut(theta) -> forall x (delta(x) -> theta(x))`.
pub fn minimality_instance(delta: &Formula, theta: &Formula) -> Formula {
    Formula::implies(
        cut_formula(theta),
        Formula::forall("x", Formula::implies(at(delta, x()), at(theta, x()))),
    )
}

/// Arithmetic formulas with exactly one free variable, renamed to `x`.
fn cut_candidates() -> impl Fn(u64) -> Formula + Send + Sync {
    let e = FormulaEnumeration::new(arith_language(), |f| f.free_vars().len() == 1);
    move |i| {
        let f = e.get(i as usize);
        let v = f.free_vars().into_iter().next().expect("one free variable");
        rename_free(&f, &v, "x")
    }
}

fn minimality_scheme(delta: &Formula) -> impl Fn(u64) -> Formula + Send + Sync {
    let delta = delta.clone();
    let theta = cut_candidates();
    move |i| minimality_instance(&delta, &theta(i))
}

/// Arithmetic sentences, for the per-sentence schemes.
fn sentences() -> FormulaEnumeration {
    FormulaEnumeration::new(arith_language(), |f| f.is_sentence())
}

fn isigma_induction(n: u32) -> impl Fn(u64) -> Formula + Send + Sync {
    let class = if n == 0 {
        FormulaClass::Delta0
    } else {
        FormulaClass::Sigma(n)
    };
    induction_scheme(arith_language(), Some(class))
}

/// The structure's own symbols read back in a functional language.
fn own_reading(source: &Language, lang: &Language) -> Result<Translation, TemplateError> {
    let dom = Formula::eq(x(), x());
    Ok(reading_translation(source, lang, dom, BTreeMap::new())?)
}

/// Slot laid out as single sentences followed by schemes taken round robin.
fn laid_out(
    name: String,
    lang: Language,
    head: Vec<Formula>,
    schemes: Vec<Box<dyn Fn(u64) -> Formula + Send + Sync>>,
) -> AxiomStream {
    let m = schemes.len() as u64;
    prefixed(name, lang, head, move |i| schemes[(i % m) as usize](i / m))
}

fn check_target(t: &Translation, lang: &Language, name: &'static str) -> Result<(), TemplateError> {
    if t.target.is_sublanguage_of(lang) {
        Ok(())
    } else {
        Err(TemplateError::Language(name))
    }
}

/// The truth-interpreting theory for `n`, with `g` interpreting `level`
/// levels of compositional truth.
pub fn it_theory(n: u32, level: u32, c: &TheoryComponents) -> Result<AxiomStream, TemplateError> {
    let lang = interpreting_language();
    let g = slot(&c.g, "g")?;
    let h = slot(&c.h, "h")?;
    let delta = formula_slot(&c.delta_n, "delta_n", &["x"])?;
    let i_iso = formula_slot(&c.i_iso, "i_iso", &["x", "y"])?;
    let j_iso = formula_slot(&c.j_iso, "j_iso", &["x", "y"])?;
    check_target(g, &lang, "g")?;
    let ct = ct_axioms(level);
    if g.source != relational_signature(ct.language()) {
        return Err(TemplateError::Language("g"));
    }
    let mut head = pa_minus_axioms();
    head.extend(exp_axioms());
    head.push(Formula::not(bsigma_sentence(n + 1)));
    head.push(cut_formula(delta));
    let id = own_reading(&h.source, &lang)?;
    head.push(iso_sentence(&id, &compose(h, g)?, i_iso));
    let inner_id = identity_translation(&g.source);
    head.push(translate_formula(
        g,
        &iso_sentence(&inner_id, &compose(g, h)?, j_iso),
    )?);
    let g2 = g.clone();
    let schemes: Vec<Box<dyn Fn(u64) -> Formula + Send + Sync>> = vec![
        Box::new(isigma_induction(n)),
        Box::new(minimality_scheme(delta)),
        Box::new(move |i| translate_formula(&g2, &ct.axiom_at(i)).expect("checked source")),
    ];
    Ok(laid_out(format!("it{n}_ct{level}"), lang, head, schemes))
}

/// Case split on `B Sigma(n+1)`: base axioms, `{B -> I Sigma(k)}`, and
/// `{not B -> phi : phi in it}`, round robin.
pub fn t_theory(n: u32, it: AxiomStream) -> Result<AxiomStream, TemplateError> {
    let lang = union_language(
        "L_t",
        &[&exp_language(), &fragment_language(), it.language()],
    )?;
    let base = base_scheme(BaseKind::IDelta0Exp);
    let b = bsigma_sentence(n + 1);
    Ok(AxiomStream::new(format!("t{n}"), lang, move |i| {
        let j = i / 3;
        match i % 3 {
            0 => base.axiom_at(j),
            1 => Formula::implies(b.clone(), isigma_sentence(j as u32)),
            _ => Formula::implies(Formula::not(b.clone()), it.axiom_at(j)),
        }
    }))
}

/// The theory of a model of `B Sigma(n) + exp + not I Sigma(n)` with a
/// shortest cut, summed with PA along `I Sigma(n)`.
pub fn s_theory(n: u32, c: &TheoryComponents) -> Result<AxiomStream, TemplateError> {
    let lang = interpreting_language();
    let g = slot(&c.g, "g")?;
    let h = slot(&c.h, "h")?;
    let delta = formula_slot(&c.delta_n, "delta_n", &["x"])?;
    let j_iso = formula_slot(&c.j_iso, "j_iso", &["x", "y"])?;
    check_target(g, &lang, "g")?;
    let mut head = pa_minus_axioms();
    head.push(bsigma_sentence(n));
    head.extend(exp_axioms());
    head.push(Formula::not(isigma_sentence(n)));
    head.push(cut_formula(delta));
    let inner_id = identity_translation(&g.source);
    head.push(translate_formula(
        g,
        &iso_sentence(&inner_id, &compose(g, h)?, j_iso),
    )?);
    let round = compose(h, g)?;
    let psis = sentences();
    let schemes: Vec<Box<dyn Fn(u64) -> Formula + Send + Sync>> = vec![
        Box::new(minimality_scheme(delta)),
        Box::new(move |i| {
            let psi = psis.get(i as usize);
            let there = translate_formula(&round, &psi).expect("arithmetic sentence");
            Formula::iff(there, psi)
        }),
    ];
    let s0 = laid_out(format!("s{n}_0"), lang, head, schemes);
    Ok(oplus2(
        &format!("s{n}"),
        s0,
        base_scheme(BaseKind::Pa),
        &isigma_sentence(n),
    )?)
}

/// The theory of the nonnegative integer polynomials with a shortest cut,
/// a nontrivial automorphism and the two isomorphisms.
pub fn u_theory(c: &TheoryComponents) -> Result<AxiomStream, TemplateError> {
    let lang = arith_language().renamed("L_u");
    let g = slot(&c.g, "g")?;
    let h = slot(&c.h, "h")?;
    let delta = formula_slot(&c.delta_n, "delta_n", &["x"])?;
    let i_iso = formula_slot(&c.i_iso, "i_iso", &["x", "y", "z"])?;
    let j_iso = formula_slot(&c.j_iso, "j_iso", &["x", "y"])?;
    let hmap = formula_slot(&c.hmap, "hmap", &["x", "y", "z"])?;
    check_target(g, &lang, "g")?;
    let id = own_reading(&relational_signature(&arith_language()), &lang)?;
    let mut head = pa_minus_axioms();
    head.push(cut_formula(delta));
    let moves = Formula::exists_many(
        &["x".into(), "y".into()],
        Formula::and(hmap.clone(), Formula::not(Formula::eq(x(), Term::var("y")))),
    );
    head.push(Formula::exists(
        "z",
        Formula::and(iso_sentence(&id, &id, hmap), moves),
    ));
    head.push(Formula::exists(
        "z",
        iso_sentence(&own_reading(&h.source, &lang)?, &compose(h, g)?, i_iso),
    ));
    let inner_id = identity_translation(&g.source);
    head.push(translate_formula(
        g,
        &iso_sentence(&inner_id, &compose(g, h)?, j_iso),
    )?);
    let schemes: Vec<Box<dyn Fn(u64) -> Formula + Send + Sync>> =
        vec![Box::new(minimality_scheme(delta))];
    Ok(laid_out("u".into(), lang, head, schemes))
}

/// `I Sigma(k) and not I Sigma(k+1)`.
pub fn level_guard(k: u32) -> Formula {
    Formula::and(isigma_sentence(k), Formula::not(isigma_sentence(k + 1)))
}

/// `(forall x (zeta(x) <-> x = k))` read in the cut `delta`.
pub fn pinning_sentence(zeta: &Formula, delta: &Formula, k: u64) -> Result<Formula, TemplateError> {
    let cut = graph_translation(&arith_language(), delta.clone());
    let pin = Formula::forall(
        "x",
        Formula::iff(zeta.clone(), Formula::eq(x(), Term::num(k))),
    );
    Ok(translate_formula(&cut, &pin)?)
}

/// `I Sigma(n) + exp` interleaved with the disjoint sum of `member(k)` over
/// `k >= n`, guarded by [`level_guard`].
fn disjoint_sum(
    name: String,
    n: u32,
    member: impl Fn(u32) -> AxiomStream + Send + Sync + 'static,
) -> Result<AxiomStream, TemplateError> {
    let lang = union_language(&name, &[&exp_language(), &interpreting_language()])?;
    let mut head = pa_minus_axioms();
    head.extend(exp_axioms());
    let base = prefixed(
        format!("isigma{n}_exp"),
        exp_language(),
        head,
        isigma_induction(n),
    );
    let sum = oplus_family(&format!("{name}_sum"), lang.clone(), move |k| {
        let k = n + k as u32;
        (member(k), level_guard(k))
    });
    Ok(interleave(&name, vec![base, sum])?.renamed(name))
}

pub fn assemble_template_theory(
    kind: TemplateTheory,
    n: u32,
    family: ComponentFamily,
) -> Result<AxiomStream, TemplateError> {
    match kind {
        TemplateTheory::ItN => it_theory(n, 1, &family(n)),
        TemplateTheory::TN => t_theory(n, it_theory(n, 1, &family(n))?),
        TemplateTheory::SN => s_theory(n, &family(n)),
        TemplateTheory::U => u_theory(&family(n)),
        TemplateTheory::TdN => {
            // validate the first member eagerly; later ones are built on demand
            td_member(n, &family(n))?;
            let fam = family.clone();
            let cache = Memo::default();
            disjoint_sum(format!("td{n}"), n, move |k| {
                cache.get(k, || {
                    td_member(k, &fam(k)).expect("component family is valid at every level")
                })
            })
        }
        TemplateTheory::TfN => {
            it_theory(n, n, &family(n))?;
            let fam = family.clone();
            let cache = Memo::default();
            disjoint_sum(format!("tf{n}"), n, move |k| {
                cache.get(k, || {
                    it_theory(k, k, &fam(k)).expect("component family is valid at every level")
                })
            })
        }
    }
}

#[derive(Default)]
struct Memo(Mutex<BTreeMap<u32, AxiomStream>>);

impl Memo {
    fn get(&self, k: u32, make: impl FnOnce() -> AxiomStream) -> AxiomStream {
        let mut m = self.0.lock().unwrap_or_else(|e| e.into_inner());
        m.entry(k).or_insert_with(make).clone()
    }
}

/// The truth-interpreting theory at `k` with the flexible formula pinned
/// to `k` inside the cut.
fn td_member(k: u32, c: &TheoryComponents) -> Result<AxiomStream, TemplateError> {
    let it = it_theory(k, 1, c)?;
    let zeta = formula_slot(&c.flexible, "flexible", &["x"])?;
    let delta = formula_slot(&c.delta_n, "delta_n", &["x"])?;
    let pin = pinning_sentence(zeta, delta, k as u64)?;
    let lang = it.language().clone();
    Ok(prefixed(
        format!("td_member{k}"),
        lang,
        vec![pin],
        move |i| it.axiom_at(i),
    ))
}

/// Placeholder components with the right languages and arities, used to
/// render the templates. `level` is the number of truth levels `g`
/// interprets.
pub fn stub_components(kind: TemplateTheory, level: u32) -> TheoryComponents {
    let p = |s: &str, l: &Language| parse_formula(s, l).expect("fixed stub");
    let pa = arith_language();
    let it = interpreting_language();
    let delta = p("forall y < x (y = y)", &pa);
    let same = p("x = y", &pa);
    let flexible = p("exists y ((y+y) = x)", &pa);
    match kind {
        TemplateTheory::ItN | TemplateTheory::TN | TemplateTheory::TdN | TemplateTheory::TfN => {
            let ct = ct_language(level);
            let mut overrides = BTreeMap::new();
            for i in 1..=level {
                overrides.insert(truth_symbol(i), flexible.clone());
            }
            for j in 0..level {
                overrides.insert(sent_level_symbol(j), p("Sent(x)", &it));
                overrides.insert(form1_level_symbol(j), p("Form1(x)", &it));
            }
            let g = reading_translation(&relational_signature(&ct), &it, delta.clone(), overrides)
                .expect("stub g");
            let trivial = p("(x = x and y = y) and z = z", &pa);
            let h = reading_translation(
                &relational_signature(&it),
                &ct,
                p("x = x", &pa),
                BTreeMap::from([
                    ("Exp".to_string(), trivial.clone()),
                    (crate::arith::model::SAT_LEVEL.to_string(), trivial),
                ]),
            )
            .expect("stub h");
            TheoryComponents {
                g: Some(g),
                h: Some(h),
                i_iso: Some(same.clone()),
                j_iso: Some(same),
                delta_n: Some(delta),
                flexible: Some(flexible),
                hmap: None,
            }
        }
        TemplateTheory::SN | TemplateTheory::U => {
            let target = if kind == TemplateTheory::U {
                pa.clone()
            } else {
                it
            };
            let g = graph_translation(&target, delta.clone());
            let h = graph_translation(&target, p("x = x", &pa));
            TheoryComponents {
                g: Some(g),
                h: Some(h),
                i_iso: Some(same.clone()),
                j_iso: Some(same),
                delta_n: Some(delta),
                flexible: None,
                hmap: (kind == TemplateTheory::U).then(|| p("y = x", &pa)),
            }
        }
    }
}

/// Stub family: level 1 for everything but the `tf` sums, which interpret
/// `k` levels at member `k`.
pub fn stub_family(kind: TemplateTheory) -> ComponentFamily {
    Arc::new(move |k| {
        let level = if kind == TemplateTheory::TfN { k } else { 1 };
        stub_components(kind, level)
    })
}

/// Members of `{sigma : theory proves sigma^cut}` found by decoding the
/// proof codes `0..fuel` and matching their conclusions against the first
/// `fuel` arithmetic sentences. Only a search: absence proves nothing.
pub fn w_members(theory: &AxiomStream, cut: &Translation, fuel: usize) -> Vec<Formula> {
    let candidates: Vec<(Formula, Formula)> = sentences()
        .take(fuel)
        .into_iter()
        .filter_map(|s| translate_formula(cut, &s).ok().map(|t| (s, t)))
        .collect();
    let mut found = Vec::new();
    for code in 0..fuel as u64 {
        let Ok(p) = ProofObject::decode(&code.into()) else {
            continue;
        };
        let Some(goal) = p.conclusion().cloned() else {
            continue;
        };
        for (s, t) in &candidates {
            if *t == goal
                && !found.contains(s)
                && crate::arith::proof::check_proof(&p, theory, &goal)
            {
                found.push(s.clone());
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::print_formula;

    fn stub(kind: TemplateTheory, n: u32) -> AxiomStream {
        assemble_template_theory(kind, n, stub_family(kind)).unwrap()
    }

    #[test]
    fn t_layout() {
        let t = stub(TemplateTheory::TN, 1);
        let base = base_scheme(BaseKind::IDelta0Exp);
        let b = bsigma_sentence(2);
        assert_eq!(t.axiom_at(0), base.axiom_at(0));
        assert_eq!(
            t.axiom_at(1),
            Formula::implies(b.clone(), isigma_sentence(0))
        );
        assert_eq!(
            t.axiom_at(4),
            Formula::implies(b.clone(), isigma_sentence(1))
        );
        let it = it_theory(1, 1, &stub_components(TemplateTheory::ItN, 1)).unwrap();
        assert_eq!(
            t.axiom_at(5),
            Formula::implies(Formula::not(b), it.axiom_at(1))
        );
    }

    #[test]
    fn s_contains_round_trip_for_trivial_sentence() {
        let c = stub_components(TemplateTheory::SN, 1);
        let s = s_theory(1, &c).unwrap();
        let pa = arith_language();
        let psi = parse_formula("0 = 0", &pa).unwrap();
        let round = compose(c.h.as_ref().unwrap(), c.g.as_ref().unwrap()).unwrap();
        let want = Formula::implies(
            Formula::not(isigma_sentence(1)),
            Formula::iff(translate_formula(&round, &psi).unwrap(), psi),
        );
        assert!((0..400).any(|i| s.axiom_at(i) == want));
    }

    #[test]
    fn u_automorphism_axiom() {
        let u = stub(TemplateTheory::U, 0);
        let text = print_formula(&u.axiom_at(16));
        assert!(text.starts_with("exists z ("), "{text}");
        assert!(text.contains("not x = y"));
    }

    #[test]
    fn missing_slot_reported() {
        let mut c = stub_components(TemplateTheory::ItN, 1);
        c.g = None;
        assert_eq!(
            it_theory(1, 1, &c).unwrap_err(),
            TemplateError::MissingSlot("g")
        );
    }

    #[test]
    fn streams_are_closed() {
        for kind in [
            TemplateTheory::ItN,
            TemplateTheory::TN,
            TemplateTheory::SN,
            TemplateTheory::U,
            TemplateTheory::TdN,
            TemplateTheory::TfN,
        ] {
            let s = stub(kind, 1);
            for i in 0..40 {
                let f = s.axiom_at(i);
                assert!(f.is_sentence(), "{kind:?} {i}: {f}");
                assert!(
                    crate::arith::predicates::formula_in_language(&f, s.language()),
                    "{kind:?} {i}: {f}"
                );
            }
        }
    }
}
