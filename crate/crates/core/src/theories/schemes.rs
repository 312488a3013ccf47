//! Base arithmetic theories: PA⁻, exponentiation, induction, collection and
//! the cardinality scheme.

use crate::arith::model::{arith_language, code_language, SAT_LEVEL};
use crate::logic::{
    classify, fresh_var, parse_formula, substitute, Formula, FormulaClass, Language, Term,
};

use super::enumerate::FormulaEnumeration;
use super::stream::AxiomStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    PaMinus,
    IDelta0Exp,
    ISigma(u32),
    BSigma(u32),
    Pa,
    Card,
}

const PA_MINUS: [&str; 15] = [
    "(x + y) + z = x + (y + z)",
    "x + y = y + x",
    "(x * y) * z = x * (y * z)",
    "x * y = y * x",
    "x * (y + z) = x * y + x * z",
    "x + 0 = x and x * 0 = 0",
    "x * 1 = x",
    "(x < y and y < z) -> x < z",
    "not x < x",
    "x < y or x = y or y < x",
    "x < y -> x + z < y + z",
    "(0 < z and x < y) -> x * z < y * z",
    "x < y -> exists z (x + z = y)",
    "0 < 1 and forall x (0 < x -> (1 < x or x = 1))",
    "0 = x or 0 < x",
];

const EXP_AXIOMS: [&str; 4] = [
    "Exp(x, 0, 1)",
    "Exp(x, y, z) -> Exp(x, y + 1, z * x)",
    "(Exp(x, y, z) and Exp(x, y, w)) -> z = w",
    "exists z (Exp(x, y, z))",
];

/// L_PA with the exponential graph `Exp(x, y, z)`, read `x^y = z`.
pub fn exp_language() -> Language {
    arith_language()
        .with_relations(&[("Exp".into(), 3)])
        .renamed("L_exp")
}

/// The fifteen axioms of the nonnegative parts of discretely ordered rings,
/// universally closed.
pub fn pa_minus_axioms() -> Vec<Formula> {
    let lang = arith_language();
    PA_MINUS
        .iter()
        .map(|s| parse_formula(s, &lang).expect("fixed axiom").closure())
        .collect()
}

/// Defining axioms of the exponential graph followed by its totality.
pub fn exp_axioms() -> Vec<Formula> {
    let lang = exp_language();
    EXP_AXIOMS
        .iter()
        .map(|s| parse_formula(s, &lang).expect("fixed axiom").closure())
        .collect()
}

fn successor(v: &str) -> Term {
    Term::plus(Term::var(v), Term::num(1))
}

/// `forall params ((phi(0) and forall v (phi(v) -> phi(v+1))) -> forall v phi(v))`
/// where `v` is the first free variable of `phi` in name order.
pub fn induction_instance(phi: &Formula) -> Formula {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    let v = free.first().cloned().unwrap_or_else(|| "x".into());
    let params: Vec<String> = free.iter().skip(1).cloned().collect();
    let base = substitute(phi, &v, &Term::num(0));
    let step = Formula::forall(
        &v,
        Formula::implies(phi.clone(), substitute(phi, &v, &successor(&v))),
    );
    let body = Formula::implies(Formula::and(base, step), Formula::forall(&v, phi.clone()));
    Formula::forall_many(&params, body)
}

/// `forall params forall u (forall x < u exists y phi -> exists w forall x < u exists y < w phi)`
/// where `x`, `y` are the first two free variables of `phi`; `None` when
/// `phi` has fewer than two.
pub fn collection_instance(phi: &Formula) -> Option<Formula> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    if free.len() < 2 {
        return None;
    }
    let (x, y) = (free[0].clone(), free[1].clone());
    let params: Vec<String> = free[2..].to_vec();
    let taken = phi.all_vars();
    let u = fresh_var("u", &taken);
    let mut taken2 = taken.clone();
    taken2.insert(u.clone());
    let w = fresh_var("w", &taken2);
    let premise = Formula::forall_lt(&x, Term::var(&u), Formula::exists(&y, phi.clone()));
    let conclusion = Formula::exists(
        &w,
        Formula::forall_lt(
            &x,
            Term::var(&u),
            Formula::exists_lt(&y, Term::var(&w), phi.clone()),
        ),
    );
    let mut vars = params;
    vars.push(u);
    Some(Formula::forall_many(
        &vars,
        Formula::implies(premise, conclusion),
    ))
}

fn le(a: Term, b: Term) -> Formula {
    Formula::or(Formula::lt(a.clone(), b.clone()), Formula::eq(a, b))
}

/// "`phi` does not define an injective multifunction from the universe into
/// `[0, b]`", for the first two free variables of `phi` as argument and
/// value, generalized over `b` and the parameters. `None` when `phi` has
/// fewer than two free variables.
pub fn card_instance(phi: &Formula) -> Option<Formula> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    if free.len() < 2 {
        return None;
    }
    let (a, v) = (free[0].clone(), free[1].clone());
    let params: Vec<String> = free[2..].to_vec();
    let mut taken = phi.all_vars();
    let b = fresh_var("b", &taken);
    taken.insert(b.clone());
    let a2 = fresh_var(&format!("{a}'"), &taken);
    let bt = Term::var(&b);
    let total = Formula::forall(
        &a,
        Formula::exists(&v, Formula::and(le(Term::var(&v), bt.clone()), phi.clone())),
    );
    let bounded = Formula::forall(
        &a,
        Formula::forall(
            &v,
            Formula::implies(phi.clone(), le(Term::var(&v), bt.clone())),
        ),
    );
    let phi2 = substitute(phi, &a, &Term::var(&a2));
    let injective = Formula::forall(
        &a,
        Formula::forall(
            &a2,
            Formula::forall(
                &v,
                Formula::implies(
                    Formula::and(phi.clone(), phi2),
                    Formula::eq(Term::var(&a), Term::var(&a2)),
                ),
            ),
        ),
    );
    let defines = Formula::conj(vec![total, bounded, injective]).expect("non-empty");
    let mut vars = params;
    vars.push(b);
    Some(Formula::forall_many(&vars, Formula::not(defines)))
}

/// Formulas of `lang` whose class is contained in `class`.
pub fn class_enumeration(lang: Language, class: FormulaClass) -> FormulaEnumeration {
    FormulaEnumeration::new(lang, move |f| class.contains(classify(f)))
}

fn min_free(n: usize) -> impl Fn(&Formula) -> bool + Send + Sync {
    move |f: &Formula| f.free_vars().len() >= n
}

/// The listed axioms first, then `scheme(i)` for the remaining indices.
pub fn prefixed(
    name: impl Into<String>,
    lang: Language,
    head: Vec<Formula>,
    scheme: impl Fn(u64) -> Formula + Send + Sync + 'static,
) -> AxiomStream {
    let n = head.len() as u64;
    AxiomStream::new(name, lang, move |i| {
        if i < n {
            head[i as usize].clone()
        } else {
            scheme(i - n)
        }
    })
}

/// Induction instances over `lang`-formulas of `class`, or of all
/// formulas when `class` is `None`.
pub fn induction_scheme(
    lang: Language,
    class: Option<FormulaClass>,
) -> impl Fn(u64) -> Formula + Send + Sync + 'static {
    let e = match class {
        Some(c) => class_enumeration(lang, c),
        None => FormulaEnumeration::all(lang),
    };
    move |i| induction_instance(&e.get(i as usize))
}

pub fn base_scheme(kind: BaseKind) -> AxiomStream {
    let pa = arith_language();
    match kind {
        BaseKind::PaMinus => AxiomStream::finite("pa_minus", pa, pa_minus_axioms()),
        BaseKind::IDelta0Exp => {
            let lang = exp_language();
            let mut head = pa_minus_axioms();
            head.extend(exp_axioms());
            let ind = induction_scheme(lang.clone(), Some(FormulaClass::Delta0));
            prefixed("idelta0_exp", lang, head, ind)
        }
        BaseKind::ISigma(n) => {
            let ind = induction_scheme(pa.clone(), Some(FormulaClass::Sigma(n.max(1))));
            prefixed(format!("isigma{n}"), pa, pa_minus_axioms(), ind)
        }
        BaseKind::BSigma(n) => {
            let ind = induction_scheme(pa.clone(), Some(FormulaClass::Delta0));
            let class = FormulaClass::Sigma(n.max(1));
            let coll = FormulaEnumeration::new(pa.clone(), {
                let two = min_free(2);
                move |f| two(f) && class.contains(classify(f))
            });
            prefixed(format!("bsigma{n}"), pa, pa_minus_axioms(), move |i| {
                if i % 2 == 0 {
                    ind(i / 2)
                } else {
                    collection_instance(&coll.get((i / 2) as usize)).expect("two free variables")
                }
            })
        }
        BaseKind::Pa => {
            let ind = induction_scheme(pa.clone(), None);
            prefixed("pa", pa, pa_minus_axioms(), ind)
        }
        BaseKind::Card => {
            let e = FormulaEnumeration::new(pa.clone(), min_free(2));
            AxiomStream::new("card", pa, move |i| {
                card_instance(&e.get(i as usize)).expect("two free variables")
            })
        }
    }
}

/// Language of the single-sentence forms of induction and collection:
/// code functions and predicates with the level-indexed satisfaction
/// `SatSigma(k, phi, x)`.
pub fn fragment_language() -> Language {
    code_language("L_frag", &[(SAT_LEVEL.into(), 3)])
}

fn sat_at(k: u32, phi: Term, x: Term) -> Formula {
    Formula::rel(SAT_LEVEL, vec![Term::num(k as u64), phi, x])
}

fn name_of(v: &str) -> Term {
    Term::app("name", vec![Term::var(v)])
}

/// Code of `phi` with variable `c` replaced by the numeral of `p`.
fn instance_code(phi: &str, c: &str, p: &str) -> Term {
    Term::app("subv", vec![Term::var(phi), Term::var(c), name_of(p)])
}

/// One sentence equivalent to the Sigma(k) induction scheme with one
/// parameter: for every code `f`, variable code `c` and value `p`, the
/// formula `f[c := p]` satisfies induction in its remaining variable.
/// Level 0 stands for Delta0.
pub fn isigma_sentence(k: u32) -> Formula {
    let theta = instance_code("f", "c", "p");
    let at = |x: Term| sat_at(k, theta.clone(), x);
    let step = Formula::forall(
        "x",
        Formula::implies(at(Term::var("x")), at(successor("x"))),
    );
    let body = Formula::implies(
        Formula::and(at(Term::num(0)), step),
        Formula::forall("x", at(Term::var("x"))),
    );
    Formula::forall_many(&["f".into(), "c".into(), "p".into()], body)
}

/// One sentence equivalent to Sigma(k) collection with one parameter: the
/// two coordinates are the variable `c` (filled by `x`) and the remaining
/// free variable of the code (filled by `y`).
pub fn bsigma_sentence(k: u32) -> Formula {
    let with_p = instance_code("f", "d", "p");
    let theta = Term::app("subv", vec![with_p, Term::var("c"), name_of("x")]);
    let at = |y: Term| sat_at(k, theta.clone(), y);
    let premise = Formula::forall_lt(
        "x",
        Term::var("u"),
        Formula::exists("y", at(Term::var("y"))),
    );
    let conclusion = Formula::exists(
        "w",
        Formula::forall_lt(
            "x",
            Term::var("u"),
            Formula::exists_lt("y", Term::var("w"), at(Term::var("y"))),
        ),
    );
    let vars: Vec<String> = ["f", "c", "d", "p", "u"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Formula::forall_many(&vars, Formula::implies(premise, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::print_formula;

    #[test]
    fn pa_minus_is_fixed() {
        let ax = pa_minus_axioms();
        assert_eq!(ax.len(), 15);
        assert!(ax.iter().all(Formula::is_sentence));
        assert_eq!(print_formula(&ax[6]), "forall x ((x*1) = x)");
    }

    #[test]
    fn induction_shape() {
        let phi = parse_formula("x = x", &arith_language()).unwrap();
        assert_eq!(
            print_formula(&induction_instance(&phi)),
            "((0 = 0 and forall x (x = x -> (x+1) = (x+1))) -> forall x (x = x))"
        );
    }

    #[test]
    fn collection_shape() {
        let phi = parse_formula("x < y + z", &arith_language()).unwrap();
        let c = collection_instance(&phi).unwrap();
        assert!(c.is_sentence());
        assert_eq!(
            print_formula(&c),
            "forall z (forall u (forall x < u (exists y (x < (y+z))) -> exists w (forall x < u (exists y < w (x < (y+z))))))"
        );
    }

    #[test]
    fn streams_emit_sentences() {
        for kind in [
            BaseKind::PaMinus,
            BaseKind::IDelta0Exp,
            BaseKind::ISigma(1),
            BaseKind::BSigma(2),
            BaseKind::Pa,
            BaseKind::Card,
        ] {
            let s = base_scheme(kind);
            for f in s.take(60) {
                assert!(f.is_sentence(), "{kind:?}: {f}");
            }
        }
    }

    #[test]
    fn fragment_sentences_are_closed() {
        for k in 0..4 {
            assert!(isigma_sentence(k).is_sentence());
            assert!(bsigma_sentence(k).is_sentence());
        }
    }
}
