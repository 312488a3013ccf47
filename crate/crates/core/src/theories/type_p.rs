//! An r.e. type of undefinable elements, built from flexible formulas.

use std::sync::{Arc, Mutex};

use super::combine::union_language;
use super::enumerate::FormulaEnumeration;
use super::schemes::{base_scheme, BaseKind};
use super::stream::AxiomStream;
use crate::arith::diagonal::{flexible_language, make_flexible, FlexVariant};
use crate::arith::model::{arith_language, MAX_LEVEL};
use crate::logic::{
    fresh_var, prenex_classify, substitute, Formula, FormulaClass, Language, Quant, Term,
};

/// The constant realizing the type.
pub const TYPE_CONSTANT: &str = "c";

/// Supplies a formula with free variable `x`, flexible at the given level
/// over the given theory.
pub type FlexibleSupplier = Arc<dyn Fn(&AxiomStream, u32) -> Formula + Send + Sync>;

fn constant() -> Term {
    Term::app(TYPE_CONSTANT, Vec::new())
}

/// L_PA with the constant `c`, joined with `extra`.
pub fn type_language(extra: &Language) -> Language {
    let base = arith_language().with_functions(&[(TYPE_CONSTANT.into(), 0)]);
    union_language("L_PA_c", &[&base, extra]).expect("supplier language fits")
}

/// Least `l` with the formula in Sigma(l), computed from its prenex form.
pub fn sigma_level(f: &Formula) -> u32 {
    match prenex_classify(f).1 {
        FormulaClass::Delta0 => 0,
        FormulaClass::Sigma(n) => n,
        FormulaClass::Pi(n) => n + 1,
    }
}

/// `k_0 = S(phi_0)`, `k_{i+1} = k_i + S(phi_{i+1}) + 2` with `S` the
/// Sigma level.
pub fn k_sequence(phis: &[Formula]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(phis.len());
    for f in phis {
        let s = sigma_level(f);
        let k = match out.last() {
            None => s,
            Some(prev) => prev + s + 2,
        };
        out.push(k);
    }
    out
}

fn only_free(phi: &Formula) -> String {
    phi.free_vars()
        .into_iter()
        .next()
        .unwrap_or_else(|| "x".into())
}

/// `exists! y phi(y) -> not phi(c)`.
pub fn not_def_instance(phi: &Formula) -> Formula {
    let v = only_free(phi);
    let taken = phi.all_vars();
    let y = fresh_var("y", &taken);
    let mut taken2 = taken.clone();
    taken2.insert(y.clone());
    let w = fresh_var("w", &taken2);
    let at = |t: Term| substitute(phi, &v, &t);
    let unique = Formula::exists(
        &y,
        Formula::and(
            at(Term::var(&y)),
            Formula::forall(
                &w,
                Formula::implies(at(Term::var(&w)), Formula::eq(Term::var(&w), Term::var(&y))),
            ),
        ),
    );
    Formula::implies(unique, Formula::not(at(constant())))
}

/// `(forall y xi(y)) <-> phi(c)`.
pub fn linking_sentence(xi: &Formula, phi: &Formula) -> Formula {
    let xv = only_free(xi);
    let all = Formula::forall("y", substitute(xi, &xv, &Term::var("y")));
    Formula::iff(all, substitute(phi, &only_free(phi), &constant()))
}

struct Shared {
    phis: FormulaEnumeration,
    supplier: FlexibleSupplier,
    lang: Language,
    /// `(phi_i in prenex form, k_i, xi_i)` computed so far.
    steps: Mutex<Vec<(Formula, u32, Formula)>>,
}

impl Shared {
    fn phi(&self, i: usize) -> Formula {
        prenex_classify(&self.phis.get(i)).0
    }

    fn not_def(&self, i: u64) -> Formula {
        not_def_instance(&self.phi(i as usize))
    }

    /// `PA + p_n(c)`: PA on even indices; on odd ones the first `n`
    /// linking sentences, then the non-definability instances.
    fn stage(self: &Arc<Self>, n: usize) -> AxiomStream {
        let me = self.clone();
        let pa = base_scheme(BaseKind::Pa);
        AxiomStream::new("pa_type", self.lang.clone(), move |i| {
            if i % 2 == 0 {
                return pa.axiom_at(i / 2);
            }
            let j = (i / 2) as usize;
            if j < n {
                me.linking(j)
            } else {
                me.not_def((j - n) as u64)
            }
        })
    }

    fn step(self: &Arc<Self>, n: usize) -> (Formula, u32, Formula) {
        loop {
            let have = self.steps.lock().unwrap_or_else(|e| e.into_inner()).len();
            if have > n {
                break;
            }
            let phi = self.phi(have);
            let k = match have {
                0 => sigma_level(&phi),
                _ => {
                    let prev = self.steps.lock().unwrap_or_else(|e| e.into_inner())[have - 1].1;
                    prev + sigma_level(&phi) + 2
                }
            };
            // the supplier may itself read earlier linking sentences
            let xi = (self.supplier)(&self.stage(have), k);
            let mut st = self.steps.lock().unwrap_or_else(|e| e.into_inner());
            if st.len() == have {
                st.push((phi, k, xi));
            }
        }
        self.steps.lock().unwrap_or_else(|e| e.into_inner())[n].clone()
    }

    fn linking(self: &Arc<Self>, n: usize) -> Formula {
        let (phi, _, xi) = self.step(n);
        linking_sentence(&xi, &phi)
    }
}

/// The type `p(c)`: non-definability instances at even indices, linking
/// sentences at odd ones. `phis` must list formulas with exactly one free
/// variable; `supplier_lang` must contain every supplied formula.
pub fn type_p_stream(
    phis: FormulaEnumeration,
    supplier: FlexibleSupplier,
    supplier_lang: &Language,
) -> AxiomStream {
    let lang = type_language(supplier_lang);
    let shared = Arc::new(Shared {
        phis,
        supplier,
        lang: lang.clone(),
        steps: Mutex::new(Vec::new()),
    });
    AxiomStream::new("type_p", lang, move |i| {
        if i % 2 == 0 {
            shared.not_def(i / 2)
        } else {
            shared.linking((i / 2) as usize)
        }
    })
}

/// Arithmetic formulas with exactly one free variable.
pub fn one_free_formulas() -> FormulaEnumeration {
    FormulaEnumeration::new(arith_language(), |f| f.free_vars().len() == 1)
}

/// A Sigma(k)-shaped arithmetic formula in `x`, standing in for a
/// flexible formula when only the shape of the type matters.
pub fn stub_flexible(k: u32) -> Formula {
    if k == 0 {
        return Formula::lt(Term::var("x"), Term::num(1));
    }
    let vars: Vec<String> = (1..=k).map(|i| format!("z{i}")).collect();
    let mut sum = Term::var("x");
    for v in &vars {
        sum = Term::plus(sum, Term::var(v));
    }
    let mut f = Formula::lt(sum, Term::num(1));
    for (i, v) in vars.iter().enumerate().rev() {
        let q = if i % 2 == 0 {
            Quant::Exists
        } else {
            Quant::Forall
        };
        f = Formula::Quant(q, v.clone(), Box::new(f));
    }
    f
}

pub fn stub_supplier() -> FlexibleSupplier {
    Arc::new(|_, k| stub_flexible(k))
}

/// Flexible formulas from the diagonal construction over each stage. The
/// oracle symbols exist up to level `MAX_LEVEL`; higher levels are served
/// at `MAX_LEVEL`. Returns the supplier and the language it writes in.
pub fn diagonal_supplier() -> (FlexibleSupplier, Language) {
    let probe = AxiomStream::empty(arith_language()).renamed("pa_type");
    let langs: Vec<Language> = (1..=MAX_LEVEL)
        .map(|k| flexible_language(&probe, k, FlexVariant::Plain))
        .collect();
    let refs: Vec<&Language> = langs.iter().collect();
    let lang = union_language("L_flex", &refs).expect("levels agree");
    let supplier: FlexibleSupplier =
        Arc::new(|t, k| make_flexible(t, k.clamp(1, MAX_LEVEL), FlexVariant::Plain).formula);
    (supplier, lang)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{classify, parse_formula, print_formula};

    #[test]
    fn recurrence() {
        let pa = arith_language();
        let a = parse_formula("exists y (x = y)", &pa).unwrap();
        let b = parse_formula("exists y (forall z (x = (y+z)))", &pa).unwrap();
        assert_eq!(sigma_level(&a), 1);
        assert_eq!(sigma_level(&b), 2);
        assert_eq!(k_sequence(&[a, b]), vec![1, 5]);
    }

    #[test]
    fn stub_levels() {
        for k in 1..5 {
            assert_eq!(classify(&stub_flexible(k)), FormulaClass::Sigma(k));
        }
    }

    #[test]
    fn stream_shapes() {
        let s = type_p_stream(one_free_formulas(), stub_supplier(), &arith_language());
        let phis = one_free_formulas();
        let phi0 = prenex_classify(&phis.get(0)).0;
        assert_eq!(s.axiom_at(0), not_def_instance(&phi0));
        let link = s.axiom_at(1);
        let Formula::Bin(crate::logic::Conn::Iff, l, r) = &link else {
            panic!("{link}")
        };
        assert!(matches!(**l, Formula::Quant(Quant::Forall, ref v, _) if v == "y"));
        assert_eq!(**r, substitute(&phi0, &only_free(&phi0), &constant()));
        for i in 0..40 {
            let f = s.axiom_at(i);
            assert!(f.is_sentence(), "{}", print_formula(&f));
        }
    }

    #[test]
    fn diagonal_linking_in_language() {
        let (sup, lang) = diagonal_supplier();
        let s = type_p_stream(one_free_formulas(), sup, &lang);
        for i in 0..6 {
            let f = s.axiom_at(i);
            assert!(f.is_sentence());
            assert!(crate::arith::predicates::formula_in_language(
                &f,
                s.language()
            ));
        }
    }
}
