//! The parametric diagonal lemma and flexible formulas.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use super::coding::{encode_formula, var_code};
use super::model::{
    code_language, form1_symbol, proof_symbol, sat_symbol, standard_model, tr_symbol, var_literal,
};
use crate::logic::{substitute, Formula, FormulaClass, Language, Term};
use crate::semantics::OracleError;
use crate::theories::AxiomStream;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagError {
    #[error("`{0}` is not a variable name")]
    BadVariable(String),
    #[error(transparent)]
    Eval(#[from] OracleError),
}

/// The term inside a fixed point that names the fixed point's own code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCertificate {
    #[serde(serialize_with = "display")]
    pub naming_term: Term,
    /// Value of `naming_term` computed with the object-level functions.
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    #[serde(serialize_with = "decimal")]
    pub code: BigUint,
}

fn display<S: serde::Serializer>(t: &Term, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

fn decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl DiagonalCertificate {
    pub fn holds(&self) -> bool {
        self.value == self.code
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub formula: Formula,
    pub certificate: DiagonalCertificate,
}

fn naming(v: &str, arg: Term) -> Term {
    Term::app(
        "subv",
        vec![
            arg.clone(),
            Term::Num(var_code(v)),
            Term::app("quote", vec![arg]),
        ],
    )
}

/// Returns `xi` with `xi` equal to `rho` where `v` is replaced by a term
/// whose value is the code of `xi`. Other free variables of `rho` remain as
/// parameters.
pub fn diagonal_fixpoint(rho: &Formula, v: &str) -> Result<Diagonal, DiagError> {
    if crate::logic::parse_term(v, &Language::new("vars", &[], &[]).expect("empty"))
        .map(|t| t != Term::var(v))
        .unwrap_or(true)
    {
        return Err(DiagError::BadVariable(v.to_string()));
    }
    let psi = substitute(rho, v, &naming(v, Term::var(v)));
    let c = encode_formula(&psi);
    let xi = substitute(&psi, v, &Term::Num(c.clone()));
    let naming_term = naming(v, Term::Num(c));
    let value = standard_model(1).eval_closed_term(&naming_term)?;
    Ok(Diagonal {
        certificate: DiagonalCertificate {
            naming_term,
            value,
            code: encode_formula(&xi),
        },
        formula: xi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlexVariant {
    Plain,
    /// The variant parameterized by a true Sigma(n+1) sentence.
    TwoParam(u32),
}

/// Language of the flexible formula for `t`, `k` and the variant.
pub fn flexible_language(t: &AxiomStream, k: u32, variant: FlexVariant) -> Language {
    let mut extra = vec![
        (form1_symbol(FormulaClass::Sigma(k)), 1),
        (sat_symbol(FormulaClass::Sigma(k)), 2),
        (proof_symbol(t), 2),
    ];
    if let FlexVariant::TwoParam(n) = variant {
        extra.push((tr_symbol(FormulaClass::Sigma(n + 1)), 1));
    }
    code_language(&format!("L_flex_{}", t.name()), &extra)
}

fn app(g: &str, args: Vec<Term>) -> Term {
    Term::app(g, args)
}

fn rel(r: &str, args: Vec<Term>) -> Formula {
    Formula::rel(r, args)
}

/// The minimal-witness matrix: `theta` is a one-variable formula and the
/// witness provides a `t`-proof that `theta` differs from `phi` (after the
/// true sentence `psi` in the two-parameter variant).
fn rho_prime(
    t: &AxiomStream,
    k: u32,
    variant: FlexVariant,
    theta: Term,
    psi: Option<Term>,
    phi: Term,
    z: Term,
) -> Formula {
    let x = var_literal("x");
    let differ = app(
        "cneg",
        vec![app(
            "call",
            vec![
                x.clone(),
                app(
                    "ciff",
                    vec![
                        app("sub", vec![theta.clone(), x.clone()]),
                        app("sub", vec![phi.clone(), x]),
                    ],
                ),
            ],
        )],
    );
    let mut parts = vec![rel("Form1", vec![theta])];
    let target = match (variant, psi) {
        (FlexVariant::TwoParam(n), Some(psi)) => {
            parts.push(rel(
                &tr_symbol(FormulaClass::Sigma(n + 1)),
                vec![psi.clone()],
            ));
            app("cimp", vec![psi, differ])
        }
        _ => differ,
    };
    parts.push(rel(&form1_symbol(FormulaClass::Sigma(k)), vec![phi]));
    parts.push(rel(&proof_symbol(t), vec![z, target]));
    Formula::conj(parts).expect("non-empty")
}

/// Coordinates `(psi, phi, z)` of a witness `y`; `psi` only in the
/// two-parameter variant.
fn coords(variant: FlexVariant, y: &str) -> (Option<Term>, Term, Term) {
    let y = Term::var(y);
    match variant {
        FlexVariant::Plain => (None, app("fst", vec![y.clone()]), app("snd", vec![y])),
        FlexVariant::TwoParam(_) => {
            let rest = app("snd", vec![y.clone()]);
            (
                Some(app("fst", vec![y])),
                app("fst", vec![rest.clone()]),
                app("snd", vec![rest]),
            )
        }
    }
}

/// Name of the diagonal variable in the flexible template.
pub const DIAGONAL_VAR: &str = "d";

/// The template `exists y (rho(d, y) and Sat(phi-coordinate of y, x))`.
pub fn flexible_template(t: &AxiomStream, k: u32, variant: FlexVariant) -> Formula {
    let d = Term::var(DIAGONAL_VAR);
    let at = |w: &str| {
        let (psi, phi, z) = coords(variant, w);
        rho_prime(t, k, variant, d.clone(), psi, phi, z)
    };
    let least = Formula::and(
        at("y"),
        Formula::forall_lt("w", Term::var("y"), Formula::not(at("w"))),
    );
    let (_, phi, _) = coords(variant, "y");
    Formula::exists(
        "y",
        Formula::and(
            least,
            rel(
                &sat_symbol(FormulaClass::Sigma(k)),
                vec![phi, Term::var("x")],
            ),
        ),
    )
}

/// The flexible formula `xi(x)` over `t` with the given variant.
pub fn make_flexible(t: &AxiomStream, k: u32, variant: FlexVariant) -> Diagonal {
    assert!(k >= 1, "k must be positive");
    diagonal_fixpoint(&flexible_template(t, k, variant), DIAGONAL_VAR)
        .expect("template evaluates with the standard functions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::model::arith_language;
    use crate::logic::{classify, parse_formula};

    #[test]
    fn constant_fixed_point() {
        let rho = parse_formula("0 = 0", &arith_language()).unwrap();
        let d = diagonal_fixpoint(&rho, "v").unwrap();
        assert_eq!(d.formula, rho);
        assert!(d.certificate.holds());
    }

    #[test]
    fn flexible_classes() {
        let t = AxiomStream::empty(arith_language());
        for k in 1..=3 {
            let xi = make_flexible(&t, k, FlexVariant::Plain);
            assert_eq!(classify(&xi.formula), FormulaClass::Sigma(k));
            assert!(xi.certificate.holds());
            assert!(!xi.formula.is_free(DIAGONAL_VAR));
        }
        let xi = make_flexible(&t, 1, FlexVariant::TwoParam(1));
        assert_eq!(classify(&xi.formula), FormulaClass::Sigma(3));
    }

    #[test]
    fn no_small_witness() {
        use crate::arith::model::register_theory;
        use crate::semantics::{eval_oracle, Truth};
        let t = AxiomStream::empty(arith_language());
        let xi = make_flexible(&t, 1, FlexVariant::Plain).formula;
        let m = register_theory(standard_model(10_000), &t);
        let ex = Formula::exists("x", xi);
        let r = eval_oracle(&m, &ex, &Default::default()).unwrap();
        assert_ne!(r, Truth::True);
    }
}
