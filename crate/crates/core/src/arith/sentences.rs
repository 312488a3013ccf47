use thiserror::Error;

use super::coding::encode_formula;
use super::model::{code_language, code_literal, prov_symbol};
use crate::logic::{Formula, Language, Term};
use crate::theories::AxiomStream;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("formula has more than one free variable")]
    TooManyFree,
    #[error("`{0}` is not a variable name")]
    BadVariable(String),
}

/// `0 = 0` negated, the contradiction used by consistency statements.
pub fn falsum() -> Formula {
    Formula::not(Formula::eq(Term::num(0), Term::num(0)))
}

/// Language of sentences about `t`: code functions and `Prov_t`.
pub fn provability_language(t: &AxiomStream) -> Language {
    code_language(&format!("L_prov_{}", t.name()), &[(prov_symbol(t), 1)])
}

fn prov(t: &AxiomStream, arg: Term) -> Formula {
    Formula::rel(&prov_symbol(t), vec![arg])
}

/// `not Prov_t(<code of not 0 = 0>)`.
pub fn con_sentence(t: &AxiomStream) -> Formula {
    Formula::not(prov(t, code_literal(&falsum())))
}

fn free_or_x(phi: &Formula) -> Result<String, ShapeError> {
    let fv = phi.free_vars();
    if fv.len() > 1 {
        return Err(ShapeError::TooManyFree);
    }
    Ok(fv.into_iter().next().unwrap_or_else(|| "x".into()))
}

fn dotted(phi: &Formula, v: &str) -> Term {
    Term::app(
        "sub",
        vec![code_literal(phi), Term::app("name", vec![Term::var(v)])],
    )
}

/// `forall v (Prov_t(sub(<phi>, name(v))) -> phi(v))`.
pub fn reflection_instance(t: &AxiomStream, phi: &Formula) -> Result<Formula, ShapeError> {
    let v = free_or_x(phi)?;
    Ok(Formula::forall(
        &v,
        Formula::implies(prov(t, dotted(phi, &v)), phi.clone()),
    ))
}

/// `forall v (phi(v) -> Con_{t + phi(v)})`, with the consistency of the
/// extension stated as `not Prov_t(<phi(v) -> not 0 = 0>)`.
pub fn gamma_con_instance(t: &AxiomStream, phi: &Formula) -> Result<Formula, ShapeError> {
    let v = free_or_x(phi)?;
    let inconsistency = Term::app(
        "cimp",
        vec![dotted(phi, &v), Term::Num(encode_formula(&falsum()))],
    );
    Ok(Formula::forall(
        &v,
        Formula::implies(phi.clone(), Formula::not(prov(t, inconsistency))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::model::{arith_language, register_theory, standard_model};
    use crate::logic::parse_formula;
    use crate::semantics::{eval_oracle, Truth};
    use std::collections::BTreeMap;

    #[test]
    fn shapes() {
        let t = AxiomStream::empty(arith_language());
        let con = con_sentence(&t);
        let c = encode_formula(&falsum());
        assert_eq!(con.to_string(), format!("not Prov_empty({c})"));
        let phi = parse_formula("x = x", &arith_language()).unwrap();
        let r = reflection_instance(&t, &phi).unwrap();
        let p = encode_formula(&phi);
        assert_eq!(
            r.to_string(),
            format!("forall x (Prov_empty(sub({p},name(x))) -> x = x)")
        );
        let m = register_theory(standard_model(1000), &t);
        assert_eq!(eval_oracle(&m, &r, &BTreeMap::new()).unwrap(), Truth::True);
    }
}
