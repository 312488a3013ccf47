use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use super::coding::{decode_formula, decode_term, decode_var, encode_formula, CodeError};
use crate::logic::{substitute, Formula, Term};

/// `0` for zero, otherwise the left-nested sum `(...((0+1)+1)...+1)`.
pub fn numeral(k: u64) -> Term {
    let mut t = Term::num(0);
    for _ in 0..k {
        t = Term::plus(t, Term::num(1));
    }
    t
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValError {
    #[error("term is not closed: variable `{0}`")]
    Open(String),
    #[error("function `{0}` has no arithmetic value")]
    Function(String),
}

/// Value of a closed term built from literals, `+` and `*`.
pub fn val(t: &Term) -> Result<BigUint, ValError> {
    // explicit stack: numerals nest deeply
    enum Step<'a> {
        Visit(&'a Term),
        Combine(&'a str),
    }
    let mut todo = vec![Step::Visit(t)];
    let mut vals: Vec<BigUint> = Vec::new();
    while let Some(step) = todo.pop() {
        match step {
            Step::Visit(Term::Var(v)) => return Err(ValError::Open(v.clone())),
            Step::Visit(Term::Num(k)) => vals.push(k.clone()),
            Step::Visit(Term::App(g, args)) => {
                if !(g == "+" || g == "*") || args.len() != 2 {
                    return Err(ValError::Function(g.clone()));
                }
                todo.push(Step::Combine(g));
                todo.push(Step::Visit(&args[1]));
                todo.push(Step::Visit(&args[0]));
            }
            Step::Combine(g) => {
                let b = vals.pop().expect("operand");
                let a = vals.pop().expect("operand");
                vals.push(if g == "+" { a + b } else { a * b });
            }
        }
    }
    Ok(vals.pop().expect("result"))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("formula has more than one free variable")]
    TooManyFree,
    #[error("substituted term is not closed")]
    OpenTerm,
}

/// Substitutes the closed term coded by `t` for the free variable of the
/// formula coded by `phi`.
pub fn subst_code(phi: &BigUint, t: &BigUint) -> Result<BigUint, SubstError> {
    if !decode_term(t)?.is_closed() {
        return Err(SubstError::OpenTerm);
    }
    subst_code_open(phi, t)
}

/// As [`subst_code`] but the term may contain variables; the object-level
/// `sub` uses this to form `theta(x)`.
pub fn subst_code_open(phi: &BigUint, t: &BigUint) -> Result<BigUint, SubstError> {
    let f = decode_formula(phi)?;
    let term = decode_term(t)?;
    let fv = f.free_vars();
    if fv.len() > 1 {
        return Err(SubstError::TooManyFree);
    }
    Ok(match fv.iter().next() {
        None => phi.clone(),
        Some(v) => encode_formula(&substitute(&f, v, &term)),
    })
}

/// The dot convention: substitutes the numeral for `k`.
pub fn numeral_subst(phi: &BigUint, k: u64) -> Result<BigUint, SubstError> {
    subst_code(phi, &super::coding::encode_term(&numeral(k)))
}

/// Substitutes the term coded by `t` for the variable coded by `var`.
pub fn subst_var_code(phi: &BigUint, var: &BigUint, t: &BigUint) -> Result<BigUint, SubstError> {
    let f: Formula = decode_formula(phi)?;
    let v = decode_var(var)?;
    let term = decode_term(t)?;
    Ok(encode_formula(&substitute(&f, &v, &term)))
}

/// Whether the `x`-th binary digit of `y` is 1.
pub fn ackermann_bit(x: u64, y: &BigUint) -> bool {
    !y.is_zero() && y.bit(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::coding::encode_term;
    use crate::logic::{parse_formula, print_formula, Language};

    #[test]
    fn numeral_shape() {
        assert_eq!(numeral(0), Term::num(0));
        assert_eq!(numeral(2).to_string(), "((0+1)+1)");
        assert_eq!(val(&numeral(10_000)).unwrap(), BigUint::from(10_000u32));
    }

    #[test]
    fn bits() {
        assert!(ackermann_bit(0, &BigUint::from(1u32)));
        assert!(ackermann_bit(1, &BigUint::from(2u32)));
        assert!(!ackermann_bit(0, &BigUint::from(2u32)));
    }

    #[test]
    fn substitution_on_codes() {
        let l = Language::new("a", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap();
        let phi = encode_formula(&parse_formula("x = x", &l).unwrap());
        let two = encode_term(&numeral(2));
        let out = decode_formula(&subst_code(&phi, &two).unwrap()).unwrap();
        assert_eq!(print_formula(&out), "((0+1)+1) = ((0+1)+1)");
        let closed = encode_formula(&parse_formula("0 = 0", &l).unwrap());
        assert_eq!(subst_code(&closed, &two).unwrap(), closed);
    }
}
