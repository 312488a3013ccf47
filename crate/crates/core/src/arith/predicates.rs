use num_bigint::BigUint;
use serde::Serialize;

use super::coding::{decode, Syntax};
use crate::logic::{classify, Formula, FormulaClass, Language};

/// Meta-level versions of the syntactic code predicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CodeInfo {
    pub term: bool,
    pub closed_term: bool,
    pub var: bool,
    pub formula: bool,
    /// At most one free variable.
    pub formula_le1: bool,
    pub sentence: bool,
    /// Hierarchy class of the coded formula.
    pub class: Option<FormulaClass>,
}

impl CodeInfo {
    /// Whether the coded formula lies in `gamma` (Sigma(n) or Pi(n)).
    pub fn in_class(&self, gamma: FormulaClass) -> bool {
        self.class.is_some_and(|c| gamma.contains(c))
    }
}

pub fn code_predicates(c: &BigUint) -> CodeInfo {
    match decode(c) {
        Err(_) => CodeInfo::default(),
        Ok(Syntax::Term(t)) => CodeInfo {
            term: true,
            closed_term: t.is_closed(),
            var: matches!(t, crate::logic::Term::Var(_)),
            ..CodeInfo::default()
        },
        Ok(Syntax::Formula(f)) => {
            let nfree = f.free_vars().len();
            CodeInfo {
                formula: true,
                formula_le1: nfree <= 1,
                sentence: nfree == 0,
                class: Some(classify(&f)),
                ..CodeInfo::default()
            }
        }
    }
}

/// Whether every symbol of `f` belongs to `lang` with the right arity.
/// Numeric literals count as symbols of any language with `+`.
pub fn formula_in_language(f: &Formula, lang: &Language) -> bool {
    f.relation_symbols()
        .iter()
        .all(|(r, a)| lang.relation_arity(r) == Some(*a))
        && f.function_symbols()
            .iter()
            .all(|(g, a)| lang.function_arity(g) == Some(*a))
        && (!f.uses_numerals() || lang.allows_numerals())
        && (!f.uses_bounded() || lang.has_order())
}

pub fn term_in_language(t: &crate::logic::Term, lang: &Language) -> bool {
    use crate::logic::Term;
    match t {
        Term::Var(_) => true,
        Term::Num(_) => lang.allows_numerals(),
        Term::App(g, args) => {
            lang.function_arity(g) == Some(args.len())
                && args.iter().all(|a| term_in_language(a, lang))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::coding::encode_formula;
    use crate::logic::parse_formula;

    fn arith() -> Language {
        Language::new("a", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap()
    }

    #[test]
    fn sentence_and_formula() {
        let c = encode_formula(&parse_formula("forall x (x = x)", &arith()).unwrap());
        let info = code_predicates(&c);
        assert!(info.sentence && info.formula_le1);
        let d = encode_formula(&parse_formula("x < y", &arith()).unwrap());
        let info = code_predicates(&d);
        assert!(info.formula && !info.sentence && !info.formula_le1);
        assert!(info.in_class(FormulaClass::Sigma(1)));
    }
}
