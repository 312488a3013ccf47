//! Iterated compositional truth over PA.

use crate::arith::model::{
    code_language, code_literal, form1_level_symbol, sent_level_symbol, truth_language,
    truth_symbol,
};
use crate::logic::{Formula, Language, Term};

use super::schemes::{base_scheme, induction_scheme, pa_minus_axioms, prefixed, BaseKind};
use super::stream::AxiomStream;

/// Language of `ct_axioms(n)`: L_PA with `P1..Pn`, the code functions and
/// predicates, and the level predicates `SentL<j>`, `Form1L<j>` for `j < n`.
pub fn ct_language(n: u32) -> Language {
    let mut extra: Vec<(String, usize)> = (1..=n).map(|i| (truth_symbol(i), 1)).collect();
    for j in 0..n {
        extra.push((sent_level_symbol(j), 1));
        extra.push((form1_level_symbol(j), 1));
    }
    code_language(&format!("L_ct{n}"), &extra)
}

fn app(f: &str, args: Vec<Term>) -> Term {
    Term::app(f, args)
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn rel(r: &str, args: Vec<Term>) -> Formula {
    Formula::rel(r, args)
}

fn closed(vars: &[&str], body: Formula) -> Formula {
    let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    Formula::forall_many(&vs, body)
}

/// The compositional clauses for the truth predicate of level `j >= 1`,
/// which speaks about sentences of `L_{j-1}`.
pub fn ct_clauses(j: u32) -> Vec<Formula> {
    let p = truth_symbol(j);
    let sent = sent_level_symbol(j - 1);
    let form1 = form1_level_symbol(j - 1);
    let pj = |t: Term| rel(&p, vec![t]);
    let mut out = Vec::new();
    for i in 1..j {
        let atom = Formula::rel(&truth_symbol(i), vec![Term::var("x")]);
        out.push(closed(
            &["t"],
            Formula::implies(
                rel("ClTerm", vec![v("t")]),
                Formula::iff(
                    pj(app("sub", vec![code_literal(&atom), v("t")])),
                    rel(&truth_symbol(i), vec![app("val", vec![v("t")])]),
                ),
            ),
        ));
    }
    out.push(closed(
        &["s", "t"],
        Formula::implies(
            Formula::and(rel("ClTerm", vec![v("s")]), rel("ClTerm", vec![v("t")])),
            Formula::iff(
                pj(app("ceq", vec![v("s"), v("t")])),
                Formula::eq(app("val", vec![v("s")]), app("val", vec![v("t")])),
            ),
        ),
    ));
    out.push(closed(
        &["f"],
        Formula::implies(
            rel(&sent, vec![v("f")]),
            Formula::iff(pj(app("cneg", vec![v("f")])), Formula::not(pj(v("f")))),
        ),
    ));
    out.push(closed(
        &["f", "g"],
        Formula::implies(
            Formula::and(rel(&sent, vec![v("f")]), rel(&sent, vec![v("g")])),
            Formula::iff(
                pj(app("cand", vec![v("f"), v("g")])),
                Formula::and(pj(v("f")), pj(v("g"))),
            ),
        ),
    ));
    let all = app("call", vec![v("v"), v("f")]);
    out.push(closed(
        &["f", "v"],
        Formula::implies(
            Formula::conj(vec![
                rel(&form1, vec![v("f")]),
                rel("Var", vec![v("v")]),
                rel(&sent, vec![all.clone()]),
            ])
            .expect("non-empty"),
            Formula::iff(
                pj(all),
                Formula::forall("y", pj(app("sub", vec![v("f"), app("name", vec![v("y")])]))),
            ),
        ),
    ));
    out
}

/// `CT^n[PA]`: PA⁻, the clauses of every level `1..=n` in order, then the
/// induction scheme for all formulas of `L_n`. Level 0 is the PA stream.
pub fn ct_axioms(n: u32) -> AxiomStream {
    if n == 0 {
        return base_scheme(BaseKind::Pa).renamed("ct0");
    }
    let mut head = pa_minus_axioms();
    for j in 1..=n {
        head.extend(ct_clauses(j));
    }
    let ind = induction_scheme(truth_language(n), None);
    prefixed(format!("ct{n}"), ct_language(n), head, ind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::print_formula;

    #[test]
    fn level_zero_is_pa() {
        let a = ct_axioms(0);
        let b = base_scheme(BaseKind::Pa);
        assert_eq!(a.take(40), b.take(40));
    }

    #[test]
    fn negation_clause_shape() {
        let c = ct_clauses(1);
        assert_eq!(c.len(), 4);
        assert_eq!(
            print_formula(&c[1]),
            "forall f (SentL0(f) -> (P1(cneg(f)) <-> not P1(f)))"
        );
    }

    #[test]
    fn lower_predicates_get_clause_one() {
        assert_eq!(ct_clauses(3).len(), 6);
        assert!(ct_axioms(2).take(30).iter().all(Formula::is_sentence));
    }
}
