use std::collections::BTreeSet;

use super::syntax::{fresh_var, Formula, Term};

pub fn substitute_term(t: &Term, v: &str, by: &Term) -> Term {
    match t {
        Term::Var(w) if w == v => by.clone(),
        Term::Var(_) | Term::Num(_) => t.clone(),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| substitute_term(a, v, by)).collect(),
        ),
    }
}

/// Capture-avoiding substitution of `t` for the free occurrences of `v`.
///
/// A binder whose variable occurs in `t` is renamed to the first fresh
/// primed variant, but only when `v` actually occurs free beneath it.
pub fn substitute(f: &Formula, v: &str, t: &Term) -> Formula {
    let tvars = t.free_vars();
    subst_rec(f, v, t, &tvars)
}

fn subst_rec(f: &Formula, v: &str, t: &Term, tvars: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Rel(r, args) => Formula::Rel(
            r.clone(),
            args.iter().map(|a| substitute_term(a, v, t)).collect(),
        ),
        Formula::Eq(a, b) => Formula::Eq(substitute_term(a, v, t), substitute_term(b, v, t)),
        Formula::Not(g) => Formula::not(subst_rec(g, v, t, tvars)),
        Formula::Bin(c, a, b) => Formula::Bin(
            *c,
            Box::new(subst_rec(a, v, t, tvars)),
            Box::new(subst_rec(b, v, t, tvars)),
        ),
        Formula::Quant(q, w, body) => {
            let (w2, body2) = bind_subst(w, body, v, t, tvars);
            Formula::Quant(*q, w2, Box::new(body2))
        }
        Formula::Bounded(q, w, bound, body) => {
            let bound2 = substitute_term(bound, v, t);
            let (w2, body2) = bind_subst(w, body, v, t, tvars);
            Formula::Bounded(*q, w2, bound2, Box::new(body2))
        }
    }
}

fn bind_subst(
    w: &str,
    body: &Formula,
    v: &str,
    t: &Term,
    tvars: &BTreeSet<String>,
) -> (String, Formula) {
    if w == v || !body.is_free(v) {
        return (w.to_string(), body.clone());
    }
    if tvars.contains(w) {
        let mut taken = body.all_vars();
        taken.extend(tvars.iter().cloned());
        taken.insert(v.to_string());
        let w2 = fresh_var(w, &taken);
        let renamed = rename_free(body, w, &w2);
        (w2, subst_rec(&renamed, v, t, tvars))
    } else {
        (w.to_string(), subst_rec(body, v, t, tvars))
    }
}

/// Renames free occurrences of `from` to `to`; `to` must not be bound inside.
pub fn rename_free(f: &Formula, from: &str, to: &str) -> Formula {
    substitute(f, from, &Term::Var(to.to_string()))
}

/// Renames every bound variable so that binders are pairwise distinct and
/// disjoint from the free variables and from `avoid`.
pub fn rectify(f: &Formula, avoid: &BTreeSet<String>) -> Formula {
    let mut taken = f.free_vars();
    taken.extend(avoid.iter().cloned());
    taken.extend(f.all_vars());
    let mut used = f.free_vars();
    used.extend(avoid.iter().cloned());
    rectify_rec(f, &mut taken, &mut used)
}

fn rectify_rec(f: &Formula, taken: &mut BTreeSet<String>, used: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Rel(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(g) => Formula::not(rectify_rec(g, taken, used)),
        Formula::Bin(c, a, b) => {
            let a2 = rectify_rec(a, taken, used);
            let b2 = rectify_rec(b, taken, used);
            Formula::Bin(*c, Box::new(a2), Box::new(b2))
        }
        Formula::Quant(q, w, body) => {
            let (w2, body2) = rectify_binder(w, body, taken, used);
            Formula::Quant(*q, w2, Box::new(body2))
        }
        Formula::Bounded(q, w, bound, body) => {
            let (w2, body2) = rectify_binder(w, body, taken, used);
            Formula::Bounded(*q, w2, bound.clone(), Box::new(body2))
        }
    }
}

fn rectify_binder(
    w: &str,
    body: &Formula,
    taken: &mut BTreeSet<String>,
    used: &mut BTreeSet<String>,
) -> (String, Formula) {
    let w2 = if used.contains(w) {
        let n = fresh_var(w, taken);
        taken.insert(n.clone());
        n
    } else {
        w.to_string()
    };
    used.insert(w2.clone());
    let body = if w2 != w {
        rename_free(body, w, &w2)
    } else {
        body.clone()
    };
    (w2, rectify_rec(&body, taken, used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::language::Language;
    use crate::logic::parse::parse_formula;
    use crate::logic::syntax::print_formula;

    fn arith() -> Language {
        Language::new("arith", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap()
    }

    fn p(s: &str) -> Formula {
        parse_formula(s, &arith()).unwrap()
    }

    #[test]
    fn no_binder() {
        assert_eq!(substitute(&p("x < y"), "x", &Term::num(0)), p("0 < y"));
    }

    #[test]
    fn capture_renames_binder() {
        let out = substitute(&p("exists y (x < y)"), "x", &Term::var("y"));
        assert_eq!(print_formula(&out), "exists y' (y < y')");
    }

    #[test]
    fn vacuous_when_bound() {
        let f = p("forall x (x = x)");
        assert_eq!(substitute(&f, "x", &Term::var("t")), f);
    }

    #[test]
    fn bound_term_is_outside_scope() {
        let out = substitute(&p("forall y < x (y = x)"), "x", &Term::var("y"));
        assert_eq!(print_formula(&out), "forall y' < y (y' = y)");
    }

    #[test]
    fn rectify_separates_binders() {
        let f = p("(exists x (x = y) and forall x (x < x))");
        let r = rectify(&f, &BTreeSet::new());
        assert_eq!(
            print_formula(&r),
            "(exists x (x = y) and forall x' (x' < x'))"
        );
    }
}
