use std::collections::BTreeSet;

use super::language::{Language, PLUS, TIMES};
use super::syntax::{fresh_var, Formula, Term};

/// Name of the graph relation standing for a function symbol.
pub fn graph_symbol(f: &str) -> String {
    match f {
        PLUS => "R_add".to_string(),
        TIMES => "R_mul".to_string(),
        _ => format!("R_{f}"),
    }
}

/// Graph relation standing for the numeric literal `k`.
pub fn literal_symbol(k: &num_bigint::BigUint) -> String {
    format!("R_{k}")
}

/// Replaces every n-ary function symbol by an (n+1)-ary graph relation and
/// flattens nested terms with existential witnesses, innermost first.
pub fn relationalize(lang: &Language, f: &Formula) -> (Language, Formula) {
    let mut rels: Vec<(String, usize)> = lang.relations.clone();
    for (g, a) in &lang.functions {
        rels.push((graph_symbol(g), a + 1));
    }
    let mut literals = BTreeSet::new();
    f.visit_terms(&mut |t| collect_literals(t, &mut literals));
    for k in &literals {
        let s = literal_symbol(k);
        if !rels.iter().any(|(r, _)| *r == s) {
            rels.push((s, 1));
        }
    }
    let out_lang = Language {
        name: format!("{}_rel", lang.name),
        relations: rels,
        functions: Vec::new(),
    };
    let mut taken = f.all_vars();
    (out_lang, flatten(f, &mut taken))
}

fn collect_literals(t: &Term, out: &mut BTreeSet<num_bigint::BigUint>) {
    match t {
        Term::Num(k) => {
            out.insert(k.clone());
        }
        Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| collect_literals(a, out)),
    }
}

struct Flat {
    witnesses: Vec<String>,
    conds: Vec<Formula>,
}

impl Flat {
    /// Returns a variable naming the value of `t`, recording graph conditions.
    fn name_term(&mut self, t: &Term, taken: &mut BTreeSet<String>) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            _ => {
                let z = fresh_var("z", taken);
                taken.insert(z.clone());
                self.witnesses.push(z.clone());
                let zt = Term::Var(z);
                self.graph_of(t, &zt, taken);
                zt
            }
        }
    }

    /// Records the condition "t = target" with `t` non-variable.
    fn graph_of(&mut self, t: &Term, target: &Term, taken: &mut BTreeSet<String>) {
        match t {
            Term::App(g, args) => {
                let mut vs: Vec<Term> = args.iter().map(|a| self.name_term(a, taken)).collect();
                vs.push(target.clone());
                self.conds.push(Formula::Rel(graph_symbol(g), vs));
            }
            Term::Num(k) => self
                .conds
                .push(Formula::Rel(literal_symbol(k), vec![target.clone()])),
            Term::Var(_) => unreachable!("variables need no graph"),
        }
    }

    fn wrap(self, atom: Formula) -> Formula {
        let mut conds = self.conds;
        conds.push(atom);
        let body = Formula::conj(conds).expect("non-empty");
        Formula::exists_many(&self.witnesses, body)
    }
}

fn flatten(f: &Formula, taken: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Rel(r, args) => {
            let mut st = Flat {
                witnesses: Vec::new(),
                conds: Vec::new(),
            };
            let vs: Vec<Term> = args.iter().map(|a| st.name_term(a, taken)).collect();
            st.wrap(Formula::Rel(r.clone(), vs))
        }
        Formula::Eq(a, b) => {
            let mut st = Flat {
                witnesses: Vec::new(),
                conds: Vec::new(),
            };
            match (a, b) {
                (Term::Var(_), Term::Var(_)) => f.clone(),
                (_, Term::Var(_)) => {
                    st.graph_of(a, b, taken);
                    let last = st.conds.pop().expect("graph condition");
                    st.wrap(last)
                }
                (Term::Var(_), _) => {
                    st.graph_of(b, a, taken);
                    let last = st.conds.pop().expect("graph condition");
                    st.wrap(last)
                }
                _ => {
                    let za = st.name_term(a, taken);
                    st.graph_of(b, &za, taken);
                    let last = st.conds.pop().expect("graph condition");
                    st.wrap(last)
                }
            }
        }
        Formula::Not(g) => Formula::not(flatten(g, taken)),
        Formula::Bin(c, a, b) => {
            Formula::Bin(*c, Box::new(flatten(a, taken)), Box::new(flatten(b, taken)))
        }
        Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(flatten(body, taken))),
        Formula::Bounded(q, v, bound, body) => {
            // Q v < t (body) becomes Q v ((t names w) op body) with the bound flattened.
            let inner = flatten(body, taken);
            let lt = flatten(&Formula::lt(Term::Var(v.clone()), bound.clone()), taken);
            let guarded = match q {
                super::syntax::Quant::Forall => Formula::implies(lt, inner),
                super::syntax::Quant::Exists => Formula::and(lt, inner),
            };
            Formula::Quant(*q, v.clone(), Box::new(guarded))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_formula;
    use crate::logic::syntax::print_formula;

    #[test]
    fn unary_function_becomes_graph() {
        let lang = Language::new("fun", &[], &[("f", 1)]).unwrap();
        let f = parse_formula("f(x) = y", &lang).unwrap();
        let (rl, g) = relationalize(&lang, &f);
        assert_eq!(print_formula(&g), "R_f(x,y)");
        assert!(rl.is_relational());
        assert_eq!(rl.relation_arity("R_f"), Some(2));
    }

    #[test]
    fn nested_terms_get_witnesses() {
        let lang = Language::new("fun", &[], &[("f", 1), ("g", 1)]).unwrap();
        let f = parse_formula("f(g(x)) = y", &lang).unwrap();
        let (_, g) = relationalize(&lang, &f);
        assert_eq!(print_formula(&g), "exists z (R_g(x,z) and R_f(z,y))");
    }

    #[test]
    fn relational_input_unchanged() {
        let lang = Language::new("graph", &[("E", 2)], &[]).unwrap();
        let f = parse_formula("forall x (exists y (E(x,y) and not x = y))", &lang).unwrap();
        let (rl, g) = relationalize(&lang, &f);
        assert_eq!(g, f);
        assert_eq!(rl.relations, lang.relations);
    }
}
