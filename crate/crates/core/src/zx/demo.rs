//! Reversing a binary relation: twice is the identity, once need not be.

use std::collections::{BTreeMap, BTreeSet};

use crate::interp::check::{
    check_iso_of_interpretations, check_retraction, CheckError, CheckReport,
};
use crate::interp::{identity_translation, Translation};
use crate::logic::{parse_formula, Language};
use crate::semantics::FiniteStructure;

pub fn order_language() -> Language {
    Language::new("order", &[("<", 2)], &[]).expect("valid")
}

pub fn digraph_language() -> Language {
    Language::new("graph", &[("E", 2)], &[]).expect("valid")
}

fn reversed(sym: &str) -> String {
    if sym == "<" {
        "y < x".into()
    } else {
        format!("{sym}(y, x)")
    }
}

/// Reads the binary relation `sym` of `lang` backwards.
pub fn reversal_translation(lang: &Language, sym: &str) -> Translation {
    let p = |s: &str| parse_formula(s, lang).expect("well formed");
    Translation::new(
        lang.clone(),
        lang.clone(),
        p("x = x"),
        BTreeMap::from([(sym.to_string(), p(&reversed(sym)))]),
        p("x = y"),
        Vec::new(),
    )
    .expect("well formed")
}

/// The order on `0..n` listed by `perm`, smallest first.
pub fn linear_order(perm: &[usize]) -> FiniteStructure {
    let mut lt = BTreeSet::new();
    for (i, a) in perm.iter().enumerate() {
        for b in &perm[i + 1..] {
            lt.insert(vec![*a, *b]);
        }
    }
    FiniteStructure::on_range(
        order_language(),
        perm.len(),
        BTreeMap::from([("<".to_string(), lt)]),
    )
    .expect("valid")
}

/// Every labeled strict linear order on `0..n`.
pub fn all_linear_orders(n: usize) -> Vec<FiniteStructure> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| out.push(linear_order(p)));
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Reversal composed with itself, checked against the identity via `x = y`
/// in both directions.
pub fn order_reversal_demo(s: &FiniteStructure) -> Result<CheckReport, CheckError> {
    let rev = reversal_translation(&s.language, "<");
    let iota = parse_formula("x = y", &s.language).expect("well formed");
    check_retraction(s, &rev, &rev, &iota, Some(&iota))
}

/// Edges 0->1, 0->2, 0->3, 1->2. No two vertices share in- and out-degree,
/// and the out-degree profile {3,1,0,0} differs from the in-degree profile
/// {0,1,2,1}, so the graph is rigid and not isomorphic to its reverse.
pub fn asymmetric_digraph() -> FiniteStructure {
    let e: BTreeSet<Vec<usize>> = [[0, 1], [0, 2], [0, 3], [1, 2]]
        .iter()
        .map(|p| p.to_vec())
        .collect();
    FiniteStructure::on_range(
        digraph_language(),
        4,
        BTreeMap::from([("E".to_string(), e)]),
    )
    .expect("valid")
}

/// Reversal once, checked against the identity via `x = y`.
pub fn single_reversal_report(s: &FiniteStructure, sym: &str) -> Result<CheckReport, CheckError> {
    let rev = reversal_translation(&s.language, sym);
    let id = identity_translation(&s.language);
    let iota = parse_formula("x = y", &s.language).expect("well formed");
    check_iso_of_interpretations(s, &rev, &id, &iota)
}

/// Whether some bijection maps the relation `sym` of `s` onto its reverse.
pub fn isomorphic_to_reverse(s: &FiniteStructure, sym: &str) -> bool {
    let edges = &s.relations[sym];
    let mut perm: Vec<usize> = (0..s.size()).collect();
    let mut found = false;
    permute(&mut perm, 0, &mut |p| {
        found |= edges
            .iter()
            .all(|t| edges.contains(&vec![p[t[1]], p[t[0]]]));
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_chain() {
        let s = linear_order(&[0, 1, 2, 3, 4]);
        assert!(order_reversal_demo(&s).unwrap().pass);
        assert!(single_reversal_report(&s, "<").unwrap().failures[0]
            .condition
            .starts_with("preserves"));
        // a chain is isomorphic to its reverse, just not via x = y
        assert!(isomorphic_to_reverse(&s, "<"));
    }

    #[test]
    fn digraph_detected() {
        let g = asymmetric_digraph();
        assert!(!single_reversal_report(&g, "E").unwrap().pass);
        assert!(!isomorphic_to_reverse(&g, "E"));
        assert_eq!(all_linear_orders(4).len(), 24);
    }
}
