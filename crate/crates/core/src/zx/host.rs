//! Evaluation of arithmetic formulas in the polynomial model.
//!
//! Atomic formulas are computed exactly. A quantifier is decided only when
//! it ranges below a constant, where the range is finite; the cut formula
//! is decided by [`delta_standard_cut`] wherever it occurs. Everything else
//! is undecided.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::maps::{delta_formula, delta_standard_cut};
use super::poly::Poly;
use crate::interp::Host;
use crate::logic::{substitute, Conn, Formula, Quant, Term};

/// The model, with sample elements outside the standard cut added to every
/// search pool.
pub struct ZxHost {
    pub extra: Vec<Poly>,
    /// Largest constant bound a quantifier may range below.
    pub bound_cap: u64,
}

impl Default for ZxHost {
    fn default() -> ZxHost {
        ZxHost {
            extra: ["X", "X+1", "2*X", "X^2"]
                .iter()
                .map(|s| s.parse().expect("literal"))
                .collect(),
            bound_cap: 10_000,
        }
    }
}

type Env = BTreeMap<String, Poly>;

impl ZxHost {
    fn term(&self, t: &Term, env: &Env) -> Result<Poly, String> {
        Ok(match t {
            Term::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| format!("unassigned `{v}`"))?,
            Term::Num(n) => Poly::constant(BigInt::from(n.clone())),
            Term::App(f, args) => match (f.as_str(), args.as_slice()) {
                ("+", [a, b]) => self.term(a, env)?.add(&self.term(b, env)?),
                ("*", [a, b]) => self.term(a, env)?.mul(&self.term(b, env)?),
                _ => return Err(format!("no interpretation of `{f}`")),
            },
        })
    }

    fn is_delta(f: &Formula) -> Option<String> {
        let free = f.free_vars();
        let v = free.iter().next()?;
        if free.len() != 1 {
            return None;
        }
        (substitute(&delta_formula(), "x", &Term::var(v)) == *f).then(|| v.clone())
    }

    /// Kleene three-valued evaluation.
    pub fn eval(&self, f: &Formula, env: &Env) -> Result<Option<bool>, String> {
        Ok(match f {
            Formula::Rel(r, args) => match (r.as_str(), args.as_slice()) {
                ("<", [a, b]) => Some(self.term(a, env)? < self.term(b, env)?),
                _ => return Err(format!("no interpretation of `{r}`")),
            },
            Formula::Eq(a, b) => Some(self.term(a, env)? == self.term(b, env)?),
            Formula::Not(g) => self.eval(g, env)?.map(|b| !b),
            Formula::Bin(c, a, b) => {
                let x = self.eval(a, env)?;
                let y = self.eval(b, env)?;
                match c {
                    Conn::And => match (x, y) {
                        (Some(false), _) | (_, Some(false)) => Some(false),
                        (Some(true), Some(true)) => Some(true),
                        _ => None,
                    },
                    Conn::Or => match (x, y) {
                        (Some(true), _) | (_, Some(true)) => Some(true),
                        (Some(false), Some(false)) => Some(false),
                        _ => None,
                    },
                    Conn::Implies => match (x, y) {
                        (Some(false), _) | (_, Some(true)) => Some(true),
                        (Some(true), Some(false)) => Some(false),
                        _ => None,
                    },
                    Conn::Iff => x.zip(y).map(|(p, q)| p == q),
                }
            }
            Formula::Quant(..) => None,
            Formula::Bounded(q, v, t, body) => {
                if let Some(dv) = ZxHost::is_delta(f) {
                    let p = env.get(&dv).ok_or_else(|| format!("unassigned `{dv}`"))?;
                    return Ok(Some(delta_standard_cut(p)));
                }
                let bound = self.term(t, env)?;
                let Some(n) = bound.as_constant().and_then(|c| c.to_u64()) else {
                    return Ok(if bound.is_nonnegative() {
                        None
                    } else {
                        Some(*q == Quant::Forall)
                    });
                };
                if n > self.bound_cap {
                    return Ok(None);
                }
                let mut env = env.clone();
                let mut unknown = false;
                for k in 0..n {
                    env.insert(v.clone(), Poly::constant(k));
                    match (q, self.eval(body, &env)?) {
                        (Quant::Forall, Some(false)) => return Ok(Some(false)),
                        (Quant::Exists, Some(true)) => return Ok(Some(true)),
                        (_, None) => unknown = true,
                        _ => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(*q == Quant::Forall)
                }
            }
        })
    }
}

impl Host for ZxHost {
    type Elem = Poly;

    fn holds(&self, f: &Formula, a: &Env) -> Result<Option<bool>, String> {
        self.eval(f, a)
    }

    fn pool(&self, fuel: usize) -> Vec<Poly> {
        let mut out: Vec<Poly> = (0..=fuel as u64).map(Poly::constant).collect();
        out.extend(self.extra.iter().cloned());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_formula_on_constants_matches_decision() {
        let h = ZxHost::default();
        let body = match delta_formula() {
            Formula::Bounded(_, _, _, b) => *b,
            _ => unreachable!(),
        };
        // evaluate the cut formula by enumeration, bypassing the decision
        for c in 0u64..60 {
            let mut env = Env::new();
            let mut all = true;
            for y in 0..=c {
                env.insert("y".into(), Poly::constant(y));
                all &= h.eval(&body, &env).unwrap() == Some(true);
            }
            assert_eq!(all, delta_standard_cut(&Poly::constant(c)));
        }
        let env = Env::from([("x".to_string(), Poly::x())]);
        assert_eq!(h.eval(&delta_formula(), &env).unwrap(), Some(false));
    }
}
