//! Finite checks of the identities of the polynomial model.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::demo::{
    all_linear_orders, asymmetric_digraph, isomorphic_to_reverse, order_reversal_demo,
    single_reversal_report,
};
use super::host::ZxHost;
use super::maps::{
    decode_poly, delta_formula, delta_standard_cut, encode_ints, encode_poly, h_inverse, h_map,
    iota_map, j_embed,
};
use super::poly::Poly;
use crate::arith::model::arith_language;
use crate::interp::{build_initial_embedding, graph_translation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HarnessCheck {
    pub name: String,
    pub cases: usize,
    /// Descriptions of the first failing cases.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub checks: Vec<HarnessCheck>,
}

impl HarnessReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

const FAILURE_CAP: usize = 5;

struct Check<'a> {
    out: &'a mut HarnessReport,
    cur: HarnessCheck,
}

impl Check<'_> {
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cur.cases += 1;
        if !ok && self.cur.failures.len() < FAILURE_CAP {
            self.cur.failures.push(what());
        }
    }
}

impl Drop for Check<'_> {
    fn drop(&mut self) {
        self.out.checks.push(std::mem::take(&mut self.cur));
    }
}

fn check<'a>(out: &'a mut HarnessReport, name: &str) -> Check<'a> {
    Check {
        out,
        cur: HarnessCheck {
            name: name.to_string(),
            ..HarnessCheck::default()
        },
    }
}

/// A nonnegative polynomial of degree at most `deg`, coefficients within
/// `bound` in absolute value.
pub fn random_poly(rng: &mut impl Rng, deg: usize, bound: i64) -> Poly {
    let d = rng.gen_range(0..=deg);
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(rng.gen_range(if d == 0 { 0 } else { 1 }..=bound));
    Poly::from_i64s(&c)
}

/// Every nonnegative polynomial of degree at most `deg` with coefficients
/// within `bound`.
pub fn all_polys(deg: usize, bound: i64) -> Vec<Poly> {
    let width = (2 * bound + 1) as u64;
    let total = width.pow(deg as u32 + 1);
    (0..total)
        .map(|mut n| {
            let c: Vec<i64> = (0..=deg)
                .map(|_| {
                    let a = (n % width) as i64 - bound;
                    n /= width;
                    a
                })
                .collect();
            Poly::from_i64s(&c)
        })
        .filter(Poly::is_nonnegative)
        .collect()
}

/// Runs every check with `cases` random cases where sampling is used.
pub fn zx_harness(seed: u64, cases: usize) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = HarnessReport::default();
    let x = Poly::x();
    let one = Poly::constant(1);

    {
        let mut c = check(&mut out, "semiring laws");
        for _ in 0..cases {
            let (p, q, r) = (
                random_poly(&mut rng, 6, 9),
                random_poly(&mut rng, 6, 9),
                random_poly(&mut rng, 6, 9),
            );
            let ok = p.add(&q) == q.add(&p)
                && p.mul(&q) == q.mul(&p)
                && p.add(&q).add(&r) == p.add(&q.add(&r))
                && p.mul(&q).mul(&r) == p.mul(&q.mul(&r))
                && p.mul(&q.add(&r)) == p.mul(&q).add(&p.mul(&r))
                && p.add(&q).is_nonnegative()
                && p.mul(&q).is_nonnegative();
            c.case(ok, || format!("{p}, {q}, {r}"));
        }
    }
    {
        let mut c = check(&mut out, "h_X automorphism");
        let h = |p: &Poly| h_map(&x, p);
        for _ in 0..cases {
            let (p, q) = (random_poly(&mut rng, 6, 9), random_poly(&mut rng, 6, 9));
            let (hp, hq) = (h(&p), h(&q));
            let ok = match (&hp, &hq) {
                (Some(hp), Some(hq)) => {
                    h(&p.add(&q)).as_ref() == Some(&hp.add(hq))
                        && h(&p.mul(&q)).as_ref() == Some(&hp.mul(hq))
                        && p.cmp(&q) == hp.cmp(hq)
                        && h_inverse(&x, hp).as_ref() == Some(&p)
                        && h_inverse(&x, &p).and_then(|r| h(&r)).as_ref() == Some(&p)
                }
                _ => false,
            };
            c.case(ok, || format!("{p}, {q}"));
        }
        for k in 0..100 {
            let k = Poly::constant(k);
            c.case(h(&k).as_ref() == Some(&k), || format!("constant {k} moved"));
        }
    }
    {
        let mut c = check(&mut out, "h values");
        c.case(h_map(&x, &x) == Some(x.add(&one)), || {
            "h_X(X) is not X+1".into()
        });
        c.case(h_map(&x, &x) != Some(x.clone()), || "h_X fixes X".into());
        let x2 = x.mul(&x);
        c.case(h_map(&x2, &x).is_none(), || "h_{X^2}(X) is defined".into());
    }
    {
        let mut c = check(&mut out, "standard cut");
        for p in all_polys(4, 5) {
            let ok = delta_standard_cut(&p) == p.is_constant();
            c.case(ok, || format!("delta({p})"));
        }
        // the decision agrees with evaluating the cut formula by enumeration
        let host = ZxHost {
            extra: Vec::new(),
            bound_cap: 1000,
        };
        let body = match delta_formula() {
            crate::logic::Formula::Bounded(_, _, _, b) => *b,
            _ => unreachable!("the cut formula is bounded"),
        };
        for n in 0..=100u64 {
            let mut all = true;
            for y in 0..=n {
                let env = [("y".to_string(), Poly::constant(y))].into();
                all &= host.eval(&body, &env) == Ok(Some(true));
            }
            c.case(all == delta_standard_cut(&Poly::constant(n)), || {
                format!("enumerated delta({n})")
            });
        }
    }
    {
        let mut c = check(&mut out, "cut closure");
        let mut samples: Vec<Poly> = (0..=100).map(Poly::constant).collect();
        samples.extend((0..100).map(|_| {
            let mut p = random_poly(&mut rng, 4, 9);
            if p.is_constant() {
                p = p.add(&x);
            }
            p
        }));
        for p in &samples {
            let dp = delta_standard_cut(p);
            c.case(!dp || delta_standard_cut(&p.add(&one)), || {
                format!("successor of {p}")
            });
            if let Some(n) = p.as_constant().and_then(|n| u64::try_from(n).ok()) {
                for q in 0..=n {
                    c.case(delta_standard_cut(&Poly::constant(q)), || {
                        format!("{q} <= {p}")
                    });
                }
            }
            // every sampled element below a cut element is in the cut
            for q in &samples {
                if q <= p {
                    c.case(!dp || delta_standard_cut(q), || format!("{q} <= {p}"));
                }
            }
        }
    }
    {
        let mut c = check(&mut out, "coding round trips");
        for _ in 0..cases {
            let p = random_poly(&mut rng, 6, 9);
            let code = encode_poly(&p);
            let ok =
                decode_poly(&code).as_ref() == Ok(&p) && iota_map(&x, &code).as_ref() == Ok(&p);
            c.case(ok, || format!("{p}"));
        }
    }
    {
        let mut c = check(&mut out, "iota additive");
        for _ in 0..cases {
            let n = rng.gen_range(0..6);
            let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..10))).collect();
            let b: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..10))).collect();
            let s: Vec<BigInt> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
            let z = random_poly(&mut rng, 2, 3);
            let lhs = iota_map(&z, &encode_ints(&s));
            let rhs = iota_map(&z, &encode_ints(&a))
                .and_then(|u| iota_map(&z, &encode_ints(&b)).map(|v| u.add(&v)));
            c.case(lhs == rhs, || format!("{a:?} + {b:?} at {z}"));
        }
    }
    {
        let mut c = check(&mut out, "j agrees with the interpreted successor");
        let n = graph_translation(&arith_language(), delta_formula());
        match build_initial_embedding(&ZxHost::default(), &n, 100) {
            Ok(iota) => {
                for (k, v) in iota.iter().enumerate() {
                    c.case(*v == j_embed(k as u64), || format!("iota({k}) = {v}"));
                    if k > 0 {
                        c.case(j_embed(k as u64 - 1) < j_embed(k as u64), || {
                            format!("j at {k}")
                        });
                    }
                }
            }
            Err(e) => c.case(false, || e.to_string()),
        }
    }
    {
        let mut c = check(&mut out, "double reversal");
        for n in 1..=6 {
            for s in all_linear_orders(n) {
                let r = order_reversal_demo(&s);
                c.case(r.as_ref().is_ok_and(|r| r.pass), || {
                    format!("{:?}: {r:?}", s.relations)
                });
            }
        }
    }
    {
        let mut c = check(&mut out, "single reversal detected");
        let g = asymmetric_digraph();
        let r = single_reversal_report(&g, "E");
        c.case(r.is_ok_and(|r| !r.pass), || {
            "reversal accepted via x = y".into()
        });
        c.case(!isomorphic_to_reverse(&g, "E"), || {
            "digraph isomorphic to its reverse".into()
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_size() {
        // nonnegative: zero plus those with positive leading coefficient
        assert_eq!(all_polys(0, 5).len(), 6);
        assert_eq!(all_polys(1, 5).len(), 6 + 5 * 11);
    }

    #[test]
    fn small_run_passes() {
        let r = zx_harness(7, 50);
        assert!(r.pass(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 10);
    }
}
