//! The standard cut, the sequence coding of polynomials, and the maps
//! `iota_z`, `h_z` and `j` of the polynomial model.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::poly::Poly;
use crate::arith::coding::{seq, unseq};
use crate::arith::model::arith_language;
use crate::logic::{parse_formula, Formula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZxError {
    #[error("not a sequence code: {0}")]
    NotACode(String),
    #[error("coefficient sequence ends in zero")]
    TrailingZero,
    #[error("value {0} is outside the nonnegative part")]
    Negative(String),
}

/// `delta(x)`: every number up to `x` is even or odd.
pub fn delta_formula() -> Formula {
    parse_formula(
        "forall y < (x+1) (exists z < (y+1) ((z+z) = y or ((z+z)+1) = y))",
        &arith_language(),
    )
    .expect("well formed")
}

fn is_even(p: &Poly) -> bool {
    p.coeffs().iter().all(|c| c.is_even())
}

fn is_odd(p: &Poly) -> bool {
    p.sub(&Poly::constant(1)).is_some_and(|q| is_even(&q))
}

/// An element at most `p` that is neither even nor odd, if any.
///
/// Below a constant there are only the finitely many smaller constants,
/// each of which halves. Above any constant lies `X + k` for some `k`: for
/// degree one take `k` the constant term of `p`, for higher degree `X`
/// itself. `X + k` is not `2z` or `2z + 1` since its `X` coefficient is odd.
pub fn delta_witness(p: &Poly) -> Option<Poly> {
    match p.degree() {
        None | Some(0) => None,
        Some(1) => Some(Poly::x().add(&Poly::constant(p.coeff(0)))),
        Some(_) => Some(Poly::x()),
    }
}

/// Whether `p` lies in the standard cut, i.e. is a constant.
pub fn delta_standard_cut(p: &Poly) -> bool {
    match delta_witness(p) {
        None => true,
        Some(w) => {
            debug_assert!(w <= *p && !is_even(&w) && !is_odd(&w));
            false
        }
    }
}

/// `0, -1, 1, -2, ...` to `0, 1, 2, 3, ...`.
pub fn fold_int(a: &BigInt) -> BigUint {
    let m = a.magnitude();
    if a.is_negative() {
        (m << 1u32) - 1u32
    } else {
        m << 1u32
    }
}

pub fn unfold_int(n: &BigUint) -> BigInt {
    let half = BigInt::from_biguint(Sign::Plus, n >> 1u32);
    if n.bit(0) {
        -half - 1
    } else {
        half
    }
}

/// Code of an integer sequence, entries folded to naturals.
pub fn encode_ints(a: &[BigInt]) -> BigUint {
    seq(&a.iter().map(fold_int).collect::<Vec<_>>())
}

pub fn decode_ints(c: &BigUint) -> Result<Vec<BigInt>, ZxError> {
    unseq(c)
        .map(|v| v.iter().map(unfold_int).collect())
        .map_err(|e| ZxError::NotACode(e.0))
}

/// The code of a polynomial is the code of its coefficient list.
pub fn encode_poly(p: &Poly) -> BigUint {
    encode_ints(p.coeffs())
}

pub fn decode_poly(c: &BigUint) -> Result<Poly, ZxError> {
    let a = decode_ints(c)?;
    if a.last().is_some_and(Zero::is_zero) {
        return Err(ZxError::TrailingZero);
    }
    let p = Poly::from_coeffs(a);
    if !p.is_nonnegative() {
        return Err(ZxError::Negative(p.to_string()));
    }
    Ok(p)
}

/// `iota_z(a) = a_n z^n + ... + a_0` for the sequence coded by `a`.
pub fn iota_map(z: &Poly, a: &BigUint) -> Result<Poly, ZxError> {
    let p = Poly::eval_digits(&decode_ints(a)?, z);
    if !p.is_nonnegative() {
        return Err(ZxError::Negative(p.to_string()));
    }
    Ok(p)
}

/// Integer digits `a` with `p = sum a_i z^i`.
///
/// For nonconstant `z` the digits are unique: the powers of `z` have
/// distinct degrees, so the top digit is forced by the leading
/// coefficients and the rest follows by recursion on the remainder. A
/// constant `z` only decomposes constants, as the single digit `p`.
pub fn decompose(z: &Poly, p: &Poly) -> Option<Vec<BigInt>> {
    let d = z.degree()?;
    if d == 0 {
        return p.as_constant().map(|c| vec![c]);
    }
    let lz = z.leading().expect("nonzero");
    let mut digits: Vec<BigInt> = Vec::new();
    let mut r = p.clone();
    while let Some(m) = r.degree() {
        if m % d != 0 {
            return None;
        }
        let i = m / d;
        let (q, rem) = r.leading().expect("nonzero").div_rem(&lz.pow(i as u32));
        if !rem.is_zero() {
            return None;
        }
        if digits.len() <= i {
            digits.resize(i + 1, BigInt::zero());
        }
        r = r.minus(&z.pow(i).scale(&q));
        digits[i] = q;
    }
    Some(digits)
}

/// `h_z(p) = iota_{z+1}(a)` where `p = iota_z(a)`; undefined when no such
/// `a` exists.
pub fn h_map(z: &Poly, p: &Poly) -> Option<Poly> {
    let a = decompose(z, p)?;
    Some(Poly::eval_digits(&a, &z.add(&Poly::constant(1))))
}

/// The inverse of `h_z`: decompose along `z + 1`, evaluate at `z`.
pub fn h_inverse(z: &Poly, p: &Poly) -> Option<Poly> {
    let a = decompose(&z.add(&Poly::constant(1)), p)?;
    let q = Poly::eval_digits(&a, z);
    q.is_nonnegative().then_some(q)
}

/// The `k`-th element of the standard cut.
pub fn j_embed(k: u64) -> Poly {
    Poly::constant(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn code(a: &[i64]) -> BigUint {
        encode_ints(&a.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    #[test]
    fn folding() {
        let back: Vec<BigInt> = (0u32..7).map(|n| unfold_int(&BigUint::from(n))).collect();
        assert_eq!(back, [0, -1, 1, -2, 2, -3, 3].map(BigInt::from));
        for v in -20..20 {
            assert_eq!(unfold_int(&fold_int(&BigInt::from(v))), BigInt::from(v));
        }
    }

    #[test]
    fn standard_cut() {
        assert!(delta_standard_cut(&p("5")));
        assert!(!delta_standard_cut(&p("X")));
        assert!(!delta_standard_cut(&p("2*X+3")));
        assert_eq!(delta_witness(&p("2*X+3")), Some(p("X+3")));
        assert_eq!(delta_witness(&p("X-4")), Some(p("X-4")));
    }

    #[test]
    fn coding_and_maps() {
        assert_eq!(encode_poly(&Poly::zero()), BigUint::zero());
        let q = p("X^2+1");
        assert_eq!(decode_poly(&encode_poly(&q)).unwrap(), q);
        assert_eq!(decode_poly(&code(&[1, 0])), Err(ZxError::TrailingZero));
        assert_eq!(
            iota_map(&Poly::x(), &code(&[0, 2, 1])).unwrap(),
            p("X^2+2*X")
        );
        assert_eq!(
            iota_map(&p("X+1"), &code(&[1, 0, 1])).unwrap(),
            p("X^2+2*X+2")
        );
        assert_eq!(h_map(&Poly::x(), &Poly::x()), Some(p("X+1")));
        assert_eq!(h_map(&Poly::x(), &p("7")), Some(p("7")));
        assert_eq!(h_map(&p("X^2"), &Poly::x()), None);
        assert_eq!(h_map(&p("X^2"), &p("3*X^4+1")), Some(p("3*X^4+6*X^2+4")));
        assert_eq!(h_map(&Poly::x(), &p("X^2+1")), Some(p("X^2+2*X+2")));
        assert_eq!(h_inverse(&Poly::x(), &p("X^2+2*X+2")), Some(p("X^2+1")));
        assert_eq!(j_embed(7), p("7"));
    }
}
