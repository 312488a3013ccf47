//! Integer polynomials in one indeterminate `X`, ordered by making `X`
//! larger than every integer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An element of Z[X]. Coefficients are stored lowest degree first with no
/// trailing zero, so equal polynomials have equal representations. The
/// model of arithmetic lives in the nonnegative part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The indeterminate.
    pub fn x() -> Poly {
        Poly::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero, or positive leading coefficient.
    pub fn is_nonnegative(&self) -> bool {
        self.leading().is_none_or(|c| c.is_positive())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn add(&self, q: &Poly) -> Poly {
        let n = self.coeffs.len().max(q.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + q.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Difference in the ring.
    pub fn minus(&self, q: &Poly) -> Poly {
        self.add(&q.neg())
    }

    /// `self - q` when it stays nonnegative.
    pub fn sub(&self, q: &Poly) -> Option<Poly> {
        let d = self.minus(q);
        d.is_nonnegative().then_some(d)
    }

    pub fn mul(&self, q: &Poly) -> Poly {
        if self.is_zero() || q.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + q.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in q.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::constant(1), |acc, _| acc.mul(self))
    }

    /// `sum a_i z^i`, by Horner's rule.
    pub fn eval_digits(digits: &[BigInt], z: &Poly) -> Poly {
        digits.iter().rev().fold(Poly::zero(), |acc, a| {
            acc.mul(z).add(&Poly::constant(a.clone()))
        })
    }

    /// `self(z)`.
    pub fn compose(&self, z: &Poly) -> Poly {
        Poly::eval_digits(&self.coeffs, z)
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        match self.minus(other).leading() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The operations of the model, with subtraction partial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Sub,
    Compare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyValue {
    Poly(Poly),
    Order(Ordering),
    Undefined,
}

pub fn poly_ops(op: PolyOp, p: &Poly, q: &Poly) -> PolyValue {
    match op {
        PolyOp::Add => PolyValue::Poly(p.add(q)),
        PolyOp::Mul => PolyValue::Poly(p.mul(q)),
        PolyOp::Sub => p.sub(q).map_or(PolyValue::Undefined, PolyValue::Poly),
        PolyOp::Compare => PolyValue::Order(p.cmp(q)),
    }
}

impl fmt::Display for Poly {
    /// `a_n*X^n + ... + a_0` without spaces, e.g. `X^2-3*X+2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad polynomial at {pos}: {message}")]
pub struct PolyParseError {
    pub pos: usize,
    pub message: String,
}

impl FromStr for Poly {
    type Err = PolyParseError;

    /// Sums of terms `c`, `c*X`, `X^n`, `c*X^n`, `cX^n`, with optional
    /// signs and spaces.
    fn from_str(s: &str) -> Result<Poly, PolyParseError> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |k: usize, m: &str| PolyParseError {
            pos: chars.get(k).map_or(s.len(), |(p, _)| *p),
            message: m.to_string(),
        };
        if chars.is_empty() {
            return Err(err(0, "empty input"));
        }
        let digits = |k: &mut usize| -> Option<BigInt> {
            let start = *k;
            while *k < chars.len() && chars[*k].1.is_ascii_digit() {
                *k += 1;
            }
            let t: String = chars[start..*k].iter().map(|(_, c)| c).collect();
            t.parse().ok()
        };
        let mut out = Poly::zero();
        let mut k = 0;
        let mut first = true;
        while k < chars.len() {
            let mut sign = BigInt::one();
            match chars[k].1 {
                '+' if !first => k += 1,
                '-' => {
                    sign = -sign;
                    k += 1;
                }
                _ if first => {}
                _ => return Err(err(k, "expected `+` or `-`")),
            }
            first = false;
            let coeff = digits(&mut k);
            let has_x = k < chars.len() && matches!(chars[k].1, '*' | 'X' | 'x');
            if !has_x {
                let c = coeff.ok_or_else(|| err(k, "expected a term"))?;
                out = out.add(&Poly::constant(sign * c));
                continue;
            }
            if chars[k].1 == '*' {
                if coeff.is_none() {
                    return Err(err(k, "`*` without a coefficient"));
                }
                k += 1;
            }
            if k >= chars.len() || !matches!(chars[k].1, 'X' | 'x') {
                return Err(err(k, "expected `X`"));
            }
            k += 1;
            let mut power = 1usize;
            if k < chars.len() && chars[k].1 == '^' {
                k += 1;
                power = digits(&mut k)
                    .and_then(|p| p.to_usize())
                    .ok_or_else(|| err(k, "expected an exponent"))?;
            }
            let c = coeff.unwrap_or_else(BigInt::one) * sign;
            out = out.add(&Poly::x().pow(power).scale(&c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "7", "X", "X^2+2*X+2", "3*X^4-X+1", "-2", "X^3-5"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2 + 0*X + 1*X^2"), p("X^2+2"));
        assert_eq!(p("2X^2"), p("2*X^2"));
        assert!("X+".parse::<Poly>().is_err());
        assert!("*X".parse::<Poly>().is_err());
    }

    #[test]
    fn model_operations() {
        assert_eq!(
            poly_ops(PolyOp::Compare, &Poly::x(), &Poly::constant(1_000_000)),
            PolyValue::Order(Ordering::Greater)
        );
        assert_eq!(
            poly_ops(PolyOp::Add, &p("X+1"), &p("2")),
            PolyValue::Poly(p("X+3"))
        );
        assert_eq!(
            poly_ops(PolyOp::Sub, &p("2"), &p("X")),
            PolyValue::Undefined
        );
        assert_eq!(
            poly_ops(PolyOp::Sub, &p("X"), &p("2")),
            PolyValue::Poly(p("X-2"))
        );
        assert!(p("X-100") > p("99"));
        assert!(p("X^2-X") > p("5*X"));
    }
}
