//! Goedel coding of terms and formulas.
//!
//! Syntax codes are built from a size-additive pairing `J(a, b)`: reading the
//! bits of `J(a, b)` from the low end gives `m` ones, a zero, the `m`-bit
//! length `n` of `a`, the `n` bits of `a`, and then `b`. The code of a node is
//! `J(tag, payload)`; tags are listed in [`Tag`]. Names of symbols and
//! variables are their UTF-8 bytes read as a big-endian number with a leading
//! 1 byte-marker (`"x"` codes to 376). Zero is `J(0, 0)` and carries the
//! unused tag 0, so it is never a code.
//!
//! Object-level pairs (`fst`, `snd`, the tuples `(y)_i`) use the Cantor
//! pairing, which is a bijection.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::logic::{Conn, Formula, Quant, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid code: {0}")]
pub struct CodeError(pub String);

fn bad(msg: impl Into<String>) -> CodeError {
    CodeError(msg.into())
}

/// Node tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Tag {
    Var = 1,
    App = 2,
    Num = 3,
    Rel = 4,
    Eq = 5,
    Not = 6,
    And = 7,
    Or = 8,
    Implies = 9,
    Iff = 10,
    Forall = 11,
    Exists = 12,
    ForallLt = 13,
    ExistsLt = 14,
}

impl Tag {
    fn from_u64(t: u64) -> Option<Tag> {
        use Tag::*;
        Some(match t {
            1 => Var,
            2 => App,
            3 => Num,
            4 => Rel,
            5 => Eq,
            6 => Not,
            7 => And,
            8 => Or,
            9 => Implies,
            10 => Iff,
            11 => Forall,
            12 => Exists,
            13 => ForallLt,
            14 => ExistsLt,
            _ => return None,
        })
    }

    fn of_conn(c: Conn) -> Tag {
        match c {
            Conn::And => Tag::And,
            Conn::Or => Tag::Or,
            Conn::Implies => Tag::Implies,
            Conn::Iff => Tag::Iff,
        }
    }
}

fn bits(a: &BigUint) -> u64 {
    a.bits()
}

/// The additive pairing.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let n = bits(a);
    let m = bits(&BigUint::from(n));
    let ones = (BigUint::one() << m) - 1u32;
    ones + (BigUint::from(n) << (m + 1)) + (a << (2 * m + 1)) + (b << (2 * m + 1 + n))
}

/// Inverse of [`pair`]; rejects numbers outside its range.
pub fn unpair(c: &BigUint) -> Result<(BigUint, BigUint), CodeError> {
    let m = c.trailing_ones();
    if c.bit(m) {
        return Err(bad("pairing marker"));
    }
    let n_big = (c >> (m + 1)) & ((BigUint::one() << m) - 1u32);
    let n = n_big.to_u64().ok_or_else(|| bad("pairing length"))?;
    if bits(&n_big) != m {
        return Err(bad("non-canonical pairing length"));
    }
    let a = (c >> (2 * m + 1)) & ((BigUint::one() << n) - 1u32);
    if bits(&a) != n {
        return Err(bad("non-canonical pairing component"));
    }
    let b = c >> (2 * m + 1 + n);
    Ok((a, b))
}

/// Sequence code: `seq([]) = 0`, `seq(x :: r) = 1 + pair(x, seq(r))`.
pub fn seq(items: &[BigUint]) -> BigUint {
    items
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, x| pair(x, &acc) + 1u32)
}

pub fn unseq(c: &BigUint) -> Result<Vec<BigUint>, CodeError> {
    let mut out = Vec::new();
    let mut cur = c.clone();
    while !cur.is_zero() {
        let (x, rest) = unpair(&(cur - 1u32))?;
        out.push(x);
        cur = rest;
    }
    Ok(out)
}

/// Length of a sequence code, if it is one.
pub fn seq_len(c: &BigUint) -> Option<usize> {
    unseq(c).ok().map(|v| v.len())
}

/// Cantor pairing `(a+b)(a+b+1)/2 + b`.
pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn cantor_unpair(c: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8c+1) - 1) / 2)
    let w = ((c * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = c - t;
    let a = w - &b;
    (a, b)
}

pub fn name_code(name: &str) -> BigUint {
    let mut bytes = vec![1u8];
    bytes.extend_from_slice(name.as_bytes());
    BigUint::from_bytes_be(&bytes)
}

pub fn code_name(c: &BigUint) -> Result<String, CodeError> {
    let bytes = c.to_bytes_be();
    if bytes.first() != Some(&1) || bytes.len() < 2 {
        return Err(bad("name marker"));
    }
    let s = String::from_utf8(bytes[1..].to_vec()).map_err(|_| bad("name bytes"))?;
    if matches!(s.as_str(), "+" | "*" | "<") {
        return Ok(s);
    }
    let mut chars = s.chars();
    let first = chars.next().expect("non-empty");
    if !(first.is_ascii_alphabetic() || first == '_')
        || !chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
    {
        return Err(bad("name is not an identifier"));
    }
    Ok(s)
}

fn node(tag: Tag, payload: &BigUint) -> BigUint {
    pair(&BigUint::from(tag as u8), payload)
}

pub fn var_code(v: &str) -> BigUint {
    node(Tag::Var, &name_code(v))
}

pub fn encode_term(t: &Term) -> BigUint {
    match t {
        Term::Var(v) => var_code(v),
        Term::Num(k) => node(Tag::Num, k),
        Term::App(g, args) => {
            let args: Vec<BigUint> = args.iter().map(encode_term).collect();
            node(Tag::App, &pair(&name_code(g), &seq(&args)))
        }
    }
}

pub fn encode_formula(f: &Formula) -> BigUint {
    match f {
        Formula::Rel(r, args) => {
            let args: Vec<BigUint> = args.iter().map(encode_term).collect();
            node(Tag::Rel, &pair(&name_code(r), &seq(&args)))
        }
        Formula::Eq(a, b) => node(Tag::Eq, &pair(&encode_term(a), &encode_term(b))),
        Formula::Not(g) => node(Tag::Not, &encode_formula(g)),
        Formula::Bin(c, a, b) => node(
            Tag::of_conn(*c),
            &pair(&encode_formula(a), &encode_formula(b)),
        ),
        Formula::Quant(q, v, body) => {
            let tag = match q {
                Quant::Forall => Tag::Forall,
                Quant::Exists => Tag::Exists,
            };
            node(tag, &pair(&var_code(v), &encode_formula(body)))
        }
        Formula::Bounded(q, v, bound, body) => {
            let tag = match q {
                Quant::Forall => Tag::ForallLt,
                Quant::Exists => Tag::ExistsLt,
            };
            let inner = pair(&encode_term(bound), &encode_formula(body));
            node(tag, &pair(&var_code(v), &inner))
        }
    }
}

/// A decoded syntax object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Syntax {
    Term(Term),
    Formula(Formula),
}

impl Syntax {
    pub fn encode(&self) -> BigUint {
        match self {
            Syntax::Term(t) => encode_term(t),
            Syntax::Formula(f) => encode_formula(f),
        }
    }
}

fn split_tag(c: &BigUint) -> Result<(Tag, BigUint), CodeError> {
    let (t, payload) = unpair(c)?;
    let tag = t
        .to_u64()
        .and_then(Tag::from_u64)
        .ok_or_else(|| bad(format!("unknown tag {t}")))?;
    Ok((tag, payload))
}

pub fn decode(c: &BigUint) -> Result<Syntax, CodeError> {
    let (tag, _) = split_tag(c)?;
    match tag {
        Tag::Var | Tag::App | Tag::Num => decode_term(c).map(Syntax::Term),
        _ => decode_formula(c).map(Syntax::Formula),
    }
}

pub fn decode_var(c: &BigUint) -> Result<String, CodeError> {
    match split_tag(c)? {
        (Tag::Var, payload) => code_name(&payload),
        _ => Err(bad("not a variable")),
    }
}

pub fn decode_term(c: &BigUint) -> Result<Term, CodeError> {
    let (tag, payload) = split_tag(c)?;
    match tag {
        Tag::Var => Ok(Term::Var(code_name(&payload)?)),
        Tag::Num => Ok(Term::Num(payload)),
        Tag::App => {
            let (g, args) = unpair(&payload)?;
            let args = unseq(&args)?
                .iter()
                .map(decode_term)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::App(code_name(&g)?, args))
        }
        _ => Err(bad("not a term")),
    }
}

pub fn decode_formula(c: &BigUint) -> Result<Formula, CodeError> {
    let (tag, payload) = split_tag(c)?;
    let bin = |conn: Conn| -> Result<Formula, CodeError> {
        let (a, b) = unpair(&payload)?;
        Ok(Formula::Bin(
            conn,
            Box::new(decode_formula(&a)?),
            Box::new(decode_formula(&b)?),
        ))
    };
    match tag {
        Tag::Rel => {
            let (r, args) = unpair(&payload)?;
            let args = unseq(&args)?
                .iter()
                .map(decode_term)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Formula::Rel(code_name(&r)?, args))
        }
        Tag::Eq => {
            let (a, b) = unpair(&payload)?;
            Ok(Formula::Eq(decode_term(&a)?, decode_term(&b)?))
        }
        Tag::Not => Ok(Formula::not(decode_formula(&payload)?)),
        Tag::And => bin(Conn::And),
        Tag::Or => bin(Conn::Or),
        Tag::Implies => bin(Conn::Implies),
        Tag::Iff => bin(Conn::Iff),
        Tag::Forall | Tag::Exists => {
            let q = if tag == Tag::Forall {
                Quant::Forall
            } else {
                Quant::Exists
            };
            let (v, body) = unpair(&payload)?;
            Ok(Formula::Quant(
                q,
                decode_var(&v)?,
                Box::new(decode_formula(&body)?),
            ))
        }
        Tag::ForallLt | Tag::ExistsLt => {
            let q = if tag == Tag::ForallLt {
                Quant::Forall
            } else {
                Quant::Exists
            };
            let (v, rest) = unpair(&payload)?;
            let (bound, body) = unpair(&rest)?;
            Ok(Formula::Bounded(
                q,
                decode_var(&v)?,
                decode_term(&bound)?,
                Box::new(decode_formula(&body)?),
            ))
        }
        Tag::Var | Tag::App | Tag::Num => Err(bad("not a formula")),
    }
}

/// Raw code constructors used as object-level functions.
pub mod build {
    use super::*;

    pub fn neg(a: &BigUint) -> BigUint {
        node(Tag::Not, a)
    }

    pub fn conn(c: Conn, a: &BigUint, b: &BigUint) -> BigUint {
        node(Tag::of_conn(c), &pair(a, b))
    }

    pub fn quant(q: Quant, v: &BigUint, body: &BigUint) -> BigUint {
        let tag = match q {
            Quant::Forall => Tag::Forall,
            Quant::Exists => Tag::Exists,
        };
        node(tag, &pair(v, body))
    }

    pub fn eq(s: &BigUint, t: &BigUint) -> BigUint {
        node(Tag::Eq, &pair(s, t))
    }

    pub fn num(k: &BigUint) -> BigUint {
        node(Tag::Num, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Language};

    #[test]
    fn pairing_round_trip() {
        for a in 0u32..70 {
            for b in 0u32..70 {
                let (a, b) = (BigUint::from(a), BigUint::from(b));
                assert_eq!(unpair(&pair(&a, &b)).unwrap(), (a.clone(), b.clone()));
                assert_eq!(cantor_unpair(&cantor_pair(&a, &b)), (a, b));
            }
        }
        assert!(pair(&BigUint::zero(), &BigUint::zero()).is_zero());
    }

    #[test]
    fn cantor_is_onto() {
        for c in 0u32..500 {
            let c = BigUint::from(c);
            let (a, b) = cantor_unpair(&c);
            assert_eq!(cantor_pair(&a, &b), c);
        }
    }

    #[test]
    fn zero_is_not_a_code() {
        assert!(decode(&BigUint::zero()).is_err());
    }

    #[test]
    fn name_of_x() {
        assert_eq!(name_code("x"), BigUint::from(376u32));
        assert_eq!(code_name(&BigUint::from(376u32)).unwrap(), "x");
    }

    #[test]
    fn formula_round_trip() {
        let l = Language::new("a", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap();
        for s in [
            "forall x (x = x)",
            "exists y (x < y + 1)",
            "forall z < x * 2 (not z = 0 <-> (z < 3 or 1 = 1))",
        ] {
            let f = parse_formula(s, &l).unwrap();
            let c = encode_formula(&f);
            assert_eq!(decode_formula(&c).unwrap(), f);
        }
    }

    #[test]
    fn sequences() {
        let xs: Vec<BigUint> = (0u32..6).map(BigUint::from).collect();
        assert_eq!(unseq(&seq(&xs)).unwrap(), xs);
        assert!(seq(&[]).is_zero());
    }
}
