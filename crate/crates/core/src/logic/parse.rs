//! Text syntax for formulas.
//!
//! ```text
//! formula  := iff
//! iff      := imp [ "<->" iff ]
//! imp      := disj [ "->" imp ]
//! disj     := conj { "or" conj }
//! conj     := unary { "and" unary }
//! unary    := "not" unary
//!           | ("forall" | "exists") VAR [ "<" term ] "(" formula ")"
//!           | "(" formula ")"
//!           | atom
//! atom     := REL [ "(" terms ")" ] | term ("=" | "<") term
//! term     := prod { "+" prod }
//! prod     := prim { "*" prim }
//! prim     := NUM | VAR | FUN [ "(" terms ")" ] | "(" term ")"
//! ```
//!
//! `and`/`or` associate to the left, `->` and `<->` to the right. Identifiers
//! are `[A-Za-z_][A-Za-z0-9_']*`; an identifier is a symbol when the language
//! declares it and a variable otherwise.

use num_bigint::BigUint;
use thiserror::Error;

use super::language::{Language, SymbolKind, ORDER, PLUS, TIMES};
use super::syntax::{Conn, Formula, Quant, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    UnknownSymbol,
    ArityMismatch,
    Syntax,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{kind:?} error at position {pos}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigUint),
    LParen,
    RParen,
    Comma,
    Eq,
    Lt,
    Plus,
    Star,
    Arrow,
    DArrow,
    Forall,
    Exists,
    And,
    Or,
    Not,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'=' => {
                i += 1;
                Tok::Eq
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::DArrow
            }
            b'<' => {
                i += 1;
                Tok::Lt
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(text[start..i].parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                match &text[start..i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    w => Tok::Ident(w.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    kind: ParseErrorKind::Lexical,
                    pos: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    lang: &'a Language,
    /// Inside a quantifier bound an unknown identifier before `(` is a
    /// variable followed by the quantifier body.
    in_bound: bool,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at < self.toks.len() - 1 {
            self.at += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(
                ParseErrorKind::Syntax,
                self.pos(),
                format!("expected {what}, found {}", describe(self.peek())),
            ))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conj()?;
            acc = Formula::Bin(Conn::Or, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::Bin(Conn::And, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantifier(),
            Tok::LParen => {
                // Either a parenthesized formula or an atom whose left term starts with `(`.
                let save = self.at;
                self.bump();
                match self.formula() {
                    Ok(f) if *self.peek() == Tok::RParen => {
                        self.bump();
                        if matches!(self.peek(), Tok::Eq | Tok::Lt) {
                            self.at = save;
                            return self.atom();
                        }
                        Ok(f)
                    }
                    first => {
                        self.at = save;
                        match self.atom() {
                            Ok(a) => Ok(a),
                            Err(e) => match first {
                                Err(fe) if fe.pos >= e.pos => Err(fe),
                                _ => Err(e),
                            },
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> PResult<Formula> {
        let q = match self.bump() {
            Tok::Forall => Quant::Forall,
            _ => Quant::Exists,
        };
        let vpos = self.pos();
        let v = match self.bump() {
            Tok::Ident(v) => v,
            other => {
                return Err(self.err(
                    ParseErrorKind::Syntax,
                    vpos,
                    format!(
                        "expected a variable after quantifier, found {}",
                        describe(&other)
                    ),
                ))
            }
        };
        if self.lang.symbol(&v).is_some() {
            return Err(self.err(
                ParseErrorKind::Syntax,
                vpos,
                format!("`{v}` is a symbol of the language and cannot be bound"),
            ));
        }
        let bound = if *self.peek() == Tok::Lt {
            let lpos = self.pos();
            if !self.lang.has_order() {
                return Err(self.err(
                    ParseErrorKind::Syntax,
                    lpos,
                    "bounded quantifier needs the order symbol `<` in the language",
                ));
            }
            self.bump();
            self.in_bound = true;
            let t = self.term();
            self.in_bound = false;
            Some(t?)
        } else {
            None
        };
        self.expect(Tok::LParen, "`(` opening the quantifier body")?;
        let body = self.formula()?;
        self.expect(Tok::RParen, "`)` closing the quantifier body")?;
        Ok(match bound {
            Some(t) => Formula::Bounded(q, v, t, Box::new(body)),
            None => Formula::Quant(q, v, Box::new(body)),
        })
    }

    fn atom(&mut self) -> PResult<Formula> {
        let pos = self.pos();
        if let Tok::Ident(name) = self.peek().clone() {
            if let Some(SymbolKind::Relation(arity)) = self.lang.symbol(&name) {
                self.bump();
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.args()?
                } else {
                    Vec::new()
                };
                if args.len() != arity {
                    return Err(self.err(
                        ParseErrorKind::ArityMismatch,
                        pos,
                        format!(
                            "relation `{name}` has arity {arity}, applied to {}",
                            args.len()
                        ),
                    ));
                }
                return Ok(Formula::Rel(name, args));
            }
            if self.lang.symbol(&name).is_none() && *self.peek_at(1) == Tok::LParen {
                return Err(self.err(
                    ParseErrorKind::UnknownSymbol,
                    pos,
                    format!("unknown symbol `{name}`"),
                ));
            }
        }
        let lhs = self.term()?;
        let opos = self.pos();
        match self.bump() {
            Tok::Eq => Ok(Formula::Eq(lhs, self.term()?)),
            Tok::Lt => {
                if !self.lang.has_order() {
                    return Err(self.err(
                        ParseErrorKind::UnknownSymbol,
                        opos,
                        "the language has no order symbol `<`",
                    ));
                }
                Ok(Formula::Rel(ORDER.to_string(), vec![lhs, self.term()?]))
            }
            other => Err(self.err(
                ParseErrorKind::Syntax,
                opos,
                format!(
                    "expected `=` or `<` after a term, found {}",
                    describe(&other)
                ),
            )),
        }
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                other => {
                    return Err(self.err(
                        ParseErrorKind::Syntax,
                        self.toks[self.at.saturating_sub(1)].1,
                        format!("expected `,` or `)`, found {}", describe(&other)),
                    ))
                }
            }
        }
    }

    fn binop_allowed(&self, sym: &str, pos: usize) -> PResult<()> {
        if self.lang.function_arity(sym) == Some(2) {
            Ok(())
        } else {
            Err(self.err(
                ParseErrorKind::UnknownSymbol,
                pos,
                format!("the language has no binary function `{sym}`"),
            ))
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.prod()?;
        while *self.peek() == Tok::Plus {
            let pos = self.pos();
            self.binop_allowed(PLUS, pos)?;
            self.bump();
            let rhs = self.prod()?;
            acc = Term::plus(acc, rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut acc = self.prim()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.binop_allowed(TIMES, pos)?;
            self.bump();
            let rhs = self.prim()?;
            acc = Term::times(acc, rhs);
        }
        Ok(acc)
    }

    fn prim(&mut self) -> PResult<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(k) => {
                if !self.lang.allows_numerals() {
                    return Err(self.err(
                        ParseErrorKind::UnknownSymbol,
                        pos,
                        "numeric literals need an arithmetic language",
                    ));
                }
                Ok(Term::Num(k))
            }
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) => match self.lang.symbol(&name) {
                Some(SymbolKind::Function(arity)) => {
                    let args = if arity > 0 && *self.peek() == Tok::LParen {
                        self.bump();
                        self.args()?
                    } else {
                        Vec::new()
                    };
                    if args.len() != arity {
                        return Err(self.err(
                            ParseErrorKind::ArityMismatch,
                            pos,
                            format!(
                                "function `{name}` has arity {arity}, applied to {}",
                                args.len()
                            ),
                        ));
                    }
                    Ok(Term::App(name, args))
                }
                Some(SymbolKind::Relation(_)) => Err(self.err(
                    ParseErrorKind::Syntax,
                    pos,
                    format!("relation `{name}` used as a term"),
                )),
                None => {
                    if *self.peek() == Tok::LParen && !self.in_bound {
                        return Err(self.err(
                            ParseErrorKind::UnknownSymbol,
                            pos,
                            format!("unknown symbol `{name}`"),
                        ));
                    }
                    Ok(Term::Var(name))
                }
            },
            other => Err(self.err(
                ParseErrorKind::Syntax,
                pos,
                format!("expected a term, found {}", describe(&other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(k) => format!("`{k}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Star => "`*`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::DArrow => "`<->`".into(),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::And => "`and`".into(),
        Tok::Or => "`or`".into(),
        Tok::Not => "`not`".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_formula(text: &str, lang: &Language) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        lang,
        in_bound: false,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.err(
            ParseErrorKind::Syntax,
            p.pos(),
            format!("unexpected {} after formula", describe(p.peek())),
        ));
    }
    Ok(f)
}

pub fn parse_term(text: &str, lang: &Language) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        lang,
        in_bound: false,
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.err(
            ParseErrorKind::Syntax,
            p.pos(),
            format!("unexpected {} after term", describe(p.peek())),
        ));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::print_formula;

    fn graph() -> Language {
        Language::new("graph", &[("E", 2)], &[]).unwrap()
    }

    fn ord() -> Language {
        Language::new("ord", &[("<", 2)], &[]).unwrap()
    }

    fn arith() -> Language {
        Language::new("arith", &[("<", 2)], &[("+", 2), ("*", 2)]).unwrap()
    }

    #[test]
    fn parses_quantified_atom() {
        let f = parse_formula("forall x (E(x,x))", &graph()).unwrap();
        assert_eq!(
            f,
            Formula::forall("x", Formula::rel("E", vec![Term::var("x"), Term::var("x")]))
        );
    }

    #[test]
    fn order_atom_has_free_variable() {
        let f = parse_formula("exists y (x < y)", &ord()).unwrap();
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x"]);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let e = parse_formula("E(x)", &graph()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ArityMismatch);
        assert_eq!(e.pos, 0);
    }

    #[test]
    fn error_kinds_carry_positions() {
        let e = parse_formula("E(x,y) and F(x)", &graph()).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::UnknownSymbol, 11));
        let e = parse_formula("E(x,y) $ E(y,x)", &graph()).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::Lexical, 7));
        let e = parse_formula("forall x E(x,x)", &graph()).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::Syntax, 9));
        let e = parse_formula("forall x < y (E(x,y))", &graph()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let a = arith();
        let f = parse_formula("(x+y) = z", &a).unwrap();
        assert_eq!(
            f,
            Formula::eq(Term::plus(Term::var("x"), Term::var("y")), Term::var("z"))
        );
        let g = parse_formula("((0+1)+1) = x and (x < 1 or x = 1)", &a).unwrap();
        assert_eq!(print_formula(&g), "(((0+1)+1) = x and (x < 1 or x = 1))");
    }

    #[test]
    fn precedence_and_associativity() {
        let g = graph();
        let f = parse_formula("E(x,y) and E(y,x) or not E(x,x) -> E(y,y) -> E(x,y)", &g).unwrap();
        assert_eq!(
            print_formula(&f),
            "(((E(x,y) and E(y,x)) or not E(x,x)) -> (E(y,y) -> E(x,y)))"
        );
    }

    #[test]
    fn print_then_parse_is_identity_on_samples() {
        let a = arith();
        for text in [
            "forall x < (y+1) (exists z (x = (z*z)))",
            "not not (0 = 1 <-> forall x (x = x))",
            "exists x' (x' < x'')",
        ] {
            let f = parse_formula(text, &a).unwrap();
            let printed = print_formula(&f);
            assert_eq!(parse_formula(&printed, &a).unwrap(), f, "{printed}");
        }
    }
}
