//! Languages, terms, formulas and the purely syntactic operations on them.

pub mod language;
pub mod parse;
pub mod prenex;
pub mod relational;
pub mod subst;
pub mod syntax;

pub use language::{Language, LanguageError, SymbolKind};
pub use parse::{parse_formula, parse_term, ParseError, ParseErrorKind};
pub use prenex::{classify, declared_class, prenex_classify, sigma_rank, FormulaClass};
pub use relational::relationalize;
pub use subst::{rectify, substitute, substitute_term};
pub use syntax::{fresh_var, print_formula, Conn, Formula, Quant, Term};
