use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The designated order symbol. Bounded quantifiers are only legal in
/// languages that declare it as a binary relation.
pub const ORDER: &str = "<";
/// Languages declaring `+` as a binary function may use numeric literals.
pub const PLUS: &str = "+";
pub const TIMES: &str = "*";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("symbol `{0}` declared more than once")]
    Duplicate(String),
    #[error("malformed language document: {0}")]
    Json(String),
}

/// A finite first-order signature. Constants are 0-ary functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Language {
    pub name: String,
    pub relations: Vec<(String, usize)>,
    pub functions: Vec<(String, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Relation(usize),
    Function(usize),
}

impl Language {
    pub fn new(
        name: impl Into<String>,
        relations: &[(&str, usize)],
        functions: &[(&str, usize)],
    ) -> Result<Language, LanguageError> {
        let lang = Language {
            name: name.into(),
            relations: relations.iter().map(|(s, a)| (s.to_string(), *a)).collect(),
            functions: functions.iter().map(|(s, a)| (s.to_string(), *a)).collect(),
        };
        lang.validate()?;
        Ok(lang)
    }

    pub fn from_json(text: &str) -> Result<Language, LanguageError> {
        let lang: Language =
            serde_json::from_str(text).map_err(|e| LanguageError::Json(e.to_string()))?;
        lang.validate()?;
        Ok(lang)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("language serializes")
    }

    pub fn validate(&self) -> Result<(), LanguageError> {
        let mut seen = std::collections::BTreeSet::new();
        for (s, _) in self.relations.iter().chain(self.functions.iter()) {
            if !seen.insert(s.as_str()) {
                return Err(LanguageError::Duplicate(s.clone()));
            }
        }
        Ok(())
    }

    pub fn symbol(&self, sym: &str) -> Option<SymbolKind> {
        if let Some((_, a)) = self.relations.iter().find(|(s, _)| s == sym) {
            return Some(SymbolKind::Relation(*a));
        }
        self.functions
            .iter()
            .find(|(s, _)| s == sym)
            .map(|(_, a)| SymbolKind::Function(*a))
    }

    pub fn relation_arity(&self, sym: &str) -> Option<usize> {
        match self.symbol(sym) {
            Some(SymbolKind::Relation(a)) => Some(a),
            _ => None,
        }
    }

    pub fn function_arity(&self, sym: &str) -> Option<usize> {
        match self.symbol(sym) {
            Some(SymbolKind::Function(a)) => Some(a),
            _ => None,
        }
    }

    pub fn has_order(&self) -> bool {
        self.relation_arity(ORDER) == Some(2)
    }

    pub fn allows_numerals(&self) -> bool {
        self.function_arity(PLUS) == Some(2)
    }

    pub fn is_relational(&self) -> bool {
        self.functions.iter().all(|(_, a)| *a == 0)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Language {
        self.name = name.into();
        self
    }

    /// Returns a copy extended with extra relation symbols (skipping ones already present).
    pub fn with_relations(&self, extra: &[(String, usize)]) -> Language {
        let mut out = self.clone();
        for (s, a) in extra {
            if out.symbol(s).is_none() {
                out.relations.push((s.clone(), *a));
            }
        }
        out
    }

    pub fn with_functions(&self, extra: &[(String, usize)]) -> Language {
        let mut out = self.clone();
        for (s, a) in extra {
            if out.symbol(s).is_none() {
                out.functions.push((s.clone(), *a));
            }
        }
        out
    }

    /// True when every symbol of `self` occurs in `other` with the same kind and arity.
    pub fn is_sublanguage_of(&self, other: &Language) -> bool {
        self.relations
            .iter()
            .all(|(s, a)| other.relation_arity(s) == Some(*a))
            && self
                .functions
                .iter()
                .all(|(s, a)| other.function_arity(s) == Some(*a))
    }

    pub fn arity_table(&self) -> BTreeMap<String, SymbolKind> {
        let mut m = BTreeMap::new();
        for (s, a) in &self.relations {
            m.insert(s.clone(), SymbolKind::Relation(*a));
        }
        for (s, a) in &self.functions {
            m.insert(s.clone(), SymbolKind::Function(*a));
        }
        m
    }
}
