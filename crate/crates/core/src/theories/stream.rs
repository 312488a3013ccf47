use std::fmt;
use std::sync::Arc;

use crate::logic::{Formula, Language, Term};

/// The padding sentence `forall x (x = x)`.
pub fn tautology() -> Formula {
    Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")))
}

type Gen = dyn Fn(u64) -> Formula + Send + Sync;

/// A total, deterministic map from indices to sentences.
#[derive(Clone)]
pub struct AxiomStream {
    name: String,
    language: Language,
    gen: Arc<Gen>,
    /// Number of genuine axioms when the stream is padded after them.
    finite: Option<u64>,
}

impl fmt::Debug for AxiomStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxiomStream")
            .field("name", &self.name)
            .field("finite", &self.finite)
            .finish()
    }
}

impl AxiomStream {
    pub fn new(
        name: impl Into<String>,
        language: Language,
        gen: impl Fn(u64) -> Formula + Send + Sync + 'static,
    ) -> AxiomStream {
        AxiomStream {
            name: name.into(),
            language,
            gen: Arc::new(gen),
            finite: None,
        }
    }

    /// The listed axioms followed by the padding tautology.
    pub fn finite(
        name: impl Into<String>,
        language: Language,
        axioms: Vec<Formula>,
    ) -> AxiomStream {
        let n = axioms.len() as u64;
        let axioms = Arc::new(axioms);
        AxiomStream {
            name: name.into(),
            language,
            gen: Arc::new(move |i| axioms.get(i as usize).cloned().unwrap_or_else(tautology)),
            finite: Some(n),
        }
    }

    pub fn empty(language: Language) -> AxiomStream {
        AxiomStream::finite("empty", language, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    /// Number of genuine axioms, for padded streams.
    pub fn finite_len(&self) -> Option<u64> {
        self.finite
    }

    pub fn axiom_at(&self, i: u64) -> Formula {
        (self.gen)(i)
    }

    pub fn take(&self, n: u64) -> Vec<Formula> {
        (0..n).map(|i| self.axiom_at(i)).collect()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> AxiomStream {
        self.name = name.into();
        self
    }
}
