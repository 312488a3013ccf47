//! Relative interpretations: translations, checking on finite structures,
//! and embeddings of the standard numbers.

pub mod check;
pub mod embed;
pub mod translation;

pub use check::{
    check_interpretation, check_iso_of_interpretations, check_retraction, iso_sentence,
    quotient_structure, CheckReport,
};
pub use embed::{build_initial_embedding, EmbedError, Host, NatHost};
pub use translation::{
    compose, graph_translation, identity_translation, reading_translation, relational_signature,
    translate_formula, Translation, TranslationError,
};
