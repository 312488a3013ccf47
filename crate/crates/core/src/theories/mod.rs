//! Axiom streams for the arithmetic theories and the theory combinators.

pub mod catalog;
pub mod combine;
pub mod ct;
pub mod enumerate;
pub mod schemes;
pub mod stream;
pub mod templates;
pub mod type_p;

pub use catalog::{builtin_language, named_stream, CatalogError, STREAM_NAMES};
pub use combine::{
    cantor_pair, cantor_unpair, gamma_con_stream, interleave, oplus, oplus2, oplus_family,
    reflection_stream, union_language, CombineError,
};
pub use ct::{ct_axioms, ct_clauses, ct_language};
pub use enumerate::FormulaEnumeration;
pub use schemes::{base_scheme, BaseKind};
pub use stream::{tautology, AxiomStream};
pub use templates::{
    assemble_template_theory, stub_components, stub_family, w_members, ComponentFamily,
    TemplateError, TemplateTheory, TheoryComponents,
};
pub use type_p::{
    diagonal_supplier, k_sequence, one_free_formulas, stub_supplier, type_p_stream,
    FlexibleSupplier,
};
