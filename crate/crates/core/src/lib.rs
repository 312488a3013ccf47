//! A workbench for first-order interpretations between theories of
//! arithmetic: syntax, finite and oracle semantics, translations and their
//! verification, Goedel coding with the diagonal lemma, axiom streams, and the
//! computable model of nonnegative integer polynomials.

pub mod arith;
pub mod interp;
pub mod logic;
pub mod semantics;
pub mod theories;
pub mod zx;
