//! Goedel coding, code predicates, numerals, a Hilbert proof checker,
//! consistency and reflection sentences, and the diagonal constructions.

pub mod coding;
pub mod diagonal;
pub mod model;
pub mod numeral;
pub mod predicates;
pub mod proof;
pub mod sentences;

pub use coding::{decode, encode_formula, encode_term, CodeError, Syntax};
pub use diagonal::{diagonal_fixpoint, make_flexible, Diagonal, DiagonalCertificate, FlexVariant};
pub use model::{register_theory, standard_model, with_truth_levels};
pub use numeral::{ackermann_bit, numeral, numeral_subst, subst_code, val};
pub use predicates::{code_predicates, CodeInfo};
pub use proof::{check_proof, verify_proof, Arg, Just, ProofObject, Schema};
pub use sentences::{con_sentence, gamma_con_instance, reflection_instance};

/// Encodes a term or formula.
pub fn encode(o: &Syntax) -> num_bigint::BigUint {
    o.encode()
}
