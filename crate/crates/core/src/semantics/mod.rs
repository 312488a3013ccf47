//! Evaluation: exhaustive over finite structures, fuel-bounded and
//! three-valued over the naturals extended with oracle symbols.

pub mod finite;
pub mod oracle;

pub use finite::{definable_relation, eval_finite, Assignment, EvalError, FiniteStructure};
pub use oracle::{
    eval_oracle, OracleError, OracleFunction, OracleModel, OraclePredicate, TermEval, Truth, Value,
};
