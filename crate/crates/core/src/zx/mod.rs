//! The nonnegative part of Z[X] as a model of PA-minus.

pub mod demo;
pub mod harness;
pub mod host;
pub mod maps;
pub mod poly;

pub use demo::{order_reversal_demo, reversal_translation, single_reversal_report};
pub use harness::{zx_harness, HarnessCheck, HarnessReport};
pub use host::ZxHost;
pub use maps::{
    decode_poly, delta_formula, delta_standard_cut, encode_poly, h_inverse, h_map, iota_map,
    j_embed, ZxError,
};
pub use poly::{poly_ops, Poly, PolyOp, PolyParseError, PolyValue};
