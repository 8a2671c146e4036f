//! Matrix-product codes `[C_1 ... C_s] * A` over finite fields.
//!
//! The crate covers the whole pipeline: GF(p^m) arithmetic, polynomial and
//! quotient-ring arithmetic, generic linear codes with brute-force oracles,
//! Reed-Solomon codes with Guruswami-Sudan list decoding, scalar and
//! polynomial-unit matrix-product codes, the block-elimination list decoder,
//! and the probability and complexity accounting around it.

pub mod analysis;
pub mod codespec;
pub mod constituent;
pub mod decoder;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linear_code;
pub mod matrix_product;
pub mod poly;
pub mod reed_solomon;
pub mod simulation;
pub mod unit_mpc;

pub use analysis::{ProbEstimate, WeightModel};
pub use num_rational::BigRational;
pub use codespec::{AnyDecoder, CodeSpec, DistanceInfo};
pub use constituent::{BruteForceDecoder, ListDecoder};
pub use decoder::{
    good_index_tuple, tau_bound, BlockRing, DecodeOptions, DecodeOutput, DecoderSpec, MatrixProductCode,
};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use linear_code::{Codeword, LinearCode};
pub use matrix_product::{BlockWord, ScalarMatrix, ScalarMpc};
pub use poly::{Polynomial, RingElement};
pub use reed_solomon::{gs_params, GsDecoder, GsParams, RsCode};
pub use simulation::{simulate, SimReport};
pub use unit_mpc::{CyclicRing, DStar, PolyMatrix, UnitMpc};
