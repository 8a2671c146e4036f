//! List decoders for the constituent codes of a matrix-product code.

use crate::error::Result;
use crate::field::FieldElement;
use crate::linear_code::{Codeword, LinearCode, DEFAULT_ENUMERATION_CAP};

/// A list decoder with a fixed error bound: `decode(r)` must return exactly
/// the codewords within distance [`ListDecoder::tau`] of `r`.
pub trait ListDecoder: Send + Sync {
    fn code(&self) -> &LinearCode;

    fn tau(&self) -> usize;

    /// Upper bound on the output size, when the decoder has one.
    fn list_cap(&self) -> Option<usize>;

    fn decode(&self, received: &[FieldElement]) -> Result<Vec<Codeword>>;

    fn describe(&self) -> String;
}

/// Exhaustive decoder for codes small enough to enumerate.
#[derive(Clone, Debug)]
pub struct BruteForceDecoder {
    code: LinearCode,
    tau: usize,
    cap: u128,
}

impl BruteForceDecoder {
    pub fn new(code: LinearCode, tau: usize) -> Self {
        BruteForceDecoder { code, tau, cap: DEFAULT_ENUMERATION_CAP }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }
}

impl ListDecoder for BruteForceDecoder {
    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn tau(&self) -> usize {
        self.tau
    }

    fn list_cap(&self) -> Option<usize> {
        None
    }

    fn decode(&self, received: &[FieldElement]) -> Result<Vec<Codeword>> {
        self.code.list_decode_bruteforce(received, self.tau, self.cap)
    }

    fn describe(&self) -> String {
        format!(
            "brute force [{}, {}] tau={}",
            self.code.length(),
            self.code.dimension(),
            self.tau
        )
    }
}
