#![allow(dead_code)]

use mpc_core::{AnyDecoder, BlockWord, CodeSpec, Field, FieldElement, RingElement};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn spec_text(name: &str) -> String {
    let path = format!("{}/../../specs/{name}.spec", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load(name: &str) -> (CodeSpec, AnyDecoder) {
    let spec = CodeSpec::parse(&spec_text(name)).unwrap();
    let dec = spec.build().unwrap();
    (spec, dec)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A block given as a polynomial in `x`, e.g. `a^2*x + a*x^5`.
pub fn block(f: &Field, m: usize, text: &str) -> Vec<FieldElement> {
    RingElement::parse(f, m, text).unwrap().into_coeffs()
}

pub fn random_element(f: &Field, rng: &mut impl Rng) -> FieldElement {
    f.element(rng.gen_range(0..f.order()))
}

pub fn random_codeword(dec: &AnyDecoder, rng: &mut impl Rng) -> BlockWord {
    let f = dec.field();
    let msg: Vec<_> = (0..dec.dimension()).map(|_| random_element(f, rng)).collect();
    dec.encode_flat(&msg).unwrap()
}

/// Uniform error of exact weight `w` on `n = l * m` positions.
pub fn random_error(dec: &AnyDecoder, w: usize, rng: &mut impl Rng) -> BlockWord {
    let f = dec.field();
    let n = dec.length();
    let mut e = vec![f.zero(); n];
    for pos in sample(rng, n, w) {
        e[pos] = f.element(rng.gen_range(1..f.order()));
    }
    BlockWord::from_flat(&e, dec.block_len()).unwrap()
}
