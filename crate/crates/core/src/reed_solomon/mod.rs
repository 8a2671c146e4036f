//! Reed-Solomon codes of length q - 1 and their Guruswami-Sudan list decoder.
//!
//! A code of dimension `k` with root-window offset `b` consists of the words
//! `(v_0 f(a^0), ..., v_{m-1} f(a^{m-1}))` for `deg f < k`, where the column
//! multipliers are `v_i = a^{i(1-b)}`. Read as polynomials these words form
//! the cyclic code whose generator has the roots `a^b, ..., a^{b+m-k-1}`.
//! The default `b = 1` (narrow sense) has all multipliers equal to one.

mod gs;

use std::collections::BTreeSet;

use crate::constituent::ListDecoder;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linear_code::{hamming_distance, Codeword, LinearCode};
use crate::poly::Polynomial;

pub use gs::{gs_params, GsParams};

#[derive(Clone, Debug)]
pub struct RsCode {
    field: Field,
    k: usize,
    offset: usize,
    multipliers: Vec<FieldElement>,
    code: LinearCode,
}

/// The consecutive roots `a^start, ..., a^{start+len-1}` (exponents mod m)
/// of a generator polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootWindow {
    pub start: usize,
    pub len: usize,
}

impl RsCode {
    /// Narrow-sense code of length q - 1 and dimension `k`.
    pub fn new(field: &Field, k: usize) -> Result<RsCode> {
        Self::with_offset(field, k, 1)
    }

    pub fn with_offset(field: &Field, k: usize, offset: usize) -> Result<RsCode> {
        let m = field.order() as usize - 1;
        if k == 0 || k >= m {
            return Err(Error::InvalidParameter(format!(
                "Reed-Solomon dimension must satisfy 1 <= k < {m}, got {k}"
            )));
        }
        let offset = offset % m;
        let shift = 1 - offset as i64;
        let multipliers: Vec<_> = (0..m).map(|i| field.alpha_pow(i as i64 * shift)).collect();
        let generator = (0..k)
            .map(|t| {
                (0..m)
                    .map(|i| field.mul(multipliers[i], field.alpha_pow((i * t) as i64)))
                    .collect()
            })
            .collect();
        let code = LinearCode::new(field, generator)?;
        Ok(RsCode { field: field.clone(), k, offset, multipliers, code })
    }

    /// The code whose cyclic form is generated by `f`, provided the roots of
    /// `f` form one consecutive window of simple roots.
    pub fn from_generator_poly(f: &Polynomial) -> Result<RsCode> {
        let field = f.field();
        let m = field.order() as usize - 1;
        let window = root_window(f).ok_or_else(|| {
            Error::InvalidParameter(format!("{f} has no consecutive root window of length deg f"))
        })?;
        Self::with_offset(field, m - window.len, window.start)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.multipliers.len()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn min_distance(&self) -> usize {
        self.length() - self.k + 1
    }

    /// Exponent of the first root of the cyclic generator.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn multipliers(&self) -> &[FieldElement] {
        &self.multipliers
    }

    pub fn linear_code(&self) -> &LinearCode {
        &self.code
    }

    pub fn evaluation_point(&self, i: usize) -> FieldElement {
        self.field.alpha_pow(i as i64)
    }

    /// Encodes the message polynomial with coefficients `message` (low to high).
    pub fn encode(&self, message: &[FieldElement]) -> Result<Codeword> {
        self.code.encode(message)
    }

    /// Codeword for the message polynomial `f`, which must have degree `< k`.
    pub fn evaluate(&self, f: &Polynomial) -> Result<Codeword> {
        if f.degree().is_some_and(|d| d >= self.k) {
            return Err(Error::InvalidParameter(format!("message polynomial degree >= {}", self.k)));
        }
        Ok((0..self.length())
            .map(|i| self.field.mul(self.multipliers[i], f.eval(self.evaluation_point(i))))
            .collect())
    }

    /// Generator polynomial of the cyclic form: `prod (x - a^j)` over the root window.
    pub fn generator_poly(&self) -> Polynomial {
        let roots: Vec<_> = (0..self.length() - self.k)
            .map(|j| self.field.alpha_pow((self.offset + j) as i64))
            .collect();
        Polynomial::from_roots(&self.field, &roots)
    }

    /// Guruswami-Sudan list decoding at multiplicity `v`: every codeword within
    /// `tau^v` of `received`, sorted.
    pub fn gs_list_decode(&self, received: &[FieldElement], v: usize) -> Result<Vec<Codeword>> {
        GsDecoder::new(self.clone(), v)?.decode(received)
    }
}

/// Locates the roots of `f` among the powers of `a` and returns them as a
/// cyclic window, or `None` if they are not `deg f` consecutive simple roots.
pub fn root_window(f: &Polynomial) -> Option<RootWindow> {
    let field = f.field();
    let m = field.order() as usize - 1;
    let deg = f.degree()?;
    if deg == 0 || deg >= m {
        return None;
    }
    let is_root: Vec<bool> = (0..m).map(|j| f.eval(field.alpha_pow(j as i64)).is_zero()).collect();
    if is_root.iter().filter(|&&r| r).count() != deg {
        return None;
    }
    // deg f distinct roots: f splits and every root is simple.
    let start = (0..m).find(|&j| is_root[j] && !is_root[(j + m - 1) % m])?;
    if (0..deg).all(|t| is_root[(start + t) % m]) {
        Some(RootWindow { start, len: deg })
    } else {
        None
    }
}

/// A Reed-Solomon constituent decoder at a fixed multiplicity.
#[derive(Clone, Debug)]
pub struct GsDecoder {
    code: RsCode,
    params: GsParams,
    interp: gs::Interpolator,
}

impl GsDecoder {
    pub fn new(code: RsCode, multiplicity: usize) -> Result<GsDecoder> {
        let params = gs_params(code.length(), code.dimension(), multiplicity)?;
        let interp = gs::Interpolator::new(&code, &params);
        Ok(GsDecoder { code, params, interp })
    }

    pub fn params(&self) -> &GsParams {
        &self.params
    }

    pub fn rs_code(&self) -> &RsCode {
        &self.code
    }
}

impl ListDecoder for GsDecoder {
    fn code(&self) -> &LinearCode {
        &self.code.code
    }

    fn tau(&self) -> usize {
        self.params.tau
    }

    fn list_cap(&self) -> Option<usize> {
        Some(self.params.list_cap)
    }

    fn decode(&self, received: &[FieldElement]) -> Result<Vec<Codeword>> {
        let code = &self.code;
        let f = &code.field;
        if received.len() != code.length() {
            return Err(Error::LengthMismatch { expected: code.length(), found: received.len() });
        }
        // Undo the column multipliers so the problem is plain polynomial reconstruction.
        let ys: Vec<_> = received
            .iter()
            .zip(&code.multipliers)
            .map(|(&r, &v)| f.div(r, v))
            .collect::<Result<_>>()?;
        let q = self.interp.interpolate(&ys)?;
        let mut out = BTreeSet::new();
        for msg in gs::y_roots(f, q, code.k) {
            let word = code.encode(&msg)?;
            if hamming_distance(&word, received) <= self.params.tau {
                out.insert(word);
            }
        }
        Ok(out.into_iter().collect())
    }

    fn describe(&self) -> String {
        format!(
            "Guruswami-Sudan [{}, {}] v={} tau={}",
            self.code.length(),
            self.code.k,
            self.params.multiplicity,
            self.params.tau
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_code::DEFAULT_ENUMERATION_CAP;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf16() -> Field {
        Field::gf(2, 4).unwrap()
    }

    fn word(f: &Field, terms: &[(i64, usize)]) -> Codeword {
        let mut w = vec![f.zero(); 15];
        for &(e, i) in terms {
            w[i] = f.alpha_pow(e);
        }
        w
    }

    #[test]
    fn quasi_cyclic_generators_are_narrow_sense() {
        let f = gf16();
        let ex1 = Polynomial::parse(
            &f,
            "x^7 + a^6*x^6 + a^13*x^5 + a^12*x^4 + a*x^3 + a^10*x^2 + a^11*x + a^13",
        )
        .unwrap();
        assert_eq!(root_window(&ex1), Some(RootWindow { start: 1, len: 7 }));
        let code = RsCode::from_generator_poly(&ex1).unwrap();
        assert_eq!((code.dimension(), code.offset()), (8, 1));
        assert_eq!(code.generator_poly(), ex1);

        let ex2 = Polynomial::parse(
            &f,
            "x^10 + a^2*x^9 + a^3*x^8 + a^9*x^7 + a^6*x^6 + a^14*x^5 + a^2*x^4 + a*x^3 + a^6*x^2 + a*x + a^10",
        )
        .unwrap();
        assert_eq!(root_window(&ex2), Some(RootWindow { start: 1, len: 10 }));
    }

    #[test]
    fn root_window_rejects_gaps_and_repeats() {
        let f = gf16();
        let gap = Polynomial::from_roots(&f, &[f.alpha_pow(1), f.alpha_pow(3)]);
        assert_eq!(root_window(&gap), None);
        let repeat = Polynomial::from_roots(&f, &[f.alpha_pow(2), f.alpha_pow(2)]);
        assert_eq!(root_window(&repeat), None);
        let wrap = Polynomial::from_roots(&f, &[f.alpha_pow(14), f.alpha_pow(0), f.alpha_pow(1)]);
        assert_eq!(root_window(&wrap), Some(RootWindow { start: 14, len: 3 }));
    }

    #[test]
    fn generator_poly_divides_every_codeword() {
        let f = gf16();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for offset in [0, 1, 4, 13] {
            let code = RsCode::with_offset(&f, 8, offset).unwrap();
            let g = code.generator_poly();
            assert_eq!(g.degree(), Some(7));
            assert!(Polynomial::x_pow_minus_one(&f, 15).rem(&g).unwrap().is_zero());
            for _ in 0..20 {
                let msg: Vec<_> = (0..8).map(|_| f.element(rng.gen_range(0..16))).collect();
                let c = Polynomial::new(&f, code.encode(&msg).unwrap());
                assert!(c.rem(&g).unwrap().is_zero(), "offset {offset}");
            }
            // Round trip through the detected window.
            let again = RsCode::from_generator_poly(&g).unwrap();
            assert_eq!(again.offset(), offset);
        }
        let high_rate = RsCode::new(&f, 14).unwrap();
        assert_eq!(high_rate.generator_poly().degree(), Some(1));
    }

    #[test]
    fn cyclic_view_products_are_codewords() {
        let f = gf16();
        let code = RsCode::new(&f, 5).unwrap();
        let cyc = LinearCode::cyclic(&code.generator_poly(), 15).unwrap();
        for row in cyc.generator() {
            assert!(code.linear_code().contains(row));
        }
    }

    #[test]
    fn dimension_bounds() {
        let f = gf16();
        assert!(RsCode::new(&f, 0).is_err());
        assert!(RsCode::new(&f, 15).is_err());
    }

    #[test]
    fn received_codeword_is_in_list() {
        let f = gf16();
        let code = RsCode::new(&f, 10).unwrap();
        let msg: Vec<_> = (0..10).map(|i| f.alpha_pow(i * 3)).collect();
        let c = code.encode(&msg).unwrap();
        assert!(code.gs_list_decode(&c, 4).unwrap().contains(&c));
    }

    #[test]
    fn worked_received_block_decodes_to_zero() {
        let f = gf16();
        let code = RsCode::new(&f, 10).unwrap();
        let p2 = word(&f, &[(5, 2), (7, 6), (8, 10)]);
        let list = code.gs_list_decode(&p2, 4).unwrap();
        assert!(list.contains(&vec![f.zero(); 15]));
    }

    fn random_error(rng: &mut ChaCha8Rng, f: &Field, m: usize, wt: usize) -> Codeword {
        let mut e = vec![f.zero(); m];
        for i in sample(rng, m, wt).iter() {
            e[i] = f.element(rng.gen_range(1..f.order()));
        }
        e
    }

    #[test]
    fn gs_equals_bruteforce_on_gf8() {
        let f = Field::gf(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for k in [2, 3] {
            for v in [1, 2] {
                let code = RsCode::new(&f, k).unwrap();
                let dec = GsDecoder::new(code.clone(), v).unwrap();
                let tau = dec.tau();
                for _ in 0..200 {
                    let msg: Vec<_> = (0..k).map(|_| f.element(rng.gen_range(0..8))).collect();
                    let c = code.encode(&msg).unwrap();
                    let wt = rng.gen_range(0..=tau);
                    let e = random_error(&mut rng, &f, 7, wt);
                    let r: Vec<_> = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
                    let got = dec.decode(&r).unwrap();
                    let want = code
                        .linear_code()
                        .list_decode_bruteforce(&r, tau, DEFAULT_ENUMERATION_CAP)
                        .unwrap();
                    assert_eq!(got, want, "k={k} v={v}");
                    assert!(got.len() <= dec.list_cap().unwrap());
                }
            }
        }
    }

    #[test]
    fn gs_handles_shifted_windows() {
        let f = Field::gf(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let code = RsCode::with_offset(&f, 3, 3).unwrap();
        let dec = GsDecoder::new(code.clone(), 2).unwrap();
        for _ in 0..50 {
            let msg: Vec<_> = (0..3).map(|_| f.element(rng.gen_range(0..8))).collect();
            let c = code.encode(&msg).unwrap();
            let e = random_error(&mut rng, &f, 7, dec.tau());
            let r: Vec<_> = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
            let want = code.linear_code().list_decode_bruteforce(&r, dec.tau(), 1 << 20).unwrap();
            assert_eq!(dec.decode(&r).unwrap(), want);
        }
    }
}
