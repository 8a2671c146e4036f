//! Arithmetic in GF(p^m) backed by log/antilog tables.
//!
//! Elements are stored as a single integer whose base-p digits are the
//! coefficients (low to high) of the polynomial representative modulo the
//! field's defining polynomial. The residue class of `x` is the primitive
//! element `a`, so every nonzero element is `a^k` for a unique `k < q - 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built unless a caller raises it.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order also get full addition and multiplication tables.
const DENSE_TABLE_ORDER: u32 = 256;

/// An element of a [`Field`]. Only meaningful together with the field it
/// was produced by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Raw base-p encoding of the element.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
}

/// The finite field GF(p^m). Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.t.p)
            .field("m", &self.t.m)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl Field {
    /// Builds GF(p^m). With `modulus == None` the default defining polynomial
    /// for `(p, m)` is used (see [`default_modulus`]).
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        Self::with_max_order(p, m, modulus, DEFAULT_MAX_ORDER)
    }

    /// GF(p^m) under the default modulus.
    pub fn gf(p: u32, m: u32) -> Result<Field> {
        Self::new(p, m, None)
    }

    pub fn with_max_order(
        p: u32,
        m: u32,
        modulus: Option<&[u32]>,
        max_order: u64,
    ) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= max_order && q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(m)))?;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 || c.iter().any(|&d| d >= p) {
                    return Err(Error::BadModulus { expected: m as usize });
                }
                c.to_vec()
            }
            None => default_modulus(p, m)?,
        };
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let tables = build_tables(p, m, q as u32, modulus)?;
        Ok(Field { t: Arc::new(tables) })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.m
    }

    /// Number of elements q = p^m.
    #[inline]
    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Defining polynomial, coefficients low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The primitive element (residue class of x).
    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    /// `a^k`, with `k` reduced mod q-1 (negative exponents allowed).
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let n = (self.t.q - 1) as i64;
        FieldElement(self.t.exp[k.rem_euclid(n) as usize])
    }

    /// Element from its raw encoding. Panics if the value is out of range.
    pub fn element(&self, value: u32) -> FieldElement {
        assert!(value < self.t.q, "value {value} out of range for GF({})", self.t.q);
        FieldElement(value)
    }

    /// Checked variant of [`Field::element`].
    pub fn try_element(&self, value: u32) -> Result<FieldElement> {
        if value < self.t.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "value {value} out of range for GF({})",
                self.t.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t.p as i64) as u32)
    }

    /// Discrete logarithm to base `a`; `None` for zero.
    #[inline]
    pub fn log(&self, e: FieldElement) -> Option<u32> {
        if e.0 == 0 {
            None
        } else {
            Some(self.t.log[e.0 as usize])
        }
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.t.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &self.t.add {
            Some(tab) => FieldElement(tab[(a.0 * self.t.q + b.0) as usize]),
            None => FieldElement(digitwise(a.0, b.0, self.t.p, |x, y, p| (x + y) % p)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(tab) = &self.t.mul {
            return FieldElement(tab[(a.0 * self.t.q + b.0) as usize]);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.t;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.t.q - 1;
        Ok(FieldElement(self.t.exp[((n - self.t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        match self.log(a) {
            None => FieldElement::ZERO,
            Some(l) => {
                let order = (self.t.q - 1) as u64;
                FieldElement(self.t.exp[((l as u64 * (n % order)) % order) as usize])
            }
        }
    }

    /// Dot product of two equal-length slices.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `dst += c * src`, elementwise.
    pub fn axpy(&self, dst: &mut [FieldElement], c: FieldElement, src: &[FieldElement]) {
        if c.is_zero() {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    /// Parses `0`, `1`, `a` or `a^k`. Exponents are reduced mod q-1.
    pub fn parse_element(&self, token: &str) -> Result<FieldElement> {
        let tok = token.trim();
        match tok {
            "0" => return Ok(FieldElement::ZERO),
            "1" => return Ok(FieldElement::ONE),
            "a" => return Ok(self.alpha()),
            _ => {}
        }
        let exp = tok
            .strip_prefix("a^")
            .ok_or_else(|| Error::Parse(format!("malformed element token `{tok}`")))?;
        let k: u64 = exp
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("malformed exponent in `{tok}`")))?;
        Ok(self.alpha_pow((k % (self.t.q as u64 - 1)) as i64))
    }

    /// Canonical token for an element: `0`, `1`, `a` or `a^k` with `1 < k < q-1`.
    pub fn format_element(&self, e: FieldElement) -> String {
        match self.log(e) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "a".to_string(),
            Some(k) => format!("a^{k}"),
        }
    }

    /// Comma-separated tokens for a vector of elements.
    pub fn format_vector(&self, v: &[FieldElement]) -> String {
        v.iter()
            .map(|&e| self.format_element(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a comma-separated list of element tokens.
    pub fn parse_vector(&self, text: &str) -> Result<Vec<FieldElement>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(|t| self.parse_element(t)).collect()
    }
}

fn digitwise(mut a: u32, mut b: u32, p: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += op(a % p, b % p, p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn build_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Result<Tables> {
    let n = q - 1;
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; q as usize];
    let mut seen = vec![false; q as usize];

    // Repeated multiplication by x on the digit vector.
    let mut digits = vec![0u32; m as usize];
    digits[0] = 1;
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for i in 0..n {
        let v = encode(&digits);
        if v == 0 || seen[v as usize] {
            let order = if v == 0 { 0 } else { i as u64 - log[v as usize] as u64 };
            return Err(Error::NonPrimitiveModulus { order, expected: n as u64 });
        }
        seen[v as usize] = true;
        exp[i as usize] = v;
        log[v as usize] = i;
        let top = digits[m as usize - 1];
        for j in (1..m as usize).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        // x^m ≡ -(c_0 + c_1 x + ... + c_{m-1} x^{m-1})
        for j in 0..m as usize {
            let t = (top as u64 * ((p - modulus[j]) % p) as u64 % p as u64) as u32;
            digits[j] = (digits[j] + t) % p;
        }
    }
    if encode(&digits) != 1 {
        return Err(Error::NonPrimitiveModulus { order: 0, expected: n as u64 });
    }
    for i in n..2 * n {
        exp[i as usize] = exp[(i - n) as usize];
    }

    let neg: Vec<u32> = (0..q)
        .map(|v| digitwise(0, v, p, |_, y, p| (p - y) % p))
        .collect();

    let (add, mul) = if q <= DENSE_TABLE_ORDER {
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let idx = (a * q + b) as usize;
                add[idx] = digitwise(a, b, p, |x, y, p| (x + y) % p);
                mul[idx] = if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                };
            }
        }
        (Some(add), Some(mul))
    } else {
        (None, None)
    };

    Ok(Tables { p, m, q, modulus, exp, log, neg, add, mul })
}

/// Default defining polynomial: `x^4 + x + 1` for GF(16), `x^3 + x + 1` for
/// GF(8), `x - g` for the smallest primitive root `g` of a prime field,
/// otherwise the first primitive monic polynomial of degree `m` in order of
/// its base-p encoded tail.
pub fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    match (p, m) {
        (2, 4) => return Ok(vec![1, 1, 0, 0, 1]),
        (2, 3) => return Ok(vec![1, 1, 0, 1]),
        _ => {}
    }
    let q = (p as u64).pow(m);
    if m == 1 {
        // x - g for the smallest primitive root g, so that a = g.
        for g in 1..p {
            let c = vec![(p - g) % p, 1];
            if build_tables(p, 1, p, c.clone()).is_ok() {
                return Ok(c);
            }
        }
    }
    for tail in 0..q {
        let mut c = Vec::with_capacity(m as usize + 1);
        let mut t = tail;
        for _ in 0..m {
            c.push((t % p as u64) as u32);
            t /= p as u64;
        }
        c.push(1);
        if c[0] == 0 || !is_irreducible_mod_p(&c, p) {
            continue;
        }
        if build_tables(p, m, q as u32, c.clone()).is_ok() {
            return Ok(c);
        }
    }
    Err(Error::InvalidParameter(format!("no primitive polynomial of degree {m} over GF({p})")))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial division by every monic polynomial of degree `1..=deg/2` over GF(p).
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if remainder_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by a monic `g` over GF(p).
fn remainder_mod_p(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (j, &gj) in g.iter().enumerate() {
                let sub = (lead as u64 * gj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}
