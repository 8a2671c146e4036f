//! Univariate polynomials over a [`Field`] and the quotient ring
//! F_q[x]/(x^m - 1) that hosts cyclic codes and polynomial-unit matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A polynomial with coefficients stored low to high, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Polynomial {
        Self::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: &Field, c: FieldElement) -> Polynomial {
        Self::new(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: &Field, c: FieldElement, k: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(field: &Field, m: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; m + 1];
        coeffs[0] = field.neg(FieldElement::ONE);
        coeffs[m] = FieldElement::ONE;
        Self::new(field, coeffs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Polynomial {
        roots.iter().fold(Self::one(field), |acc, &r| {
            acc.mul(&Self::new(field, vec![field.neg(r), FieldElement::ONE]))
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Polynomial,
        op: impl Fn(&Field, FieldElement, FieldElement) -> FieldElement,
    ) -> Polynomial {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| op(&self.field, self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        assert_eq!(self.field, divisor.field, "polynomials over different fields");
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales to leading coefficient 1 (the zero polynomial is returned as is).
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading()) {
            Ok(c) => self.scale(c),
            Err(_) => self.clone(),
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn gcd_ext(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidParameter("gcd of two zero polynomials".into()));
        }
        let f = a.field();
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = f.inv(r0.leading())?;
        Ok((r0.scale(c), s0.scale(c), t0.scale(c)))
    }

    /// Parses a sum of terms `c*x^k`, `c*x`, `c`, `x^k`, `x` where `c` is an
    /// element token. Whitespace is ignored; `-` negates the following term.
    pub fn parse(field: &Field, text: &str) -> Result<Polynomial> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Polynomial::zero(field);
        let mut rest = s.as_str();
        let mut negate = false;
        if let Some(r) = rest.strip_prefix('-') {
            negate = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = parse_term(field, &rest[..end])?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            if end == rest.len() {
                break;
            }
            negate = rest.as_bytes()[end] == b'-';
            rest = &rest[end + 1..];
        }
        Ok(acc)
    }
}

fn parse_term(field: &Field, term: &str) -> Result<Polynomial> {
    let bad = || Error::Parse(format!("malformed polynomial term `{term}`"));
    if term.is_empty() {
        return Err(bad());
    }
    let (coeff, mono) = match term.split_once('*') {
        Some((c, x)) => (field.parse_element(c)?, Some(x)),
        None if term.starts_with('x') => (FieldElement::ONE, Some(term)),
        None => (field.parse_element(term)?, None),
    };
    let k = match mono {
        None => 0,
        Some("x") => 1,
        Some(x) => x
            .strip_prefix("x^")
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    Ok(Polynomial::monomial(field, coeff, k))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let tok = self.field.format_element(c);
            match (k, tok.as_str()) {
                (0, _) => write!(out, "{tok}")?,
                (1, "1") => write!(out, "x")?,
                (1, _) => write!(out, "{tok}*x")?,
                (_, "1") => write!(out, "x^{k}")?,
                _ => write!(out, "{tok}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// A residue in F_q[x]/(x^m - 1), stored as its `m` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl RingElement {
    /// Reduces `poly` modulo `x^m - 1`.
    pub fn new(poly: &Polynomial, m: usize) -> RingElement {
        assert!(m > 0, "ring modulus length must be positive");
        let f = poly.field();
        let mut coeffs = vec![FieldElement::ZERO; m];
        for (i, &c) in poly.coeffs().iter().enumerate() {
            coeffs[i % m] = f.add(coeffs[i % m], c);
        }
        RingElement { field: f.clone(), coeffs }
    }

    /// Interprets a length-m vector as the residue `sum v_i x^i`.
    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> RingElement {
        assert!(!coeffs.is_empty(), "ring modulus length must be positive");
        RingElement { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field, m: usize) -> RingElement {
        Self::from_coeffs(field, vec![FieldElement::ZERO; m])
    }

    pub fn one(field: &Field, m: usize) -> RingElement {
        Self::constant(field, m, FieldElement::ONE)
    }

    pub fn constant(field: &Field, m: usize, c: FieldElement) -> RingElement {
        let mut coeffs = vec![FieldElement::ZERO; m];
        coeffs[0] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn parse(field: &Field, m: usize, text: &str) -> Result<RingElement> {
        Ok(Self::new(&Polynomial::parse(field, text)?, m))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The ring parameter `m`.
    pub fn modulus_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Hamming weight of the length-m coefficient vector.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: self.coeffs.len(),
                found: other.coeffs.len(),
            });
        }
        assert_eq!(self.field, other.field, "ring elements over different fields");
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(RingElement::from_coeffs(f, coeffs))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(RingElement::from_coeffs(f, coeffs))
    }

    pub fn neg(&self) -> RingElement {
        let f = &self.field;
        RingElement::from_coeffs(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(RingElement::from_coeffs(&self.field, self.mul_vector(&other.coeffs)))
    }

    /// Cyclic convolution of this residue with a length-m vector.
    pub fn mul_vector(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let m = self.coeffs.len();
        assert_eq!(v.len(), m, "vector length must equal the ring parameter");
        let mut out = vec![FieldElement::ZERO; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                let k = if i + j >= m { i + j - m } else { i + j };
                out[k] = f.add(out[k], f.mul(a, b));
            }
        }
        out
    }

    /// True iff `gcd(residue, x^m - 1) = 1`.
    pub fn is_unit(&self) -> bool {
        let modulus = Polynomial::x_pow_minus_one(&self.field, self.coeffs.len());
        match Polynomial::gcd_ext(&self.to_polynomial(), &modulus) {
            Ok((g, _, _)) => g.is_one(),
            Err(_) => false,
        }
    }

    pub fn inv(&self) -> Result<RingElement> {
        let m = self.coeffs.len();
        let modulus = Polynomial::x_pow_minus_one(&self.field, m);
        let (g, s, _) = Polynomial::gcd_ext(&self.to_polynomial(), &modulus)?;
        if !g.is_one() {
            return Err(Error::NotAUnit);
        }
        Ok(RingElement::new(&s, m))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({} mod x^{}-1)", self.to_polynomial(), self.coeffs.len())
    }
}
