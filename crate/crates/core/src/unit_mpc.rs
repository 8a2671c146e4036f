//! Matrix-product codes whose matrix entries are units (or zero) of
//! `F_q[x]/(x^m - 1)` and whose constituents are cyclic codes of length `m`.
//! These are quasi-cyclic codes of index `l`.

use itertools::Itertools;

use crate::decoder::{BlockRing, MatrixProductCode};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linear_code::LinearCode;
use crate::poly::RingElement;

/// Default cap on the number of module elements enumerated for `D_i`.
pub const DEFAULT_MODULE_CAP: u128 = 1 << 22;

/// `F_q[x]/(x^m - 1)` acting on length-`m` blocks by cyclic convolution.
#[derive(Clone, Debug)]
pub struct CyclicRing {
    field: Field,
    m: usize,
}

impl CyclicRing {
    pub fn new(field: &Field, m: usize) -> CyclicRing {
        CyclicRing { field: field.clone(), m }
    }

    pub fn modulus_len(&self) -> usize {
        self.m
    }
}

impl BlockRing for CyclicRing {
    type Elem = RingElement;

    fn field(&self) -> &Field {
        &self.field
    }

    fn is_zero(&self, a: &RingElement) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        a.inv().ok()
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.mul(b).expect("ring elements share the modulus")
    }

    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.sub(b).expect("ring elements share the modulus")
    }

    fn scale_block(&self, a: &RingElement, block: &[FieldElement]) -> Vec<FieldElement> {
        a.mul_vector(block)
    }
}

/// An `s x l` matrix over `F_q[x]/(x^m - 1)` with unit or zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<RingElement>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<RingElement>>) -> Result<PolyMatrix> {
        let s = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        if s == 0 || l == 0 {
            return Err(Error::InvalidParameter("matrix must be non-empty".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != l) {
            return Err(Error::LengthMismatch { expected: l, found: r.len() });
        }
        if s > l {
            return Err(Error::InvalidParameter(format!("matrix has {s} rows but only {l} columns")));
        }
        let m = rows[0][0].modulus_len();
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.modulus_len() != m {
                    return Err(Error::LengthMismatch { expected: m, found: e.modulus_len() });
                }
                if !e.is_zero() && !e.is_unit() {
                    return Err(Error::Invariant(format!(
                        "entry ({}, {}) = {e} is neither zero nor a unit",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PolyMatrix { rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn modulus_len(&self) -> usize {
        self.rows[0][0].modulus_len()
    }

    pub fn field(&self) -> &Field {
        self.rows[0][0].field()
    }

    pub fn rows(&self) -> &[Vec<RingElement>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        &self.rows[i][j]
    }

    /// Every minor on the first `t` rows and `t` increasing columns has a
    /// unit determinant, for `t = 1..=s`.
    pub fn is_unit_by_columns(&self) -> bool {
        let (s, l) = (self.num_rows(), self.num_cols());
        (1..=s).all(|t| (0..l).combinations(t).all(|cols| self.minor_det(&cols).is_unit()))
    }

    fn has_unit_maximal_minor(&self) -> bool {
        (0..self.num_cols())
            .combinations(self.num_rows())
            .any(|cols| self.minor_det(&cols).is_unit())
    }

    /// Determinant of the minor on the first `cols.len()` rows and `cols`.
    pub fn minor_det(&self, cols: &[usize]) -> RingElement {
        let minor: Vec<Vec<RingElement>> = self.rows[..cols.len()]
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        cofactor_det(&minor)
    }
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(a: &[Vec<RingElement>]) -> RingElement {
    let n = a.len();
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = RingElement::zero(a[0][0].field(), a[0][0].modulus_len());
    for (j, e) in a[0].iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let minor: Vec<Vec<RingElement>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = e.mul(&cofactor_det(&minor)).expect("same ring");
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) }.expect("same ring");
    }
    det
}

/// How a row-module distance `D_i` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DProvenance {
    /// Exact minimum over the module.
    Exact,
    /// The column-minor lower bound `l - i + 1`; the module was too large.
    ColumnBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DStar {
    pub value: usize,
    pub row_distances: Vec<usize>,
    pub provenance: Vec<DProvenance>,
}

impl DStar {
    pub fn is_exact(&self) -> bool {
        self.provenance.iter().all(|p| *p == DProvenance::Exact)
    }
}

/// `[C_1 ... C_s] * A` with cyclic constituents and a unit-by-columns `A`.
#[derive(Clone, Debug)]
pub struct UnitMpc {
    field: Field,
    constituents: Vec<LinearCode>,
    matrix: PolyMatrix,
    nested: bool,
    ubc: bool,
}

impl UnitMpc {
    /// Requires cyclic constituents of length `m` (the ring parameter) and
    /// some `s x s` minor with unit determinant, so encoding is injective.
    /// Nestedness and the unit-by-columns condition are recorded; only
    /// decoding needs them.
    pub fn new(constituents: Vec<LinearCode>, matrix: PolyMatrix) -> Result<UnitMpc> {
        let field = matrix.field().clone();
        let m = matrix.modulus_len();
        if constituents.len() != matrix.num_rows() {
            return Err(Error::InvalidParameter(format!(
                "{} constituents for a matrix with {} rows",
                constituents.len(),
                matrix.num_rows()
            )));
        }
        for (i, c) in constituents.iter().enumerate() {
            if c.field() != &field {
                return Err(Error::InvalidParameter("constituents over different fields".into()));
            }
            if c.length() != m {
                return Err(Error::LengthMismatch { expected: m, found: c.length() });
            }
            if !is_cyclic(c) {
                return Err(Error::Invariant(format!("constituent {} is not cyclic", i + 1)));
            }
        }
        if !matrix.has_unit_maximal_minor() {
            return Err(Error::Invariant("no s x s minor of the matrix is a unit".into()));
        }
        let nested = constituents.windows(2).all(|w| w[1].is_subcode_of(&w[0]));
        let ubc = matrix.is_unit_by_columns();
        Ok(UnitMpc { field, constituents, matrix, nested, ubc })
    }

    pub fn is_nested(&self) -> bool {
        self.nested
    }

    pub fn is_unit_by_columns(&self) -> bool {
        self.ubc
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `D_i` for `i = 1..=s` with provenance. `D_1` is always exact: it is
    /// the number of nonzero entries in the first row, since a unit times a
    /// nonzero residue is nonzero.
    pub fn row_module_distances(&self, cap: u128) -> (Vec<usize>, Vec<DProvenance>) {
        let l = self.matrix.num_cols();
        let s = self.matrix.num_rows();
        let mut ds = Vec::with_capacity(s);
        let mut prov = Vec::with_capacity(s);
        for i in 1..=s {
            if i == 1 {
                ds.push(self.matrix.rows[0].iter().filter(|e| !e.is_zero()).count());
                prov.push(DProvenance::Exact);
                continue;
            }
            match self.module_min_weight(i, cap) {
                Some(d) => {
                    ds.push(d);
                    prov.push(DProvenance::Exact);
                }
                None => {
                    ds.push(l - i + 1);
                    prov.push(DProvenance::ColumnBound);
                }
            }
        }
        (ds, prov)
    }

    /// `min_i d_i D_i` for constituent distances `d_i`.
    pub fn d_star(&self, distances: &[usize], cap: u128) -> Result<DStar> {
        if distances.len() != self.constituents.len() {
            return Err(Error::LengthMismatch {
                expected: self.constituents.len(),
                found: distances.len(),
            });
        }
        let (row_distances, provenance) = self.row_module_distances(cap);
        let value = distances.iter().zip(&row_distances).map(|(d, big)| d * big).min().unwrap();
        Ok(DStar { value, row_distances, provenance })
    }

    /// Minimum number of nonzero components over nonzero elements of the
    /// module spanned by the first `i` rows, or `None` above the cap.
    fn module_min_weight(&self, i: usize, cap: u128) -> Option<usize> {
        let q = self.field.order() as u128;
        let m = self.matrix.modulus_len();
        let size = q.checked_pow((m * i) as u32)?;
        if size > cap {
            return None;
        }
        let l = self.matrix.num_cols();
        let digits = m * i;
        let mut idx = vec![0u64; digits];
        let elems: Vec<FieldElement> = self.field.elements().collect();
        let mut best = usize::MAX;
        loop {
            // Advance the odometer first so the all-zero combination is skipped.
            let mut pos = 0;
            while pos < digits {
                idx[pos] += 1;
                if idx[pos] as u128 == q {
                    idx[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
            if pos == digits {
                break;
            }
            let coeffs: Vec<RingElement> = idx
                .chunks(m)
                .map(|ch| RingElement::from_coeffs(&self.field, ch.iter().map(|&d| elems[d as usize]).collect()))
                .collect();
            let w = (0..l)
                .filter(|&col| {
                    let mut acc = RingElement::zero(&self.field, m);
                    for (r, row) in coeffs.iter().zip(&self.matrix.rows) {
                        if !r.is_zero() && !row[col].is_zero() {
                            acc = acc.add(&r.mul(&row[col]).unwrap()).unwrap();
                        }
                    }
                    !acc.is_zero()
                })
                .count();
            best = best.min(w);
        }
        Some(best)
    }
}

/// A linear code is cyclic iff the cyclic shift of every generator row is
/// again a codeword.
pub fn is_cyclic(code: &LinearCode) -> bool {
    code.generator().iter().all(|row| {
        let mut shifted = row.clone();
        shifted.rotate_right(1);
        code.contains(&shifted)
    })
}

impl MatrixProductCode for UnitMpc {
    type Ring = CyclicRing;

    fn ring(&self) -> CyclicRing {
        CyclicRing::new(&self.field, self.matrix.modulus_len())
    }

    fn field(&self) -> &Field {
        &self.field
    }

    fn constituents(&self) -> &[LinearCode] {
        &self.constituents
    }

    fn num_blocks(&self) -> usize {
        self.matrix.num_cols()
    }

    fn block_len(&self) -> usize {
        self.matrix.modulus_len()
    }

    fn entries(&self) -> Vec<Vec<RingElement>> {
        self.matrix.rows.clone()
    }

    fn check_decodable(&self) -> Result<()> {
        if !self.nested {
            return Err(Error::Invariant("constituent codes are not nested".into()));
        }
        if !self.ubc {
            return Err(Error::Invariant("matrix is not unit by columns".into()));
        }
        Ok(())
    }
}
