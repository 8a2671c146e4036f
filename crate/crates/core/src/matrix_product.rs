//! Matrix-product codes `[C_1 ... C_s] * A` over a scalar matrix `A`.
//!
//! A codeword is the `m x l` matrix whose column `i` is `sum_j a_{j,i} c_j`,
//! read column by column as a vector of length `m l` (see [`BlockWord`]).

use itertools::Itertools;

use crate::decoder::{BlockRing, MatrixProductCode};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg;
use crate::linear_code::{hamming_distance, Codeword, LinearCode, DEFAULT_ENUMERATION_CAP};

/// A word of length `m l` viewed as `l` blocks of length `m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockWord {
    blocks: Vec<Codeword>,
}

impl BlockWord {
    pub fn new(blocks: Vec<Codeword>) -> Result<BlockWord> {
        let m = blocks.first().map_or(0, Vec::len);
        if let Some(b) = blocks.iter().find(|b| b.len() != m) {
            return Err(Error::LengthMismatch { expected: m, found: b.len() });
        }
        Ok(BlockWord { blocks })
    }

    pub fn zero(num_blocks: usize, block_len: usize) -> BlockWord {
        BlockWord { blocks: vec![vec![FieldElement::ZERO; block_len]; num_blocks] }
    }

    /// Splits a flat word (block-major order) into blocks of length `block_len`.
    pub fn from_flat(word: &[FieldElement], block_len: usize) -> Result<BlockWord> {
        if block_len == 0 || !word.len().is_multiple_of(block_len) {
            return Err(Error::LengthMismatch {
                expected: block_len * word.len().div_ceil(block_len.max(1)),
                found: word.len(),
            });
        }
        Ok(BlockWord { blocks: word.chunks(block_len).map(<[_]>::to_vec).collect() })
    }

    pub fn blocks(&self) -> &[Codeword] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[FieldElement] {
        &self.blocks[i]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_len(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn to_flat(&self) -> Vec<FieldElement> {
        self.blocks.concat()
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| crate::linear_code::weight(b)).sum()
    }

    pub fn block_weights(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| crate::linear_code::weight(b)).collect()
    }

    pub fn distance(&self, other: &BlockWord) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| hamming_distance(a, b))
            .sum()
    }

    /// Elementwise sum, e.g. codeword plus error.
    pub fn add(&self, field: &Field, other: &BlockWord) -> BlockWord {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect())
            .collect();
        BlockWord { blocks }
    }
}

/// An `s x l` matrix over F_q with `s <= l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: Vec<Vec<FieldElement>>,
}

impl ScalarMatrix {
    pub fn new(rows: Vec<Vec<FieldElement>>) -> Result<ScalarMatrix> {
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
        Ok(ScalarMatrix { rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.rows[i][j]
    }

    /// The `t x t` matrix formed by the first `t` rows and the given columns.
    pub fn minor(&self, cols: &[usize]) -> Vec<Vec<FieldElement>> {
        self.rows[..cols.len()]
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect()
    }

    /// Every minor on the first `t` rows and any `t` increasing columns is
    /// non-singular, for `t = 1..=s`.
    pub fn is_nonsingular_by_columns(&self, field: &Field) -> bool {
        let (s, l) = (self.num_rows(), self.num_cols());
        (1..=s).all(|t| {
            (0..l)
                .combinations(t)
                .all(|cols| !linalg::determinant(field, &self.minor(&cols)).is_zero())
        })
    }

    pub fn rank(&self, field: &Field) -> usize {
        linalg::rank(field, &self.rows)
    }
}

/// `[C_1 ... C_s] * A` for scalar `A`.
#[derive(Clone, Debug)]
pub struct ScalarMpc {
    field: Field,
    constituents: Vec<LinearCode>,
    matrix: ScalarMatrix,
    nested: bool,
    nsc: bool,
}

impl ScalarMpc {
    /// Requires constituents over one field and length, one per matrix row,
    /// and a full-rank matrix. Nestedness and the column-minor condition are
    /// recorded, not required; only decoding needs them.
    pub fn new(constituents: Vec<LinearCode>, matrix: ScalarMatrix) -> Result<ScalarMpc> {
        let first = constituents
            .first()
            .ok_or_else(|| Error::InvalidParameter("no constituent codes".into()))?;
        let field = first.field().clone();
        let m = first.length();
        for c in &constituents {
            if c.field() != &field {
                return Err(Error::InvalidParameter("constituents over different fields".into()));
            }
            if c.length() != m {
                return Err(Error::LengthMismatch { expected: m, found: c.length() });
            }
        }
        if constituents.len() != matrix.num_rows() {
            return Err(Error::InvalidParameter(format!(
                "{} constituents for a matrix with {} rows",
                constituents.len(),
                matrix.num_rows()
            )));
        }
        if matrix.rank(&field) != matrix.num_rows() {
            return Err(Error::InvalidParameter("matrix does not have full rank".into()));
        }
        let nested = constituents.windows(2).all(|w| w[1].is_subcode_of(&w[0]));
        let nsc = matrix.is_nonsingular_by_columns(&field);
        Ok(ScalarMpc { field, constituents, matrix, nested, nsc })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn is_nested(&self) -> bool {
        self.nested
    }

    pub fn is_nonsingular_by_columns(&self) -> bool {
        self.nsc
    }

    /// Code generated by `R_1, ..., R_i` in F_q^l.
    fn row_code(&self, i: usize) -> Result<LinearCode> {
        LinearCode::new(&self.field, self.matrix.rows[..i].to_vec())
    }

    /// `D_i`: minimum distance of the span of the first `i` rows of `A`.
    pub fn row_code_distances(&self) -> Result<Vec<usize>> {
        (1..=self.matrix.num_rows())
            .map(|i| self.row_code(i)?.min_distance_bruteforce(DEFAULT_ENUMERATION_CAP))
            .collect()
    }

    /// `min_i d_i D_i` for the supplied constituent distances `d_i`.
    pub fn distance_lower_bound(&self, distances: &[usize]) -> Result<usize> {
        self.check_distances(distances)?;
        let dd = self.row_code_distances()?;
        Ok(distances.iter().zip(&dd).map(|(d, big)| d * big).min().unwrap())
    }

    /// `min_i (l - i + 1) d_i`, exact for nested constituents and a matrix
    /// that is non-singular by columns.
    pub fn distance_nested_nsc(&self, distances: &[usize]) -> Result<usize> {
        self.check_distances(distances)?;
        if !self.nested {
            return Err(Error::Invariant("constituent codes are not nested".into()));
        }
        if !self.nsc {
            return Err(Error::Invariant("matrix is not non-singular by columns".into()));
        }
        let l = self.matrix.num_cols();
        Ok(distances.iter().enumerate().map(|(i, d)| (l - i) * d).min().unwrap())
    }

    fn check_distances(&self, distances: &[usize]) -> Result<()> {
        if distances.len() != self.constituents.len() {
            return Err(Error::LengthMismatch {
                expected: self.constituents.len(),
                found: distances.len(),
            });
        }
        Ok(())
    }

    /// Generator matrix of the whole code: row block `i` is `(a_{i,1} G_i | ... | a_{i,l} G_i)`.
    pub fn to_linear_code(&self) -> Result<LinearCode> {
        let f = &self.field;
        let rows = self
            .constituents
            .iter()
            .zip(&self.matrix.rows)
            .flat_map(|(c, arow)| {
                c.generator().iter().map(move |g| {
                    arow.iter()
                        .flat_map(|&a| g.iter().map(move |&x| f.mul(a, x)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        LinearCode::new(f, rows)
    }
}

impl MatrixProductCode for ScalarMpc {
    type Ring = Field;

    fn ring(&self) -> Field {
        self.field.clone()
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
        self.constituents[0].length()
    }

    fn entries(&self) -> Vec<Vec<FieldElement>> {
        self.matrix.rows.clone()
    }

    fn check_decodable(&self) -> Result<()> {
        if !self.nested {
            return Err(Error::Invariant("constituent codes are not nested".into()));
        }
        if !self.nsc {
            return Err(Error::Invariant("matrix is not non-singular by columns".into()));
        }
        Ok(())
    }
}

impl BlockRing for Field {
    type Elem = FieldElement;

    fn field(&self) -> &Field {
        self
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inv(*a).ok()
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::mul(self, *a, *b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::sub(self, *a, *b)
    }

    fn scale_block(&self, a: &FieldElement, block: &[FieldElement]) -> Vec<FieldElement> {
        block.iter().map(|&x| Field::mul(self, *a, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reed_solomon::RsCode;

    fn gf16() -> Field {
        Field::gf(2, 4).unwrap()
    }

    fn upper(f: &Field) -> ScalarMatrix {
        ScalarMatrix::new(vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]]).unwrap()
    }

    #[test]
    fn nonsingular_by_columns() {
        let f = gf16();
        assert!(upper(&f).is_nonsingular_by_columns(&f));
        assert!(ScalarMatrix::new(vec![vec![f.one()]]).unwrap().is_nonsingular_by_columns(&f));
        let id = ScalarMatrix::new(vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]).unwrap();
        assert!(!id.is_nonsingular_by_columns(&f));
        // Full rank but a singular 2x2 minor on columns {1, 2}.
        let a = f.alpha();
        let m = ScalarMatrix::new(vec![
            vec![f.one(), f.one(), f.one()],
            vec![f.zero(), a, a],
        ])
        .unwrap();
        assert_eq!(m.rank(&f), 2);
        assert!(!m.is_nonsingular_by_columns(&f));
    }

    #[test]
    fn matrix_shape_checks() {
        let f = gf16();
        assert!(ScalarMatrix::new(vec![vec![f.one()], vec![f.one()]]).is_err());
        assert!(ScalarMatrix::new(vec![vec![f.one(), f.one()], vec![f.one()]]).is_err());
    }

    #[test]
    fn two_block_code_parameters() {
        let f = gf16();
        let c1 = RsCode::new(&f, 10).unwrap().linear_code().clone();
        let c2 = RsCode::new(&f, 4).unwrap().linear_code().clone();
        let code = ScalarMpc::new(vec![c1, c2], upper(&f)).unwrap();
        assert!(code.is_nested());
        assert_eq!((code.length(), code.dimension()), (30, 14));
        assert_eq!(code.row_code_distances().unwrap(), vec![2, 1]);
        assert_eq!(code.distance_lower_bound(&[6, 12]).unwrap(), 12);
        assert_eq!(code.distance_nested_nsc(&[6, 12]).unwrap(), 12);
        let zero = code.encode(&[vec![f.zero(); 10], vec![f.zero(); 4]]).unwrap();
        assert_eq!(zero, BlockWord::zero(2, 15));
    }

    #[test]
    fn degenerate_single_constituent() {
        let f = gf16();
        let c1 = RsCode::new(&f, 3).unwrap().linear_code().clone();
        let code = ScalarMpc::new(vec![c1.clone()], ScalarMatrix::new(vec![vec![f.one()]]).unwrap())
            .unwrap();
        let msg = vec![f.alpha(), f.one(), f.alpha_pow(7)];
        assert_eq!(code.encode(std::slice::from_ref(&msg)).unwrap().blocks()[0], c1.encode(&msg).unwrap());
        assert_eq!(code.distance_nested_nsc(&[13]).unwrap(), 13);

        let rep = ScalarMatrix::new(vec![vec![f.one(); 3]]).unwrap();
        let code = ScalarMpc::new(vec![c1], rep).unwrap();
        assert_eq!(code.distance_lower_bound(&[13]).unwrap(), 39);
    }

    #[test]
    fn preconditions_for_exact_distance() {
        let f = gf16();
        let c1 = RsCode::new(&f, 4).unwrap().linear_code().clone();
        let c2 = RsCode::new(&f, 10).unwrap().linear_code().clone();
        let code = ScalarMpc::new(vec![c1, c2], upper(&f)).unwrap();
        assert!(!code.is_nested());
        assert!(matches!(code.distance_nested_nsc(&[12, 6]), Err(Error::Invariant(_))));
        assert!(code.check_decodable().is_err());
    }

    #[test]
    fn exact_distance_on_gf8_analogue() {
        let f = Field::gf(2, 3).unwrap();
        let c1 = RsCode::new(&f, 3).unwrap().linear_code().clone();
        let c2 = LinearCode::new(&f, vec![vec![f.one(); 7]]).unwrap();
        let code = ScalarMpc::new(vec![c1, c2], upper(&f)).unwrap();
        let exact = code.to_linear_code().unwrap().min_distance_bruteforce(1 << 20).unwrap();
        assert_eq!(exact, 7);
        assert_eq!(code.distance_nested_nsc(&[5, 7]).unwrap(), 7);
        assert!(code.distance_lower_bound(&[5, 7]).unwrap() <= exact);
    }

    #[test]
    fn flat_round_trip() {
        let f = gf16();
        let w: Vec<_> = (0..30).map(|i| f.alpha_pow(i)).collect();
        let b = BlockWord::from_flat(&w, 15).unwrap();
        assert_eq!(b.num_blocks(), 2);
        assert_eq!(b.to_flat(), w);
        assert!(BlockWord::from_flat(&w, 7).is_err());
    }
}
