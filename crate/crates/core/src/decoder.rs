//! Block-elimination list decoder for matrix-product codes with nested
//! constituents.
//!
//! The engine is generic over the ring the matrix entries live in: plain
//! field elements for scalar matrices, residues of `F_q[x]/(x^m - 1)` for
//! polynomial-unit matrices. In both cases a block is a length-`m` vector
//! over F_q and an entry acts on it by [`BlockRing::scale_block`].

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::constituent::ListDecoder;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linear_code::{Codeword, LinearCode};
use crate::matrix_product::BlockWord;

/// Coefficient ring of a matrix-product code.
pub trait BlockRing: Clone + Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn field(&self) -> &Field;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// `None` when `a` is not invertible.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Action of `a` on a length-`m` block.
    fn scale_block(&self, a: &Self::Elem, block: &[FieldElement]) -> Vec<FieldElement>;
}

/// Common interface of scalar and polynomial-unit matrix-product codes.
pub trait MatrixProductCode: Send + Sync {
    type Ring: BlockRing;

    fn ring(&self) -> Self::Ring;

    fn field(&self) -> &Field;

    fn constituents(&self) -> &[LinearCode];

    /// `l`, the number of matrix columns.
    fn num_blocks(&self) -> usize;

    /// `m`, the constituent length.
    fn block_len(&self) -> usize;

    /// The `s x l` matrix entries, row by row.
    fn entries(&self) -> Vec<Vec<<Self::Ring as BlockRing>::Elem>>;

    /// Nested constituents and the column-minor condition on the matrix.
    fn check_decodable(&self) -> Result<()>;

    fn num_rows(&self) -> usize {
        self.constituents().len()
    }

    fn length(&self) -> usize {
        self.num_blocks() * self.block_len()
    }

    fn dimension(&self) -> usize {
        self.constituents().iter().map(LinearCode::dimension).sum()
    }

    /// Block `i` is `sum_j a_{j,i} c_j`.
    fn combine(&self, codewords: &[Codeword]) -> Result<BlockWord> {
        if codewords.len() != self.num_rows() {
            return Err(Error::LengthMismatch { expected: self.num_rows(), found: codewords.len() });
        }
        let m = self.block_len();
        if let Some(c) = codewords.iter().find(|c| c.len() != m) {
            return Err(Error::LengthMismatch { expected: m, found: c.len() });
        }
        let ring = self.ring();
        let f = self.field();
        let entries = self.entries();
        let blocks = (0..self.num_blocks())
            .map(|i| {
                let mut block = vec![FieldElement::ZERO; m];
                for (row, c) in entries.iter().zip(codewords) {
                    if ring.is_zero(&row[i]) {
                        continue;
                    }
                    for (b, x) in block.iter_mut().zip(ring.scale_block(&row[i], c)) {
                        *b = f.add(*b, x);
                    }
                }
                block
            })
            .collect();
        BlockWord::new(blocks)
    }

    fn encode(&self, messages: &[Vec<FieldElement>]) -> Result<BlockWord> {
        if messages.len() != self.num_rows() {
            return Err(Error::LengthMismatch { expected: self.num_rows(), found: messages.len() });
        }
        let cs = self
            .constituents()
            .iter()
            .zip(messages)
            .map(|(c, msg)| c.encode(msg))
            .collect::<Result<Vec<_>>>()?;
        self.combine(&cs)
    }

    /// Encodes a single message of length `dimension()`, split across the
    /// constituents in order.
    fn encode_flat(&self, message: &[FieldElement]) -> Result<BlockWord> {
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch { expected: self.dimension(), found: message.len() });
        }
        let mut rest = message;
        let parts = self
            .constituents()
            .iter()
            .map(|c| {
                let (head, tail) = rest.split_at(c.dimension());
                rest = tail;
                head.to_vec()
            })
            .collect::<Vec<_>>();
        self.encode(&parts)
    }
}

/// Largest total error weight the decoder handles:
/// `min_j (l - j + 1) tau_j + (l - j)` for `j = 1..=s`.
pub fn tau_bound(l: usize, taus: &[usize]) -> usize {
    assert!(!taus.is_empty() && taus.len() <= l, "need 1 <= s <= l");
    taus.iter()
        .enumerate()
        .map(|(j, &t)| (l - j) * t + (l - j - 1))
        .min()
        .unwrap()
}

/// An ordered tuple of distinct blocks (1-based) with `weights[i_j - 1] <= taus[j]`
/// for every `j`, if one exists.
pub fn good_index_tuple(weights: &[usize], taus: &[usize]) -> Option<Vec<usize>> {
    let fits = |t: &[usize]| t.iter().zip(taus).all(|(&i, &tau)| weights[i] <= tau);
    let greedy: Vec<usize> = (0..weights.len())
        .sorted_by_key(|&i| weights[i])
        .take(taus.len())
        .collect();
    if greedy.len() == taus.len() && fits(&greedy) {
        return Some(greedy.iter().map(|i| i + 1).collect());
    }
    // Greedy can miss when the taus are not increasing.
    (0..weights.len())
        .permutations(taus.len())
        .find(|t| fits(t))
        .map(|t| t.iter().map(|i| i + 1).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Stop after the first index tuple that yields an accepted codeword.
    pub first_hit: bool,
    /// Keep every constituent decoder input and output in the trace.
    pub record_lists: bool,
}

/// One constituent decoder call inside a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchRecord {
    pub input: Codeword,
    pub list: Vec<Codeword>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageTrace {
    /// 1-based constituent index `j`.
    pub constituent: usize,
    /// 1-based block index `i_j`.
    pub block: usize,
    /// Number of branches entering the stage.
    pub inputs: usize,
    /// Output size of each decoder call, one per entering branch.
    pub list_sizes: Vec<usize>,
    pub lists: Option<Vec<BranchRecord>>,
}

impl StageTrace {
    pub fn outputs(&self) -> usize {
        self.list_sizes.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTrace {
    /// 1-based block indices `(i_1, ..., i_s)`.
    pub tuple: Vec<usize>,
    pub stages: Vec<StageTrace>,
    /// Branches that reached the final solve.
    pub candidates: usize,
    /// Candidates that passed membership and distance checks.
    pub accepted: usize,
    /// 1-based stage at which every branch died.
    pub abandoned_at: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct DecodeOutput {
    /// Sorted and deduplicated.
    pub codewords: Vec<BlockWord>,
    pub trace: Vec<TupleTrace>,
    /// Number of pivots checked for invertibility.
    pub pivots_checked: usize,
}

impl DecodeOutput {
    pub fn contains(&self, word: &BlockWord) -> bool {
        self.codewords.binary_search(word).is_ok()
    }

    pub fn tuple(&self, tuple: &[usize]) -> Option<&TupleTrace> {
        self.trace.iter().find(|t| t.tuple == tuple)
    }
}

/// A matrix-product code together with one list decoder per constituent.
pub struct DecoderSpec<C: MatrixProductCode> {
    code: C,
    decoders: Vec<Arc<dyn ListDecoder>>,
    tau: usize,
}

impl<C: MatrixProductCode> DecoderSpec<C> {
    /// `decoders[j]` must decode the code equal to constituent `j`.
    pub fn new(code: C, decoders: Vec<Arc<dyn ListDecoder>>) -> Result<Self> {
        code.check_decodable()?;
        if decoders.len() != code.num_rows() {
            return Err(Error::LengthMismatch { expected: code.num_rows(), found: decoders.len() });
        }
        for (j, (d, c)) in decoders.iter().zip(code.constituents()).enumerate() {
            if !(d.code().is_subcode_of(c) && c.is_subcode_of(d.code())) {
                return Err(Error::InvalidParameter(format!(
                    "decoder {} does not match constituent {}",
                    j + 1,
                    j + 1
                )));
            }
        }
        let taus: Vec<usize> = decoders.iter().map(|d| d.tau()).collect();
        let tau = tau_bound(code.num_blocks(), &taus);
        Ok(DecoderSpec { code, decoders, tau })
    }

    /// Overrides the acceptance radius. Only radii up to [`Self::tau_bound`]
    /// carry the full-list guarantee.
    pub fn with_tau(mut self, tau: usize) -> Self {
        self.tau = tau;
        self
    }

    pub fn code(&self) -> &C {
        &self.code
    }

    pub fn decoders(&self) -> &[Arc<dyn ListDecoder>] {
        &self.decoders
    }

    pub fn taus(&self) -> Vec<usize> {
        self.decoders.iter().map(|d| d.tau()).collect()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn tau_bound(&self) -> usize {
        tau_bound(self.code.num_blocks(), &self.taus())
    }

    /// Product of the decoders' list caps, when all of them have one.
    pub fn branch_cap(&self) -> Option<usize> {
        self.decoders.iter().map(|d| d.list_cap()).product()
    }

    pub fn list_decode(&self, received: &BlockWord, opts: DecodeOptions) -> Result<DecodeOutput> {
        let l = self.code.num_blocks();
        let m = self.code.block_len();
        if received.num_blocks() != l || received.block_len() != m {
            return Err(Error::LengthMismatch {
                expected: l * m,
                found: received.num_blocks() * received.block_len(),
            });
        }
        let tuples: Vec<Vec<usize>> = (0..l).permutations(self.code.num_rows()).collect();
        let runs: Vec<TupleRun> = if opts.first_hit {
            let mut runs = Vec::new();
            for t in &tuples {
                let run = self.run_tuple(received, t, opts)?;
                let hit = !run.found.is_empty();
                runs.push(run);
                if hit {
                    break;
                }
            }
            runs
        } else {
            tuples
                .par_iter()
                .map(|t| self.run_tuple(received, t, opts))
                .collect::<Result<_>>()?
        };
        let mut set = BTreeSet::new();
        let mut out = DecodeOutput::default();
        for run in runs {
            set.extend(run.found);
            out.trace.push(run.trace);
            out.pivots_checked += run.pivots;
        }
        out.codewords = set.into_iter().collect();
        Ok(out)
    }

    /// Decodes up to `floor((d - 1) / 2)` errors given the true minimum
    /// distance `d`. `Ok(None)` is a decoding failure.
    pub fn unique_decode(&self, received: &BlockWord, d: usize) -> Result<Option<BlockWord>> {
        let radius = d.saturating_sub(1) / 2;
        if self.tau_bound() < radius {
            return Err(Error::InvalidParameter(format!(
                "decoder bound {} is below half the distance {}",
                self.tau_bound(),
                radius
            )));
        }
        let spec = DecoderSpec {
            code: &self.code,
            decoders: self.decoders.clone(),
            tau: radius,
        };
        let out = spec.list_decode(received, DecodeOptions { first_hit: true, record_lists: false })?;
        Ok(out.codewords.into_iter().next())
    }

    fn run_tuple(&self, received: &BlockWord, tuple: &[usize], opts: DecodeOptions) -> Result<TupleRun> {
        let ring = self.code.ring();
        let f = self.code.field().clone();
        let s = self.code.num_rows();
        let l = self.code.num_blocks();
        let mut a = self.code.entries();
        let mut pivots = 0;
        let mut trace = TupleTrace {
            tuple: tuple.iter().map(|i| i + 1).collect(),
            stages: Vec::with_capacity(s),
            candidates: 0,
            accepted: 0,
            abandoned_at: None,
        };

        // Every unconsumed block is carried forward, not only the ones still
        // to be decoded, so the invariant "block i = codeword of C_j plus e_i"
        // holds for all i at stage j.
        let mut branches = vec![Branch { blocks: received.blocks().to_vec(), errors: Vec::new() }];
        for (j, &ij) in tuple.iter().enumerate() {
            let pivot_inv = invert_pivot(&ring, &a[j][ij], j, ij, &mut pivots)?;
            let factors: Vec<Option<_>> = (0..l)
                .map(|i| {
                    (!tuple[..=j].contains(&i) && !ring.is_zero(&a[j][i]))
                        .then(|| ring.mul(&a[j][i], &pivot_inv))
                })
                .collect();

            let mut stage = StageTrace {
                constituent: j + 1,
                block: ij + 1,
                inputs: branches.len(),
                list_sizes: Vec::with_capacity(branches.len()),
                lists: opts.record_lists.then(Vec::new),
            };
            let mut next = Vec::new();
            for br in &branches {
                let list = self.decoders[j].decode(&br.blocks[ij])?;
                stage.list_sizes.push(list.len());
                for ell in &list {
                    let mut nb = br.clone();
                    nb.errors.push(sub_vec(&f, &br.blocks[ij], ell));
                    for (i, fac) in factors.iter().enumerate() {
                        if let Some(fac) = fac {
                            let shift = ring.scale_block(fac, ell);
                            nb.blocks[i] = sub_vec(&f, &nb.blocks[i], &shift);
                        }
                    }
                    nb.blocks[ij] = ell.clone();
                    next.push(nb);
                }
                if let Some(rec) = stage.lists.as_mut() {
                    rec.push(BranchRecord { input: br.blocks[ij].clone(), list });
                }
            }
            trace.stages.push(stage);
            if next.is_empty() {
                trace.abandoned_at = Some(j + 1);
                return Ok(TupleRun { found: Vec::new(), trace, pivots });
            }
            branches = next;

            for i in 0..l {
                if let Some(fac) = &factors[i] {
                    for row in a.iter_mut().skip(j) {
                        let delta = ring.mul(fac, &row[ij]);
                        row[i] = ring.sub(&row[i], &delta);
                    }
                }
            }
        }

        trace.candidates = branches.len();
        let original = self.code.entries();
        let sub: Vec<Vec<_>> = original
            .iter()
            .map(|row| tuple.iter().map(|&i| row[i].clone()).collect())
            .collect();
        let mut found = Vec::new();
        for br in &branches {
            let corrected: Vec<Codeword> = tuple
                .iter()
                .zip(&br.errors)
                .map(|(&i, e)| sub_vec(&f, received.block(i), e))
                .collect();
            let cs = solve_triangular(&ring, &sub, corrected, &mut pivots)?;
            if !cs.iter().zip(self.code.constituents()).all(|(c, code)| code.contains(c)) {
                continue;
            }
            let word = self.code.combine(&cs)?;
            if word.distance(received) <= self.tau {
                found.push(word);
            }
        }
        trace.accepted = found.len();
        Ok(TupleRun { found, trace, pivots })
    }
}

impl<C: MatrixProductCode> MatrixProductCode for &C {
    type Ring = C::Ring;

    fn ring(&self) -> C::Ring {
        (*self).ring()
    }

    fn field(&self) -> &Field {
        (*self).field()
    }

    fn constituents(&self) -> &[LinearCode] {
        (*self).constituents()
    }

    fn num_blocks(&self) -> usize {
        (*self).num_blocks()
    }

    fn block_len(&self) -> usize {
        (*self).block_len()
    }

    fn entries(&self) -> Vec<Vec<<C::Ring as BlockRing>::Elem>> {
        (*self).entries()
    }

    fn check_decodable(&self) -> Result<()> {
        (*self).check_decodable()
    }
}

#[derive(Clone)]
struct Branch {
    blocks: Vec<Codeword>,
    errors: Vec<Codeword>,
}

struct TupleRun {
    found: Vec<BlockWord>,
    trace: TupleTrace,
    pivots: usize,
}

fn invert_pivot<R: BlockRing>(
    ring: &R,
    pivot: &R::Elem,
    row: usize,
    col: usize,
    counter: &mut usize,
) -> Result<R::Elem> {
    *counter += 1;
    ring.inverse(pivot).ok_or_else(|| {
        Error::PivotViolation(format!("entry ({}, {}) is not invertible: {:?}", row + 1, col + 1, pivot))
    })
}

fn sub_vec(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Codeword {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

/// Solves `sum_j m[j][k] c_j = u_k` for `k = 1..s` by column elimination in
/// the diagonal order, then back substitution.
fn solve_triangular<R: BlockRing>(
    ring: &R,
    m: &[Vec<R::Elem>],
    mut u: Vec<Codeword>,
    pivots: &mut usize,
) -> Result<Vec<Codeword>> {
    let f = ring.field();
    let s = m.len();
    let mut m = m.to_vec();
    let mut inv = Vec::with_capacity(s);
    for j in 0..s {
        let p = invert_pivot(ring, &m[j][j], j, j, pivots)?;
        for k in j + 1..s {
            if ring.is_zero(&m[j][k]) {
                continue;
            }
            let fac = ring.mul(&m[j][k], &p);
            for row in m.iter_mut().skip(j) {
                let delta = ring.mul(&fac, &row[j]);
                row[k] = ring.sub(&row[k], &delta);
            }
            let shift = ring.scale_block(&fac, &u[j]);
            u[k] = sub_vec(f, &u[k], &shift);
        }
        inv.push(p);
    }
    // Now m[j][k] = 0 for j < k: u_k = sum_{j >= k} m[j][k] c_j.
    let mut c: Vec<Codeword> = vec![Vec::new(); s];
    for k in (0..s).rev() {
        let mut rhs = u[k].clone();
        for j in k + 1..s {
            if !ring.is_zero(&m[j][k]) {
                rhs = sub_vec(f, &rhs, &ring.scale_block(&m[j][k], &c[j]));
            }
        }
        c[k] = ring.scale_block(&inv[k], &rhs);
    }
    Ok(c)
}
