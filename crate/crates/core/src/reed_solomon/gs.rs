//! Guruswami-Sudan internals: parameter selection, interpolation by dense
//! linear algebra, and Roth-Ruckenstein root finding.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg;

use super::RsCode;

/// Decoding parameters for an `[m, k]` code at multiplicity `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsParams {
    pub multiplicity: usize,
    pub r: usize,
    /// (1, k-1)-weighted degree bound of the interpolation polynomial.
    pub l: usize,
    pub tau: usize,
    /// `floor(l / (k - 1))`, a bound on the number of y-roots.
    pub list_cap: usize,
}

fn binom2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// Exact integer evaluation of
/// `C(r,2) <= m C(v+1,2)/(k-1) < C(r+1,2)`,
/// `l = floor(m C(v+1,2)/r + (r-1)(k-1)/2)` and `tau = m - floor(l/v) - 1`.
pub fn gs_params(m: usize, k: usize, v: usize) -> Result<GsParams> {
    if k < 2 || k >= m {
        return Err(Error::InvalidParameter(format!(
            "Guruswami-Sudan parameters need 2 <= k < m, got m={m} k={k}"
        )));
    }
    if v == 0 {
        return Err(Error::InvalidParameter("multiplicity must be at least 1".into()));
    }
    let (mm, kk, vv) = (m as u128, k as u128 - 1, v as u128);
    let n = mm * vv * (vv + 1) / 2;
    let mut r: u128 = 1;
    while binom2(r + 1) * kk <= n {
        r += 1;
    }
    debug_assert!(binom2(r) * kk <= n && n < binom2(r + 1) * kk);
    let l = (2 * n + r * (r - 1) * kk) / (2 * r);
    let tau = (mm as i128) - (l / vv) as i128 - 1;
    if tau < 0 {
        return Err(Error::InvalidParameter(format!(
            "no error-correcting radius for m={m} k={k} v={v}"
        )));
    }
    Ok(GsParams {
        multiplicity: v,
        r: r as usize,
        l: l as usize,
        tau: tau as usize,
        list_cap: (l / kk) as usize,
    })
}

/// `C(n, k) mod p` for all `n, k <= max`, as prime-subfield elements.
fn binomials(field: &Field, max: usize) -> Vec<Vec<FieldElement>> {
    let mut t = vec![vec![FieldElement::ZERO; max + 1]; max + 1];
    for n in 0..=max {
        t[n][0] = FieldElement::ONE;
        for k in 1..=n {
            t[n][k] = field.add(t[n - 1][k - 1], t[n - 1][k]);
        }
    }
    t
}

/// Fixed data for interpolating through the evaluation points of one code.
#[derive(Clone, Debug)]
pub(super) struct Interpolator {
    field: Field,
    v: usize,
    /// Monomials `x^a y^b` with `a + (k-1) b <= l`.
    monomials: Vec<(usize, usize)>,
    max_y: usize,
    /// `xcoef[i][u][a] = C(a, u) x_i^(a-u)` (zero for `a < u`).
    xcoef: Vec<Vec<Vec<FieldElement>>>,
    binom: Vec<Vec<FieldElement>>,
}

impl Interpolator {
    pub(super) fn new(code: &RsCode, params: &GsParams) -> Interpolator {
        let f = code.field().clone();
        let m = code.length();
        let step = code.dimension() - 1;
        let l = params.l;
        let v = params.multiplicity;
        let max_y = l / step;
        let monomials: Vec<_> = (0..=max_y)
            .flat_map(|b| (0..=l - step * b).map(move |a| (a, b)))
            .collect();
        let binom = binomials(&f, l.max(max_y));
        let xcoef = (0..m)
            .map(|i| {
                let x = code.evaluation_point(i);
                (0..v)
                    .map(|u| {
                        (0..=l)
                            .map(|a| {
                                if a < u {
                                    FieldElement::ZERO
                                } else {
                                    f.mul(binom[a][u], f.pow(x, (a - u) as u64))
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Interpolator { field: f, v, monomials, max_y, xcoef, binom }
    }

    /// A nonzero Q(x, y) vanishing with multiplicity `v` at every `(x_i, ys[i])`,
    /// returned as `q[b][a]` = coefficient of `x^a y^b`.
    pub(super) fn interpolate(&self, ys: &[FieldElement]) -> Result<Vec<Vec<FieldElement>>> {
        let f = &self.field;
        let v = self.v;
        let mut rows = Vec::with_capacity(ys.len() * v * (v + 1) / 2);
        for (i, &y) in ys.iter().enumerate() {
            let ypow: Vec<_> = (0..=self.max_y).map(|e| f.pow(y, e as u64)).collect();
            for u in 0..v {
                for w in 0..v - u {
                    // Hasse derivative of order (u, w) at (x_i, y).
                    let row = self
                        .monomials
                        .iter()
                        .map(|&(a, b)| {
                            if b < w {
                                FieldElement::ZERO
                            } else {
                                let yc = f.mul(self.binom[b][w], ypow[b - w]);
                                f.mul(self.xcoef[i][u][a], yc)
                            }
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
        let sol = linalg::nullspace_vector(f, &rows, self.monomials.len())
            .ok_or_else(|| Error::Invariant("interpolation system has only the trivial solution".into()))?;
        let mut q = vec![Vec::new(); self.max_y + 1];
        for (&(a, b), &c) in self.monomials.iter().zip(&sol) {
            if q[b].len() <= a {
                q[b].resize(a + 1, FieldElement::ZERO);
            }
            q[b][a] = c;
        }
        Ok(q)
    }
}

/// Bivariate polynomial as `q[b][a]` (coefficient of `x^a y^b`).
type Bivariate = Vec<Vec<FieldElement>>;

fn normalize(q: &mut Bivariate) {
    for row in q.iter_mut() {
        while row.last().is_some_and(|c| c.is_zero()) {
            row.pop();
        }
    }
    while q.last().is_some_and(|r| r.is_empty()) {
        q.pop();
    }
}

/// Divides out the largest power of x dividing every coefficient.
fn strip_x(q: &mut Bivariate) {
    let h = q
        .iter()
        .filter_map(|row| row.iter().position(|c| !c.is_zero()))
        .min()
        .unwrap_or(0);
    if h > 0 {
        for row in q.iter_mut() {
            if row.len() >= h {
                row.drain(..h);
            }
        }
    }
}

/// `Q(x, x y + gamma)`.
fn shift(field: &Field, q: &Bivariate, gamma: FieldElement) -> Bivariate {
    let dy = q.len();
    let binom = binomials(field, dy);
    let mut out: Bivariate = vec![Vec::new(); dy];
    for (t, slot) in out.iter_mut().enumerate() {
        let width = q[t..].iter().map(Vec::len).max().unwrap_or(0);
        let mut acc = vec![FieldElement::ZERO; width + t];
        for b in t..dy {
            let c = field.mul(binom[b][t], field.pow(gamma, (b - t) as u64));
            if c.is_zero() {
                continue;
            }
            field.axpy(&mut acc[t..], c, &q[b]);
        }
        *slot = acc;
    }
    normalize(&mut out);
    out
}

fn roots_at_zero(field: &Field, q: &Bivariate) -> Vec<FieldElement> {
    let univariate: Vec<FieldElement> = q.iter().map(|row| row.first().copied().unwrap_or_default()).collect();
    field
        .elements()
        .filter(|&g| {
            univariate
                .iter()
                .rev()
                .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, g), c))
                .is_zero()
        })
        .collect()
}

fn roth_ruckenstein(
    field: &Field,
    mut q: Bivariate,
    k: usize,
    prefix: &mut Vec<FieldElement>,
    out: &mut BTreeSet<Vec<FieldElement>>,
) {
    normalize(&mut q);
    if q.is_empty() {
        return;
    }
    strip_x(&mut q);
    if prefix.len() == k {
        // Q_k(x, 0) == 0 exactly when the prefix is a y-root of the original Q.
        if q[0].iter().all(|c| c.is_zero()) {
            out.insert(prefix.clone());
        }
        return;
    }
    for gamma in roots_at_zero(field, &q) {
        prefix.push(gamma);
        roth_ruckenstein(field, shift(field, &q, gamma), k, prefix, out);
        prefix.pop();
    }
}

/// Every polynomial `f` of degree `< k` with `Q(x, f(x)) = 0`, as coefficient vectors.
pub(super) fn y_roots(field: &Field, q: Bivariate, k: usize) -> Vec<Vec<FieldElement>> {
    let mut out = BTreeSet::new();
    roth_ruckenstein(field, q, k, &mut Vec::with_capacity(k), &mut out);
    out.into_iter().collect()
}
