//! Dense Gaussian elimination over a [`Field`].

use crate::field::{Field, FieldElement};

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row; rows past `pivots.len()` are zero afterwards.
pub fn rref(field: &Field, rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(below.iter_mut()) {
            let factor = other[c];
            if !factor.is_zero() {
                let neg = field.neg(factor);
                field.axpy(&mut other[c..], neg, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Determinant of a square matrix.
pub fn determinant(field: &Field, rows: &[Vec<FieldElement>]) -> FieldElement {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = FieldElement::ONE;
    for c in 0..n {
        let Some(sel) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldElement::ZERO;
        };
        if sel != c {
            m.swap(sel, c);
            det = field.neg(det);
        }
        let piv = m[c][c];
        det = field.mul(det, piv);
        let inv = field.inv(piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = field.mul(m[i][c], inv);
            if !factor.is_zero() {
                let (top, bottom) = m.split_at_mut(i);
                field.axpy(&mut bottom[0][c..], field.neg(factor), &top[c][c..]);
            }
        }
    }
    det
}

/// A nonzero solution of the homogeneous system `rows * v = 0`, if one exists.
pub fn nullspace_vector(field: &Field, rows: &[Vec<FieldElement>], ncols: usize) -> Option<Vec<FieldElement>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free = (0..ncols).find(|&c| !is_pivot[c])?;
    let mut v = vec![FieldElement::ZERO; ncols];
    v[free] = FieldElement::ONE;
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = field.neg(m[r][free]);
    }
    Some(v)
}
