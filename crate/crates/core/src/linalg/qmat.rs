//! Gaussian elimination over `Q` on row-major lists of vectors.

use num_traits::{One, Zero};

use crate::rational::{QVec, Rational};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVec], ncols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut m: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{y : row · y = 0 for every row}`.
pub fn nullspace(rows: &[QVec], ncols: usize) -> Vec<QVec> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` for `A` given by rows; free variables are set to zero.
pub fn solve(a: &[QVec], b: &[Rational], ncols: usize) -> Option<QVec> {
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum c_i * basis_i = target`, if any.
pub fn combination(basis: &[QVec], target: &[Rational]) -> Option<QVec> {
    let n = target.len();
    let k = basis.len();
    let a: Vec<QVec> = (0..n)
        .map(|j| (0..k).map(|i| basis[i][j].clone()).collect())
        .collect();
    solve(&a, target, k)
}

pub fn inverse(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &[QVec]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}
