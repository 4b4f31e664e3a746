//! Integer matrices and their Hermite and Smith normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{QVec, Rational};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn to_rational_rows(&self) -> Vec<QVec> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn determinant(&self) -> Option<BigInt> {
        (self.rows == self.cols).then(|| super::qmat::determinant(&self.to_rational_rows()).to_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += f * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col_dst += f * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (s*a + t*b, x*a + y*b).
    fn combine_rows(&mut self, a: usize, b: usize, [s, t, x, y]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = s * &ra + t * &rb;
            self[(b, j)] = x * &ra + y * &rb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `h = u * m`, `u`
/// unimodular, pivots positive, entries above each pivot reduced into
/// `[0, pivot)` and zero rows at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pr = 0;
    for col in 0..m.cols {
        if pr == m.rows {
            break;
        }
        for r in pr + 1..m.rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let a = h[(pr, col)].clone();
            let b = h[(r, col)].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let x = -(&b / &g);
            let y = &a / &g;
            h.combine_rows(pr, r, [&s, &t, &x, &y]);
            u.combine_rows(pr, r, [&s, &t, &x, &y]);
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h[(pr, col)].clone();
        for r in 0..pr {
            let q = h[(r, col)].div_floor(&p);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(r, pr, &f);
                u.add_row_multiple(r, pr, &f);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(u, d, v)` with `d = u * m * v` diagonal,
/// nonnegative, `d_i | d_{i+1}`, and `u`, `v` unimodular.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(u, a, v);
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(u, a, v)
}

fn finish_snf(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Rank of an integer matrix (over `Q`).
pub fn int_rank(m: &IntMatrix) -> usize {
    super::qmat::rank(&m.to_rational_rows(), m.cols)
}

/// An integer solution of `m x = c`, if one exists.
pub fn solve_integer(m: &IntMatrix, c: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(c.len(), m.rows, "right-hand side has wrong length");
    let (u, d, v) = snf(m);
    let uc: Vec<BigInt> = (0..m.rows)
        .map(|i| (0..m.rows).map(|k| &u[(i, k)] * &c[k]).sum())
        .collect();
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, uci) in uc.iter().enumerate() {
        let di = if i < m.cols { d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !uci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = uci.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(
        (0..m.cols)
            .map(|i| (0..m.cols).map(|k| &v[(i, k)] * &y[k]).sum())
            .collect(),
    )
}

/// Basis of the integer kernel `{x in Z^n : m x = 0}` (always saturated).
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (_, d, v) = snf(m);
    let r = (0..m.rows.min(m.cols)).filter(|&i| !d[(i, i)].is_zero()).count();
    (r..m.cols).map(|j| v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_row_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last_pivot.is_some_and(|lp| j <= lp) || !h[(i, j)].is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        if h[(r, j)].is_negative() || h[(r, j)] >= h[(i, j)] {
                            return false;
                        }
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    fn unimodular(u: &IntMatrix) -> bool {
        u.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn is_smith(d: &IntMatrix) -> bool {
        let k = d.rows().min(d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j && !d[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        (0..k).all(|i| !d[(i, i)].is_negative())
            && (1..k).all(|i| {
                let prev = &d[(i - 1, i - 1)];
                if prev.is_zero() {
                    d[(i, i)].is_zero()
                } else {
                    d[(i, i)].is_multiple_of(prev)
                }
            })
    }

    #[test]
    fn hnf_identity_and_zero() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(hnf(&i2), (i2.clone(), i2.clone()));
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(hnf(&z), (z.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn hnf_of_small_example() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(unimodular(&u));
    }

    #[test]
    fn snf_examples() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(snf(&i2), (i2.clone(), i2.clone(), i2.clone()));

        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (u, d, v) = snf(&m);
        assert_eq!(d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d);

        let z = IntMatrix::from_i64(&[&[0]]);
        assert_eq!(snf(&z).1, z);
    }

    #[test]
    fn integer_solving() {
        let m = IntMatrix::from_i64(&[&[2, 4]]);
        assert!(solve_integer(&m, &[BigInt::from(3)]).is_none());
        let x = solve_integer(&m, &[BigInt::from(6)]).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 4, BigInt::from(6));
        let ker = integer_kernel(&m);
        assert_eq!(ker.len(), 1);
        assert_eq!(&ker[0][0] * 2 + &ker[0][1] * 4, BigInt::zero());
        assert!(ker[0].iter().map(|x| x.abs()).max().unwrap() <= BigInt::from(2));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_reconstructs(m in small_matrix()) {
            let (h, u) = hnf(&m);
            prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
            prop_assert!(unimodular(&u));
            prop_assert!(is_row_hnf(&h));
        }

        #[test]
        fn snf_reconstructs(m in small_matrix()) {
            let (u, d, v) = snf(&m);
            prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
            prop_assert!(unimodular(&u));
            prop_assert!(unimodular(&v));
            prop_assert!(is_smith(&d));
        }
    }
}
