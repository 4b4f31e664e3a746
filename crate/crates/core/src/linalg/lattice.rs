//! Sublattices of `Z^n` in canonical Hermite form.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::normal_form::{hnf, integer_kernel, snf, solve_integer, IntMatrix};
use super::qmat;
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, floor_i64, primitive_integer, QVec, Rational};

/// A basis of a sublattice of `Z^n`, stored as the nonzero rows of its row
/// Hermite normal form. Two bases describe the same lattice iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// The lattice generated by `gens` (not saturated).
    pub fn from_generators(gens: &[Vec<BigInt>], ambient_dim: usize) -> Result<Self> {
        if gens.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = IntMatrix::from_rows(gens, ambient_dim)?;
        let (h, _) = hnf(&m);
        let vectors = h
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Ok(LatticeBasis { ambient_dim, vectors })
    }

    pub fn from_i64(gens: &[&[i64]], ambient_dim: usize) -> Result<Self> {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_generators(&g, ambient_dim)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        LatticeBasis { ambient_dim, vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn rational_vectors(&self) -> Vec<QVec> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `x` in this basis, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        if self.vectors.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        let cols = IntMatrix::from_rows(&self.vectors, self.ambient_dim).ok()?.transpose();
        solve_integer(&cols, x)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Rational coordinates of `x` in this basis, if `x` lies in its span.
    pub fn rational_coordinates(&self, x: &[Rational]) -> Option<QVec> {
        if self.vectors.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        qmat::combination(&self.rational_vectors(), x)
    }

    /// The sublattice of points lying in the rational span of `vectors`.
    pub fn intersect_span(&self, vectors: &[QVec]) -> LatticeBasis {
        if self.vectors.is_empty() {
            return self.clone();
        }
        let n = self.ambient_dim;
        let annihilator = qmat::nullspace(vectors, n);
        if annihilator.is_empty() {
            return self.clone();
        }
        // rows: annihilator functionals evaluated on basis vectors
        let rows: Vec<Vec<BigInt>> = annihilator
            .iter()
            .map(|f| {
                let vals: QVec = self
                    .rational_vectors()
                    .iter()
                    .map(|b| crate::rational::dot(f, b))
                    .collect();
                primitive_integer(&vals)
            })
            .collect();
        let m = IntMatrix::from_rows(&rows, self.rank()).expect("consistent widths");
        let gens: Vec<Vec<BigInt>> = integer_kernel(&m)
            .into_iter()
            .map(|c| {
                (0..n)
                    .map(|j| c.iter().zip(&self.vectors).map(|(ci, b)| ci * &b[j]).sum())
                    .collect()
            })
            .collect();
        LatticeBasis::from_generators(&gens, n).expect("consistent widths")
    }
}

/// Canonical basis of `span(vectors) ∩ Z^n`.
pub fn lattice_basis_of_span(vectors: &[QVec], ambient_dim: usize) -> LatticeBasis {
    let gens: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| primitive_integer(v))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if gens.is_empty() {
        return LatticeBasis::zero(ambient_dim);
    }
    let m = IntMatrix::from_rows(&gens, ambient_dim).expect("vectors have ambient_dim entries");
    let (_, d, v) = snf(&m);
    let r = (0..m.rows().min(m.cols())).filter(|&i| !d[(i, i)].is_zero()).count();
    let v_inv = qmat::inverse(&v.to_rational_rows()).expect("unimodular");
    let rows: Vec<Vec<BigInt>> = v_inv[..r]
        .iter()
        .map(|row| row.iter().map(|q| q.to_integer()).collect())
        .collect();
    LatticeBasis::from_generators(&rows, ambient_dim).expect("consistent widths")
}

/// Whether `a` and `b` are complementary inside `target`: every point of
/// `target` in the joint span splits uniquely as a point of `a` plus a point
/// of `b`.
pub fn complementary_in(target: &LatticeBasis, a: &LatticeBasis, b: &LatticeBasis) -> Result<bool> {
    for l in [a, b] {
        if l.ambient_dim != target.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim,
                found: l.ambient_dim,
            });
        }
        if !target.contains_lattice(l) {
            return Err(Error::NotSublattice);
        }
    }
    let joint: Vec<Vec<BigInt>> = a.vectors.iter().chain(&b.vectors).cloned().collect();
    let joint_q: Vec<QVec> = joint
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    if qmat::rank(&joint_q, target.ambient_dim) != a.rank() + b.rank() {
        return Ok(false);
    }
    let generated = LatticeBasis::from_generators(&joint, target.ambient_dim)?;
    Ok(generated == target.intersect_span(&joint_q))
}

/// All points of `offset + L` inside the closed box, in lexicographic order.
pub fn affine_lattice_points_in_box(
    basis: &LatticeBasis,
    offset: &[Rational],
    bounds: &[(Rational, Rational)],
) -> Result<Vec<QVec>> {
    let n = basis.ambient_dim;
    for len in [offset.len(), bounds.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, found: len });
        }
    }
    let vecs = basis.rational_vectors();
    let pivots: Vec<usize> = basis
        .vectors
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
        .collect();
    let mut out = Vec::new();
    let mut point = offset.to_vec();
    walk_box(&vecs, &pivots, bounds, 0, &mut point, &mut out)?;
    out.sort();
    Ok(out)
}

fn walk_box(
    vecs: &[QVec],
    pivots: &[usize],
    bounds: &[(Rational, Rational)],
    depth: usize,
    point: &mut QVec,
    out: &mut Vec<QVec>,
) -> Result<()> {
    if depth == vecs.len() {
        if point.iter().zip(bounds).all(|(x, (lo, hi))| lo <= x && x <= hi) {
            out.push(point.clone());
        }
        return Ok(());
    }
    let j = pivots[depth];
    let step = &vecs[depth][j];
    debug_assert!(step.is_positive());
    let (lo, hi) = &bounds[j];
    let cmin = ceil_i64(&((lo - &point[j]) / step))?;
    let cmax = floor_i64(&((hi - &point[j]) / step))?;
    for c in cmin..=cmax {
        let cq = Rational::from_integer(c.into());
        let shifted: QVec = point.iter().zip(&vecs[depth]).map(|(x, b)| x + &cq * b).collect();
        let mut next = shifted;
        walk_box(vecs, pivots, bounds, depth + 1, &mut next, out)?;
    }
    Ok(())
}
