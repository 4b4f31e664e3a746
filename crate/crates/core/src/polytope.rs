//! Rational polytopes, their facets, polar duals and lattice points.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{lattice_basis_of_span, qmat, solve_integer, IntMatrix, LatticeBasis};
use crate::rational::{
    ceil_i64, dot, dot_int, floor_i64, int, is_integral, lcm_of_denominators, primitive_integer, sub, LatticePoint,
    QVec, Rational,
};

/// An inequality `normal · x <= offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

/// An equation `normal · x = value` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub normal: Vec<BigInt>,
    pub value: Rational,
}

impl Facet {
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot_int(&self.normal, x)
    }
}

/// Convex hull of finitely many points of `Q^n`, kept as its irredundant
/// vertex list together with an exact facet and equation description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<QVec>,
    affine_dim: usize,
    facets: Vec<Facet>,
    equations: Vec<Equation>,
}

impl RationalPolytope {
    /// Convex hull of `points`. Redundant points are dropped.
    pub fn new(dim: usize, points: Vec<QVec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let points: Vec<QVec> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let base = points[0].clone();
        let diffs: Vec<QVec> = points[1..].iter().map(|p| sub(p, &base)).collect();
        let (directions, _) = qmat::rref(&diffs, dim);
        let affine_dim = directions.len();

        let equations = qmat::nullspace(&directions, dim)
            .into_iter()
            .map(|f| {
                let normal = primitive_integer(&f);
                let value = dot_int(&normal, &base);
                Equation { normal, value }
            })
            .collect();

        let facets = if affine_dim == 0 {
            Vec::new()
        } else {
            facets_within_hull(&points, &directions)
        };

        let vertices = if affine_dim == 0 {
            points
        } else {
            points
                .into_iter()
                .filter(|p| {
                    let tight: Vec<QVec> = facets
                        .iter()
                        .filter(|f| f.slack(p).is_zero())
                        .map(|f| f.normal.iter().map(|x| Rational::from_integer(x.clone())).collect())
                        .collect();
                    qmat::rank(&tight, dim) == affine_dim
                })
                .collect()
        };

        Ok(RationalPolytope {
            dim,
            vertices,
            affine_dim,
            facets,
            equations,
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        Self::new(dim, points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect())
    }

    /// The single point `{0}` in `Q^n`.
    pub fn origin(dim: usize) -> Self {
        Self::new(dim, vec![vec![Rational::zero(); dim]]).expect("one point")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| dot_int(&e.normal, x) == e.value)
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| dot_int(&e.normal, x) == e.value)
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&vec![Rational::zero(); self.dim])
    }

    /// Smallest positive integer `k` for which `kP` is a lattice polytope.
    pub fn denominator(&self) -> BigInt {
        lcm_of_denominators(self.vertices.iter().flatten())
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(|v| is_integral(v))
    }

    pub fn dilate(&self, k: &Rational) -> Result<Self> {
        Self::new(self.dim, self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect())
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Self> {
        Self::new(self.dim, self.vertices.iter().map(|v| crate::rational::add(v, t)).collect())
    }

    /// Coordinatewise `(min, max)` over the vertices.
    pub fn bounding_box(&self) -> Vec<(Rational, Rational)> {
        (0..self.dim)
            .map(|j| {
                let col = self.vertices.iter().map(|v| &v[j]);
                let lo = col.clone().min().expect("nonempty").clone();
                let hi = col.max().expect("nonempty").clone();
                (lo, hi)
            })
            .collect()
    }

    /// Integer points of `tP` for a rational `t >= 0`, in lexicographic order.
    pub fn lattice_points_scaled(&self, t: &Rational) -> Result<Vec<LatticePoint>> {
        if t.is_negative() {
            return Ok(Vec::new());
        }
        let n = self.dim;
        let offset: Vec<BigInt> = if self.equations.is_empty() {
            vec![BigInt::zero(); n]
        } else {
            let mut rhs = Vec::with_capacity(self.equations.len());
            for e in &self.equations {
                let v = &e.value * t;
                if !v.is_integer() {
                    return Ok(Vec::new());
                }
                rhs.push(v.to_integer());
            }
            let rows: Vec<Vec<BigInt>> = self.equations.iter().map(|e| e.normal.clone()).collect();
            let m = IntMatrix::from_rows(&rows, n)?;
            match solve_integer(&m, &rhs) {
                Some(x) => x,
                None => return Ok(Vec::new()),
            }
        };
        let directions: Vec<QVec> = qmat::nullspace(
            &self
                .equations
                .iter()
                .map(|e| e.normal.iter().map(|x| Rational::from_integer(x.clone())).collect())
                .collect::<Vec<QVec>>(),
            n,
        );
        let lattice = lattice_basis_of_span(&directions, n);
        let bounds: Vec<(i64, i64)> = self
            .bounding_box()
            .iter()
            .map(|(lo, hi)| Ok((ceil_i64(&(lo * t))?, floor_i64(&(hi * t))?)))
            .collect::<Result<_>>()?;
        let facets: Vec<(Vec<i128>, i128)> = self
            .facets
            .iter()
            .map(|f| Ok((to_i128_vec(&f.normal)?, to_i128(&(&f.offset * t).floor().to_integer())?)))
            .collect::<Result<_>>()?;
        let basis: Vec<Vec<i128>> = lattice.vectors().iter().map(|v| to_i128_vec(v)).collect::<Result<_>>()?;
        let start = to_i128_vec(&offset)?;
        let mut out = Vec::new();
        coefficient_walk(&basis, &bounds, &facets, 0, start, &mut out)?;
        out.sort();
        Ok(out)
    }

    pub fn lattice_points_in_dilate(&self, k: u64) -> Result<Vec<LatticePoint>> {
        self.lattice_points_scaled(&Rational::from_integer(k.into()))
    }

    pub fn count_in_dilate(&self, k: u64) -> Result<usize> {
        Ok(self.lattice_points_in_dilate(k)?.len())
    }

    /// Lattice points of the relative interior of `kP`.
    pub fn interior_points_in_dilate(&self, k: u64) -> Result<Vec<LatticePoint>> {
        let kq = Rational::from_integer(k.into());
        Ok(self
            .lattice_points_in_dilate(k)?
            .into_iter()
            .filter(|x| {
                let xq: QVec = x.iter().map(|&c| int(c)).collect();
                self.equations.iter().all(|e| dot_int(&e.normal, &xq) == &e.value * &kq)
                    && self.facets.iter().all(|f| dot_int(&f.normal, &xq) < &f.offset * &kq)
            })
            .collect())
    }

    /// Facet description relative to `lin P`, valid when `0 ∈ P`.
    pub fn halfspace_rep(&self) -> Result<HalfspaceRep> {
        if !self.contains_origin() {
            return Err(Error::OriginNotInPolytope);
        }
        let span_basis = lattice_basis_of_span(&self.vertices, self.dim);
        let basis_q = span_basis.rational_vectors();
        let mut one_facets = Vec::new();
        let mut zero_facets = Vec::new();
        for f in &self.facets {
            let values: QVec = basis_q.iter().map(|b| dot_int(&f.normal, b)).collect();
            if f.offset.is_zero() {
                zero_facets.push(primitive_integer(&values).into_iter().map(Rational::from_integer).collect());
            } else {
                one_facets.push(values.iter().map(|v| v / &f.offset).collect());
            }
        }
        one_facets.sort();
        zero_facets.sort();
        Ok(HalfspaceRep {
            span_basis,
            one_facets,
            zero_facets,
        })
    }

    pub fn polar_dual(&self) -> Result<DualPolyhedron> {
        let h = self.halfspace_rep()?;
        let vertex_functionals = if h.span_basis.rank() == 0 {
            vec![Vec::new()]
        } else {
            h.one_facets.clone()
        };
        Ok(DualPolyhedron {
            span_basis: h.span_basis,
            vertex_functionals,
            ray_functionals: h.zero_facets,
        })
    }

    /// The denominator of the polar dual.
    pub fn dual_denominator(&self) -> Result<BigInt> {
        Ok(self.polar_dual()?.denominator())
    }

    /// Lattice polytope, origin in the relative interior, dual a lattice polytope.
    pub fn is_reflexive(&self) -> bool {
        if !self.is_lattice_polytope() || !self.contains_relint(&vec![Rational::zero(); self.dim]) {
            return false;
        }
        match self.polar_dual() {
            Ok(d) => d.ray_functionals.is_empty() && d.is_lattice_polyhedron(),
            Err(_) => false,
        }
    }

    /// `inf { l >= 0 : a ∈ l P }`, or `None` when `a` is outside `pos P`.
    pub fn min_dilation(&self, a: &[Rational]) -> Result<Option<Rational>> {
        if !self.contains_origin() {
            return Err(Error::OriginNotInPolytope);
        }
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.len(),
            });
        }
        if self.equations.iter().any(|e| !dot_int(&e.normal, a).is_zero()) {
            return Ok(None);
        }
        let mut best = Rational::zero();
        for f in &self.facets {
            let v = dot_int(&f.normal, a);
            if f.offset.is_zero() {
                if v.is_positive() {
                    return Ok(None);
                }
            } else {
                best = best.max(v / &f.offset);
            }
        }
        Ok(Some(best))
    }

    pub fn gorenstein_data(&self) -> Result<GorensteinData> {
        self.gorenstein_data_with_bound(self.affine_dim as u64 + 1)
    }

    /// Scans `k = 1..=bound` for the first dilate with a relative-interior
    /// lattice point, then tests reflexivity of `kP - m`.
    pub fn gorenstein_data_with_bound(&self, bound: u64) -> Result<GorensteinData> {
        if !self.is_lattice_polytope() {
            return Err(Error::NotLatticePolytope);
        }
        for k in 1..=bound {
            let interior = self.interior_points_in_dilate(k)?;
            match interior.len() {
                0 => continue,
                1 => {}
                c => {
                    return Err(Error::NotGorenstein(format!(
                        "{c} interior lattice points in the first dilate {k}P that has any"
                    )))
                }
            }
            let m = interior.into_iter().next().expect("one point");
            let mq: QVec = m.iter().map(|&c| int(c)).collect();
            let kq = int(k as i64);
            let shifted = self.dilate(&kq)?.translate(&mq.iter().map(|x| -x).collect::<QVec>())?;
            if !shifted.is_reflexive() {
                return Err(Error::NotGorenstein(format!("{k}P - m is not reflexive")));
            }
            let center = mq.iter().map(|x| x / &kq).collect();
            return Ok(GorensteinData {
                index: k,
                interior_point: m,
                center,
            });
        }
        Err(Error::GorensteinInconclusive(bound))
    }
}

/// Facets of `conv(points)` inside its affine hull, whose direction space is
/// spanned by `directions`. Found by testing every hyperplane through
/// `affine_dim` of the points.
fn facets_within_hull(points: &[QVec], directions: &[QVec]) -> Vec<Facet> {
    let d = directions.len();
    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in (0..points.len()).combinations(d) {
        let s0 = &points[subset[0]];
        let rows: Vec<QVec> = subset[1..]
            .iter()
            .map(|&i| {
                let diff = sub(&points[i], s0);
                directions.iter().map(|dk| dot(dk, &diff)).collect()
            })
            .collect();
        let ns = qmat::nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let mut a: QVec = vec![Rational::zero(); s0.len()];
        for (c, dk) in ns[0].iter().zip(directions) {
            for (x, y) in a.iter_mut().zip(dk) {
                *x += c * y;
            }
        }
        let mut normal = primitive_integer(&a);
        let mut offset = dot_int(&normal, s0);
        let values: Vec<Rational> = points.iter().map(|p| dot_int(&normal, p)).collect();
        let below = values.iter().all(|v| v <= &offset);
        let above = values.iter().all(|v| v >= &offset);
        if !below && !above {
            continue;
        }
        if !below {
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        if seen.insert(normal.clone()) {
            facets.push(Facet { normal, offset });
        }
    }
    facets.sort();
    facets
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

fn to_i128_vec(v: &[BigInt]) -> Result<Vec<i128>> {
    v.iter().map(to_i128).collect()
}

/// Walks `start + Σ c_i basis_i`. Every level but the last is bounded by the
/// box on its pivot coordinate; the last level is cut out by the facets.
fn coefficient_walk(
    basis: &[Vec<i128>],
    bounds: &[(i64, i64)],
    facets: &[(Vec<i128>, i128)],
    depth: usize,
    point: Vec<i128>,
    out: &mut Vec<LatticePoint>,
) -> Result<()> {
    let value = |a: &[i128], x: &[i128]| -> i128 { a.iter().zip(x).map(|(p, q)| p * q).sum() };
    if basis.is_empty() {
        if facets.iter().all(|(a, b)| value(a, &point) <= *b) {
            out.push(to_point(&point)?);
        }
        return Ok(());
    }
    let b = &basis[depth];
    let j = b.iter().position(|x| *x != 0).expect("nonzero basis vector");
    let (lo, hi) = (i128::from(bounds[j].0), i128::from(bounds[j].1));
    let mut cmin = div_ceil(lo - point[j], b[j]);
    let mut cmax = div_floor(hi - point[j], b[j]);
    if depth + 1 == basis.len() {
        for (a, rhs) in facets {
            let slope = value(a, b);
            let room = rhs - value(a, &point);
            match slope.signum() {
                1 => cmax = cmax.min(div_floor(room, slope)),
                -1 => cmin = cmin.max(div_ceil(room, slope)),
                _ if room < 0 => return Ok(()),
                _ => {}
            }
        }
        for c in cmin..=cmax {
            let x: Vec<i128> = point.iter().zip(b).map(|(p, q)| p + c * q).collect();
            out.push(to_point(&x)?);
        }
        return Ok(());
    }
    for c in cmin..=cmax {
        let x = point.iter().zip(b).map(|(p, q)| p + c * q).collect();
        coefficient_walk(basis, bounds, facets, depth + 1, x, out)?;
    }
    Ok(())
}

fn to_point(x: &[i128]) -> Result<LatticePoint> {
    x.iter().map(|&c| i64::try_from(c).map_err(|_| Error::Overflow)).collect()
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// `P = { a ∈ lin P : φ_i(a) <= 1, ψ_j(a) <= 0 }`, functionals written in the
/// dual basis of `span_basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceRep {
    pub span_basis: LatticeBasis,
    pub one_facets: Vec<QVec>,
    pub zero_facets: Vec<QVec>,
}

impl HalfspaceRep {
    /// Whether `x` (ambient coordinates) satisfies the description.
    pub fn contains(&self, x: &[Rational]) -> bool {
        let Some(c) = self.span_basis.rational_coordinates(x) else {
            return false;
        };
        self.one_facets.iter().all(|f| dot(f, &c) <= Rational::one())
            && self.zero_facets.iter().all(|f| !dot(f, &c).is_positive())
    }
}

/// `P^∨ = conv(vertex_functionals) + pos(ray_functionals)` inside the dual of
/// `lin P`, in the dual basis of `span_basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPolyhedron {
    pub span_basis: LatticeBasis,
    pub vertex_functionals: Vec<QVec>,
    pub ray_functionals: Vec<QVec>,
}

impl DualPolyhedron {
    pub fn is_lattice_polyhedron(&self) -> bool {
        self.vertex_functionals.iter().all(|v| is_integral(v))
    }

    pub fn denominator(&self) -> BigInt {
        lcm_of_denominators(self.vertex_functionals.iter().flatten())
    }

    pub fn is_bounded(&self) -> bool {
        self.ray_functionals.is_empty()
    }

    /// `max_i φ_i(a)` over the vertex functionals, for `a` in ambient coordinates
    /// inside `lin P`.
    pub fn max_vertex_value(&self, a: &[Rational]) -> Option<Rational> {
        let c = self.span_basis.rational_coordinates(a)?;
        self.vertex_functionals.iter().map(|f| dot(f, &c)).max()
    }
}

/// Builds the bounded dual as a polytope in the coordinates of `span_basis`.
pub fn dual_as_polytope(d: &DualPolyhedron) -> Result<RationalPolytope> {
    if !d.is_bounded() {
        return Err(Error::InvalidInput("the dual is unbounded".into()));
    }
    RationalPolytope::new(d.span_basis.rank(), d.vertex_functionals.clone())
}

/// `kP - m` is reflexive and `m` is the only lattice point in the relative
/// interior of `kP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinData {
    pub index: u64,
    pub interior_point: LatticePoint,
    pub center: QVec,
}
