//! Cones over polytopes, their lower envelopes and shifted copies.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::LatticeBasis;
use crate::polytope::RationalPolytope;
use crate::rational::{ceil_i64, dot_int, floor_i64, int, primitive_integer, LatticePoint, QVec, Rational};
use crate::series::TruncatedSeries;

/// `α(a) = (a, 1)`.
pub fn alpha(a: &[Rational]) -> QVec {
    let mut v = a.to_vec();
    v.push(Rational::one());
    v
}

/// A family of lattice points graded by the last coordinate, each grade finite.
pub trait GradedLatticeSet {
    /// Number of coordinates, including the height.
    fn num_vars(&self) -> usize;

    /// Lattice points with last coordinate `t`, in lexicographic order.
    fn slice(&self, t: i64) -> Result<Vec<LatticePoint>>;

    fn points_up_to(&self, height: u64) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        for t in 0..=height as i64 {
            out.extend(self.slice(t)?);
        }
        Ok(out)
    }
}

/// `cone P ⊂ R^{n+1}`, the nonnegative multiples of `α(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeOverPolytope {
    base: RationalPolytope,
    generators: Vec<QVec>,
    inequalities: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

impl ConeOverPolytope {
    pub fn new(base: RationalPolytope) -> Self {
        let generators = base.vertices().iter().map(|v| alpha(v)).collect();
        let n = base.dim();
        let mut inequalities: Vec<Vec<BigInt>> = base
            .facets()
            .iter()
            .map(|f| {
                let mut h: QVec = f.normal.iter().map(|x| -Rational::from_integer(x.clone())).collect();
                h.push(f.offset.clone());
                primitive_integer(&h)
            })
            .collect();
        let mut height = vec![BigInt::zero(); n + 1];
        height[n] = BigInt::one();
        inequalities.push(height);
        let equations = base
            .equations()
            .iter()
            .map(|e| {
                let mut g: QVec = e.normal.iter().map(|x| Rational::from_integer(x.clone())).collect();
                g.push(-e.value.clone());
                primitive_integer(&g)
            })
            .collect();
        ConeOverPolytope {
            base,
            generators,
            inequalities,
            equations,
        }
    }

    pub fn base(&self) -> &RationalPolytope {
        &self.base
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    /// Rows `h` of the description `h · X >= 0`.
    pub fn inequalities(&self) -> &[Vec<BigInt>] {
        &self.inequalities
    }

    /// Rows `g` of the description `g · X = 0`.
    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim() + 1
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_dim()
            && self.equations.iter().all(|g| dot_int(g, x).is_zero())
            && self.inequalities.iter().all(|h| !dot_int(h, x).is_negative())
    }

    pub fn contains_lattice_point(&self, x: &[i64]) -> bool {
        self.contains(&x.iter().map(|&c| int(c)).collect::<QVec>())
    }

    /// Integer `x` with `(x, tau) ∈ cone P`, for a rational `tau`, found by
    /// scanning the bounding box of `tau P` one coordinate at a time.
    pub fn slice_at(&self, tau: &Rational) -> Result<Vec<LatticePoint>> {
        if tau.is_negative() {
            return Ok(Vec::new());
        }
        let n = self.base.dim();
        let (num, den) = (to_i128(tau.numer())?, to_i128(tau.denom())?);
        let scale = |rows: &[Vec<BigInt>]| -> Result<Vec<(Vec<i128>, i128)>> {
            rows.iter()
                .map(|r| {
                    let xs = r[..n].iter().map(|c| Ok(to_i128(c)? * den)).collect::<Result<Vec<_>>>()?;
                    Ok((xs, to_i128(&r[n])? * num))
                })
                .collect()
        };
        let ineq = scale(&self.inequalities)?;
        let eqs = scale(&self.equations)?;
        let bounds: Vec<(i64, i64)> = self
            .base
            .bounding_box()
            .iter()
            .map(|(lo, hi)| Ok((ceil_i64(&(lo * tau))?, floor_i64(&(hi * tau))?)))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        if n == 0 {
            if ineq.iter().all(|(_, c)| *c >= 0) && eqs.iter().all(|(_, c)| *c == 0) {
                out.push(Vec::new());
            }
            return Ok(out);
        }
        let mut x = vec![0i64; n];
        scan(&ineq, &eqs, &bounds, 0, &mut x, &mut out);
        Ok(out)
    }
}

fn scan(
    ineq: &[(Vec<i128>, i128)],
    eqs: &[(Vec<i128>, i128)],
    bounds: &[(i64, i64)],
    depth: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<LatticePoint>,
) {
    let n = x.len();
    let (lo, hi) = bounds[depth];
    if depth + 1 < n {
        for c in lo..=hi {
            x[depth] = c;
            scan(ineq, eqs, bounds, depth + 1, x, out);
        }
        return;
    }
    // last coordinate: every row reads coef * x_last + rest (>= or =) 0
    let partial = |(row, c): &(Vec<i128>, i128)| -> (i128, i128) {
        let rest: i128 = row[..n - 1].iter().zip(x.iter()).map(|(a, b)| a * i128::from(*b)).sum::<i128>() + c;
        (row[n - 1], rest)
    };
    let (mut lo, mut hi) = (i128::from(lo), i128::from(hi));
    for e in eqs {
        let (coef, rest) = partial(e);
        if coef == 0 {
            if rest != 0 {
                return;
            }
        } else {
            if rest % coef != 0 {
                return;
            }
            let v = -rest / coef;
            lo = lo.max(v);
            hi = hi.min(v);
        }
    }
    for h in ineq {
        let (coef, rest) = partial(h);
        match coef.signum() {
            1 => lo = lo.max(-Integer::div_floor(&rest, &coef)),
            -1 => hi = hi.min(Integer::div_floor(&rest, &-coef)),
            _ if rest < 0 => return,
            _ => {}
        }
    }
    for c in lo..=hi {
        x[n - 1] = c as i64;
        out.push(x.clone());
    }
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

impl GradedLatticeSet for ConeOverPolytope {
    fn num_vars(&self) -> usize {
        self.ambient_dim()
    }

    fn slice(&self, t: i64) -> Result<Vec<LatticePoint>> {
        Ok(self
            .slice_at(&int(t))?
            .into_iter()
            .map(|mut x| {
                x.push(t);
                x
            })
            .collect())
    }
}

pub fn cone_over(p: &RationalPolytope) -> ConeOverPolytope {
    ConeOverPolytope::new(p.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `cone^i P = cone P + (i/d) e_{n+1}`
    Up,
    /// `cone_i K = cone K - (i/d) e_{n+1}`
    Down,
}

/// A cone translated vertically by `± index / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedCone {
    pub cone: ConeOverPolytope,
    pub index: u64,
    pub denominator: u64,
    pub direction: ShiftDirection,
}

impl ShiftedCone {
    pub fn new(cone: ConeOverPolytope, index: u64, denominator: u64, direction: ShiftDirection) -> Result<Self> {
        if denominator == 0 || index > denominator {
            return Err(Error::ShiftIndexOutOfRange {
                index,
                bound: denominator,
            });
        }
        Ok(ShiftedCone {
            cone,
            index,
            denominator,
            direction,
        })
    }

    /// The signed vertical translation.
    pub fn shift(&self) -> Rational {
        let s = Rational::new(BigInt::from(self.index), BigInt::from(self.denominator));
        match self.direction {
            ShiftDirection::Up => s,
            ShiftDirection::Down => -s,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let mut y = x.to_vec();
        if let Some(last) = y.last_mut() {
            *last -= self.shift();
        }
        self.cone.contains(&y)
    }
}

impl GradedLatticeSet for ShiftedCone {
    fn num_vars(&self) -> usize {
        self.cone.ambient_dim()
    }

    fn slice(&self, t: i64) -> Result<Vec<LatticePoint>> {
        Ok(self
            .cone
            .slice_at(&(int(t) - self.shift()))?
            .into_iter()
            .map(|mut x| {
                x.push(t);
                x
            })
            .collect())
    }
}

/// The integer points of `lenv cone^i P`, i.e. of `cone^i P` minus `cone^{i+1} P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedEnvelope {
    upper: ShiftedCone,
    next: ShiftedCone,
}

impl ShiftedEnvelope {
    pub fn new(p: &RationalPolytope, index: u64) -> Result<Self> {
        let d = dual_denominator_u64(p)?;
        if index >= d {
            return Err(Error::ShiftIndexOutOfRange { index, bound: d });
        }
        let cone = cone_over(p);
        Ok(ShiftedEnvelope {
            upper: ShiftedCone::new(cone.clone(), index, d, ShiftDirection::Up)?,
            next: ShiftedCone::new(cone, index + 1, d, ShiftDirection::Up)?,
        })
    }
}

impl GradedLatticeSet for ShiftedEnvelope {
    fn num_vars(&self) -> usize {
        self.upper.num_vars()
    }

    fn slice(&self, t: i64) -> Result<Vec<LatticePoint>> {
        let above: BTreeSet<LatticePoint> = self.next.slice(t)?.into_iter().collect();
        Ok(self.upper.slice(t)?.into_iter().filter(|x| !above.contains(x)).collect())
    }
}

/// The shift `i` with `x ∈ lenv cone^i P`, where `d = d(P)`. Points above
/// the rind get indices `≥ d`.
pub fn envelope_index(c: &ConeOverPolytope, d: u64, x: &[i64]) -> u64 {
    let xq: QVec = x.iter().map(|&v| int(v)).collect();
    let drop = c
        .inequalities()
        .iter()
        .filter_map(|h| {
            let rate = h.last().expect("nonempty row");
            rate.is_positive().then(|| dot_int(h, &xq) / Rational::from_integer(rate.clone()))
        })
        .min()
        .expect("the height row bounds the drop");
    (drop * int(d as i64)).floor().to_integer().to_u64().expect("nonnegative index")
}

/// `σ_{lenv cone^i P}` for every `i < d(P)` with a lattice point up to
/// height `T`, from a single pass over `cone P`.
pub fn shifted_envelope_series(p: &RationalPolytope, height_bound: u64) -> Result<BTreeMap<u64, TruncatedSeries>> {
    let d = dual_denominator_u64(p)?;
    let c = cone_over(p);
    let mut buckets: BTreeMap<u64, Vec<LatticePoint>> = BTreeMap::new();
    for x in c.points_up_to(height_bound)? {
        let i = envelope_index(&c, d, &x);
        if i < d {
            buckets.entry(i).or_default().push(x);
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(i, pts)| (i, TruncatedSeries::from_points(c.ambient_dim(), height_bound, pts)))
        .collect())
}

pub fn dual_denominator_u64(p: &RationalPolytope) -> Result<u64> {
    p.dual_denominator()?.to_u64().ok_or(Error::Overflow)
}

/// `ε^p_C(x) = x - λ α(p)` with `λ` maximal such that the result stays in `C`.
pub fn epsilon_project(c: &ConeOverPolytope, x: &[Rational], p: &[Rational]) -> Result<QVec> {
    if !c.contains(x) {
        return Err(Error::NotInCone);
    }
    let dir = alpha(p);
    if !c.contains(&dir) {
        return Err(Error::DirectionNotInCone);
    }
    let lambda = c
        .inequalities()
        .iter()
        .filter_map(|h| {
            let rate = dot_int(h, &dir);
            rate.is_positive().then(|| dot_int(h, x) / rate)
        })
        .min()
        .expect("the height row always decreases along α(p)");
    Ok(x.iter().zip(&dir).map(|(a, b)| a - &lambda * b).collect())
}

pub fn on_lower_envelope(c: &ConeOverPolytope, x: &[Rational], p: &[Rational]) -> Result<bool> {
    Ok(epsilon_project(c, x, p)? == x)
}

/// A projected lattice point together with its integrality flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnvelopePoint {
    pub coords: QVec,
    pub lattice: bool,
}

fn project_all(c: &ConeOverPolytope, p: &[Rational], height: u64, keep_below: Option<&Rational>) -> Result<Vec<EnvelopePoint>> {
    let mut seen = BTreeSet::new();
    for x in c.points_up_to(height)? {
        let xq: QVec = x.iter().map(|&v| int(v)).collect();
        let y = epsilon_project(c, &xq, p)?;
        if keep_below.is_some_and(|t| y.last().expect("nonempty") > t) {
            continue;
        }
        seen.insert(y);
    }
    Ok(seen
        .into_iter()
        .map(|coords| EnvelopePoint {
            lattice: coords.iter().all(|q| q.is_integer()),
            coords,
        })
        .collect())
}

/// `{ ε^p(x) : x ∈ C ∩ Z^{n+1}, height(x) <= T }`, lexicographically sorted.
pub fn llenv_points(c: &ConeOverPolytope, p: &[Rational], height: u64) -> Result<Vec<EnvelopePoint>> {
    project_all(c, p, height, None)
}

/// Every point of `pllenv C` whose own height is at most `T`. A lattice point
/// projecting there lies below height `T + r` with `r = den(p)`.
pub fn llenv_points_up_to(c: &ConeOverPolytope, p: &[Rational], height: u64) -> Result<Vec<EnvelopePoint>> {
    let r = crate::rational::lcm_of_denominators(p).to_u64().ok_or(Error::Overflow)?;
    project_all(c, p, height + r - 1, Some(&int(height as i64)))
}

/// Integer points of `lenv cone^i P` with height at most `T`.
pub fn shifted_envelope_lattice_points(p: &RationalPolytope, index: u64, height: u64) -> Result<Vec<LatticePoint>> {
    ShiftedEnvelope::new(p, index)?.points_up_to(height)
}

/// Membership in the rind `cone P \ (cone P + e_{n+1})`.
pub fn rind_contains(p: &RationalPolytope, x: &[i64]) -> Result<bool> {
    if !p.contains_origin() {
        return Err(Error::OriginNotInPolytope);
    }
    let c = cone_over(p);
    if !c.contains_lattice_point(x) {
        return Ok(false);
    }
    let mut below = x.to_vec();
    *below.last_mut().ok_or(Error::InvalidInput("empty point".into()))? -= 1;
    Ok(!c.contains_lattice_point(&below))
}

/// `Λ^p`, the lattice generated by `e_1, ..., e_n` and `p`, stored through its
/// integral multiple `r Λ^p` with `r = den(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaP {
    pub p: QVec,
    pub r: u64,
    pub scaled: LatticeBasis,
}

impl LambdaP {
    pub fn basis(&self) -> Vec<QVec> {
        let r = int(self.r as i64);
        self.scaled.rational_vectors().into_iter().map(|v| v.iter().map(|x| x / &r).collect()).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let r = int(self.r as i64);
        let scaled: QVec = x.iter().map(|q| q * &r).collect();
        scaled.iter().all(|q| q.is_integer())
            && self.scaled.contains(&scaled.iter().map(|q| q.to_integer()).collect::<Vec<_>>())
    }
}

pub fn lambda_p(p: &[Rational]) -> Result<LambdaP> {
    let n = p.len();
    let r = crate::rational::lcm_of_denominators(p);
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.push(p.iter().map(|q| (q * Rational::from_integer(r.clone())).to_integer()).collect());
    Ok(LambdaP {
        p: p.to_vec(),
        r: r.to_u64().ok_or(Error::Overflow)?,
        scaled: LatticeBasis::from_generators(&gens, n)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnvelopeVerdict {
    /// `point` is an integer point of `lenv cone P ± ρ e_{n+1}`; it sits
    /// `envelope_height` above the apex before the shift.
    Witness {
        point: LatticePoint,
        envelope_height: Rational,
    },
    /// No integer point with envelope height at most `searched_height`.
    /// `certified` means the residue test proves emptiness at every height.
    Empty { certified: bool, searched_height: u64 },
}

/// Whether `lenv cone P + sign·ρ e_{n+1}` contains a lattice point.
///
/// The lower envelope over the cone on a facet with dual vertex `φ` takes the
/// values `φ(x)`, whose fractional parts run through `(1/v)Z / Z` where `v` is
/// the denominator of `φ`. A shifted envelope therefore meets the lattice iff
/// `ρ` lies in `(1/v)Z` for some dual vertex. Witnesses are found by scanning
/// heights upward from 0, beyond `max_height` when the residue test promises one.
pub fn shifted_envelope_nonempty(
    p: &RationalPolytope,
    rho: &Rational,
    sign: i8,
    max_height: u64,
) -> Result<EnvelopeVerdict> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let dual = p.polar_dual()?;
    let possible = dual.vertex_functionals.iter().any(|phi| {
        let v = crate::rational::lcm_of_denominators(phi);
        (rho * Rational::from_integer(v)).is_integer()
    });
    let c = cone_over(p);
    let shift = if sign > 0 { rho.clone() } else { -rho.clone() };
    let mut t = 0i64;
    loop {
        if !possible && t as u64 > max_height {
            return Ok(EnvelopeVerdict::Empty {
                certified: true,
                searched_height: max_height,
            });
        }
        // lattice points with ceil(h(x)) = t
        let mut hits: Vec<(Rational, LatticePoint)> = Vec::new();
        for x in c.slice_at(&int(t))? {
            let xq: QVec = x.iter().map(|&v| int(v)).collect();
            let h = p.min_dilation(&xq)?.expect("x lies in t·P");
            if h.ceil() != int(t) {
                continue;
            }
            let level = &h + &shift;
            if level.is_integer() {
                let mut point = x.clone();
                point.push(level.to_integer().to_i64().ok_or(Error::Overflow)?);
                hits.push((h, point));
            }
        }
        if let Some((h, point)) = hits.into_iter().min() {
            return Ok(EnvelopeVerdict::Witness {
                point,
                envelope_height: h,
            });
        }
        t += 1;
        if possible && t > 1_000_000 {
            return Err(Error::InvalidInput("witness search did not terminate".into()));
        }
    }
}
