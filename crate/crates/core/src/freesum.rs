//! Free sums and affine free sums of rational polytopes, and the checks of
//! the product formulas for their cones.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::{
    alpha, cone_over, dual_denominator_u64, lambda_p, llenv_points_up_to, shifted_envelope_series, EnvelopePoint,
    GradedLatticeSet, ShiftDirection, ShiftedCone,
};
use crate::error::{Error, Result};
use crate::linalg::{complementary_in, lattice_basis_of_span, qmat, LatticeBasis};
use crate::polytope::RationalPolytope;
use crate::rational::{int, lcm_of_denominators, sub, LatticePoint, QVec, Rational};
use crate::series::{delta_polynomial, ehrhart_series, sigma_cone, DeltaPolynomial, TruncatedSeries, UnivariateSeries};

/// `J ⊕ K = conv(J ∪ K)`.
pub fn hull_union(j: &RationalPolytope, k: &RationalPolytope) -> Result<RationalPolytope> {
    if j.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: k.dim(),
        });
    }
    let points = j.vertices().iter().chain(k.vertices()).cloned().collect();
    RationalPolytope::new(j.dim(), points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    FreeSum,
    AffineFreeSum,
}

impl SumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SumKind::FreeSum => "free_sum",
            SumKind::AffineFreeSum => "affine_free_sum",
        }
    }
}

/// Evidence that `J ⊕ K` is a (affine) free sum meeting at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSumWitness {
    pub j: RationalPolytope,
    pub k: RationalPolytope,
    pub kind: SumKind,
    pub p: QVec,
    pub r: u64,
    /// `r Λ^p`, or `Z^n` for a free sum.
    pub target: LatticeBasis,
    pub lattice_j: LatticeBasis,
    pub lattice_k: LatticeBasis,
}

impl FreeSumWitness {
    /// `r α(p)`, the exponent in the product formula.
    pub fn braun_exponent(&self) -> Vec<i64> {
        let r = int(self.r as i64);
        alpha(&self.p)
            .iter()
            .map(|q| (q * &r).to_integer().to_i64().expect("small exponent"))
            .collect()
    }
}

/// The unique point where the affine hulls of `j` and `k` meet.
pub fn span_intersection(j: &RationalPolytope, k: &RationalPolytope) -> Result<QVec> {
    let n = j.dim();
    let directions = |p: &RationalPolytope| -> Vec<QVec> {
        let base = &p.vertices()[0];
        let diffs: Vec<QVec> = p.vertices()[1..].iter().map(|v| sub(v, base)).collect();
        qmat::rref(&diffs, n).0
    };
    let (dj, dk) = (directions(j), directions(k));
    let (vj, vk) = (&j.vertices()[0], &k.vertices()[0]);
    // vj + Σ a_i dj_i = vk + Σ b_i dk_i
    let unknowns = dj.len() + dk.len();
    let rows: Vec<QVec> = (0..n)
        .map(|row| {
            dj.iter()
                .map(|d| d[row].clone())
                .chain(dk.iter().map(|d| -d[row].clone()))
                .collect()
        })
        .collect();
    let rhs = sub(vk, vj);
    let solution = qmat::solve(&rows, &rhs, unknowns).ok_or(Error::SpansDisjoint)?;
    if qmat::rank(&rows, unknowns) < unknowns {
        return Err(Error::SpansNotTransverse);
    }
    let mut p = vj.clone();
    for (a, d) in solution.iter().zip(&dj) {
        for (x, y) in p.iter_mut().zip(d) {
            *x += a * y;
        }
    }
    Ok(p)
}

/// Decides whether `J ⊕ K` is a free sum (meeting at the origin) or an
/// affine free sum (meeting at another rational point).
pub fn classify_sum(j: &RationalPolytope, k: &RationalPolytope) -> Result<FreeSumWitness> {
    if j.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: k.dim(),
        });
    }
    let n = j.dim();
    let p = span_intersection(j, k)?;
    if !j.contains(&p) || !k.contains(&p) {
        return Err(Error::IntersectionNotShared);
    }
    let lambda = lambda_p(&p)?;
    let kind = if p.iter().all(Zero::is_zero) {
        SumKind::FreeSum
    } else {
        SumKind::AffineFreeSum
    };
    let shifted = |q: &RationalPolytope| -> Vec<QVec> { q.vertices().iter().map(|v| sub(v, &p)).collect() };
    let (target, lattice_j, lattice_k) = match kind {
        SumKind::FreeSum => (
            LatticeBasis::standard(n),
            lattice_basis_of_span(j.vertices(), n),
            lattice_basis_of_span(k.vertices(), n),
        ),
        SumKind::AffineFreeSum => (
            lambda.scaled.clone(),
            lambda.scaled.intersect_span(&shifted(j)),
            lambda.scaled.intersect_span(&shifted(k)),
        ),
    };
    if !complementary_in(&target, &lattice_j, &lattice_k)? {
        return Err(Error::NotComplementary);
    }
    Ok(FreeSumWitness {
        j: j.clone(),
        k: k.clone(),
        kind,
        p,
        r: lambda.r,
        target,
        lattice_j,
        lattice_k,
    })
}

/// The equivalent cone criterion
/// `lin(cone(J ⊕ K))_Z = lin(cone J)_Z + lin(cone K)_Z`.
pub fn cone_lattice_criterion(j: &RationalPolytope, k: &RationalPolytope) -> Result<bool> {
    let n = j.dim() + 1;
    let gens = |p: &RationalPolytope| -> Vec<QVec> { cone_over(p).generators().to_vec() };
    let hull = hull_union(j, k)?;
    let whole = lattice_basis_of_span(&gens(&hull), n);
    let lj = lattice_basis_of_span(&gens(j), n);
    let lk = lattice_basis_of_span(&gens(k), n);
    let sum: Vec<Vec<BigInt>> = lj.vectors().iter().chain(lk.vectors()).cloned().collect();
    Ok(LatticeBasis::from_generators(&sum, n)? == whole)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionViolation {
    pub point: LatticePoint,
    /// Number of envelope points `x` with `point - x ∈ cone K`.
    pub matches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub height_bound: u64,
    pub points_checked: usize,
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_cone_decomposition(w: &FreeSumWitness, height_bound: u64) -> Result<DecompositionReport> {
    verify_cone_decomposition_at(&w.j, &w.k, &w.p, height_bound)
}

/// Checks that every lattice point of `cone(J ⊕ K)` up to height `T` is
/// `x + y` for exactly one `x ∈ pllenv cone J` and some `y ∈ cone K`.
/// No free-sum hypothesis is assumed.
pub fn verify_cone_decomposition_at(
    j: &RationalPolytope,
    k: &RationalPolytope,
    p: &[Rational],
    height_bound: u64,
) -> Result<DecompositionReport> {
    let hull = hull_union(j, k)?;
    let cone_j = cone_over(j);
    let cone_k = cone_over(k);
    let envelope = llenv_points_up_to(&cone_j, p, height_bound)?;
    // w - x ∈ lin(cone K) forces N·x = N·w for the annihilator N of lin(cone K)
    let annihilator = qmat::nullspace(cone_k.generators(), cone_k.ambient_dim());
    let key = |x: &[Rational]| -> QVec { annihilator.iter().map(|f| crate::rational::dot(f, x)).collect() };
    let mut buckets: BTreeMap<QVec, Vec<&EnvelopePoint>> = BTreeMap::new();
    for e in &envelope {
        buckets.entry(key(&e.coords)).or_default().push(e);
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for w in cone_over(&hull).points_up_to(height_bound)? {
        checked += 1;
        let wq: QVec = w.iter().map(|&c| int(c)).collect();
        let matches = buckets
            .get(&key(&wq))
            .map_or(0, |xs| xs.iter().filter(|x| cone_k.contains(&sub(&wq, &x.coords))).count());
        if matches != 1 {
            violations.push(DecompositionViolation { point: w, matches });
        }
    }
    Ok(DecompositionReport {
        height_bound,
        points_checked: checked,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Checked coefficientwise up to the truncation only.
    Bounded,
    /// A lattice dual (or Gorenstein summand) makes the identity hold at every height.
    Certified,
}

impl Evidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Evidence::Bounded => "bounded",
            Evidence::Certified => "certified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub exponent: Vec<i64>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Comparison of `σ_{cone(J ⊕ K)}` with `(1 - z^e) σ_{cone J} σ_{cone K}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraunVerdict {
    pub holds_up_to_t: bool,
    pub height_bound: u64,
    pub exponent: Vec<i64>,
    pub counterexample: Option<Counterexample>,
    pub first_failure_height: Option<u64>,
    /// `lhs - rhs`.
    pub residual: TruncatedSeries,
    pub lhs_univariate: UnivariateSeries,
    pub rhs_univariate: UnivariateSeries,
    pub evidence: Evidence,
}

/// Compares both sides of the product formula with exponent `e`.
pub fn braun_comparison(
    j: &RationalPolytope,
    k: &RationalPolytope,
    e: &[i64],
    height_bound: u64,
    evidence: Evidence,
) -> Result<BraunVerdict> {
    let hull = hull_union(j, k)?;
    let lhs = sigma_cone(&cone_over(&hull), height_bound)?;
    let sj = sigma_cone(&cone_over(j), height_bound)?;
    let sk = sigma_cone(&cone_over(k), height_bound)?;
    let rhs = sj.mul(&sk)?.apply_one_minus_monomial(e)?;
    let residual = lhs.sub(&rhs)?;
    let counterexample = lhs.first_difference(&rhs).map(|(exponent, l, r)| Counterexample {
        exponent,
        lhs: l,
        rhs: r,
    });
    Ok(BraunVerdict {
        holds_up_to_t: residual.is_zero(),
        height_bound,
        exponent: e.to_vec(),
        counterexample,
        first_failure_height: residual.lowest_height(),
        lhs_univariate: lhs.specialize_to_univariate(),
        rhs_univariate: rhs.specialize_to_univariate(),
        residual,
        evidence,
    })
}

fn dual_is_lattice(p: &RationalPolytope) -> Result<bool> {
    Ok(p.polar_dual()?.is_lattice_polyhedron())
}

/// The multivariate product formula for a free or affine free sum, with
/// exponent `r α(p)`.
pub fn check_braun_multivariate(w: &FreeSumWitness, height_bound: u64) -> Result<BraunVerdict> {
    let certified = match w.kind {
        SumKind::FreeSum => dual_is_lattice(&w.j)? || dual_is_lattice(&w.k)?,
        SumKind::AffineFreeSum => [&w.j, &w.k].iter().any(|q| {
            q.gorenstein_data()
                .is_ok_and(|g| g.center == w.p && g.index == w.r)
        }),
    };
    let evidence = if certified {
        Evidence::Certified
    } else {
        Evidence::Bounded
    };
    braun_comparison(&w.j, &w.k, &w.braun_exponent(), height_bound, evidence)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateBraunVerdict {
    pub height_bound: u64,
    /// `Ehr_{P⊕Q} = (1 - t) Ehr_P Ehr_Q` up to `T`.
    pub ehrhart_holds: bool,
    pub first_failure: Option<(u64, BigInt, BigInt)>,
    /// The δ identity, checked as an exact polynomial identity.
    pub delta_holds: bool,
    pub delta_p: DeltaPolynomial,
    pub delta_q: DeltaPolynomial,
    pub delta_sum: DeltaPolynomial,
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 - t^a)^m` as a coefficient list.
fn one_minus_power(a: usize, m: u32) -> Vec<BigInt> {
    let mut base = vec![BigInt::zero(); a + 1];
    base[0] = BigInt::one();
    base[a] -= BigInt::one();
    (0..m).fold(vec![BigInt::one()], |acc, _| poly_mul(&acc, &base))
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// The univariate product formula for a free sum, and its δ form
/// `(1-t^a)^{dP+1} (1-t^b)^{dQ+1} δ_{P⊕Q} = (1-t)(1-t^L)^{dP+dQ+1} δ_P δ_Q`.
pub fn check_braun_univariate(
    p: &RationalPolytope,
    q: &RationalPolytope,
    height_bound: u64,
) -> Result<UnivariateBraunVerdict> {
    let w = classify_sum(p, q)?;
    if w.kind != SumKind::FreeSum {
        return Err(Error::InvalidInput("the univariate formula needs a free sum".into()));
    }
    let hull = hull_union(p, q)?;
    let ehr_sum = ehrhart_series(&hull, height_bound)?;
    let rhs = ehrhart_series(p, height_bound)?
        .mul(&ehrhart_series(q, height_bound)?)
        .mul_one_minus_power(1, 1);
    let first_failure = ehr_sum.first_difference(&rhs);

    let delta_for = |x: &RationalPolytope| -> Result<DeltaPolynomial> {
        delta_polynomial(x, crate::series::delta_height_needed(x)?)
    };
    let (dp, dq, ds) = (delta_for(p)?, delta_for(q)?, delta_for(&hull)?);
    let left = poly_mul(
        &poly_mul(&ds.coefficients, &one_minus_power(dp.den as usize, dp.exponent)),
        &one_minus_power(dq.den as usize, dq.exponent),
    );
    let right = poly_mul(
        &poly_mul(&one_minus_power(1, 1), &one_minus_power(ds.den as usize, dp.exponent + dq.exponent - 1)),
        &poly_mul(&dp.coefficients, &dq.coefficients),
    );
    Ok(UnivariateBraunVerdict {
        height_bound,
        ehrhart_holds: first_failure.is_none(),
        first_failure,
        delta_holds: trim(left) == trim(right),
        delta_p: dp,
        delta_q: dq,
        delta_sum: ds,
    })
}

/// `Σ_{i<d(P)} σ_{lenv cone^i P} · σ_{cone_i K}` truncated at `T`.
pub fn decompose_sigma(p: &RationalPolytope, k: &RationalPolytope, height_bound: u64) -> Result<TruncatedSeries> {
    Ok(decompose_sigma_terms(p, k, height_bound)?.into_iter().map(|(_, s)| s).fold(
        TruncatedSeries::zero(p.dim() + 1, height_bound),
        |acc, s| acc.add(&s).expect("same variables"),
    ))
}

/// The nonzero products of [`decompose_sigma`], indexed by the shift.
pub fn decompose_sigma_terms(
    p: &RationalPolytope,
    k: &RationalPolytope,
    height_bound: u64,
) -> Result<Vec<(u64, TruncatedSeries)>> {
    let w = classify_sum(p, k)?;
    if w.kind != SumKind::FreeSum {
        return Err(Error::InvalidInput("the decomposition needs a free sum".into()));
    }
    let d = dual_denominator_u64(p)?;
    let cone_k = cone_over(k);
    shifted_envelope_series(p, height_bound)?
        .into_iter()
        .map(|(i, env)| {
            let lowered = sigma_cone(&ShiftedCone::new(cone_k.clone(), i, d, ShiftDirection::Down)?, height_bound)?;
            Ok((i, env.mul(&lowered)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub first_difference: Option<Counterexample>,
    /// Shifts whose envelope term vanishes up to `T`.
    pub zero_terms: Vec<u64>,
    pub dual_denominator: u64,
}

/// Compares [`decompose_sigma`] with direct enumeration of `σ_{cone(P ⊕ K)}`.
pub fn check_decomposition(p: &RationalPolytope, k: &RationalPolytope, height_bound: u64) -> Result<DecompositionCheck> {
    let terms = decompose_sigma_terms(p, k, height_bound)?;
    let d = dual_denominator_u64(p)?;
    let present: BTreeSet<u64> = terms.iter().filter(|(_, s)| !s.is_zero()).map(|(i, _)| *i).collect();
    let zero_terms = (0..d).filter(|i| !present.contains(i)).collect();
    let total = terms
        .iter()
        .fold(TruncatedSeries::zero(p.dim() + 1, height_bound), |acc, (_, s)| acc.add(s).expect("same variables"));
    let direct = sigma_cone(&cone_over(&hull_union(p, k)?), height_bound)?;
    let first_difference = direct.first_difference(&total).map(|(exponent, lhs, rhs)| Counterexample {
        exponent,
        lhs,
        rhs,
    });
    Ok(DecompositionCheck {
        holds: first_difference.is_none(),
        first_difference,
        zero_terms,
        dual_denominator: d,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverseReport {
    pub dual_p_lattice: bool,
    pub dual_q_lattice: bool,
    pub braun_holds_up_to_t: bool,
    pub verdict: BraunVerdict,
    /// A lattice dual on either side goes with a vanishing residual, and a
    /// failure goes with two non-lattice duals.
    pub consistent: bool,
}

pub fn converse_search(p: &RationalPolytope, q: &RationalPolytope, height_bound: u64) -> Result<ConverseReport> {
    let w = classify_sum(p, q)?;
    if w.kind != SumKind::FreeSum {
        return Err(Error::InvalidInput("the converse search needs a free sum".into()));
    }
    let dual_p_lattice = dual_is_lattice(p)?;
    let dual_q_lattice = dual_is_lattice(q)?;
    let verdict = check_braun_multivariate(&w, height_bound)?;
    let holds = verdict.holds_up_to_t;
    let either = dual_p_lattice || dual_q_lattice;
    Ok(ConverseReport {
        dual_p_lattice,
        dual_q_lattice,
        braun_holds_up_to_t: holds,
        consistent: (!either || holds) && verdict.residual.has_nonnegative_coefficients(),
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeCondition {
    pub holds: bool,
    pub height_bound: u64,
    /// A non-lattice point of `pllenv cone J`, lowest height first.
    pub witness: Option<QVec>,
}

/// Whether every point of `pllenv cone J` up to height `T` is a lattice point.
pub fn envelope_condition_check(j: &RationalPolytope, p: &[Rational], height_bound: u64) -> Result<EnvelopeCondition> {
    let points = llenv_points_up_to(&cone_over(j), p, height_bound)?;
    let witness = points
        .into_iter()
        .filter(|e| !e.lattice)
        .min_by(|a, b| (a.coords.last(), &a.coords).cmp(&(b.coords.last(), &b.coords)))
        .map(|e| e.coords);
    Ok(EnvelopeCondition {
        holds: witness.is_none(),
        height_bound,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinReport {
    pub index: u64,
    pub center: QVec,
    pub braun: BraunVerdict,
    /// Interior lattice points of `cone P` are exactly those of `cone P + kα(p)`.
    pub interior_identity_holds: bool,
    pub interior_mismatch: Option<LatticePoint>,
}

/// The product formula with exponent `kα(p)` for a Gorenstein summand of
/// index `k` and center `p`, together with the interior identity
/// `int(cone P)_Z = (cone P + kα(p))_Z`.
pub fn gorenstein_affine_check(p: &RationalPolytope, k: &RationalPolytope, height_bound: u64) -> Result<GorensteinReport> {
    let g = p.gorenstein_data()?;
    let w = classify_sum(p, k)?;
    if w.p != g.center {
        return Err(Error::CenterMismatch);
    }
    let mut e = g.interior_point.clone();
    e.push(g.index as i64);
    let braun = braun_comparison(p, k, &e, height_bound, Evidence::Certified)?;

    let cone = cone_over(p);
    let interior: BTreeSet<LatticePoint> = cone
        .points_up_to(height_bound)?
        .into_iter()
        .filter(|x| {
            let xq: QVec = x.iter().map(|&c| int(c)).collect();
            cone.inequalities().iter().all(|h| crate::rational::dot_int(h, &xq).is_positive())
        })
        .collect();
    let shifted: BTreeSet<LatticePoint> = cone
        .points_up_to(height_bound)?
        .into_iter()
        .filter(|x| x.last().is_some_and(|&t| t as u64 + g.index <= height_bound))
        .map(|x| x.iter().zip(&e).map(|(a, b)| a + b).collect())
        .collect();
    let interior_mismatch = interior.symmetric_difference(&shifted).next().cloned();
    Ok(GorensteinReport {
        index: g.index,
        center: g.center,
        braun,
        interior_identity_holds: interior_mismatch.is_none(),
        interior_mismatch,
    })
}

/// The affine product formula at the meeting point of an affine free sum,
/// with the envelope condition of the first summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineReport {
    pub witness: FreeSumWitness,
    pub envelope: EnvelopeCondition,
    pub braun: BraunVerdict,
}

pub fn affine_braun_check(j: &RationalPolytope, k: &RationalPolytope, height_bound: u64) -> Result<AffineReport> {
    let witness = classify_sum(j, k)?;
    let envelope = envelope_condition_check(j, &witness.p, height_bound)?;
    let braun = check_braun_multivariate(&witness, height_bound)?;
    Ok(AffineReport {
        witness,
        envelope,
        braun,
    })
}

/// `r = den(p)` as the lcm of coordinate denominators.
pub fn point_denominator(p: &[Rational]) -> Result<u64> {
    lcm_of_denominators(p).to_u64().ok_or(Error::Overflow)
}

/// Whether `x` lies strictly inside every facet of `cone P`.
pub fn in_cone_interior(p: &RationalPolytope, x: &[i64]) -> bool {
    let xq: QVec = x.iter().map(|&c| int(c)).collect();
    let c = cone_over(p);
    c.contains(&xq) && c.inequalities().iter().all(|h| crate::rational::dot_int(h, &xq).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_ints, rat};

    fn seg2(a: (Rational, Rational), b: (Rational, Rational)) -> RationalPolytope {
        RationalPolytope::new(2, vec![vec![a.0, a.1], vec![b.0, b.1]]).unwrap()
    }

    fn diamond3() -> RationalPolytope {
        RationalPolytope::from_i64(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0]]).unwrap()
    }

    fn axis3() -> RationalPolytope {
        RationalPolytope::from_i64(&[&[0, 0, 1], &[0, 0, -1]]).unwrap()
    }

    fn example_j() -> RationalPolytope {
        RationalPolytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap()
    }

    fn example_k(x: Rational) -> RationalPolytope {
        seg2((x.clone(), int(-1)), (x, int(1)))
    }

    #[test]
    fn hulls() {
        assert_eq!(hull_union(&diamond3(), &axis3()).unwrap().vertices().len(), 6);
        assert_eq!(hull_union(&diamond3(), &diamond3()).unwrap(), diamond3());
        let q = hull_union(&example_j(), &example_k(rat(1, 2))).unwrap();
        assert_eq!(q.vertices().len(), 4);
    }

    #[test]
    fn classification() {
        let w = classify_sum(&diamond3(), &axis3()).unwrap();
        assert_eq!((w.kind, w.r), (SumKind::FreeSum, 1));
        assert_eq!(w.p, from_ints(&[0, 0, 0]));

        let j = RationalPolytope::from_i64(&[&[-1, 0], &[1, 0]]).unwrap();
        let k = RationalPolytope::from_i64(&[&[-1, -2], &[1, 2]]).unwrap();
        assert_eq!(classify_sum(&j, &k), Err(Error::NotComplementary));
        assert!(!cone_lattice_criterion(&j, &k).unwrap());

        let w = classify_sum(&example_j(), &example_k(rat(1, 2))).unwrap();
        assert_eq!((w.kind, w.r), (SumKind::AffineFreeSum, 2));
        assert_eq!(w.p, vec![rat(1, 2), int(0)]);
        assert_eq!(w.braun_exponent(), vec![1, 0, 2]);
        assert!(cone_lattice_criterion(&example_j(), &example_k(rat(1, 2))).unwrap());

        let w = classify_sum(&example_j(), &example_k(rat(1, 3))).unwrap();
        assert_eq!(w.braun_exponent(), vec![1, 0, 3]);

        assert_eq!(classify_sum(&example_j(), &example_j()), Err(Error::SpansNotTransverse));
        let far = RationalPolytope::from_i64(&[&[0, 1], &[1, 1]]).unwrap();
        assert_eq!(classify_sum(&example_j(), &far), Err(Error::SpansDisjoint));
        let beside = example_k(int(2));
        assert_eq!(classify_sum(&example_j(), &beside), Err(Error::IntersectionNotShared));
    }

    #[test]
    fn decomposition_of_the_octahedron() {
        let w = classify_sum(&diamond3(), &axis3()).unwrap();
        assert!(verify_cone_decomposition(&w, 6).unwrap().holds());
    }

    #[test]
    fn decomposition_fails_without_complementarity() {
        let j = RationalPolytope::from_i64(&[&[-1, 0], &[1, 0]]).unwrap();
        let k = RationalPolytope::from_i64(&[&[-1, -2], &[1, 2]]).unwrap();
        let report = verify_cone_decomposition_at(&j, &k, &[int(0), int(0)], 3).unwrap();
        assert!(report.violations.contains(&DecompositionViolation {
            point: vec![1, 1, 1],
            matches: 0
        }));
    }

    #[test]
    fn braun_for_the_octahedron_and_a_failing_pair() {
        let w = classify_sum(&diamond3(), &axis3()).unwrap();
        let v = check_braun_multivariate(&w, 8).unwrap();
        assert!(v.holds_up_to_t);
        assert_eq!(v.evidence, Evidence::Certified);

        let p = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![rat(2, 3), int(0)]]).unwrap();
        let q = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![int(0), rat(2, 3)]]).unwrap();
        let w = classify_sum(&p, &q).unwrap();
        let v = check_braun_multivariate(&w, 3).unwrap();
        assert!(!v.holds_up_to_t);
        assert_eq!(v.first_failure_height, Some(3));
        assert_eq!(v.lhs_univariate.coefficients()[3], 6.into());
        assert_eq!(v.rhs_univariate.coefficients()[3], 5.into());
        assert!(v.residual.has_nonnegative_coefficients());
    }

    #[test]
    fn affine_example() {
        let w = classify_sum(&example_j(), &example_k(rat(1, 2))).unwrap();
        let v = check_braun_multivariate(&w, 6).unwrap();
        assert!(v.holds_up_to_t);
        assert!(envelope_condition_check(&example_j(), &w.p, 6).unwrap().holds);
        let g = gorenstein_affine_check(&example_j(), &example_k(rat(1, 2)), 6).unwrap();
        assert!(g.braun.holds_up_to_t && g.interior_identity_holds);

        assert_eq!(
            gorenstein_affine_check(&example_j(), &example_k(rat(1, 3)), 6),
            Err(Error::CenterMismatch)
        );
        let raw = affine_braun_check(&example_j(), &example_k(rat(1, 3)), 6).unwrap();
        assert!(!raw.envelope.holds);
        assert!(!raw.braun.holds_up_to_t);
    }

    #[test]
    fn envelope_condition_for_the_quarter_interval() {
        let p = RationalPolytope::new(1, vec![vec![rat(1, 4)], vec![rat(3, 4)]]).unwrap();
        let c = envelope_condition_check(&p, &[rat(1, 2)], 6).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(vec![rat(1, 2), int(2)]));
    }

    #[test]
    fn univariate_checks() {
        let diamond = RationalPolytope::from_i64(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0]]).unwrap();
        let v = check_braun_univariate(&diamond, &axis3(), 10).unwrap();
        assert!(v.ehrhart_holds && v.delta_holds);
        assert_eq!(v.delta_sum.coefficients, vec![1.into(), 3.into(), 3.into(), 1.into()]);

        let p = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![rat(2, 3), int(0)]]).unwrap();
        let q = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![int(0), rat(2, 3)]]).unwrap();
        let v = check_braun_univariate(&p, &q, 6).unwrap();
        assert!(!v.ehrhart_holds && !v.delta_holds);
        assert_eq!(v.first_failure, Some((3, 6.into(), 5.into())));
    }

    #[test]
    fn decomposition_with_zero_terms() {
        let p = RationalPolytope::from_i64(&[&[-2, 0], &[3, 0]]).unwrap();
        let k = RationalPolytope::from_i64(&[&[0, -1], &[0, 1]]).unwrap();
        let c = check_decomposition(&p, &k, 8).unwrap();
        assert!(c.holds);
        assert_eq!(c.dual_denominator, 6);
        assert_eq!(c.zero_terms, vec![1, 5]);
    }

    #[test]
    fn converse_table() {
        let p = RationalPolytope::from_i64(&[&[-2, 0], &[3, 0]]).unwrap();
        let k = RationalPolytope::from_i64(&[&[0, -1], &[0, 1]]).unwrap();
        let r = converse_search(&p, &k, 6).unwrap();
        assert_eq!((r.dual_p_lattice, r.dual_q_lattice, r.braun_holds_up_to_t), (false, true, true));
        assert!(r.consistent);
    }

    #[test]
    fn decomposition_where_the_product_fails() {
        let p = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![rat(2, 3), int(0)]]).unwrap();
        let q = RationalPolytope::new(2, vec![from_ints(&[0, 0]), vec![int(0), rat(2, 3)]]).unwrap();
        assert!(check_decomposition(&p, &q, 5).unwrap().holds);
    }

    #[test]
    fn trapezoid_with_unbounded_lattice_dual() {
        let p = RationalPolytope::from_i64(&[&[-1, 0, 0], &[1, 0, 0], &[3, 1, 0], &[-3, 1, 0]]).unwrap();
        let w = classify_sum(&p, &axis3()).unwrap();
        let v = check_braun_multivariate(&w, 6).unwrap();
        assert!(v.holds_up_to_t);
        let u = check_braun_univariate(&p, &axis3(), 6).unwrap();
        assert!(u.ehrhart_holds);
    }
}
