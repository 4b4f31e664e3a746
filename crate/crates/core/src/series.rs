//! Truncated Laurent series graded by height, Ehrhart series, δ-polynomials
//! and Ehrhart quasi-polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::{cone_over, GradedLatticeSet};
use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;
use crate::rational::{int, Rational};

/// A Laurent series in `z_1, ..., z_{n+1}` known exactly for every monomial
/// whose last exponent (the height) lies in `0..=T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    num_vars: usize,
    height_bound: u64,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, height_bound: u64) -> Self {
        TruncatedSeries {
            num_vars,
            height_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize, height_bound: u64) -> Self {
        Self::monomial(num_vars, height_bound, vec![0; num_vars], BigInt::one())
    }

    /// `coef · z^exp`, or zero when `exp` lies above the truncation.
    pub fn monomial(num_vars: usize, height_bound: u64, exp: Vec<i64>, coef: BigInt) -> Self {
        let mut s = Self::zero(num_vars, height_bound);
        s.add_term(exp, coef);
        s
    }

    /// The indicator series of a set of lattice points.
    pub fn from_points(num_vars: usize, height_bound: u64, points: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut s = Self::zero(num_vars, height_bound);
        for p in points {
            s.add_term(p, BigInt::one());
        }
        s
    }

    /// `Σ_{k >= 0} z^{k e}` for an exponent of positive height.
    pub fn geometric(num_vars: usize, height_bound: u64, e: &[i64]) -> Result<Self> {
        let h = *e.last().ok_or(Error::NonPositiveHeight)?;
        if h <= 0 {
            return Err(Error::NonPositiveHeight);
        }
        let mut s = Self::zero(num_vars, height_bound);
        let mut k = 0i64;
        while k * h <= height_bound as i64 {
            s.add_term(e.iter().map(|x| x * k).collect(), BigInt::one());
            k += 1;
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn height_bound(&self) -> u64 {
        self.height_bound
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Every stored coefficient equals one.
    pub fn is_indicator(&self) -> bool {
        self.terms.values().all(One::is_one)
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    fn add_term(&mut self, exp: Vec<i64>, coef: BigInt) {
        assert_eq!(exp.len(), self.num_vars, "exponent has the wrong number of variables");
        let h = *exp.last().expect("at least one variable");
        if h < 0 || h as u64 > self.height_bound || coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Drops every term above height `t`.
    pub fn truncate(&self, t: u64) -> Self {
        let t = t.min(self.height_bound);
        TruncatedSeries {
            num_vars: self.num_vars,
            height_bound: t,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e.last().expect("nonempty") as u64 <= t)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: i8) -> Result<Self> {
        self.check_vars(other)?;
        let t = self.height_bound.min(other.height_bound);
        let mut terms = self.truncate(t).terms;
        for (e, c) in other.truncate(t).terms {
            let entry = terms.entry(e).or_default();
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            num_vars: self.num_vars,
            height_bound: t,
            terms,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    /// Product, exact up to the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let t = self.height_bound.min(other.height_bound);
        let mut by_height: BTreeMap<i64, Vec<(&Vec<i64>, &BigInt)>> = BTreeMap::new();
        for (e, c) in &other.terms {
            by_height.entry(*e.last().expect("nonempty")).or_default().push((e, c));
        }
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            let h1 = *e1.last().expect("nonempty");
            for (_, slice) in by_height.range(..=(t as i64 - h1)) {
                for (e2, c2) in slice {
                    let e: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                    *terms.entry(e).or_default() += c1 * *c2;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            num_vars: self.num_vars,
            height_bound: t,
            terms,
        })
    }

    /// `(1 - z^e) · s`, for `e` of positive height.
    pub fn apply_one_minus_monomial(&self, e: &[i64]) -> Result<Self> {
        if e.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: e.len(),
            });
        }
        if *e.last().expect("nonempty") <= 0 {
            return Err(Error::NonPositiveHeight);
        }
        let mut shifted = Self::zero(self.num_vars, self.height_bound);
        for (exp, c) in &self.terms {
            shifted.add_term(exp.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone());
        }
        self.sub(&shifted)
    }

    /// Sets every variable but the last to one.
    pub fn specialize_to_univariate(&self) -> UnivariateSeries {
        let mut coefficients = vec![BigInt::zero(); self.height_bound as usize + 1];
        for (e, c) in &self.terms {
            coefficients[*e.last().expect("nonempty") as usize] += c;
        }
        UnivariateSeries { coefficients }
    }

    /// The lexicographically smallest monomial where the two series differ,
    /// with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<i64>, BigInt, BigInt)> {
        let diff = self.sub(other).ok()?;
        let (e, _) = diff.terms.iter().next()?;
        Some((e.clone(), self.coefficient(e), other.coefficient(e)))
    }

    /// Smallest height carrying a nonzero coefficient.
    pub fn lowest_height(&self) -> Option<u64> {
        self.terms.keys().map(|e| *e.last().expect("nonempty") as u64).min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({"exp": e, "coef": c.to_string()}))
            .collect();
        serde_json::json!({"T": self.height_bound, "terms": terms})
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(T={}) {{", self.height_bound)?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}·z^{e:?}")?;
        }
        write!(f, "}}")
    }
}

/// `σ_S` truncated at height `T`: one term per lattice point.
pub fn sigma_cone(c: &impl GradedLatticeSet, height_bound: u64) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::from_points(c.num_vars(), height_bound, c.points_up_to(height_bound)?))
}

/// A power series in `t` known up to degree `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivariateSeries {
    coefficients: Vec<BigInt>,
}

impl UnivariateSeries {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs at least its constant term");
        UnivariateSeries { coefficients }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn height_bound(&self) -> u64 {
        self.coefficients.len() as u64 - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn truncate(&self, t: u64) -> Self {
        let len = (t as usize + 1).min(self.coefficients.len());
        Self::new(self.coefficients[..len].to_vec())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coefficients.len().min(other.coefficients.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coefficients.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiplies by `(1 - t^a)^m`.
    pub fn mul_one_minus_power(&self, a: usize, m: u32) -> Self {
        let mut c = self.coefficients.clone();
        for _ in 0..m {
            for i in (a..c.len()).rev() {
                let v = c[i - a].clone();
                c[i] -= v;
            }
        }
        Self::new(c)
    }

    /// Divides by `(1 - t^a)^m`.
    pub fn div_one_minus_power(&self, a: usize, m: u32) -> Self {
        let mut c = self.coefficients.clone();
        for _ in 0..m {
            for i in a..c.len() {
                let v = c[i - a].clone();
                c[i] += v;
            }
        }
        Self::new(c)
    }

    pub fn first_difference(&self, other: &Self) -> Option<(u64, BigInt, BigInt)> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .position(|(a, b)| a != b)
            .map(|i| (i as u64, self.coefficients[i].clone(), other.coefficients[i].clone()))
    }
}

/// `Ehr_P(t) = Σ_k |kP ∩ Z^n| t^k`, read off `σ_{cone P}`.
pub fn ehrhart_series(p: &RationalPolytope, height_bound: u64) -> Result<UnivariateSeries> {
    Ok(sigma_cone(&cone_over(p), height_bound)?.specialize_to_univariate())
}

/// `Ehr_P(t)` from direct counts of the dilates `kP`.
pub fn ehrhart_series_by_dilates(p: &RationalPolytope, height_bound: u64) -> Result<UnivariateSeries> {
    let c = (0..=height_bound)
        .map(|k| Ok(BigInt::from(p.count_in_dilate(k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UnivariateSeries::new(c))
}

/// Numerator of `Ehr_P(t) = δ_P(t) / (1 - t^den)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPolynomial {
    pub coefficients: Vec<BigInt>,
    pub den: u64,
    pub exponent: u32,
}

impl DeltaPolynomial {
    /// Expands `δ / (1 - t^den)^exponent` up to degree `T`.
    pub fn reexpand(&self, height_bound: u64) -> UnivariateSeries {
        let mut c = vec![BigInt::zero(); height_bound as usize + 1];
        for (i, x) in self.coefficients.iter().enumerate().take(c.len()) {
            c[i] = x.clone();
        }
        UnivariateSeries::new(c).div_one_minus_power(self.den as usize, self.exponent)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Smallest truncation height accepted by [`delta_polynomial`].
pub fn delta_height_needed(p: &RationalPolytope) -> Result<u64> {
    let den = p.denominator().to_u64().ok_or(Error::Overflow)?;
    Ok(den * (p.affine_dim() as u64 + 1) + den)
}

pub fn delta_polynomial(p: &RationalPolytope, height_bound: u64) -> Result<DeltaPolynomial> {
    let needed = delta_height_needed(p)?;
    if height_bound < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: height_bound,
        });
    }
    let den = p.denominator().to_u64().ok_or(Error::Overflow)?;
    let exponent = p.affine_dim() as u32 + 1;
    delta_from_series(&ehrhart_series(p, height_bound)?, den, exponent)
}

/// `δ = F · (1 - t^den)^exponent`; every coefficient past `den · exponent`
/// must vanish.
pub fn delta_from_series(f: &UnivariateSeries, den: u64, exponent: u32) -> Result<DeltaPolynomial> {
    let product = f.mul_one_minus_power(den as usize, exponent);
    let cut = den as usize * exponent as usize;
    if let Some(i) = product.coefficients.iter().skip(cut + 1).position(|c| !c.is_zero()) {
        return Err(Error::NonvanishingTail(cut + 1 + i));
    }
    let mut coefficients: Vec<BigInt> = product.coefficients.into_iter().take(cut + 1).collect();
    while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
        coefficients.pop();
    }
    Ok(DeltaPolynomial {
        coefficients,
        den,
        exponent,
    })
}

/// `k ↦ |kP ∩ Z^n|` as one polynomial per residue of `k` modulo the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// Coefficients in increasing degree, one list per residue.
    pub constituents: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    pub fn evaluate(&self, k: u64) -> Rational {
        let poly = &self.constituents[(k % self.period) as usize];
        let x = int(k as i64);
        poly.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

/// Interpolates each constituent from `dim + 1` counts and checks two more.
pub fn quasipolynomial(p: &RationalPolytope) -> Result<QuasiPolynomial> {
    let den = p.denominator().to_u64().ok_or(Error::Overflow)?;
    let dim = p.affine_dim() as u64;
    let mut constituents = Vec::with_capacity(den as usize);
    for r in 0..den {
        let samples: Vec<(Rational, Rational)> = (0..=dim)
            .map(|j| {
                let k = r + j * den;
                Ok((int(k as i64), int(p.count_in_dilate(k)? as i64)))
            })
            .collect::<Result<_>>()?;
        let poly = interpolate(&samples);
        constituents.push(poly);
    }
    let q = QuasiPolynomial {
        period: den,
        constituents,
    };
    for r in 0..den {
        for j in dim + 1..=dim + 2 {
            let k = r + j * den;
            if q.evaluate(k) != int(p.count_in_dilate(k)? as i64) {
                return Err(Error::ValidationFailure(k));
            }
        }
    }
    Ok(normalize_period(q))
}

fn normalize_period(q: QuasiPolynomial) -> QuasiPolynomial {
    let period = (1..=q.period)
        .filter(|d| q.period.is_multiple_of(*d))
        .find(|&d| (0..q.period).all(|r| q.constituents[r as usize] == q.constituents[(r % d) as usize]))
        .unwrap_or(q.period);
    QuasiPolynomial {
        period,
        constituents: q.constituents.into_iter().take(period as usize).collect(),
    }
}

/// Coefficients of the polynomial through the given points (Newton form).
fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += c;
            }
            next[d] -= c * xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{ShiftDirection, ShiftedCone};
    use crate::rational::rat;

    fn interval(a: Rational, b: Rational) -> RationalPolytope {
        RationalPolytope::new(1, vec![vec![a], vec![b]]).unwrap()
    }

    fn diamond() -> RationalPolytope {
        RationalPolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    fn octahedron() -> RationalPolytope {
        RationalPolytope::from_i64(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]])
            .unwrap()
    }

    fn mono(e: &[i64]) -> TruncatedSeries {
        TruncatedSeries::monomial(e.len(), 10, e.to_vec(), BigInt::one())
    }

    #[test]
    fn products_and_identities() {
        let a = mono(&[0, 0]).add(&mono(&[1, 1])).unwrap();
        let b = mono(&[0, 0]).add(&mono(&[-1, 1])).unwrap();
        let expected = mono(&[0, 0]).add(&mono(&[1, 1])).unwrap().add(&mono(&[-1, 1])).unwrap().add(&mono(&[0, 2])).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert_eq!(a.mul(&TruncatedSeries::one(2, 10)).unwrap(), a);
        assert_eq!(a.mul(&TruncatedSeries::one(3, 10)), Err(Error::VariableMismatch(2, 3)));
    }

    #[test]
    fn one_minus_monomial() {
        let one = TruncatedSeries::one(2, 5);
        let s = one.apply_one_minus_monomial(&[0, 1]).unwrap();
        assert_eq!(s.coefficient(&[0, 0]), BigInt::one());
        assert_eq!(s.coefficient(&[0, 1]), -BigInt::one());
        assert_eq!(s.len(), 2);
        assert_eq!(one.apply_one_minus_monomial(&[1, 0]), Err(Error::NonPositiveHeight));

        // (1 - z_2) σ over [-1,1] is the indicator of its lower envelope
        let sigma = sigma_cone(&cone_over(&interval(int(-1), int(1))), 3).unwrap();
        let env = sigma.apply_one_minus_monomial(&[0, 1]).unwrap();
        let expected = TruncatedSeries::from_points(2, 3, [vec![0, 0], vec![-1, 1], vec![1, 1], vec![-2, 2], vec![2, 2], vec![-3, 3], vec![3, 3]]);
        assert_eq!(env, expected);
    }

    #[test]
    fn geometric_series_inverts_one_minus_monomial() {
        let g = TruncatedSeries::geometric(3, 7, &[1, -1, 2]).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.apply_one_minus_monomial(&[1, -1, 2]).unwrap(), TruncatedSeries::one(3, 7));
    }

    #[test]
    fn sigma_of_the_example_segment() {
        // 1 / ((1 - z_3)(1 - z_1 z_3))
        let j = RationalPolytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let sigma = sigma_cone(&cone_over(&j), 3).unwrap();
        let closed = TruncatedSeries::geometric(3, 3, &[0, 0, 1])
            .unwrap()
            .mul(&TruncatedSeries::geometric(3, 3, &[1, 0, 1]).unwrap())
            .unwrap();
        assert_eq!(sigma, closed);
        for (e, c) in sigma.terms() {
            assert!(c.is_one() && 0 <= e[0] && e[0] <= e[2] && e[1] == 0);
        }
    }

    #[test]
    fn truncation_zero_is_one() {
        assert_eq!(sigma_cone(&cone_over(&diamond()), 0).unwrap(), TruncatedSeries::one(3, 0));
    }

    #[test]
    fn ehrhart_series_examples() {
        assert_eq!(ehrhart_series(&diamond(), 2).unwrap(), UnivariateSeries::from_i64(&[1, 5, 13]));
        assert_eq!(ehrhart_series(&octahedron(), 2).unwrap(), UnivariateSeries::from_i64(&[1, 7, 25]));
        assert_eq!(ehrhart_series(&RationalPolytope::origin(2), 3).unwrap(), UnivariateSeries::from_i64(&[1, 1, 1, 1]));
        assert_eq!(ehrhart_series(&interval(int(0), rat(2, 3)), 3).unwrap(), UnivariateSeries::from_i64(&[1, 1, 2, 3]));
        assert_eq!(ehrhart_series(&interval(rat(1, 4), rat(3, 4)), 4).unwrap(), UnivariateSeries::from_i64(&[1, 0, 1, 2, 3]));
        for p in [diamond(), octahedron(), interval(rat(1, 4), rat(3, 4))] {
            assert_eq!(ehrhart_series(&p, 6).unwrap(), ehrhart_series_by_dilates(&p, 6).unwrap());
        }
    }

    #[test]
    fn delta_examples() {
        let d = delta_polynomial(&diamond(), 12).unwrap();
        assert_eq!(d.coefficients, vec![1.into(), 2.into(), 1.into()]);
        let d = delta_polynomial(&octahedron(), 12).unwrap();
        assert_eq!(d.coefficients, vec![1.into(), 3.into(), 3.into(), 1.into()]);
        let d = delta_polynomial(&interval(int(-1), int(1)), 12).unwrap();
        assert_eq!(d.coefficients, vec![1.into(), 1.into()]);
        assert_eq!(d.reexpand(12), ehrhart_series(&interval(int(-1), int(1)), 12).unwrap());

        let q = interval(rat(1, 4), rat(3, 4));
        assert_eq!(delta_polynomial(&q, 11), Err(Error::TruncationTooSmall { needed: 12, got: 11 }));
        let d = delta_polynomial(&q, 16).unwrap();
        assert_eq!(d.reexpand(16), ehrhart_series(&q, 16).unwrap());
    }

    #[test]
    fn nonvanishing_tail_is_reported() {
        let f = UnivariateSeries::from_i64(&[1, 1, 1, 1, 1, 5]);
        assert_eq!(delta_from_series(&f, 1, 1), Err(Error::NonvanishingTail(5)));
    }

    #[test]
    fn quasipolynomial_examples() {
        let q = quasipolynomial(&interval(int(0), int(1))).unwrap();
        assert_eq!((q.period, q.constituents.clone()), (1, vec![vec![int(1), int(1)]]));

        let q = quasipolynomial(&diamond()).unwrap();
        assert_eq!(q.constituents, vec![vec![int(1), int(2), int(2)]]);

        let p = interval(rat(1, 4), rat(3, 4));
        let q = quasipolynomial(&p).unwrap();
        assert_eq!(q.period, 4);
        let counts: Vec<Rational> = (0..=8).map(|k| q.evaluate(k)).collect();
        let direct: Vec<Rational> = (0..=8).map(|k| int(p.count_in_dilate(k).unwrap() as i64)).collect();
        assert_eq!(counts, direct);
        assert_eq!(direct, [1, 0, 1, 2, 3, 2, 3, 4, 5].iter().map(|&c| int(c)).collect::<Vec<_>>());

        let q = quasipolynomial(&interval(rat(-1, 2), rat(1, 2))).unwrap();
        assert_eq!(q.period, 2);
        let q = quasipolynomial(&interval(rat(0, 1), rat(1, 2))).unwrap();
        assert_eq!(q.period, 2);
    }

    #[test]
    fn shifted_cones_enumerate_translated_points() {
        let c = cone_over(&interval(int(-2), int(3)));
        let down = ShiftedCone::new(c.clone(), 1, 6, ShiftDirection::Down).unwrap();
        let pts = down.points_up_to(1).unwrap();
        // height 0: (x, 1/6) in cone; height 1: (x, 7/6) in cone
        assert_eq!(pts, vec![vec![0, 0], vec![-2, 1], vec![-1, 1], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1]]);
        assert!(down.contains(&[int(0), rat(-1, 6)]));
    }
}
