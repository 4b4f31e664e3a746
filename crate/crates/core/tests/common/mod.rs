#![allow(dead_code)]

use freesum::rational::{int, rat};
use freesum::{QVec, Rational, RationalPolytope};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn poly(dim: usize, vertices: &[&[(i64, i64)]]) -> RationalPolytope {
    let points = vertices
        .iter()
        .map(|v| v.iter().map(|&(n, d)| rat(n, d)).collect())
        .collect();
    RationalPolytope::new(dim, points).unwrap()
}

pub fn lattice_poly(points: &[&[i64]]) -> RationalPolytope {
    RationalPolytope::from_i64(points).unwrap()
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counterclockwise hull by the monotone chain, collinear points dropped.
pub fn hull_2d(points: &[QVec]) -> Vec<QVec> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<QVec> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Membership in `t · conv(hull)` for a counterclockwise hull.
pub fn in_dilated_polygon(hull: &[QVec], t: &Rational, x: &[Rational]) -> bool {
    if t.is_zero() {
        return x.iter().all(Zero::is_zero);
    }
    let n = hull.len();
    (0..n).all(|i| {
        let a: QVec = hull[i].iter().map(|c| c * t).collect();
        let b: QVec = hull[(i + 1) % n].iter().map(|c| c * t).collect();
        !cross(&a, &b, x).is_negative()
    })
}

pub fn strictly_inside(hull: &[QVec], x: &[Rational]) -> bool {
    let n = hull.len();
    (0..n).all(|i| cross(&hull[i], &hull[(i + 1) % n], x).is_positive())
}

/// Lattice points of `t · conv(hull)` by a box scan.
pub fn polygon_count(hull: &[QVec], t: i64) -> usize {
    let r = 3 * t.max(1);
    let tq = int(t);
    let mut count = 0;
    for x in -r..=r {
        for y in -r..=r {
            if in_dilated_polygon(hull, &tq, &[int(x), int(y)]) {
                count += 1;
            }
        }
    }
    count
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=4i64);
    rat(rng.gen_range(-3 * d..=3 * d), d)
}

/// Rational polygons with denominators at most 4, coordinates in `[-3, 3]`
/// and the origin in the interior, as counterclockwise vertex lists.
pub fn random_polygons(seed: u64, count: usize) -> Vec<Vec<QVec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = vec![Rational::zero(), Rational::zero()];
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(3..=6);
        let pts: Vec<QVec> = (0..k).map(|_| vec![random_rational(&mut rng), random_rational(&mut rng)]).collect();
        let hull = hull_2d(&pts);
        if hull.len() >= 3 && strictly_inside(&hull, &origin) {
            out.push(hull);
        }
    }
    out
}

pub fn embed(v: &[Rational], dim: usize) -> QVec {
    let mut w = v.to_vec();
    w.resize(dim, Rational::zero());
    w
}

/// A segment `[-a, b]` on the last axis of `R^dim`, with `a, b ≥ 0` of
/// denominator at most 4 and not both zero.
pub fn random_axis_segment(rng: &mut ChaCha8Rng, dim: usize) -> RationalPolytope {
    loop {
        let d = rng.gen_range(1..=4i64);
        let a = rat(rng.gen_range(0..=2 * d), d);
        let b = rat(rng.gen_range(0..=2 * d), d);
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let mut lo = vec![Rational::zero(); dim];
        let mut hi = lo.clone();
        lo[dim - 1] = -a;
        hi[dim - 1] = b;
        return RationalPolytope::new(dim, vec![lo, hi]).unwrap();
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `δ` from Ehrhart counts `c_0, c_1, …` by multiplying with `(1 - t^den)^e`
/// and keeping degrees below `den · e`.
pub fn delta_from_counts(counts: &[i64], den: usize, e: u32) -> Vec<i64> {
    let mut f: Vec<i64> = counts.to_vec();
    for _ in 0..e {
        let mut g = f.clone();
        for i in den..f.len() {
            g[i] -= f[i - den];
        }
        f = g;
    }
    f.truncate(den * e as usize);
    while f.len() > 1 && f.last() == Some(&0) {
        f.pop();
    }
    f
}
