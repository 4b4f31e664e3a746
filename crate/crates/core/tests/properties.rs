mod common;

use common::*;
use freesum::cone::{cone_over, dual_denominator_u64, shifted_envelope_series};
use freesum::freesum::{
    affine_braun_check, check_braun_multivariate, check_decomposition, classify_sum, cone_lattice_criterion, SumKind,
};
use freesum::rational::{int, rat};
use freesum::series::{ehrhart_series, ehrhart_series_by_dilates, sigma_cone, TruncatedSeries};
use freesum::{Error, RationalPolytope};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn positive_rational() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=6).prop_flat_map(|d| (1..=2 * d, Just(d)))
}

fn axis_segment(dim: usize, axis: usize, lo: (i64, i64), hi: (i64, i64)) -> RationalPolytope {
    let point = |v: (i64, i64)| {
        let mut x = vec![int(0); dim];
        x[axis] = rat(v.0, v.1);
        x
    };
    RationalPolytope::new(dim, vec![point((-lo.0, lo.1)), point(hi)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counting_routes_agree(lo in positive_rational(), hi in positive_rational()) {
        let p = RationalPolytope::new(1, vec![vec![rat(-lo.0, lo.1)], vec![rat(hi.0, hi.1)]]).unwrap();
        prop_assert_eq!(ehrhart_series(&p, 12).unwrap(), ehrhart_series_by_dilates(&p, 12).unwrap());
        for k in 0..=12i64 {
            // ⌊k·hi⌋ - ⌈-k·lo⌉ + 1
            let count = (k * hi.0).div_euclid(hi.1) + (k * lo.0).div_euclid(lo.1) + 1;
            prop_assert_eq!(p.count_in_dilate(k as u64).unwrap() as i64, count);
        }
    }

    #[test]
    fn shifted_envelopes_sum_to_the_rind(lo in positive_rational(), hi in positive_rational()) {
        let p = RationalPolytope::new(1, vec![vec![rat(-lo.0, lo.1)], vec![rat(hi.0, hi.1)]]).unwrap();
        let d = dual_denominator_u64(&p).unwrap();
        let parts = shifted_envelope_series(&p, 10).unwrap();
        prop_assert!(parts.keys().all(|&i| i < d));
        let total = parts.values().fold(TruncatedSeries::zero(2, 10), |acc, s| acc.add(s).unwrap());
        let lowered = sigma_cone(&cone_over(&p), 10).unwrap().apply_one_minus_monomial(&[0, 1]).unwrap();
        prop_assert_eq!(total, lowered);
    }

    #[test]
    fn segment_free_sums(a in positive_rational(), b in positive_rational(), c in positive_rational(), d in positive_rational()) {
        let p = axis_segment(2, 0, a, b);
        let q = axis_segment(2, 1, c, d);
        let w = classify_sum(&p, &q).unwrap();
        prop_assert_eq!(w.kind, SumKind::FreeSum);
        prop_assert!(check_decomposition(&p, &q, 8).unwrap().holds);
        let v = check_braun_multivariate(&w, 8).unwrap();
        prop_assert!(v.residual.has_nonnegative_coefficients());
        let lattice = |s: &RationalPolytope| s.polar_dual().unwrap().is_lattice_polyhedron();
        if lattice(&p) || lattice(&q) {
            prop_assert!(v.holds_up_to_t);
        }
        prop_assert_eq!(v.lhs_univariate.clone(), ehrhart_series(&freesum::freesum::hull_union(&p, &q).unwrap(), 8).unwrap());
    }

    #[test]
    fn complementarity_matches_determinant(u in (-3i64..=3, -3i64..=3), v in (-3i64..=3, -3i64..=3)) {
        prop_assume!(u.0.gcd(&u.1) == 1 && v.0.gcd(&v.1) == 1);
        prop_assume!(u.0 * v.1 - u.1 * v.0 != 0);
        let j = RationalPolytope::from_i64(&[&[-u.0, -u.1], &[u.0, u.1]]).unwrap();
        let k = RationalPolytope::from_i64(&[&[-v.0, -v.1], &[v.0, v.1]]).unwrap();
        let det = (u.0 * v.1 - u.1 * v.0).abs();
        let classified = classify_sum(&j, &k);
        prop_assert_eq!(classified.is_ok(), det == 1);
        if det != 1 {
            prop_assert_eq!(classified.unwrap_err(), Error::NotComplementary);
        }
        prop_assert_eq!(cone_lattice_criterion(&j, &k).unwrap(), det == 1);
    }

    #[test]
    fn affine_sums_through_a_vertical_segment(q in (1i64..=5).prop_flat_map(|d| (1..d.max(2), Just(d.max(2)))), lo in positive_rational(), hi in positive_rational()) {
        let x = rat(q.0, q.1);
        let j = RationalPolytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let k = RationalPolytope::new(2, vec![vec![x.clone(), rat(-lo.0, lo.1)], vec![x.clone(), rat(hi.0, hi.1)]]).unwrap();
        match classify_sum(&j, &k) {
            Ok(w) => {
                prop_assert_eq!(w.kind, SumKind::AffineFreeSum);
                prop_assert_eq!(BigInt::from(w.r), x.denom().clone());
                prop_assert!(cone_lattice_criterion(&j, &k).unwrap());
                let a = affine_braun_check(&j, &k, 6).unwrap();
                prop_assert!(a.braun.residual.has_nonnegative_coefficients() || !a.envelope.holds);
                if a.envelope.holds {
                    prop_assert!(a.braun.holds_up_to_t);
                }
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NotComplementary);
                prop_assert!(!cone_lattice_criterion(&j, &k).unwrap());
            }
        }
    }

    #[test]
    fn series_algebra(e in (-2i64..=2, 1i64..=3), f in (-2i64..=2, 0i64..=3)) {
        let t = 9;
        let g = TruncatedSeries::geometric(2, t, &[e.0, e.1]).unwrap();
        prop_assert_eq!(g.apply_one_minus_monomial(&[e.0, e.1]).unwrap(), TruncatedSeries::one(2, t));
        let h = TruncatedSeries::monomial(2, t, vec![f.0, f.1], BigInt::from(3)).add(&g).unwrap();
        prop_assert_eq!(g.mul(&h).unwrap(), h.mul(&g).unwrap());
        prop_assert!(g.mul(&h).unwrap().sub(&h.mul(&g).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn random_polygons_have_the_origin_inside() {
    for hull in random_polygons(3, 20) {
        let p = RationalPolytope::new(2, hull.clone()).unwrap();
        assert!(p.contains_relint(&[int(0), int(0)]));
        assert_eq!(p.vertices().len(), hull.len());
    }
}
