use num_complex::Complex64;
use proptest::prelude::*;
use varbounds::complex_stats::{self, ComplexSample};
use varbounds::enclosing_disk;
use varbounds::io::{parse_matrix_str, write_matrix_market_array, MatrixFormat};
use varbounds::oracle::{self, Truths};
use varbounds::poly_span::{self, MonicPoly};
use varbounds::real_bounds::{self, RealSample};
use varbounds::report::{eq_tol, le_tol};
use varbounds::spectral_bounds;
use varbounds::{BoundReport, DenseMatrix};

fn reals() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, 2..40)
}

fn points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-20.0..20.0f64, -20.0..20.0f64), 2..30)
}

fn symmetric() -> impl Strategy<Value = DenseMatrix> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(-10.0..10.0f64, n * n).prop_map(move |v| {
            let mut m = DenseMatrix::new(n, v).unwrap();
            for i in 0..n {
                for j in 0..i {
                    m.set(i, j, m.get(j, i));
                }
            }
            m
        })
    })
}

fn all_real_reports(s: &RealSample) -> Vec<BoundReport> {
    let mut r = real_bounds::classic_bounds(s);
    r.extend(real_bounds::refined_bounds_positive_mean(s));
    r.extend(real_bounds::refined_bounds_negative_min(s));
    r.extend(real_bounds::kurtosis_gated_bound(s));
    r.extend(real_bounds::extreme_value_bounds(s).unwrap());
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn applicable_real_bounds_hold(xs in reals()) {
        let s = RealSample::new(xs).unwrap();
        for v in oracle::verify_all(&all_real_reports(&s), &Truths::new()) {
            prop_assert!(!v.failed(), "{v:?}");
        }
    }

    #[test]
    fn subset_bound_holds(xs in reals(), pick in prop::collection::vec(any::<bool>(), 40)) {
        let s = RealSample::new(xs).unwrap();
        let subset: Vec<usize> = (0..s.len()).filter(|&i| pick[i]).collect();
        prop_assume!(!subset.is_empty() && subset.len() < s.len());
        let r = real_bounds::mallows_richter(&s, &subset).unwrap();
        prop_assert!(r.holds() != Some(false), "{r:?}");
    }

    #[test]
    fn variance_is_shift_invariant(xs in reals(), t in -1e3..1e3f64) {
        let a = RealSample::new(xs.clone()).unwrap();
        let b = RealSample::new(xs.iter().map(|x| x + t).collect()).unwrap();
        prop_assert!(eq_tol(a.variance(), b.variance(), 1e-8));
    }

    #[test]
    fn dispersion_is_rigid_motion_invariant(pts in points(), re in -50.0..50.0f64, im in -50.0..50.0f64, angle in 0.0..6.3f64) {
        let a = ComplexSample::from_pairs(&pts).unwrap();
        let rot = Complex64::from_polar(1.0, angle);
        let moved: Vec<_> = a.points().iter().map(|&z| z * rot + Complex64::new(re, im)).collect();
        let b = ComplexSample::new(moved).unwrap();
        let (da, db) = (complex_stats::dispersion(&a), complex_stats::dispersion(&b));
        prop_assert!(eq_tol(da.sz2, db.sz2, 1e-9));
        prop_assert!(eq_tol(da.sigma_z2, db.sigma_z2, 1e-9));
        prop_assert!(eq_tol(da.s2.norm(), db.s2.norm(), 1e-9));
        let (ra, rb) = (enclosing_disk::min_enclosing_disk(&a).radius, enclosing_disk::min_enclosing_disk(&b).radius);
        prop_assert!(eq_tol(ra, rb, 1e-9));
    }

    #[test]
    fn dispersion_summary_is_ordered(pts in points()) {
        let s = ComplexSample::from_pairs(&pts).unwrap();
        prop_assert!(complex_stats::summary_is_ordered(&complex_stats::dispersion(&s), 1e-12));
    }

    #[test]
    fn complex_bounds_hold(pts in points()) {
        let s = ComplexSample::from_pairs(&pts).unwrap();
        let mut reports = vec![complex_stats::pairwise_gap_bound(&s)];
        reports.extend(complex_stats::popoviciu_analogue(&s));
        reports.extend(complex_stats::samuelson_bounds(&s));
        reports.extend(enclosing_disk::disk_inequality_chain(&s).unwrap());
        for v in oracle::verify_all(&reports, &Truths::new()) {
            prop_assert!(!v.failed(), "{v:?}");
        }
    }

    #[test]
    fn disk_covers_every_point(pts in points()) {
        let s = ComplexSample::from_pairs(&pts).unwrap();
        let d = enclosing_disk::min_enclosing_disk(&s);
        for &z in s.points() {
            prop_assert!(le_tol((z - d.center).norm(), d.radius, 1e-12));
        }
    }

    #[test]
    fn pooled_variance_matches_union(a in points(), b in points()) {
        let (a, b) = (ComplexSample::from_pairs(&a).unwrap(), ComplexSample::from_pairs(&b).unwrap());
        let direct = complex_stats::dispersion(&a.concat(&b)).sz2;
        prop_assert!(eq_tol(complex_stats::pooled_variance(&a, &b), direct, 1e-11));
    }

    #[test]
    fn spectral_bounds_hold(m in symmetric()) {
        let s = spectral_bounds::summarize(&m);
        let spec = oracle::eigenvalues_symmetric(&m).unwrap();
        let mut reports = vec![spectral_bounds::spread_sandwich(&s).unwrap()];
        reports.extend(spectral_bounds::eigen_interval(&s).unwrap());
        reports.extend(spectral_bounds::refined_spread_bounds(&s, spectral_bounds::spectrum_sign_symmetric(&m).unwrap()));
        let mut truths = Truths::from_spectrum(&spec, None);
        if m.dim() >= 3 {
            let nu = spec.values()[m.dim() / 2];
            reports.extend(spectral_bounds::deflated_bounds(&s, nu).unwrap());
            truths = Truths::from_spectrum(&spec, Some(nu));
        }
        for v in oracle::verify_all(&reports, &truths) {
            prop_assert!(!v.failed(), "{v:?}");
        }
    }

    #[test]
    fn spread_sandwich_ignores_shifts(m in symmetric(), c in -100.0..100.0f64) {
        let a = spectral_bounds::spread_sandwich(&spectral_bounds::summarize(&m)).unwrap();
        let b = spectral_bounds::spread_sandwich(&spectral_bounds::summarize(&m.shifted(c))).unwrap();
        // tr B² loses digits to cancellation as the shift grows.
        let scale = (a.upper.unwrap() + c.abs()).max(1.0);
        prop_assert!((a.upper.unwrap() - b.upper.unwrap()).abs() <= 1e-6 * scale);
        prop_assert!((a.lower.unwrap() - b.lower.unwrap()).abs() <= 1e-6 * scale);
    }

    #[test]
    fn matrix_market_round_trip(m in symmetric()) {
        let text = write_matrix_market_array(&m);
        let back = parse_matrix_str(&text, "mem.mtx", MatrixFormat::MatrixMarket).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn span_bounds_hold(roots in prop::collection::vec(-10.0..10.0f64, 2..10)) {
        let p = MonicPoly::from_roots(&roots);
        let mut reports = vec![poly_span::span_bounds(&p).unwrap()];
        reports.extend(poly_span::refined_span_bounds(&p).unwrap());
        for v in oracle::verify_all(&reports, &Truths::from_roots(&roots)) {
            prop_assert!(!v.failed(), "{v:?}");
        }
    }

    #[test]
    fn root_moments_translate(roots in prop::collection::vec(-10.0..10.0f64, 2..10), t in -5.0..5.0f64) {
        let p = MonicPoly::from_roots(&roots);
        let (a, b) = (poly_span::coeff_moments(&p), poly_span::coeff_moments(&p.translated(t)));
        prop_assert!((a.mean - t - b.mean).abs() <= 1e-9 * (1.0 + a.mean.abs() + t.abs()));
        prop_assert!((a.variance - b.variance).abs() <= 1e-7 * (1.0 + a.variance + a.mean * a.mean));
    }

    #[test]
    fn oracle_roots_reproduce_the_coefficients(roots in prop::collection::vec(-10.0..10.0f64, 2..10)) {
        let p = MonicPoly::from_roots(&roots);
        let found = oracle::real_roots(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        let q = MonicPoly::from_roots(&found);
        let m = poly_span::coeff_moments(&p);
        let n = poly_span::coeff_moments(&q);
        prop_assert!((m.mean - n.mean).abs() <= 1e-8 * (1.0 + m.mean.abs()));
        prop_assert!((m.variance - n.variance).abs() <= 1e-8 * (1.0 + m.variance));
    }
}
