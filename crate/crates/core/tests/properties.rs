use cusp_bidisk::cli::{parse_complex, RunConfig};
use cusp_bidisk::hardy::{evaluation_bound, reproducing_kernel, Poly2, SymbolChoice};
use cusp_bidisk::maps::{cusp, symbol, BidiskPoint, GKind, SymbolParams, UnitDiskPoint, C64};
use cusp_bidisk::spectrum::{approximation_numbers, SingularSpectrum};
use cusp_bidisk::verifier::{codim_count, limit_ratio, m_j, n_n};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn params() -> SymbolParams {
    SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2).unwrap()
}

fn disk_point() -> impl Strategy<Value = UnitDiskPoint> {
    (0.0f64..1.0, -PI..PI)
        .prop_map(|(r, t)| UnitDiskPoint::polar(r.sqrt(), t).unwrap())
}

fn bidisk_point() -> impl Strategy<Value = BidiskPoint> {
    (0.0f64..0.95, -PI..PI, 0.0f64..0.95, -PI..PI)
        .prop_map(|(r1, t1, r2, t2)| BidiskPoint::new(C64::from_polar(r1, t1), C64::from_polar(r2, t2)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cusp_maps_into_the_closed_disk(p in disk_point()) {
        let t = cusp(&p);
        prop_assert!(t.chi.norm() <= 1.0 + 1e-12);
        prop_assert!(t.chi.re >= -1e-12);
        prop_assert!((t.chi + t.chi3 - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cusp_commutes_with_conjugation(p in disk_point()) {
        let a = cusp(&p).chi;
        let b = cusp(&p.conj()).chi;
        prop_assert!((a.conj() - b).norm() < 1e-12);
    }

    #[test]
    fn boundary_points_stay_off_the_boundary_except_at_one(t in 1e-3f64..PI) {
        let c = cusp(&UnitDiskPoint::from_angle(t));
        prop_assert!(c.one_minus_abs() > 0.0);
        prop_assert!(c.chi.norm() < 1.0);
    }

    #[test]
    fn symbol_maps_into_the_bidisk(z1 in disk_point(), z2 in disk_point()) {
        let w = symbol(&z1, &z2, &params());
        prop_assert!(w.w1.norm() <= 1.0 + 1e-12);
        prop_assert!(w.w2.norm() <= 1.0 + 1e-12);
        if z1.value().norm() < 0.999 {
            prop_assert!(w.w2.norm() < 1.0);
        }
    }

    #[test]
    fn kernel_reproduces_polynomials(a in bidisk_point(), seed in any::<u64>(), deg in 0usize..=16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Poly2::random_unit(deg, &mut rng);
        let direct = f.eval(a.w1, a.w2);
        let via = f.inner(&Poly2::kernel_truncation(&a, deg));
        prop_assert!((direct - via).norm() < 1e-10);
        prop_assert!(direct.norm() <= f.norm() * evaluation_bound(&a).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn kernel_diagonal_is_squared_evaluation_norm(a in bidisk_point()) {
        let k = reproducing_kernel(&a, &a).unwrap();
        prop_assert!(k.im.abs() < 1e-9 * k.re);
        prop_assert!((k.re.sqrt() - evaluation_bound(&a).unwrap()).abs() < 1e-9 * k.re.sqrt());
    }

    #[test]
    fn intervals_are_ordered(mut v in prop::collection::vec(0.0f64..10.0, 1..40), tail in 0.0f64..1.0) {
        v.sort_by(|a, b| b.total_cmp(a));
        let s = SingularSpectrum::new(v.clone(), tail).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..=v.len() {
            let iv = approximation_numbers(&s, n).unwrap();
            prop_assert!(iv.lower <= iv.upper);
            prop_assert!(iv.upper <= iv.lower + tail + 1e-12);
            prop_assert!(iv.lower <= prev);
            prev = iv.lower;
        }
    }

    #[test]
    fn complex_text_round_trips(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let z = parse_complex(&format!("{re:e}{im:+e}i")).unwrap();
        prop_assert_eq!(z, C64::new(re, im));
        let w = parse_complex(&format!("({re},{im})")).unwrap();
        prop_assert_eq!(w, C64::new(re, im));
    }

    #[test]
    fn config_text_round_trips(seed in any::<u64>(), degree in 1usize..64, r in 0.01f64..0.99) {
        let c = RunConfig { seed, degree, symbol: SymbolChoice::Scaled(r), ..Default::default() };
        let back = RunConfig::parse(&c.canonical()).unwrap();
        prop_assert_eq!(back.hash(), c.hash());
        prop_assert_eq!(back.seed, seed);
    }

    #[test]
    fn count_is_monotone_and_bounded(n in 2usize..5000) {
        let theta = 0.5;
        prop_assert!(n_n(n + 1, theta) >= n_n(n, theta));
        for j in 1..=n_n(n, theta) {
            prop_assert!(m_j(n, j, theta) >= 1);
            prop_assert!(m_j(n, j + 1, theta) <= m_j(n, j, theta));
        }
        let ratio = codim_count(n, theta) as f64 / (n as f64).powi(2);
        prop_assert!(ratio <= 16.0 + 1e-12);
        prop_assert!(ratio >= limit_ratio(theta) - 1e-9);
    }
}
