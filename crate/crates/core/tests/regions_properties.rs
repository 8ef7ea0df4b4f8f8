use ballspec::regions::{fit_constants, in_region, in_union, lambda_to_z, z_to_lambda, RegionSpec};
use num_complex::Complex;
use proptest::prelude::*;

proptest! {
    #[test]
    fn enlarging_constants_keeps_members(
        re in -50.0f64..-1e-6, im in -50.0f64..50.0,
        eps in 0.01f64..0.49, n in 1u32..6,
        c1 in 0.0f64..5.0, grow in 0.0f64..5.0,
    ) {
        let l = Complex::new(re, im);
        let pairs = [
            (RegionSpec::LambdaEps { eps, c_eps: c1 }, RegionSpec::LambdaEps { eps, c_eps: c1 + grow }),
            (RegionSpec::RN { n, c_n: c1 }, RegionSpec::RN { n, c_n: c1 + grow }),
            (RegionSpec::MDelta { delta0: c1 + 0.01, r0: 1.0 }, RegionSpec::MDelta { delta0: c1 + 0.01 + grow, r0: 1.0 }),
        ];
        for (small, large) in pairs {
            let grows = !in_region(&l, &small) || in_region(&l, &large);
            prop_assert!(grows);
        }
    }

    #[test]
    fn right_half_plane_never_member(re in 0.0f64..10.0, im in -10.0f64..10.0) {
        let l = Complex::new(re, im);
        prop_assert!(!in_union(&l, 0.1, 1e6, 2, 1e6));
        let m = RegionSpec::M { r0: 1e-3 };
        prop_assert!(!in_region(&l, &m));
    }

    #[test]
    fn change_of_variables_round_trip(re in -100.0f64..-1e-3, im in 1e-3f64..100.0, h in 1e-3f64..1.0) {
        let l = Complex::new(re, im);
        let z = lambda_to_z(&l, h).unwrap();
        let back = z_to_lambda(&z, h).unwrap();
        prop_assert!((back - l).norm() <= 1e-12 * l.norm());
    }

    #[test]
    fn fitted_constants_cover_every_point(
        pts in prop::collection::vec((-30.0f64..-1e-3, -30.0f64..30.0), 1..20),
        eps in 0.01f64..0.49, n in 1u32..5,
    ) {
        let ls: Vec<_> = pts.iter().map(|&(a, b)| Complex::new(a, b)).collect();
        let fc = fit_constants(&ls, eps, n).unwrap();
        for l in &ls {
            prop_assert!(in_union(l, eps, fc.c_eps, n, fc.c_n));
        }
    }
}

#[test]
fn real_points_are_unconditional_members_of_r_n() {
    for re in [-1.0, -2.5, -1e3] {
        assert!(in_region(&Complex::new(re, 0.0), &RegionSpec::RN { n: 4, c_n: 0.0 }));
    }
}
