use boxdim_core::geometry::{
    disc_project, poincare_project, riemann_project, riemann_radial_map, Invert, Point2, Polar, SampledCurve,
};
use proptest::prelude::*;

fn point_in_annulus(lo: f64, hi: f64) -> impl Strategy<Value = Point2> {
    (lo.ln()..hi.ln(), -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(lr, t)| Point2::from_polar(lr.exp(), t))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inversion_is_an_involution(p in point_in_annulus(0.01, 100.0)) {
        let q = p.inverted().unwrap().inverted().unwrap();
        prop_assert!(q.distance(p) <= 1e-10 * p.norm());
    }

    #[test]
    fn inversion_distance_identity(a in point_in_annulus(1e-3, 1e3), b in point_in_annulus(1e-3, 1e3)) {
        prop_assume!(a.distance(b) > 1e-9 * a.norm().max(b.norm()));
        let lhs = a.inverted().unwrap().distance(b.inverted().unwrap()) * a.norm() * b.norm();
        prop_assert!(rel(lhs, a.distance(b)) <= 1e-10, "{lhs} vs {}", a.distance(b));
    }

    #[test]
    fn sphere_points_satisfy_their_equation(p in point_in_annulus(1e-4, 1e4), radius in 0.1f64..10.0) {
        for s in [riemann_project(p, radius).unwrap(), poincare_project(p, radius).unwrap()] {
            prop_assert!(s.kind().defect(s.position()) <= 1e-12);
        }
    }

    #[test]
    fn riemann_horizontal_radius_is_the_g_map(p in point_in_annulus(1e-3, 1e3)) {
        // R = 1/2: the image of p has horizontal radius g(1/|p|)
        let s = riemann_project(p, 0.5).unwrap();
        let h = disc_project(&s).norm();
        prop_assert!(rel(h, riemann_radial_map(1.0 / p.norm(), 0.5)) <= 1e-12);
    }

    #[test]
    fn g_map_is_bi_lipschitz_on_small_discs(r0 in 0.05f64..0.95, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let g = |r: f64| riemann_radial_map(r, 0.5);
        let dg = |r: f64| (1.0 - r * r) / (1.0 + r * r).powi(2);
        let (x, y) = (r0 * s.min(t), r0 * s.max(t));
        prop_assume!(y - x > 1e-6);
        let slope = (g(y) - g(x)) / (y - x);
        prop_assert!(slope <= 1.0 + 1e-12);
        prop_assert!(slope >= dg(r0) - 1e-12, "{slope} < {}", dg(r0));
    }

    #[test]
    fn curve_inversion_keeps_the_angles(
        phi0 in -10.0f64..10.0,
        steps in prop::collection::vec(1e-3f64..0.5, 2..60),
        radii in prop::collection::vec(1e-3f64..1e3, 60),
    ) {
        let mut phi = phi0;
        let pts: Vec<Polar> = steps
            .iter()
            .zip(&radii)
            .map(|(d, &r)| {
                phi += d;
                Polar::new(r, phi)
            })
            .collect();
        let c = SampledCurve::polar(pts.clone(), "p").unwrap();
        let inv = c.inverted().unwrap();
        let back = inv.polar_points().unwrap();
        prop_assert_eq!(back.len(), pts.len());
        for (a, b) in pts.iter().zip(back) {
            prop_assert_eq!(a.phi, b.phi);
            prop_assert!(rel(b.r, 1.0 / a.r) <= 1e-15);
        }
    }
}
