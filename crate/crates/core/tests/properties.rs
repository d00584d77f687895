use std::f64::consts::TAU;

use polycauchy::*;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn params() -> impl Strategy<Value = LscParams> {
    (
        -5.0..5.0f64,
        -5.0..5.0f64,
        0.05..10.0f64,
        0.05..10.0f64,
        -0.99..0.99f64,
    )
        .prop_map(|(a1, a2, b1, b2, rho)| LscParams::new(a1, a2, b1, b2, rho).unwrap())
}

fn triangle() -> impl Strategy<Value = PlanePolygon> {
    prop::array::uniform6(-10.0..10.0f64).prop_filter_map("degenerate", |c| {
        PlanePolygon::from_coords(&[(c[0], c[1]), (c[2], c[3]), (c[4], c[5])]).ok()
    })
}

proptest! {
    #[test]
    fn projection_round_trip(x1 in coord(), x2 in coord()) {
        let x = PlanePoint::new(x1, x2).unwrap();
        let back = hemisphere_to_plane(plane_to_hemisphere(x)).unwrap();
        prop_assert!((back.x1() - x1).abs() <= 1e-13 * (1.0 + x1.abs()));
        prop_assert!((back.x2() - x2).abs() <= 1e-13 * (1.0 + x2.abs()));
    }

    #[test]
    fn lsc_round_trip(x1 in coord(), x2 in coord(), p in params()) {
        let x = PlanePoint::new(x1, x2).unwrap();
        let back = lsc_forward(lsc_backward(x, &p).unwrap(), &p).unwrap();
        prop_assert!((back.x1() - x1).abs() <= 1e-9 * (1.0 + x1.abs()));
        prop_assert!((back.x2() - x2).abs() <= 1e-9 * (1.0 + x2.abs()));
    }

    #[test]
    fn mass_is_a_probability(t in triangle()) {
        let m = integrate_cauchy_std(&t).unwrap();
        prop_assert!(m > 0.0 && m < 1.0);
    }

    #[test]
    fn edge_split_is_additive(t in triangle(), s in 0.01..0.99f64) {
        let v = t.vertices();
        let m = PlanePoint::new(
            v[1].x1() + s * (v[2].x1() - v[1].x1()),
            v[1].x2() + s * (v[2].x2() - v[1].x2()),
        ).unwrap();
        let whole = integrate_cauchy_std(&t).unwrap();
        let left = PlanePolygon::new(vec![v[0], v[1], m]);
        let right = PlanePolygon::new(vec![v[0], m, v[2]]);
        if let (Ok(l), Ok(r)) = (left, right) {
            let parts = integrate_cauchy_std(&l).unwrap() + integrate_cauchy_std(&r).unwrap();
            // solid angles add to 1e-12, masses are Ω / 2π
            prop_assert!((parts - whole).abs() < 1e-12 / TAU);
        }
    }

    #[test]
    fn samples_stay_inside(t in triangle(), p in params(), u1 in 0.0..1.0f64, u2 in 0.0..1.0f64) {
        let u = UniformPair::new(u1, u2).unwrap();
        prop_assert!(t.contains(simulate_cauchy_std(&t, u).unwrap()));
        prop_assert!(t.contains(simulate_cauchy_elliptic(&t, &p, u).unwrap()));
    }

    #[test]
    fn elliptic_forms_agree(x1 in coord(), x2 in coord(), p in params()) {
        let x = PlanePoint::new(x1, x2).unwrap();
        let (a, b) = (cauchy_elliptic_pdf(x, &p), cauchy_elliptic_pdf_closed_form(x, &p));
        prop_assert!(((a - b) / b).abs() < 1e-10);
    }
}
