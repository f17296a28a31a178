mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::*;
use hyptri::kernel::{distance, Geodesic, IdealPoint, IsometryClass, MobiusIsometry};
use hyptri::Error;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = hyptri::kernel::DiskPoint> {
    (0.0..0.9f64, 0.0..TAU).prop_map(|(r, t)| polar(r, t))
}

fn iso() -> impl Strategy<Value = MobiusIsometry> {
    (point(), 0.0..TAU).prop_map(|(p, t)| isometry(p, t))
}

#[test]
fn distance_closed_form_value() {
    assert!((distance(pt(0.0, 0.0), pt(0.5, 0.0)) - 3f64.ln()).abs() < 1e-14);
    assert!((integrated_distance(pt(0.0, 0.0), pt(0.5, 0.0)) - 3f64.ln()).abs() < 1e-9);
}

#[test]
fn disk_conjugate_of_diagonal_map() {
    let e = 1f64.exp();
    let t = MobiusIsometry::from_half_plane(e, 0.0, 0.0, 1.0 / e).unwrap();
    assert!((t.trace().abs() - 2.0 * 1f64.cosh()).abs() < 1e-12);
    assert_eq!(t.classify().unwrap(), IsometryClass::Hyperbolic);
    assert!((t.translation_length().unwrap() - 2.0).abs() < 1e-12);
    let axis = t.axis().unwrap();
    assert!(axis.approx_eq(&Geodesic::from_angles(0.0, PI).unwrap(), 1e-12));
    let x = axis.point_at(0.3);
    assert!((distance(x, t.apply(x)) - 2.0).abs() < 1e-9);
}

#[test]
fn elliptic_rotation() {
    assert_eq!(
        MobiusIsometry::rotation(FRAC_PI_2).classify().unwrap(),
        IsometryClass::Elliptic
    );
    assert_eq!(MobiusIsometry::IDENTITY.classify(), Err(Error::IdentityTransform));
}

#[test]
fn diameters_cross_at_origin() {
    let real = Geodesic::from_angles(0.0, PI).unwrap();
    let imag = Geodesic::from_angles(FRAC_PI_2, 3.0 * FRAC_PI_2).unwrap();
    let x = real.intersect(&imag).unwrap().unwrap();
    assert!(x.re.abs() < 1e-15 && x.im.abs() < 1e-15);
    let short = Geodesic::from_angles(0.1, 0.2).unwrap();
    assert_eq!(real.intersect(&short).unwrap(), None);
    assert_eq!(real.intersect(&real), Err(Error::IdenticalGeodesics));
    let tangent = Geodesic::from_angles(0.0, 1.0).unwrap();
    assert_eq!(real.intersect(&tangent), Err(Error::TangentUnresolved));
}

#[test]
fn boundary_points_rejected() {
    assert!(matches!(hyptri::kernel::DiskPoint::new(1.0, 0.0), Err(Error::NotInterior { .. })));
    assert!(hyptri::kernel::DiskPoint::new(0.0, -(1.0 - 0.5e-12f64).sqrt()).is_err());
    assert!(hyptri::kernel::DiskPoint::new(0.0, -0.999_999).is_ok());
}

#[test]
fn ideal_angles_canonical() {
    assert!((IdealPoint::new(-FRAC_PI_2).angle() - 3.0 * FRAC_PI_2).abs() < 1e-15);
    assert!(IdealPoint::new(TAU).angle().abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn distance_matches_integrated_metric(p in point(), q in point()) {
        prop_assume!(distance(p, q) > 1e-3);
        let exact = distance(p, q);
        let num = integrated_distance(p, q);
        prop_assert!(((num - exact) / exact).abs() < 1e-6, "{} vs {}", num, exact);
    }

    #[test]
    fn straight_chord_is_no_shorter(p in point(), q in point()) {
        // the Euclidean segment is a competitor path
        let chord = {
            let (a, b) = (p.to_complex(), q.to_complex());
            let n = 4000;
            let mut acc = 0.0;
            for k in 0..n {
                let z = a + (b - a) * ((k as f64 + 0.5) / n as f64);
                acc += 2.0 * (b - a).norm() / n as f64 / (1.0 - z.norm_sqr());
            }
            acc
        };
        prop_assert!(chord >= distance(p, q) - 1e-6);
    }

    #[test]
    fn metric_axioms(p in point(), q in point(), r in point()) {
        prop_assert_eq!(distance(p, q), distance(q, p));
        prop_assert_eq!(distance(p, p), 0.0);
        prop_assert!(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12);
    }

    #[test]
    fn isometries_preserve_distance(t in iso(), p in point(), q in point()) {
        prop_assert!((distance(t.apply(p), t.apply(q)) - distance(p, q)).abs() < 1e-9);
        let back = t.inverse().apply(t.apply(p));
        prop_assert!(distance(back, p) < 1e-9);
        prop_assert!((t.determinant() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn composition_associative(a in iso(), b in iso(), c in iso()) {
        let l = a.compose(&b).compose(&c);
        let r = a.compose(&b.compose(&c));
        prop_assert!((l.alpha() - r.alpha()).norm() < 1e-9 && (l.beta() - r.beta()).norm() < 1e-9);
        prop_assert!(a.compose(&a.inverse()).is_identity(1e-9));
        prop_assert!(MobiusIsometry::IDENTITY.compose(&a).approx_eq(&a, 1e-12));
    }

    #[test]
    fn axis_minimizes_displacement(
        ell in 0.2..4.0f64, c in point(), theta in 0.0..TAU, y in point()
    ) {
        let t = hyperbolic(ell, c, theta);
        prop_assert!((t.translation_length().unwrap() - ell).abs() < 1e-9);
        let axis = t.axis().unwrap();
        let x = axis.point_at(0.7);
        prop_assert!((distance(x, t.apply(x)) - ell).abs() < 1e-9);
        prop_assert!(axis.distance_to(t.apply(x)) < 1e-9);
        if axis.distance_to(y) >= 0.1 {
            prop_assert!(distance(y, t.apply(y)) > ell + 1e-9);
        }
        let t2 = t.compose(&t);
        prop_assert!((t2.translation_length().unwrap() - 2.0 * ell).abs() < 1e-9);
        prop_assert!(t.inverse().axis().unwrap().approx_eq(&axis, 1e-9));
    }

    #[test]
    fn conjugation_moves_the_axis(
        ell in 0.2..4.0f64, c in point(), theta in 0.0..TAU, g in iso()
    ) {
        let t = hyperbolic(ell, c, theta);
        let conj = g.compose(&t).compose(&g.inverse());
        prop_assert!((conj.translation_length().unwrap() - ell).abs() < 1e-8);
        prop_assert!(conj.axis().unwrap().approx_eq(&g.apply_geodesic(&t.axis().unwrap()), 1e-8));
        let (a, r) = t.fixed_points().unwrap();
        prop_assert!(t.apply_ideal(a).separation(a) < 1e-9);
        prop_assert!(t.apply_ideal(r).separation(r) < 1e-9);
    }

    #[test]
    fn geodesic_through_is_equivariant(p in point(), q in point(), t in iso()) {
        prop_assume!(distance(p, q) > 1e-6);
        let g = Geodesic::through(p, q).unwrap();
        prop_assert!(g.distance_to(p) < 1e-9 && g.distance_to(q) < 1e-9);
        let moved = Geodesic::through(t.apply(p), t.apply(q)).unwrap();
        prop_assert!(moved.approx_eq(&t.apply_geodesic(&g), 1e-8));
        // endpoints and both points on one circle orthogonal to the boundary
        if let Some((c, r)) = orthogonal_circle(p, q) {
            let (e1, e2) = g.endpoints();
            prop_assert!(((e1.to_complex() - c).norm() - r).abs() < 1e-9 * (1.0 + r));
            prop_assert!(((e2.to_complex() - c).norm() - r).abs() < 1e-9 * (1.0 + r));
        }
    }

    #[test]
    fn intersection_symmetric_with_small_residual(
        a in 0.0..TAU, b in 0.0..TAU, c in 0.0..TAU, d in 0.0..TAU
    ) {
        let sep = |x: f64, y: f64| IdealPoint::new(x).separation(IdealPoint::new(y));
        prop_assume!([sep(a, b), sep(c, d), sep(a, c), sep(a, d), sep(b, c), sep(b, d)]
            .iter().all(|&s| s > 1e-3));
        let g = Geodesic::from_angles(a, b).unwrap();
        let h = Geodesic::from_angles(c, d).unwrap();
        let x = g.intersect(&h).unwrap();
        prop_assert_eq!(x, h.intersect(&g).unwrap());
        // interleaving decided independently from the angles
        let inside = |t: f64| {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            lo < t && t < hi
        };
        prop_assert_eq!(x.is_some(), inside(c) != inside(d));
        if let Some(x) = x {
            for geo in [g, h] {
                match geo.euclidean_circle() {
                    Some((center, r)) => {
                        let res = (x.to_complex() - center).norm() - r;
                        prop_assert!(res.abs() < 1e-9 * (1.0 + r), "residual {}", res);
                    }
                    None => prop_assert!(geo.distance_to(x) < 1e-9),
                }
            }
        }
    }
}
