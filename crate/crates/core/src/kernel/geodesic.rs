use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::{minkowski, minkowski_cross, DiskPoint, IdealPoint, MobiusIsometry};
use crate::error::{Error, Result};
use crate::tolerance;

/// A complete geodesic, stored by its ideal endpoints in increasing angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geodesic {
    e1: IdealPoint,
    e2: IdealPoint,
}

impl Geodesic {
    pub fn new(a: IdealPoint, b: IdealPoint) -> Result<Geodesic> {
        if a.separation(b) <= tolerance::active().algebraic {
            return Err(Error::DegenerateGeodesic);
        }
        let (e1, e2) = if a.angle() <= b.angle() { (a, b) } else { (b, a) };
        Ok(Geodesic { e1, e2 })
    }

    pub fn from_angles(a: f64, b: f64) -> Result<Geodesic> {
        Geodesic::new(IdealPoint::new(a), IdealPoint::new(b))
    }

    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        (self.e1, self.e2)
    }

    /// The unique geodesic through two distinct interior points.
    pub fn through(p: DiskPoint, q: DiskPoint) -> Result<Geodesic> {
        if super::distance(p, q) <= tolerance::active().algebraic {
            return Err(Error::CoincidentPoints);
        }
        let m = MobiusIsometry::origin_to(p);
        let q0 = m.inverse().apply(q).to_complex();
        let dir = q0 / q0.norm();
        Geodesic::new(
            m.apply_ideal(IdealPoint::from_complex(dir)),
            m.apply_ideal(IdealPoint::from_complex(-dir)),
        )
    }

    fn mid_and_half(&self) -> (f64, f64) {
        let (a, b) = (self.e1.angle(), self.e2.angle());
        (0.5 * (a + b), 0.5 * (b - a))
    }

    /// Unit spacelike normal of the plane cutting this geodesic out of the
    /// hyperboloid. Its sign is fixed by the canonical endpoint order.
    pub fn normal(&self) -> [f64; 3] {
        let (phi, delta) = self.mid_and_half();
        let s = delta.sin();
        [delta.cos() / s, phi.cos() / s, phi.sin() / s]
    }

    /// `sinh` of the signed distance from `p` to the geodesic. The sign
    /// identifies the side; zero means `p` lies on the geodesic.
    pub fn signed_sinh_distance(&self, p: DiskPoint) -> f64 {
        minkowski(p.to_hyperboloid(), self.normal())
    }

    pub fn distance_to(&self, p: DiskPoint) -> f64 {
        self.signed_sinh_distance(p).abs().asinh()
    }

    pub fn contains(&self, p: DiskPoint, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Isometry taking the real diameter onto this geodesic, with -1 ↦ e1,
    /// 1 ↦ e2 and the origin ↦ the point closest to the origin.
    pub fn frame(&self) -> MobiusIsometry {
        let (phi, delta) = self.mid_and_half();
        let x0 = (FRAC_PI_4 - 0.5 * delta).tan();
        let s = 1.0 / ((1.0 - x0) * (1.0 + x0)).sqrt();
        let shift = MobiusIsometry::new(Complex64::new(s, 0.0), Complex64::new(x0 * s, 0.0))
            .expect("|x0| < 1");
        MobiusIsometry::rotation(phi)
            .compose(&shift)
            .compose(&MobiusIsometry::rotation(FRAC_PI_2))
    }

    /// Point at signed arclength `t` from the point closest to the origin,
    /// increasing towards `e2`.
    pub fn point_at(&self, t: f64) -> DiskPoint {
        let z = Complex64::new((0.5 * t).tanh(), 0.0);
        DiskPoint::from_complex_unchecked(self.frame().apply_complex(z))
    }

    /// Arclength parameter of the orthogonal projection of `p`.
    pub fn param_of(&self, p: DiskPoint) -> f64 {
        let z = self.frame().inverse().apply(p).to_complex();
        // the projection onto the real diameter of the frame lies where the
        // geodesic through z orthogonal to it lands: Re part of the
        // hyperboloid coordinates gives tanh(t) directly
        let x = DiskPoint::from_complex_unchecked(z).to_hyperboloid();
        (x[1] / x[0]).atanh()
    }

    fn interleaves(&self, other: &Geodesic) -> bool {
        let (a1, a2) = (self.e1.angle(), self.e2.angle());
        let inside = |t: f64| a1 < t && t < a2;
        inside(other.e1.angle()) != inside(other.e2.angle())
    }

    pub fn shares_endpoint(&self, other: &Geodesic, tol: f64) -> bool {
        [self.e1, self.e2]
            .iter()
            .any(|a| [other.e1, other.e2].iter().any(|b| a.separation(*b) <= tol))
    }

    /// Equality as unordered endpoint pairs, robust to the 0/2π seam.
    pub fn approx_eq(&self, other: &Geodesic, tol: f64) -> bool {
        (self.e1.separation(other.e1) <= tol && self.e2.separation(other.e2) <= tol)
            || (self.e1.separation(other.e2) <= tol && self.e2.separation(other.e1) <= tol)
    }

    /// The crossing point, if the endpoint pairs interleave.
    pub fn intersect(&self, other: &Geodesic) -> Result<Option<DiskPoint>> {
        let tol = tolerance::active().algebraic;
        if self.approx_eq(other, tol) {
            return Err(Error::IdenticalGeodesics);
        }
        if self.shares_endpoint(other, tol) {
            return Err(Error::TangentUnresolved);
        }
        if !self.interleaves(other) {
            return Ok(None);
        }
        // order the operands so the result is bitwise symmetric
        let (g, h) = if (self.e1.angle(), self.e2.angle()) <= (other.e1.angle(), other.e2.angle()) {
            (self, other)
        } else {
            (other, self)
        };
        let w = minkowski_cross(g.normal(), h.normal());
        let n2 = -minkowski(w, w);
        debug_assert!(n2 > 0.0);
        let s = w[0].signum() / n2.sqrt();
        Ok(Some(DiskPoint::from_hyperboloid([w[0] * s, w[1] * s, w[2] * s])))
    }

    /// Euclidean circle carrying the geodesic: `Some((center, radius))`, or
    /// `None` for a diameter.
    pub fn euclidean_circle(&self) -> Option<(Complex64, f64)> {
        let (phi, delta) = self.mid_and_half();
        let c = delta.cos();
        if c.abs() < 1e-12 {
            return None;
        }
        Some((Complex64::from_polar(1.0 / c, phi), (delta.sin() / c).abs()))
    }

    /// Angular length of the boundary arc between the endpoints that does
    /// not contain the angle 0, in (0, 2π).
    pub fn arc_span(&self) -> f64 {
        let s = self.e2.angle() - self.e1.angle();
        debug_assert!(s > 0.0 && s < TAU);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    #[test]
    fn diameter_through_real_points() {
        let g = Geodesic::through(pt(-0.3, 0.0), pt(0.3, 0.0)).unwrap();
        let (a, b) = g.endpoints();
        assert!(a.angle().abs() < 1e-12 && (b.angle() - PI).abs() < 1e-12);
        assert_eq!(g.euclidean_circle(), None);
    }

    #[test]
    fn coincident_points_rejected() {
        let p = pt(0.1, 0.1);
        assert_eq!(Geodesic::through(p, p), Err(Error::CoincidentPoints));
    }

    #[test]
    fn degenerate_endpoints_rejected() {
        assert_eq!(Geodesic::from_angles(1.0, 1.0), Err(Error::DegenerateGeodesic));
        assert_eq!(Geodesic::from_angles(0.0, TAU), Err(Error::DegenerateGeodesic));
    }

    #[test]
    fn diameters_meet_at_origin() {
        let real = Geodesic::from_angles(0.0, PI).unwrap();
        let imag = Geodesic::from_angles(FRAC_PI_2, 3.0 * FRAC_PI_2).unwrap();
        let x = real.intersect(&imag).unwrap().unwrap();
        assert!(x.re.abs() < 1e-15 && x.im.abs() < 1e-15);
    }

    #[test]
    fn non_interleaving_is_none() {
        let real = Geodesic::from_angles(0.0, PI).unwrap();
        let small = Geodesic::from_angles(0.1, 0.2).unwrap();
        assert_eq!(real.intersect(&small).unwrap(), None);
    }

    #[test]
    fn asymptotic_and_identical_are_errors() {
        let g = Geodesic::from_angles(0.0, PI).unwrap();
        let h = Geodesic::from_angles(PI, 0.5).unwrap();
        assert_eq!(g.intersect(&h), Err(Error::TangentUnresolved));
        let same = Geodesic::from_angles(PI, 0.0).unwrap();
        assert_eq!(g.intersect(&same), Err(Error::IdenticalGeodesics));
    }

    #[test]
    fn seam_equality() {
        let a = Geodesic::from_angles(1e-13, 2.0).unwrap();
        let b = Geodesic::from_angles(TAU - 1e-13, 2.0).unwrap();
        assert!(a.approx_eq(&b, 1e-9));
    }

    #[test]
    fn point_at_walks_along_the_geodesic() {
        let g = Geodesic::from_angles(0.4, 2.9).unwrap();
        let (e1, e2) = g.endpoints();
        for t in [-3.0, -0.5, 0.0, 1.25, 4.0] {
            let p = g.point_at(t);
            assert!(g.distance_to(p) < 1e-12);
            assert!((g.param_of(p) - t).abs() < 1e-9);
        }
        let d = super::super::distance(g.point_at(-1.0), g.point_at(2.5));
        assert!((d - 3.5).abs() < 1e-12);
        assert!((g.point_at(40.0).to_complex() - e2.to_complex()).norm() < 1e-12);
        assert!((g.point_at(-40.0).to_complex() - e1.to_complex()).norm() < 1e-12);
        // the frame's origin image is the point closest to the origin
        let c = g.point_at(0.0);
        for t in [-0.1, 0.1] {
            assert!(g.point_at(t).norm_sqr() > c.norm_sqr());
        }
    }

    #[test]
    fn wide_arc_geodesic_frame() {
        // endpoints more than π apart in angle; closest point is on the far side
        let g = Geodesic::from_angles(0.3, 5.0).unwrap();
        let c = g.point_at(0.0);
        assert!(g.distance_to(c) < 1e-12);
        assert!(c.re > 0.0);
    }

    #[test]
    fn signed_distance_matches_known_value_at_origin() {
        let g = Geodesic::from_angles(-0.5, 0.5).unwrap();
        let s = g.signed_sinh_distance(DiskPoint::ORIGIN);
        assert!((s.abs() - (1.0 / 0.5f64.tan())).abs() < 1e-12);
    }
}
