use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint {
    pub re: f64,
    pub im: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<DiskPoint> {
        let r2 = re * re + im * im;
        if !(r2 < 1.0 - tolerance::active().boundary) || !re.is_finite() || !im.is_finite() {
            return Err(Error::NotInterior { re, im });
        }
        Ok(DiskPoint { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<DiskPoint> {
        DiskPoint::new(z.re, z.im)
    }

    /// For results of isometries applied to valid points, which are interior
    /// by construction.
    pub(crate) fn from_complex_unchecked(z: Complex64) -> DiskPoint {
        DiskPoint { re: z.re, im: z.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// `1 - |z|^2`, computed without cancellation for small |z|.
    pub(crate) fn conformal_gap(self) -> f64 {
        let r = self.norm_sqr().sqrt();
        (1.0 - r) * (1.0 + r)
    }

    /// The point on the hyperboloid sheet x0 > 0.
    pub fn to_hyperboloid(self) -> [f64; 3] {
        let gap = self.conformal_gap();
        [
            (1.0 + self.norm_sqr()) / gap,
            2.0 * self.re / gap,
            2.0 * self.im / gap,
        ]
    }

    pub(crate) fn from_hyperboloid(x: [f64; 3]) -> DiskPoint {
        let d = 1.0 + x[0];
        DiskPoint {
            re: x[1] / d,
            im: x[2] / d,
        }
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Hyperbolic distance for the curvature -1 metric
/// `ds^2 = 4(da^2 + db^2)/(1 - a^2 - b^2)^2`.
///
/// Evaluated as `2 asinh(|p - q| / sqrt((1-|p|^2)(1-|q|^2)))`, which equals
/// `2 artanh(|p - q| / |1 - conj(q) p|)` and keeps full precision for far
/// apart points.
pub fn distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let diff = (p.to_complex() - q.to_complex()).norm();
    if diff == 0.0 {
        return 0.0;
    }
    2.0 * (diff / (p.conformal_gap() * q.conformal_gap()).sqrt()).asinh()
}

/// A point on the boundary circle, stored by its angle in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct IdealPoint {
    angle: f64,
}

impl IdealPoint {
    pub fn new(angle: f64) -> IdealPoint {
        let mut a = angle.rem_euclid(TAU);
        // rem_euclid can round up to TAU itself
        if a >= TAU {
            a = 0.0;
        }
        IdealPoint { angle: a }
    }

    pub fn from_complex(z: Complex64) -> IdealPoint {
        IdealPoint::new(z.im.atan2(z.re))
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }

    /// Shortest angular distance on the circle, in [0, π].
    pub fn separation(self, other: IdealPoint) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(TAU - d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_and_exterior() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.6).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(0.99, 0.0).is_ok());
    }

    #[test]
    fn distance_from_origin_to_half() {
        let d = distance(DiskPoint::ORIGIN, DiskPoint::new(0.5, 0.0).unwrap());
        assert!((d - 3f64.ln()).abs() < 1e-15);
        assert_eq!(distance(DiskPoint::ORIGIN, DiskPoint::ORIGIN), 0.0);
    }

    #[test]
    fn agrees_with_artanh_form() {
        let pts = [(0.1, 0.2), (-0.7, 0.3), (0.0, -0.95), (0.5, 0.5)];
        for &(a, b) in &pts {
            for &(c, d) in &pts {
                let p = DiskPoint::new(a, b).unwrap();
                let q = DiskPoint::new(c, d).unwrap();
                let (zp, zq) = (p.to_complex(), q.to_complex());
                let ratio = (zp - zq).norm() / (Complex64::new(1.0, 0.0) - zq.conj() * zp).norm();
                let reference = 2.0 * ratio.atanh();
                assert!((distance(p, q) - reference).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ideal_angle_is_canonical() {
        assert_eq!(IdealPoint::new(-1e-300).angle(), 0.0);
        assert!((IdealPoint::new(7.0).angle() - (7.0 - TAU)).abs() < 1e-15);
        assert!((IdealPoint::new(0.1).separation(IdealPoint::new(TAU - 0.1)) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn hyperboloid_round_trip() {
        let p = DiskPoint::new(-0.3, 0.45).unwrap();
        let x = p.to_hyperboloid();
        assert!((super::super::minkowski(x, x) + 1.0).abs() < 1e-12);
        let back = DiskPoint::from_hyperboloid(x);
        assert!((back.re - p.re).abs() < 1e-15 && (back.im - p.im).abs() < 1e-15);
    }
}
