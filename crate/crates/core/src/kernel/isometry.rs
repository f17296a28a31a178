use num_complex::Complex64;
use serde::Serialize;

use super::{DiskPoint, Geodesic, IdealPoint};
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// `z ↦ (alpha z + beta) / (conj(beta) z + conj(alpha))` with
/// `|alpha|^2 - |beta|^2 = 1`.
///
/// The matrix `[[alpha, beta], [conj(beta), conj(alpha)]]` and its negative
/// act identically; [`MobiusIsometry::approx_eq`] compares up to that sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusIsometry {
    #[serde(serialize_with = "ser_complex")]
    alpha: Complex64,
    #[serde(serialize_with = "ser_complex")]
    beta: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl MobiusIsometry {
    pub const IDENTITY: MobiusIsometry = MobiusIsometry {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Builds and normalizes to unit determinant; fails if
    /// `|alpha|^2 - |beta|^2` is not positive.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<MobiusIsometry> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Precondition(format!(
                "|alpha|^2 - |beta|^2 = {det} is not positive"
            )));
        }
        Ok(MobiusIsometry { alpha, beta }.normalized())
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Conjugates a real matrix acting on the upper half-plane into the disk
    /// through the Cayley transform `w ↦ (w - i)/(w + i)`.
    pub fn from_half_plane(a: f64, b: f64, c: f64, d: f64) -> Result<MobiusIsometry> {
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(Error::Precondition(format!(
                "half-plane matrix has non-positive determinant {det}"
            )));
        }
        let alpha = Complex64::new(0.5 * (a + d), 0.5 * (b - c));
        let beta = Complex64::new(0.5 * (a - d), -0.5 * (b + c));
        MobiusIsometry::new(alpha, beta)
    }

    /// Inverse of [`MobiusIsometry::from_half_plane`], with det 1 and a + d >= 0.
    pub fn to_half_plane(&self) -> [f64; 4] {
        let (alpha, beta) = if self.alpha.re < 0.0 {
            (-self.alpha, -self.beta)
        } else {
            (self.alpha, self.beta)
        };
        [
            alpha.re + beta.re,
            alpha.im - beta.im,
            -alpha.im - beta.im,
            alpha.re - beta.re,
        ]
    }

    /// Rotation `z ↦ e^{iθ} z`.
    pub fn rotation(theta: f64) -> MobiusIsometry {
        MobiusIsometry {
            alpha: Complex64::from_polar(1.0, 0.5 * theta),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// The transvection along the geodesic through 0 and `p` sending 0 to `p`.
    pub fn origin_to(p: DiskPoint) -> MobiusIsometry {
        let s = 1.0 / p.conformal_gap().sqrt();
        MobiusIsometry {
            alpha: Complex64::new(s, 0.0),
            beta: p.to_complex() * s,
        }
    }

    /// Rotation by π about `p`.
    pub fn half_turn(p: DiskPoint) -> MobiusIsometry {
        let m = MobiusIsometry::origin_to(p);
        m.compose(&MobiusIsometry::rotation(std::f64::consts::PI))
            .compose(&m.inverse())
    }

    fn normalized(self) -> MobiusIsometry {
        let det = self.alpha.norm_sqr() - self.beta.norm_sqr();
        let s = 1.0 / det.sqrt();
        MobiusIsometry {
            alpha: self.alpha * s,
            beta: self.beta * s,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        DiskPoint::from_complex_unchecked(self.apply_complex(p.to_complex()))
    }

    pub(crate) fn apply_complex(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    /// Boundary action on the unit circle.
    pub fn apply_ideal(&self, e: IdealPoint) -> IdealPoint {
        IdealPoint::from_complex(self.apply_complex(e.to_complex()))
    }

    /// Panics if the image endpoints fall within the algebraic tolerance of
    /// each other, which only happens for very large displacements.
    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        self.try_apply_geodesic(g)
            .expect("isometries keep distinct endpoints distinct")
    }

    pub fn try_apply_geodesic(&self, g: &Geodesic) -> Result<Geodesic> {
        let (a, b) = g.endpoints();
        Geodesic::new(self.apply_ideal(a), self.apply_ideal(b))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MobiusIsometry) -> MobiusIsometry {
        MobiusIsometry {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
        .normalized()
    }

    pub fn inverse(&self) -> MobiusIsometry {
        MobiusIsometry {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Real trace `2 Re(alpha)` of the SU(1,1) representative.
    pub fn trace(&self) -> f64 {
        2.0 * self.alpha.re
    }

    /// Entrywise comparison up to the global sign of the matrix.
    pub fn approx_eq(&self, other: &MobiusIsometry, tol: f64) -> bool {
        let close = |s: f64| {
            (self.alpha - other.alpha * s).norm() <= tol && (self.beta - other.beta * s).norm() <= tol
        };
        close(1.0) || close(-1.0)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MobiusIsometry::IDENTITY, tol)
    }

    /// Trichotomy by |trace|, with the parabolic band of width equal to the
    /// algebraic tolerance around 2.
    pub fn classify(&self) -> Result<IsometryClass> {
        let tol = tolerance::active().algebraic;
        if self.is_identity(tol) {
            return Err(Error::IdentityTransform);
        }
        let t = self.trace().abs();
        Ok(if t > 2.0 + tol {
            IsometryClass::Hyperbolic
        } else if t < 2.0 - tol {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Parabolic
        })
    }

    /// Like [`MobiusIsometry::classify`] but refuses to decide inside the
    /// parabolic band.
    pub fn classify_strict(&self) -> Result<IsometryClass> {
        match self.classify()? {
            IsometryClass::Parabolic => Err(Error::AmbiguousClass {
                abs_trace: self.trace().abs(),
            }),
            c => Ok(c),
        }
    }

    fn require_hyperbolic(&self) -> Result<()> {
        match self.classify()? {
            IsometryClass::Hyperbolic => Ok(()),
            _ => Err(Error::NotHyperbolic {
                abs_trace: self.trace().abs(),
            }),
        }
    }

    /// Minimal displacement `2 arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64> {
        self.require_hyperbolic()?;
        Ok(2.0 * self.alpha.re.abs().acosh())
    }

    /// The two boundary fixed points, roots of
    /// `conj(beta) z^2 + (conj(alpha) - alpha) z - beta = 0`.
    /// The attracting one comes first.
    pub fn fixed_points(&self) -> Result<(IdealPoint, IdealPoint)> {
        self.require_hyperbolic()?;
        let disc = (self.alpha.re * self.alpha.re - 1.0).sqrt();
        let bc = self.beta.conj();
        let i_im = Complex64::new(0.0, self.alpha.im);
        let z1 = (i_im + disc) / bc;
        let z2 = (i_im - disc) / bc;
        // |T'(z)| = 1/|conj(beta) z + conj(alpha)|^2 < 1 at the attracting point
        let k1 = (bc * z1 + self.alpha.conj()).norm_sqr();
        let k2 = (bc * z2 + self.alpha.conj()).norm_sqr();
        let (a, r) = if k1 > k2 { (z1, z2) } else { (z2, z1) };
        Ok((IdealPoint::from_complex(a), IdealPoint::from_complex(r)))
    }

    pub fn axis(&self) -> Result<Geodesic> {
        let (a, r) = self.fixed_points()?;
        Geodesic::new(a, r)
    }
}
