//! Poincaré disk geometry: points, ideal points, orientation-preserving
//! isometries and complete geodesics.

mod geodesic;
mod isometry;
mod point;

pub use geodesic::Geodesic;
pub use isometry::{IsometryClass, MobiusIsometry};
pub use point::{distance, DiskPoint, IdealPoint};

/// Minkowski form of signature (-, +, +) on the hyperboloid model.
pub(crate) fn minkowski(a: [f64; 3], b: [f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// A vector Minkowski-orthogonal to both `a` and `b`.
pub(crate) fn minkowski_cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        -(a[1] * b[2] - a[2] * b[1]),
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
