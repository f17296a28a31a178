//! Hyperbolic surfaces as quotients of the Poincaré disk by free Fuchsian
//! groups, the dual tree of their tessellation, and checks on triangles
//! formed by lifts of a closed geodesic.

pub mod audit;
pub mod crossings;
pub mod error;
pub mod experiment;
pub mod kernel;
pub mod lifts;
pub mod render;
pub mod report;
pub mod surface;
pub mod tolerance;
pub mod tree;
pub mod words;

pub use error::{Error, Result};
