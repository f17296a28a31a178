//! The single set of numeric tolerances used throughout the crate.
//!
//! Defaults can be overridden once at process start from environment
//! variables with the `HYPTRI_TOL_` prefix (see [`Tolerances::from_env`]).

use std::sync::OnceLock;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Algebraic residuals: determinants, fixed points, endpoint matches.
    pub algebraic: f64,
    /// Comparisons against numerical integration.
    pub integration: f64,
    /// Strictness floor for triangle side margins and vertex separation.
    pub strictness: f64,
    /// Points with |z|^2 at or above `1 - boundary` are not interior.
    pub boundary: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        algebraic: 1e-9,
        integration: 1e-6,
        strictness: 1e-6,
        boundary: 1e-12,
    };

    /// Reads `HYPTRI_TOL_ALGEBRAIC`, `HYPTRI_TOL_INTEGRATION`,
    /// `HYPTRI_TOL_STRICTNESS` and `HYPTRI_TOL_BOUNDARY`, falling back to the
    /// defaults for unset variables.
    pub fn from_env() -> Result<Tolerances, String> {
        let mut t = Tolerances::DEFAULT;
        for (key, slot) in [
            ("HYPTRI_TOL_ALGEBRAIC", &mut t.algebraic),
            ("HYPTRI_TOL_INTEGRATION", &mut t.integration),
            ("HYPTRI_TOL_STRICTNESS", &mut t.strictness),
            ("HYPTRI_TOL_BOUNDARY", &mut t.boundary),
        ] {
            if let Ok(raw) = std::env::var(key) {
                let v: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| format!("{key}: not a number: {raw:?}"))?;
                if !(v > 0.0 && v < 1.0) {
                    return Err(format!("{key}: must lie in (0, 1), got {v}"));
                }
                *slot = v;
            }
        }
        Ok(t)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}

static ACTIVE: OnceLock<Tolerances> = OnceLock::new();

/// Installs the process-wide tolerance set. Only the first call wins.
pub fn install(t: Tolerances) -> bool {
    ACTIVE.set(t).is_ok()
}

/// The active tolerance set.
pub fn active() -> &'static Tolerances {
    ACTIVE.get().unwrap_or(&Tolerances::DEFAULT)
}
