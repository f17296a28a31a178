//! Free Fuchsian groups given by a ping-pong configuration: `2n` walls
//! bounding a fundamental domain around a base point, paired by `n`
//! generators.
//!
//! Generator `y_i` maps its source wall onto its target wall and carries the
//! base side of the source wall into the far side of the target wall, so the
//! cell across the target wall is `y_i · D` and the cell across the source
//! wall is `y_i⁻¹ · D`.

use std::f64::consts::TAU;
use std::path::Path;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{DiskPoint, Geodesic, MobiusIsometry};
use crate::tolerance;
use crate::words::{self, Word};

/// On-disk surface description. Generator matrices act on the upper
/// half-plane; walls are ideal endpoint angles in the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub rank: u32,
    pub walls: Vec<[f64; 2]>,
    pub generators: Vec<GeneratorSpec>,
    pub base_point: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// `[a, b, c, d]` for `w ↦ (a w + b)/(c w + d)`, positive determinant.
    pub matrix: [f64; 4],
    pub source: usize,
    pub target: usize,
}

pub const PRESET_NAMES: [&str; 4] = [
    "punctured_torus",
    "thrice_punctured_sphere_thickened",
    "genus2_funnel",
    "annulus",
];

fn preset_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "punctured_torus" => include_str!("../presets/punctured_torus.json"),
        "thrice_punctured_sphere_thickened" => {
            include_str!("../presets/thrice_punctured_sphere_thickened.json")
        }
        "genus2_funnel" => include_str!("../presets/genus2_funnel.json"),
        "annulus" => include_str!("../presets/annulus.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wall {
    pub geodesic: Geodesic,
    /// Letter leading from the base cell across this wall.
    pub letter: i32,
    /// Sign of [`Geodesic::signed_sinh_distance`] on the far side.
    pub outward: f64,
}

impl Wall {
    /// Generator index `i` whose cut geodesic `x_i` this wall lifts.
    pub fn orbit(&self) -> u32 {
        self.letter.unsigned_abs()
    }
}

/// Residuals recorded when a configuration is certified.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// Max |ad - bc - 1| over the input matrices before normalization.
    pub determinant_residual: f64,
    /// Max endpoint mismatch of `y_i(source wall)` against the target wall.
    pub pairing_residual: f64,
    pub ping_pong_samples: usize,
    /// Smallest sinh-distance from a mapped sample to its target wall.
    pub ping_pong_min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGroup {
    name: String,
    rank: u32,
    gens: Vec<MobiusIsometry>,
    walls: Vec<Wall>,
    base_point: DiskPoint,
    certificate: Certificate,
}

impl SurfaceGroup {
    pub fn preset(name: &str) -> Result<SurfaceGroup> {
        let text = preset_text(name).ok_or_else(|| {
            Error::InvalidPreset(format!(
                "unknown preset {name:?}; known: {}",
                PRESET_NAMES.join(", ")
            ))
        })?;
        let cfg: SurfaceConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidPreset(e.to_string()))?;
        SurfaceGroup::from_config(&cfg)
    }

    pub fn load(path: &Path) -> Result<SurfaceGroup> {
        let text = std::fs::read_to_string(path)?;
        let cfg: SurfaceConfig = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidPreset(format!("{}: {e}", path.display())))?;
        SurfaceGroup::from_config(&cfg)
    }

    /// A preset name, or else a path to a config file.
    pub fn resolve(spec: &str) -> Result<SurfaceGroup> {
        if preset_text(spec).is_some() {
            SurfaceGroup::preset(spec)
        } else if Path::new(spec).exists() {
            SurfaceGroup::load(Path::new(spec))
        } else {
            Err(Error::InvalidPreset(format!(
                "{spec:?} is neither a preset ({}) nor an existing file",
                PRESET_NAMES.join(", ")
            )))
        }
    }

    pub fn from_config(cfg: &SurfaceConfig) -> Result<SurfaceGroup> {
        let tol = tolerance::active().algebraic;
        let n = cfg.rank as usize;
        let bad = |m: String| Err(Error::InvalidPreset(m));
        if n == 0 {
            return bad("rank must be at least 1".into());
        }
        if cfg.walls.len() != 2 * n || cfg.generators.len() != n {
            return bad(format!(
                "rank {n} needs {} walls and {n} generators, got {} and {}",
                2 * n,
                cfg.walls.len(),
                cfg.generators.len()
            ));
        }
        let mut letter = vec![0i32; 2 * n];
        for (i, g) in cfg.generators.iter().enumerate() {
            for (w, l) in [(g.source, -(i as i32 + 1)), (g.target, i as i32 + 1)] {
                if w >= 2 * n || letter[w] != 0 {
                    return bad(format!("wall {w} is out of range or paired twice"));
                }
                letter[w] = l;
            }
        }
        let base_point = DiskPoint::new(cfg.base_point[0], cfg.base_point[1])
            .map_err(|e| Error::InvalidPreset(format!("base point: {e}")))?;

        let mut geodesics = Vec::with_capacity(2 * n);
        for (j, [a, b]) in cfg.walls.iter().enumerate() {
            if !(a.is_finite() && b.is_finite()) {
                return bad(format!("wall {j} has a non-finite endpoint"));
            }
            geodesics.push(
                Geodesic::from_angles(*a, *b)
                    .map_err(|_| Error::InvalidPreset(format!("wall {j} is degenerate")))?,
            );
        }
        let mut walls = Vec::with_capacity(2 * n);
        for (j, g) in geodesics.iter().enumerate() {
            let s = g.signed_sinh_distance(base_point);
            if s.abs() <= tol {
                return bad(format!("base point lies on wall {j}"));
            }
            walls.push(Wall {
                geodesic: *g,
                letter: letter[j],
                outward: -s.signum(),
            });
        }

        let mut gens = Vec::with_capacity(n);
        let mut determinant_residual: f64 = 0.0;
        for (i, g) in cfg.generators.iter().enumerate() {
            let [a, b, c, d] = g.matrix;
            determinant_residual = determinant_residual.max((a * d - b * c - 1.0).abs());
            gens.push(
                MobiusIsometry::from_half_plane(a, b, c, d)
                    .map_err(|e| Error::InvalidPreset(format!("generator {}: {e}", i + 1)))?,
            );
        }

        let mut group = SurfaceGroup {
            name: cfg.name.clone(),
            rank: cfg.rank,
            gens,
            walls,
            base_point,
            certificate: Certificate {
                determinant_residual,
                pairing_residual: 0.0,
                ping_pong_samples: 0,
                ping_pong_min_margin: f64::INFINITY,
            },
        };
        group.certify(cfg)?;
        Ok(group)
    }

    fn certify(&mut self, cfg: &SurfaceConfig) -> Result<()> {
        let tol = tolerance::active().algebraic;
        let fail = |m: String| Err(Error::PingPongFailed(m));
        let m = self.walls.len();
        for j in 0..m {
            for k in j + 1..m {
                let (a, b) = (&self.walls[j].geodesic, &self.walls[k].geodesic);
                match a.intersect(b) {
                    Ok(None) | Err(Error::TangentUnresolved) => {}
                    Ok(Some(_)) => return fail(format!("walls {j} and {k} cross")),
                    Err(_) => return fail(format!("walls {j} and {k} coincide")),
                }
            }
        }
        // no wall may sit behind another one
        for j in 0..m {
            let mid = self.walls[j].geodesic.point_at(0.0);
            for k in (0..m).filter(|&k| k != j) {
                if self.far_side_value(k, mid) > tol {
                    return fail(format!("wall {j} lies beyond wall {k}"));
                }
            }
        }

        let samples = self.sample_grid();
        let mut pairing: f64 = 0.0;
        let mut margin = f64::INFINITY;
        let mut count = 0;
        for (i, spec) in cfg.generators.iter().enumerate() {
            let y = self.gens[i];
            let image = y.apply_geodesic(&self.walls[spec.source].geodesic);
            let target = &self.walls[spec.target].geodesic;
            let (a1, a2) = image.endpoints();
            let (b1, b2) = target.endpoints();
            let res = (a1.separation(b1).max(a2.separation(b2)))
                .min(a1.separation(b2).max(a2.separation(b1)));
            pairing = pairing.max(res);
            if res > tol {
                return fail(format!(
                    "generator {} maps wall {} to within {res:e} of wall {}, tolerance {tol:e}",
                    i + 1,
                    spec.source,
                    spec.target
                ));
            }
            for (map, from, to) in [(y, spec.source, spec.target), (y.inverse(), spec.target, spec.source)] {
                for &p in &samples {
                    if self.far_side_value(from, p) >= -tol {
                        continue;
                    }
                    let v = self.far_side_value(to, map.apply(p));
                    count += 1;
                    if !(v > 0.0) {
                        return fail(format!(
                            "generator {} does not push {p} across wall {to}",
                            i + 1
                        ));
                    }
                    margin = margin.min(v);
                }
            }
        }
        self.certificate.pairing_residual = pairing;
        self.certificate.ping_pong_samples = count;
        self.certificate.ping_pong_min_margin = margin;
        Ok(())
    }

    /// Deterministic polar grid of points around the base point.
    fn sample_grid(&self) -> Vec<DiskPoint> {
        let shift = MobiusIsometry::origin_to(self.base_point);
        let mut out = Vec::new();
        for r in [0.0, 0.3, 0.6, 0.85, 0.95, 0.99] {
            let spokes = if r == 0.0 { 1 } else { 48 };
            for k in 0..spokes {
                let th = TAU * (k as f64 + 0.5) / spokes as f64;
                let p = DiskPoint::new(r * th.cos(), r * th.sin()).expect("r < 1");
                out.push(shift.apply(p));
            }
        }
        out
    }

    /// Positive iff `p` is strictly beyond wall `j` as seen from the base
    /// point; the magnitude is the sinh of the distance to the wall.
    pub(crate) fn far_side_value(&self, j: usize, p: DiskPoint) -> f64 {
        let w = &self.walls[j];
        w.outward * w.geodesic.signed_sinh_distance(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> &[MobiusIsometry] {
        &self.gens
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn base_point(&self) -> DiskPoint {
        self.base_point
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn generator(&self, letter: i32) -> MobiusIsometry {
        let g = self.gens[letter.unsigned_abs() as usize - 1];
        if letter > 0 {
            g
        } else {
            g.inverse()
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<MobiusIsometry> {
        words::evaluate(w, &self.gens)
    }

    /// Index of the base-cell wall crossed by the letter `l`.
    pub fn wall_for_letter(&self, l: i32) -> usize {
        self.walls
            .iter()
            .position(|w| w.letter == l)
            .expect("every letter has a wall")
    }

    /// The cell `g · D` containing `x`, found by pushing `x` back across
    /// whichever wall separates it from the base cell.
    pub fn point_to_cell(&self, x: DiskPoint, max_steps: usize) -> Result<Word> {
        let tol = tolerance::active().algebraic;
        let mut z = x;
        let mut letters = Vec::new();
        'outer: for _ in 0..=max_steps {
            for (j, w) in self.walls.iter().enumerate() {
                let v = self.far_side_value(j, z);
                if v.abs() <= tol {
                    return Err(Error::OnWall);
                }
                if v > 0.0 {
                    letters.push(w.letter);
                    z = self.generator(-w.letter).apply(z);
                    continue 'outer;
                }
            }
            return words::reduce(&letters, self.rank);
        }
        Err(Error::MaxStepsExceeded(max_steps))
    }

    /// Wall translates bounding the cells of `ball(rank, radius)`, one per
    /// tree edge, as `(cell, wall index, geodesic)` with the edge leading
    /// from `cell` to `cell · letter`.
    ///
    /// Translates whose endpoints collapse within the algebraic tolerance are
    /// omitted: they hug the boundary circle closer than that tolerance.
    pub fn wall_translates(&self, radius: usize) -> Result<Vec<(Word, usize, Geodesic)>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for g in words::ball(self.rank, radius) {
            let m = self.evaluate(&g)?;
            for (j, w) in self.walls.iter().enumerate() {
                let other = g.mul(&Word::generator(w.letter, self.rank)?)?;
                let key = if g < other { (g.clone(), other) } else { (other, g.clone()) };
                if seen.insert(key) {
                    match m.try_apply_geodesic(&w.geodesic) {
                        Ok(geo) => out.push((g.clone(), j, geo)),
                        Err(_) => debug!("wall {j} of cell {g} is below resolution"),
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Default step budget for point location.
pub const DEFAULT_MAX_STEPS: usize = 10_000;
