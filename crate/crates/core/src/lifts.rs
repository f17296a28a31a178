//! Lifts of a closed geodesic and the triangles they form.

use std::collections::BTreeSet;

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{distance, DiskPoint, Geodesic, IsometryClass};
use crate::surface::SurfaceGroup;
use crate::tolerance;
use crate::tree::axis_of;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lift {
    /// Shortlex-first coset representative `g`; the lift is the axis of
    /// `g · core · g⁻¹`.
    pub rep: Word,
    pub geodesic: Geodesic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftSet {
    pub gamma: Word,
    pub core: Word,
    pub ell_gamma: f64,
    pub radius: usize,
    pub lifts: Vec<Lift>,
    /// Number of distinct cosets `g⟨root(core)⟩` with `|g| ≤ radius`,
    /// counted combinatorially from tree axes.
    pub coset_count: usize,
}

impl LiftSet {
    pub fn counts_agree(&self) -> bool {
        self.coset_count == self.lifts.len()
    }
}

/// `{ g · axis(core) : |g| ≤ radius }`, deduplicated by endpoints.
pub fn enumerate_lifts(group: &SurfaceGroup, gamma: &Word, radius: usize) -> Result<LiftSet> {
    if gamma.rank() != group.rank() {
        return Err(Error::RankMismatch {
            expected: group.rank(),
            got: gamma.rank(),
        });
    }
    let core = gamma.cyclic_reduce().0;
    if core.is_empty() {
        return Err(Error::IdentityElement);
    }
    let t = group.evaluate(&core)?;
    let abs_trace = t.trace().abs();
    match t.classify() {
        Ok(IsometryClass::Hyperbolic) => {}
        _ => return Err(Error::NotHyperbolicClass { abs_trace }),
    }
    let ell_gamma = t.translation_length()?;
    let axis = t.axis()?;
    let tree_axis = axis_of(&core)?;
    let tol = tolerance::active().algebraic;

    let mut lifts: Vec<Lift> = Vec::new();
    let mut keys = BTreeSet::new();
    for g in crate::words::ball(group.rank(), radius) {
        keys.insert(tree_axis.translate(&g)?.canonical_key());
        let geodesic = group.evaluate(&g)?.apply_geodesic(&axis);
        if !lifts.iter().any(|l| l.geodesic.approx_eq(&geodesic, tol)) {
            lifts.push(Lift { rep: g, geodesic });
        }
    }
    let set = LiftSet {
        gamma: gamma.clone(),
        core,
        ell_gamma,
        radius,
        lifts,
        coset_count: keys.len(),
    };
    if !set.counts_agree() {
        warn!(
            "lift dedup mismatch for {}: {} by endpoints, {} by cosets",
            set.gamma,
            set.lifts.len(),
            set.coset_count
        );
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftTriangle {
    /// Indices into [`LiftSet::lifts`].
    pub lift_indices: [usize; 3],
    pub reps: [Word; 3],
    pub sides: [Geodesic; 3],
    /// Vertex `k` is where the two sides other than `k` cross.
    pub vertices: [DiskPoint; 3],
    /// Length of side `k`, between the two vertices other than `k`.
    pub side_lengths: [f64; 3],
    /// `ell_gamma - side_lengths[k]`.
    pub margins: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSearch {
    pub triangles: Vec<LiftTriangle>,
    /// Triples whose three crossing points are closer than the strictness
    /// floor; not counted as triangles.
    pub near_concurrent: Vec<[usize; 3]>,
    /// Triples skipped because some pair is asymptotic.
    pub skipped_asymptotic: usize,
}

#[derive(Clone, Copy)]
enum Pair {
    Cross(DiskPoint),
    Disjoint,
    Asymptotic,
}

/// All triples of pairwise crossing lifts, in lexicographic index order.
pub fn find_triangles(set: &LiftSet) -> TriangleSearch {
    let strict = tolerance::active().strictness;
    let n = set.lifts.len();
    let mut pair = vec![vec![Pair::Disjoint; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = match set.lifts[i].geodesic.intersect(&set.lifts[j].geodesic) {
                Ok(Some(x)) => Pair::Cross(x),
                Ok(None) => Pair::Disjoint,
                Err(_) => Pair::Asymptotic,
            };
            pair[i][j] = p;
            pair[j][i] = p;
        }
    }
    let mut out = TriangleSearch {
        triangles: Vec::new(),
        near_concurrent: Vec::new(),
        skipped_asymptotic: 0,
    };
    for i in 0..n {
        for j in i + 1..n {
            if matches!(pair[i][j], Pair::Disjoint) {
                continue;
            }
            for k in j + 1..n {
                let ps = [pair[j][k], pair[i][k], pair[i][j]];
                if ps.iter().any(|p| matches!(p, Pair::Disjoint)) {
                    continue;
                }
                if ps.iter().any(|p| matches!(p, Pair::Asymptotic)) {
                    warn!("skipping lifts {i}, {j}, {k}: asymptotic pair");
                    out.skipped_asymptotic += 1;
                    continue;
                }
                let v = ps.map(|p| match p {
                    Pair::Cross(x) => x,
                    _ => unreachable!(),
                });
                let side_lengths = [distance(v[1], v[2]), distance(v[0], v[2]), distance(v[0], v[1])];
                if side_lengths.iter().any(|&s| s <= strict) {
                    out.near_concurrent.push([i, j, k]);
                    continue;
                }
                let idx = [i, j, k];
                out.triangles.push(LiftTriangle {
                    lift_indices: idx,
                    reps: idx.map(|m| set.lifts[m].rep.clone()),
                    sides: idx.map(|m| set.lifts[m].geodesic),
                    vertices: v,
                    side_lengths,
                    margins: side_lengths.map(|s| set.ell_gamma - s),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Verdict {
    pub verdict: Verdict,
    pub ell_gamma: f64,
    pub side_lengths: [f64; 3],
    pub margins: [f64; 3],
    pub min_margin: f64,
}

/// Every side must be shorter than the closed geodesic by more than the
/// strictness floor.
pub fn verify_theorem1(t: &LiftTriangle, ell_gamma: f64) -> Theorem1Verdict {
    let floor = tolerance::active().strictness;
    let side_lengths = [
        distance(t.vertices[1], t.vertices[2]),
        distance(t.vertices[0], t.vertices[2]),
        distance(t.vertices[0], t.vertices[1]),
    ];
    let margins = side_lengths.map(|s| ell_gamma - s);
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Theorem1Verdict {
        verdict: if min_margin > floor { Verdict::Pass } else { Verdict::Fail },
        ell_gamma,
        side_lengths,
        margins,
        min_margin,
    }
}

/// Builds a triangle record from three arbitrary pairwise crossing
/// geodesics, e.g. to exercise the checker on input that is not a lift set.
pub fn triangle_from_geodesics(sides: [Geodesic; 3], ell_gamma: f64) -> Result<LiftTriangle> {
    let cross = |a: &Geodesic, b: &Geodesic| {
        a.intersect(b)?
            .ok_or_else(|| Error::Precondition("sides do not cross".into()))
    };
    let v = [
        cross(&sides[1], &sides[2])?,
        cross(&sides[0], &sides[2])?,
        cross(&sides[0], &sides[1])?,
    ];
    let side_lengths = [distance(v[1], v[2]), distance(v[0], v[2]), distance(v[0], v[1])];
    let e = Word::identity(1);
    Ok(LiftTriangle {
        lift_indices: [0, 1, 2],
        reps: [e.clone(), e.clone(), e],
        sides,
        vertices: v,
        side_lengths,
        margins: side_lengths.map(|s| ell_gamma - s),
    })
}
