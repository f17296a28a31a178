//! The dual tree of the tessellation, identified with the Cayley graph of
//! the free group. Vertices are reduced words; `u` and `u·y` are adjacent.
//! A group element `h` acts by left multiplication.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{self, Word};

pub type TreeVertex = Word;

/// Number of edges between two vertices.
pub fn tree_distance(u: &TreeVertex, v: &TreeVertex) -> Result<usize> {
    Ok(u.inverse().mul(v)?.len())
}

/// `d_T(v, f·v)`.
pub fn displacement(f: &Word, v: &TreeVertex) -> Result<usize> {
    Ok(v.inverse().mul(f)?.mul(v)?.len())
}

/// The invariant line of a nontrivial element `f = base · period · base⁻¹`.
///
/// `base` is the vertex of the line closest to the root; the line reads
/// `period` repeatedly in the direction of translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAxis {
    base: TreeVertex,
    period: Word,
    element: Word,
}

pub fn axis_of(f: &Word) -> Result<TreeAxis> {
    let (period, base) = f.cyclic_reduce();
    if period.is_empty() {
        return Err(Error::IdentityElement);
    }
    Ok(TreeAxis {
        base,
        period,
        element: f.clone(),
    })
}

impl TreeAxis {
    pub fn base(&self) -> &TreeVertex {
        &self.base
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn element(&self) -> &Word {
        &self.element
    }

    pub fn translation_length(&self) -> usize {
        self.period.len()
    }

    /// Vertex `t` steps from the base along the line (negative `t` walks
    /// against the translation direction).
    pub fn vertex_at(&self, t: i64) -> TreeVertex {
        let p = if t >= 0 {
            self.period.clone()
        } else {
            self.period.inverse()
        };
        let n = p.len() as u64;
        let steps = t.unsigned_abs();
        let mut walk = p.pow((steps / n) as i32);
        let prefix = words::reduce(&p.letters()[..(steps % n) as usize], p.rank())
            .expect("letters come from a valid word");
        walk = walk.mul(&prefix).expect("same rank");
        self.base.mul(&walk).expect("same rank")
    }

    pub fn contains(&self, v: &TreeVertex) -> bool {
        displacement(&self.element, v).map_or(false, |d| d == self.period.len())
    }

    /// Key identifying the line as a vertex set: the closest vertex to the
    /// root and the primitive period read there, up to direction.
    pub fn canonical_key(&self) -> (TreeVertex, Word) {
        let root = self.period.primitive_root().0;
        let inv = root.inverse();
        (self.base.clone(), root.min(inv))
    }

    /// `h · axis`, the axis of `h f h⁻¹`.
    pub fn translate(&self, h: &Word) -> Result<TreeAxis> {
        axis_of(&self.element.conjugate_by(h)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapKind {
    Empty,
    Segment,
    Coincident,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisOverlap {
    pub kind: OverlapKind,
    /// The common vertex path in order along the first axis; for coincident
    /// axes, the part inside the window.
    pub vertices: Vec<TreeVertex>,
}

impl AxisOverlap {
    /// Edges in the common segment; `None` when the axes are disjoint or
    /// coincident.
    pub fn edge_count(&self) -> Option<usize> {
        match self.kind {
            OverlapKind::Segment => Some(self.vertices.len() - 1),
            _ => None,
        }
    }
}

/// Window needed so that any finite overlap is seen in full.
pub fn required_window(a1: &TreeAxis, a2: &TreeAxis) -> usize {
    a1.period.len() + a2.period.len() + a1.base.len().max(a2.base.len())
}

/// Whether two lines through a shared vertex `v` are the same line: the
/// primitive periods read at `v` agree up to direction.
fn same_line_at(a1: &TreeAxis, a2: &TreeAxis, v: &TreeVertex) -> bool {
    let local = |a: &TreeAxis| {
        let w = v.inverse().mul(&a.element).and_then(|x| x.mul(v)).expect("same rank");
        w.primitive_root().0
    };
    let (r1, r2) = (local(a1), local(a2));
    r1 == r2 || r1 == r2.inverse()
}

/// Common part of two axes, inspecting `window` steps on either side of the
/// first axis' base.
pub fn axes_overlap(a1: &TreeAxis, a2: &TreeAxis, window: usize) -> Result<AxisOverlap> {
    if a1.period.rank() != a2.period.rank() {
        return Err(Error::RankMismatch {
            expected: a1.period.rank(),
            got: a2.period.rank(),
        });
    }
    let required = required_window(a1, a2);
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    let w = window as i64;
    let common: Vec<(i64, TreeVertex)> = (-w..=w)
        .map(|t| (t, a1.vertex_at(t)))
        .filter(|(_, v)| a2.contains(v))
        .collect();
    let Some((_, first)) = common.first() else {
        return Ok(AxisOverlap {
            kind: OverlapKind::Empty,
            vertices: Vec::new(),
        });
    };
    // intersections of lines in a tree are connected
    debug_assert!(common.windows(2).all(|p| p[1].0 == p[0].0 + 1));
    let kind = if same_line_at(a1, a2, first) {
        OverlapKind::Coincident
    } else {
        debug_assert!(common.first().unwrap().0 > -w && common.last().unwrap().0 < w);
        OverlapKind::Segment
    };
    Ok(AxisOverlap {
        kind,
        vertices: common.into_iter().map(|(_, v)| v).collect(),
    })
}

/// Outcome of testing "overlap ≥ L(W) − 1 ⇒ the axes of `f` and
/// `g f g⁻¹` coincide".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub f: Word,
    pub g: Word,
    pub core: Word,
    pub core_length: usize,
    pub overlap: OverlapKind,
    pub overlap_edges: Option<usize>,
    pub hypothesis_met: bool,
    pub violation: bool,
}

pub fn lemma2_verify(f: &Word, g: &Word) -> Result<Lemma2Report> {
    let a1 = axis_of(f)?;
    let a2 = axis_of(&f.conjugate_by(g)?)?;
    let ov = axes_overlap(&a1, &a2, required_window(&a1, &a2))?;
    let l = a1.translation_length();
    // "intersect in an interval with L(W0) = L(W) - 1" for any shared
    // segment of at least L(W) - 1 edges (a point when L(W) = 1)
    let hypothesis_met = match ov.kind {
        OverlapKind::Coincident => true,
        OverlapKind::Segment => ov.vertices.len() >= l,
        OverlapKind::Empty => false,
    };
    Ok(Lemma2Report {
        f: f.clone(),
        g: g.clone(),
        core: a1.period.clone(),
        core_length: l,
        overlap: ov.kind,
        overlap_edges: ov.edge_count(),
        hypothesis_met,
        violation: hypothesis_met && ov.kind != OverlapKind::Coincident,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Sweep {
    pub rank: u32,
    pub max_core_length: usize,
    pub conjugator_bound: usize,
    pub pairs_checked: usize,
    pub coincident_pairs: usize,
    pub violations: Vec<Lemma2Report>,
    /// For each core length L: the largest edge count shared by distinct
    /// conjugate axes (-1 if they never share a vertex).
    pub max_noncoincident_overlap: BTreeMap<usize, i64>,
}

/// Exhaustive check over the given elements against every conjugator of
/// length at most `conjugator_bound`.
pub fn lemma2_sweep_elements(
    elements: &[Word],
    rank: u32,
    conjugator_bound: usize,
) -> Result<Lemma2Sweep> {
    let conjugators = words::ball(rank, conjugator_bound);
    let mut out = Lemma2Sweep {
        rank,
        max_core_length: elements.iter().map(|f| f.cyclic_reduce().0.len()).max().unwrap_or(0),
        conjugator_bound,
        pairs_checked: 0,
        coincident_pairs: 0,
        violations: Vec::new(),
        max_noncoincident_overlap: BTreeMap::new(),
    };
    for f in elements {
        for g in &conjugators {
            let r = lemma2_verify(f, g)?;
            out.pairs_checked += 1;
            let entry = out.max_noncoincident_overlap.entry(r.core_length).or_insert(-1);
            match r.overlap {
                OverlapKind::Coincident => out.coincident_pairs += 1,
                OverlapKind::Segment => {
                    *entry = (*entry).max(r.overlap_edges.unwrap_or(0) as i64);
                }
                OverlapKind::Empty => {}
            }
            if r.violation {
                out.violations.push(r);
            }
        }
    }
    Ok(out)
}

/// [`lemma2_sweep_elements`] over all cyclically reduced words of length at
/// most `max_len`.
pub fn lemma2_sweep(rank: u32, max_len: usize, conjugator_bound: usize) -> Result<Lemma2Sweep> {
    let elements = words::cyclically_reduced_words(rank, max_len);
    lemma2_sweep_elements(&elements, rank, conjugator_bound)
}

/// Three distinct conjugate axes of `f` pairwise sharing at least a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeTriangle {
    pub conjugators: [Word; 3],
    /// Shared edge counts for the pairs (1,2), (0,2), (0,1).
    pub overlaps: [usize; 3],
    pub core_length: usize,
    /// Some overlap reaches `L(W)`.
    pub long_side: bool,
}

/// Distinct axes `g·axis(f)` for `|g| ≤ max_len`, one per line, keyed by
/// the shortlex-first conjugator reaching it.
pub fn distinct_conjugate_axes(f: &Word, max_len: usize) -> Result<Vec<(Word, TreeAxis)>> {
    let base = axis_of(f)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in words::ball(f.rank(), max_len) {
        let a = base.translate(&g)?;
        if seen.insert(a.canonical_key()) {
            out.push((g, a));
        }
    }
    Ok(out)
}

pub fn tree_triangle_search(f: &Word, max_len: usize) -> Result<Vec<TreeTriangle>> {
    if f.rank() < 2 {
        return Ok(Vec::new());
    }
    let axes = distinct_conjugate_axes(f, max_len)?;
    let l = axes[0].1.translation_length();
    let n = axes.len();
    let mut shared: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&axes[i].1, &axes[j].1);
            let ov = axes_overlap(a, b, required_window(a, b))?;
            debug_assert_ne!(ov.kind, OverlapKind::Coincident);
            shared[i][j] = ov.edge_count();
            shared[j][i] = shared[i][j];
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let Some(ij) = shared[i][j] else { continue };
            for k in j + 1..n {
                let (Some(ik), Some(jk)) = (shared[i][k], shared[j][k]) else {
                    continue;
                };
                let overlaps = [jk, ik, ij];
                out.push(TreeTriangle {
                    conjugators: [axes[i].0.clone(), axes[j].0.clone(), axes[k].0.clone()],
                    overlaps,
                    core_length: l,
                    long_side: overlaps.iter().any(|&o| o >= l),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse, reduce};

    fn w(letters: &[i32]) -> Word {
        reduce(letters, 2).unwrap()
    }

    #[test]
    fn distances() {
        let e = Word::identity(2);
        assert_eq!(tree_distance(&e, &e).unwrap(), 0);
        assert_eq!(tree_distance(&e, &w(&[1, 2])).unwrap(), 2);
        assert!(tree_distance(&e, &Word::identity(3)).is_err());
    }

    #[test]
    fn generator_axis() {
        let a = axis_of(&w(&[1])).unwrap();
        let got: Vec<Word> = (-1..=2).map(|t| a.vertex_at(t)).collect();
        assert_eq!(got, vec![w(&[-1]), w(&[]), w(&[1]), w(&[1, 1])]);
        assert!(a.contains(&w(&[1, 1, 1])));
        assert!(!a.contains(&w(&[2])));
        assert_eq!(axis_of(&Word::identity(2)), Err(Error::IdentityElement));
    }

    #[test]
    fn conjugated_axis_walks_from_base() {
        let f = parse("y2 y1 y1 Y2", 2).unwrap();
        let a = axis_of(&f).unwrap();
        assert_eq!(a.base(), &w(&[2]));
        assert_eq!(a.translation_length(), 2);
        for t in -6..=6 {
            let v = a.vertex_at(t);
            assert!(a.contains(&v));
            assert_eq!(tree_distance(&a.vertex_at(0), &v).unwrap(), t.unsigned_abs() as usize);
        }
    }

    #[test]
    fn self_overlap_is_coincident() {
        let a = axis_of(&w(&[1, 2])).unwrap();
        assert_eq!(axes_overlap(&a, &a, 10).unwrap().kind, OverlapKind::Coincident);
    }

    #[test]
    fn generators_meet_at_root_only() {
        let a = axis_of(&w(&[1])).unwrap();
        let b = axis_of(&w(&[2])).unwrap();
        let ov = axes_overlap(&a, &b, 2).unwrap();
        assert_eq!(ov.kind, OverlapKind::Segment);
        assert_eq!(ov.vertices, vec![Word::identity(2)]);
        assert_eq!(ov.edge_count(), Some(0));
    }

    #[test]
    fn rotated_periods_through_root_are_distinct_lines() {
        let ab = axis_of(&w(&[1, 2])).unwrap();
        let ba = axis_of(&w(&[2, 1])).unwrap();
        let ov = axes_overlap(&ab, &ba, 4).unwrap();
        assert_eq!(ov.kind, OverlapKind::Segment);
        assert_eq!(ov.edge_count(), Some(0));
    }

    #[test]
    fn small_window_is_rejected() {
        let a = axis_of(&w(&[1, 2])).unwrap();
        let b = axis_of(&w(&[2, 1, -2])).unwrap();
        assert_eq!(
            axes_overlap(&a, &b, 3),
            Err(Error::WindowTooSmall { window: 3, required: 4 })
        );
    }

    #[test]
    fn lemma2_ab_conjugated_by_a() {
        let r = lemma2_verify(&w(&[1, 2]), &w(&[1])).unwrap();
        assert!(!r.violation);
        assert_eq!(r.core_length, 2);
    }

    #[test]
    fn canonical_key_ignores_powers_and_direction() {
        let a = axis_of(&w(&[1, 2])).unwrap();
        let b = axis_of(&w(&[-2, -1, -2, -1])).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn rank_one_tree_has_no_triangles() {
        let f = reduce(&[1], 1).unwrap();
        assert!(tree_triangle_search(&f, 3).unwrap().is_empty());
    }

    #[test]
    fn generator_conjugates_never_meet() {
        // distinct y1-lines are disjoint: each vertex lies on exactly one
        let f = w(&[1]);
        assert!(tree_triangle_search(&f, 3).unwrap().is_empty());
    }
}
