//! Counting how often geodesics cross the wall translates `g · x̃_i`.
//!
//! Both counts walk the geodesic through the tessellation: from the cell
//! containing a point, the next cell lies across the wall translate of the
//! current cell that the geodesic crosses next. Only walls of visited cells
//! can be crossed, so this equals testing every translate in the ball while
//! touching just the cells that matter.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{distance, DiskPoint, Geodesic};
use crate::surface::{SurfaceGroup, DEFAULT_MAX_STEPS};
use crate::tolerance;
use crate::tree::axis_of;
use crate::words::Word;

/// A tree edge `{cell, cell · letter}`, dual to one wall translate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: Word,
    pub letter: i32,
}

impl Edge {
    pub fn to(&self) -> Word {
        self.from
            .mul(&Word::generator(self.letter, self.from.rank()).expect("valid letter"))
            .expect("same rank")
    }

    /// Orientation-free form: stored from the shortlex-smaller end.
    pub fn canonical(&self) -> Edge {
        let to = self.to();
        if to < self.from {
            Edge {
                from: to,
                letter: -self.letter,
            }
        } else {
            self.clone()
        }
    }

    pub fn orbit(&self) -> u32 {
        self.letter.unsigned_abs()
    }

    pub fn max_len(&self) -> usize {
        self.from.len().max(self.to().len())
    }
}

#[derive(Debug, Clone, Copy)]
enum Limit {
    /// Stop before crossing beyond this arclength parameter.
    Param(f64),
    /// Stop after entering a cell outside `ball(radius)` that moves away
    /// from the root.
    Ball(usize),
}

#[derive(Debug, Clone)]
struct Step {
    edge: Edge,
}

fn walk(
    group: &SurfaceGroup,
    line: &Geodesic,
    start_cell: Word,
    t_start: f64,
    forward: bool,
    limit: Limit,
) -> Result<Vec<Step>> {
    let rank = group.rank();
    let mut cell = start_cell;
    let mut m = group.evaluate(&cell)?;
    let mut t_cur = t_start;
    let mut entry_letter: Option<i32> = None;
    let mut steps = Vec::new();
    for _ in 0..DEFAULT_MAX_STEPS {
        // endpoint images carry a relative error of about |alpha|^2 ulp
        if m.alpha().norm_sqr() * f64::EPSILON > tolerance::active().algebraic {
            return Err(Error::Precondition(format!(
                "wall translates at cell {cell} are below floating-point resolution"
            )));
        }
        let mut best: Option<(f64, i32)> = None;
        for w in group.walls() {
            if Some(w.letter) == entry_letter {
                continue;
            }
            let translate = m.try_apply_geodesic(&w.geodesic).map_err(|_| {
                Error::Precondition(format!(
                    "wall translates at cell {cell} are below floating-point resolution"
                ))
            })?;
            let x = match line.intersect(&translate) {
                Ok(Some(x)) => x,
                _ => continue,
            };
            let t = line.param_of(x);
            let advance = if forward { t - t_cur } else { t_cur - t };
            if advance > 0.0 && best.map_or(true, |(a, _)| advance < a) {
                best = Some((advance, w.letter));
            }
        }
        let Some((advance, letter)) = best else {
            // the line should leave through a free boundary arc of this cell
            let ahead = line.point_at(if forward { t_cur + 8.0 } else { t_cur - 8.0 });
            return match group.point_to_cell(ahead, DEFAULT_MAX_STEPS) {
                Ok(c) if c == cell => Ok(steps),
                _ => Err(Error::Precondition(format!(
                    "walk lost the geodesic after cell {cell}"
                ))),
            };
        };
        let t = if forward { t_cur + advance } else { t_cur - advance };
        if let Limit::Param(end) = limit {
            if (forward && t >= end) || (!forward && t <= end) {
                return Ok(steps);
            }
        }
        let next = cell.mul(&Word::generator(letter, rank)?)?;
        steps.push(Step {
            edge: Edge {
                from: cell.clone(),
                letter,
            },
        });
        if let Limit::Ball(r) = limit {
            if next.len() > r && next.len() > cell.len() {
                return Ok(steps);
            }
        }
        m = m.compose(&group.generator(letter));
        cell = next;
        t_cur = t;
        entry_letter = Some(-letter);
    }
    Err(Error::MaxStepsExceeded(DEFAULT_MAX_STEPS))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingProfile {
    pub start_cell: Word,
    pub end_cell: Word,
    /// Crossed wall translates in order along the segment.
    pub crossed: Vec<Edge>,
    /// Crossings per cut geodesic `x_i`, indexed by `i - 1`.
    pub per_orbit: Vec<usize>,
    pub total: usize,
    /// Longest word among visited cells; the radius actually needed.
    pub required_radius: usize,
    pub samples_checked: usize,
}

/// Transversal crossings of the segment `[p, q]` with wall translates of
/// cells in `ball(radius)`.
pub fn crossing_profile(
    p: DiskPoint,
    q: DiskPoint,
    group: &SurfaceGroup,
    radius: usize,
) -> Result<CrossingProfile> {
    let line = Geodesic::through(p, q)?;
    let start_cell = group.point_to_cell(p, DEFAULT_MAX_STEPS)?;
    let end_cell = group.point_to_cell(q, DEFAULT_MAX_STEPS)?;
    let (tp, tq) = (line.param_of(p), line.param_of(q));
    let steps = walk(group, &line, start_cell.clone(), tp, tq > tp, Limit::Param(tq))?;

    let mut visited: Vec<Word> = vec![start_cell.clone()];
    visited.extend(steps.iter().map(|s| s.edge.to()));
    let required_radius = visited.iter().map(Word::len).max().unwrap_or(0);
    if required_radius > radius {
        return Err(Error::RadiusInsufficient {
            radius,
            required: required_radius,
        });
    }
    if visited.last() != Some(&end_cell) {
        return Err(Error::Precondition(format!(
            "walk from {start_cell} ended in {}, but the endpoint lies in {end_cell}",
            visited.last().unwrap()
        )));
    }

    // dense samples must land in visited cells
    let on_path: BTreeSet<&Word> = visited.iter().collect();
    let n = ((distance(p, q) / 0.02).ceil() as usize).max(32);
    let mut samples_checked = 0;
    for k in 1..n {
        let t = tp + (tq - tp) * k as f64 / n as f64;
        match group.point_to_cell(line.point_at(t), DEFAULT_MAX_STEPS) {
            Ok(c) => {
                if !on_path.contains(&c) {
                    return Err(Error::Precondition(format!(
                        "sample at t = {t} lies in {c}, which the walk did not visit"
                    )));
                }
                samples_checked += 1;
            }
            Err(Error::OnWall) => {}
            Err(e) => return Err(e),
        }
    }

    let mut per_orbit = vec![0; group.rank() as usize];
    for s in &steps {
        per_orbit[s.edge.orbit() as usize - 1] += 1;
    }
    Ok(CrossingProfile {
        start_cell,
        end_cell,
        total: steps.len(),
        crossed: steps.into_iter().map(|s| s.edge).collect(),
        per_orbit,
        required_radius,
        samples_checked,
    })
}

/// Cells crossed by a complete geodesic and their walls, restricted to
/// edges with an endpoint in `ball(radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineCells {
    /// Canonical edges in order along the geodesic.
    pub edges: Vec<Edge>,
    /// Visited cells in order along the geodesic.
    pub cells: Vec<Word>,
    /// The visited cell closest to the root: the tree projection of the
    /// root onto the geodesic's dual line.
    pub projection: Word,
}

pub fn line_cells(line: &Geodesic, group: &SurfaceGroup, radius: usize) -> Result<LineCells> {
    let mut t0 = line.param_of(group.base_point());
    let mut start = None;
    for _ in 0..16 {
        match group.point_to_cell(line.point_at(t0), DEFAULT_MAX_STEPS) {
            Ok(c) => {
                start = Some(c);
                break;
            }
            Err(Error::OnWall) => t0 += 1e-3,
            Err(e) => return Err(e),
        }
    }
    let start = start.ok_or(Error::OnWall)?;
    let back = walk(group, line, start.clone(), t0, false, Limit::Ball(radius))?;
    let fwd = walk(group, line, start.clone(), t0, true, Limit::Ball(radius))?;
    let mut cells = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    for s in back.iter().rev() {
        edges.push(s.edge.canonical());
        cells.push(s.edge.to());
    }
    cells.push(start.clone());
    for s in &fwd {
        edges.push(s.edge.canonical());
        cells.push(s.edge.to());
    }
    let projection = cells.iter().min_by_key(|c| c.len()).expect("nonempty").clone();
    Ok(LineCells {
        edges,
        cells,
        projection,
    })
}

/// [`line_cells`] for the axis of `f`, a lift of the closed geodesic of its
/// conjugacy class.
///
/// At a cell `h` on the lift, `h⁻¹ f h` is cyclically reduced, so the lift
/// seen from `h` is the axis of a short word. Each step checks that this
/// local axis crosses exactly the two walls of the base cell the tree
/// predicts; every evaluation is well conditioned however deep `h` is.
pub fn lift_cells(group: &SurfaceGroup, f: &Word, radius: usize) -> Result<LineCells> {
    let axis = axis_of(f)?;
    let l = axis.translation_length();
    let projection = axis.base().clone();
    let local_exits = |h: &Word| -> Result<(i32, i32)> {
        let w = f.conjugate_by(&h.inverse())?;
        if w.len() != l {
            return Err(Error::Precondition(format!("cell {h} is not on the axis of {f}")));
        }
        let letters = w.letters();
        let (fwd, back) = (letters[0], -letters[l - 1]);
        let local = group.evaluate(&w)?.axis()?;
        for wall in group.walls() {
            let crosses = matches!(local.intersect(&wall.geodesic), Ok(Some(_)));
            let expected = wall.letter == fwd || wall.letter == back;
            if crosses != expected {
                return Err(Error::Precondition(format!(
                    "axis of {f} seen from cell {h}: crossing of wall {} is {crosses}, \
                     the tree predicts {expected}",
                    wall.letter
                )));
            }
        }
        Ok((fwd, back))
    };
    let rank = group.rank();
    let mut sides: [Vec<Edge>; 2] = [Vec::new(), Vec::new()];
    for (side, forward) in [(0, false), (1, true)] {
        let mut h = projection.clone();
        for _ in 0..DEFAULT_MAX_STEPS {
            let (fwd, back) = local_exits(&h)?;
            let letter = if forward { fwd } else { back };
            let next = h.mul(&Word::generator(letter, rank)?)?;
            sides[side].push(Edge {
                from: h.clone(),
                letter,
            });
            if next.len() > radius && next.len() > h.len() {
                break;
            }
            h = next;
        }
    }
    let [back, fwd] = sides;
    let mut cells: Vec<Word> = back.iter().rev().map(Edge::to).collect();
    cells.push(projection.clone());
    cells.extend(fwd.iter().map(Edge::to));
    let edges = back
        .iter()
        .rev()
        .chain(fwd.iter())
        .map(Edge::canonical)
        .collect();
    Ok(LineCells {
        edges,
        cells,
        projection,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedCrossings {
    pub count: usize,
    pub edges: Vec<Edge>,
    pub per_orbit: BTreeMap<u32, usize>,
    pub projections: [Word; 2],
}

impl SharedCrossings {
    /// The strict bound `count < L(W) - 1` for distinct lifts of a class
    /// with cyclic core of length `core_length`.
    pub fn within_bound(&self, core_length: usize) -> bool {
        (self.count as i64) < core_length as i64 - 1
    }
}

/// Wall translates crossed by both geodesics.
pub fn shared_crossings(
    l1: &Geodesic,
    l2: &Geodesic,
    group: &SurfaceGroup,
    radius: usize,
) -> Result<SharedCrossings> {
    if l1.approx_eq(l2, tolerance::active().algebraic) {
        return Err(Error::Precondition("the two lifts are identical".into()));
    }
    let a = line_cells(l1, group, radius)?;
    let b = line_cells(l2, group, radius)?;
    shared_between(&a, &b, radius)
}

/// Shared crossings from already walked geodesics.
pub fn shared_between(a: &LineCells, b: &LineCells, radius: usize) -> Result<SharedCrossings> {
    let worst = a.projection.len().max(b.projection.len());
    if worst > radius {
        return Err(Error::RadiusInsufficient {
            radius,
            required: worst,
        });
    }
    let in_b: BTreeSet<&Edge> = b.edges.iter().collect();
    let edges: Vec<Edge> = a.edges.iter().filter(|e| in_b.contains(e)).cloned().collect();
    // a shared edge leaving the ball means the common stretch may continue
    if edges.iter().any(|e| e.max_len() > radius) {
        return Err(Error::RadiusInsufficient {
            radius,
            required: radius + 1,
        });
    }
    let mut per_orbit = BTreeMap::new();
    for e in &edges {
        *per_orbit.entry(e.orbit()).or_insert(0) += 1;
    }
    Ok(SharedCrossings {
        count: edges.len(),
        edges,
        per_orbit,
        projections: [a.projection.clone(), b.projection.clone()],
    })
}
