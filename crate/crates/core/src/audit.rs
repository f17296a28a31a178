//! Empirical quasi-isometry constants for the cell-membership map `H² → T`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{distance, DiskPoint, MobiusIsometry};
use crate::surface::{SurfaceGroup, DEFAULT_MAX_STEPS};
use crate::tree::tree_distance;
use crate::words::{ball, Word};

pub const MIN_SAMPLES: usize = 100;
pub const MAX_BALL_RADIUS: f64 = 6.0;
const MAX_BALL_VERTICES: usize = 200_000;
const EQUIVARIANCE_CHECKS: usize = 200;
const EQUIVARIANCE_WORD_LEN: usize = 4;

/// Constants `(A, B)` for one form of the two-sided bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QiAudit {
    pub ball_radius: f64,
    pub samples: usize,
    pub seed: u64,
    pub max_d1: f64,
    pub max_d2: usize,
    pub pairs_compared: usize,
    /// `d1 / A - B <= d2 <= A d1 + B` with `A = B`
    pub standard: Fit,
    /// `A d1 - B <= d2 <= A d1 + B`
    pub same_constant: Fit,
    /// Largest tree distance from a ball vertex to the nearest sample image.
    pub c: usize,
    pub ball_vertices: usize,
    pub distinct_images: usize,
    pub equivariance_checks: usize,
    pub equivariance_failures: Vec<(Word, Word)>,
}

/// Smallest `K` with `d1/K - K <= d2 <= K d1 + K` on every pair, reported
/// as `A = B = K`. Each pair gives a threshold in closed form, so `K` is a
/// plain maximum.
pub fn fit_standard(pairs: &[(f64, f64)]) -> Fit {
    let k = pairs
        .iter()
        .map(|&(d1, d2)| {
            let upper = d2 / (d1 + 1.0);
            let lower = 0.5 * ((d2 * d2 + 4.0 * d1).sqrt() - d2);
            upper.max(lower)
        })
        .fold(0.0, f64::max);
    Fit { a: k, b: k }
}

/// Chebyshev fit `min_{A >= 1} max |d2 - A d1|`, the tightest `B` for
/// `A d1 - B <= d2 <= A d1 + B`.
pub fn fit_same_constant(pairs: &[(f64, f64)]) -> Fit {
    let b_of = |a: f64| {
        pairs
            .iter()
            .map(|&(d1, d2)| (d2 - a * d1).abs())
            .fold(0.0, f64::max)
    };
    // B is convex in A and grows once A exceeds every ratio d2 / d1
    let a_max = pairs
        .iter()
        .filter(|p| p.0 > 0.0)
        .map(|&(d1, d2)| d2 / d1)
        .fold(1.0, f64::max);
    let (mut lo, mut hi) = (1.0, a_max);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if b_of(m1) <= b_of(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let a = 0.5 * (lo + hi);
    Fit { a, b: b_of(a) }
}

/// Every pair of sampled points, reduced to the extreme `d1` per value of
/// `d2`. Both fits only see these, since their constraints are monotone
/// in `d1` once `d2` is fixed.
fn pair_envelope(points: &[(DiskPoint, Word)]) -> Vec<(f64, f64)> {
    let mut extremes: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for (i, (p, cp)) in points.iter().enumerate() {
        for (q, cq) in &points[i + 1..] {
            let d1 = distance(*p, *q);
            let d2 = prefix_distance(cp.letters(), cq.letters());
            let e = extremes.entry(d2).or_insert((d1, d1));
            e.0 = e.0.min(d1);
            e.1 = e.1.max(d1);
        }
    }
    extremes
        .into_iter()
        .flat_map(|(d2, (lo, hi))| [(lo, d2 as f64), (hi, d2 as f64)])
        .collect()
}

fn prefix_distance(u: &[i32], v: &[i32]) -> usize {
    let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    u.len() + v.len() - 2 * common
}

fn sample_point(rng: &mut ChaCha8Rng, center: MobiusIsometry, radius: f64) -> DiskPoint {
    let u: f64 = rng.gen();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    // area-uniform: cosh r is uniform on [1, cosh R]
    let r = (1.0 + u * (radius.cosh() - 1.0)).acosh();
    let e = (r / 2.0).tanh();
    let p = DiskPoint::new(e * theta.cos(), e * theta.sin()).expect("inside the disk");
    center.apply(p)
}

fn sample_cell(
    rng: &mut ChaCha8Rng,
    group: &SurfaceGroup,
    center: MobiusIsometry,
    radius: f64,
) -> Result<(DiskPoint, Word)> {
    loop {
        let p = sample_point(rng, center, radius);
        match group.point_to_cell(p, DEFAULT_MAX_STEPS) {
            Ok(c) => return Ok((p, c)),
            Err(Error::OnWall) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Tree vertices `v` with `d(x0, v·x0) <= radius`.
pub fn orbit_ball(group: &SurfaceGroup, radius: f64) -> Result<Vec<Word>> {
    let x0 = group.base_point();
    // orbit points along a tree path stay within one generator step of the
    // hyperbolic geodesic, so paths are explored slightly past the ball
    let slack = group
        .generators()
        .iter()
        .map(|g| distance(x0, g.apply(x0)))
        .fold(0.0, f64::max);
    let rank = group.rank();
    let mut found = Vec::new();
    let mut queue = VecDeque::from([(Word::identity(rank), MobiusIsometry::IDENTITY)]);
    while let Some((w, m)) = queue.pop_front() {
        let d = distance(x0, m.apply(x0));
        if d > radius + slack {
            continue;
        }
        if d <= radius {
            found.push(w.clone());
        }
        if found.len() + queue.len() > MAX_BALL_VERTICES {
            return Err(Error::Precondition(format!(
                "more than {MAX_BALL_VERTICES} tree vertices within radius {radius}"
            )));
        }
        let last = w.letters().last().copied();
        for i in 1..=rank as i32 {
            for letter in [i, -i] {
                if Some(-letter) == last {
                    continue;
                }
                let next = w.mul(&Word::generator(letter, rank)?)?;
                queue.push_back((next, m.compose(&group.generator(letter))));
            }
        }
    }
    found.sort();
    Ok(found)
}

pub fn quasi_iso_audit(
    group: &SurfaceGroup,
    ball_radius: f64,
    samples: usize,
    seed: u64,
) -> Result<QiAudit> {
    if samples < MIN_SAMPLES {
        return Err(Error::SampleTooSmall {
            required: MIN_SAMPLES,
            got: samples,
        });
    }
    if !(ball_radius > 0.0 && ball_radius <= MAX_BALL_RADIUS) {
        return Err(Error::Precondition(format!(
            "ball radius must lie in (0, {MAX_BALL_RADIUS}], got {ball_radius}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = MobiusIsometry::origin_to(group.base_point());

    let mut points = Vec::with_capacity(2 * samples);
    for _ in 0..2 * samples {
        points.push(sample_cell(&mut rng, group, center, ball_radius)?);
    }
    let images: BTreeSet<Word> = points.iter().map(|(_, c)| c.clone()).collect();
    let pairs = pair_envelope(&points);

    let short_words = ball(group.rank(), EQUIVARIANCE_WORD_LEN);
    let mut equivariance_failures = Vec::new();
    let checks = EQUIVARIANCE_CHECKS.min(points.len());
    for (p, cp) in points.iter().take(checks) {
        let h = &short_words[rng.gen_range(0..short_words.len())];
        let hp = group.evaluate(h)?.apply(*p);
        let expected = h.mul(cp)?;
        match group.point_to_cell(hp, DEFAULT_MAX_STEPS) {
            Ok(c) if c == expected => {}
            Ok(c) => equivariance_failures.push((expected, c)),
            Err(Error::OnWall) => {}
            Err(e) => return Err(e),
        }
    }

    let vertices = orbit_ball(group, ball_radius)?;
    let mut c = 0;
    for v in &vertices {
        let mut nearest = usize::MAX;
        for u in &images {
            nearest = nearest.min(tree_distance(v, u)?);
            if nearest == 0 {
                break;
            }
        }
        c = c.max(nearest);
    }

    Ok(QiAudit {
        ball_radius,
        samples,
        seed,
        max_d1: pairs.iter().map(|p| p.0).fold(0.0, f64::max),
        max_d2: pairs.iter().map(|p| p.1 as usize).max().unwrap_or(0),
        pairs_compared: points.len() * (points.len() - 1) / 2,
        standard: fit_standard(&pairs),
        same_constant: fit_same_constant(&pairs),
        c,
        ball_vertices: vertices.len(),
        distinct_images: images.len(),
        equivariance_checks: checks,
        equivariance_failures,
    })
}
