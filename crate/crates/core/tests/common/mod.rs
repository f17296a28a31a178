#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

use hyptri::kernel::{DiskPoint, MobiusIsometry};
use hyptri::words::{reduce, Word};
use num_complex::Complex64;

pub fn pt(re: f64, im: f64) -> DiskPoint {
    DiskPoint::new(re, im).unwrap()
}

pub fn polar(r: f64, theta: f64) -> DiskPoint {
    pt(r * theta.cos(), r * theta.sin())
}

/// Orthogonal circle through two interior points, found from
/// `Re(p conj(c)) = (1 + |p|^2) / 2` for both points. `None` when the
/// points are collinear with the origin.
pub fn orthogonal_circle(p: DiskPoint, q: DiskPoint) -> Option<(Complex64, f64)> {
    let det = p.re * q.im - p.im * q.re;
    if det.abs() < 1e-12 {
        return None;
    }
    let (sp, sq) = (0.5 * (1.0 + p.norm_sqr()), 0.5 * (1.0 + q.norm_sqr()));
    let cx = (sp * q.im - p.im * sq) / det;
    let cy = (p.re * sq - sp * q.re) / det;
    let c = Complex64::new(cx, cy);
    Some((c, (c.norm_sqr() - 1.0).sqrt()))
}

/// Length of the path `z(s)` for s in [0, 1] under ds = 2|dz| / (1 - |z|^2),
/// by composite Simpson with numerically differentiated speed.
fn metric_length(z: impl Fn(f64) -> Complex64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let f = |s: f64| {
        let e = 1e-6;
        let dz = (z((s + e).min(1.0)) - z((s - e).max(0.0))).norm()
            / ((s + e).min(1.0) - (s - e).max(0.0));
        2.0 * dz / (1.0 - z(s).norm_sqr())
    };
    let mut acc = f(0.0) + f(1.0);
    for k in 1..n {
        acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    acc * h / 3.0
}

/// Hyperbolic length of the geodesic arc from p to q, integrated from the
/// disk metric along the orthogonal circle (or the diameter).
pub fn integrated_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let (zp, zq) = (p.to_complex(), q.to_complex());
    match orthogonal_circle(p, q) {
        None => metric_length(|s| zp + (zq - zp) * s, 4000),
        Some((c, r)) => {
            let a = (zp - c).arg();
            let mut d = (zq - c).arg() - a;
            // the arc inside the disk subtends less than a half turn
            while d > PI {
                d -= 2.0 * PI;
            }
            while d < -PI {
                d += 2.0 * PI;
            }
            metric_length(|s| c + Complex64::from_polar(r, a + d * s), 4000)
        }
    }
}

/// Hyperbolic isometry with translation length `ell` along the geodesic
/// through `p` in direction `theta`.
pub fn hyperbolic(ell: f64, p: DiskPoint, theta: f64) -> MobiusIsometry {
    let l = (0.5 * ell).exp();
    let h = MobiusIsometry::from_half_plane(l, 0.0, 0.0, 1.0 / l).unwrap();
    let g = MobiusIsometry::origin_to(p).compose(&MobiusIsometry::rotation(theta));
    g.compose(&h).compose(&g.inverse())
}

pub fn isometry(p: DiskPoint, theta: f64) -> MobiusIsometry {
    MobiusIsometry::origin_to(p).compose(&MobiusIsometry::rotation(theta))
}

/// Repeated single-pass cancellation until nothing changes.
pub fn naive_reduce(raw: &[i32]) -> Vec<i32> {
    let mut w = raw.to_vec();
    loop {
        let mut out: Vec<i32> = Vec::new();
        let mut i = 0;
        let mut changed = false;
        while i < w.len() {
            if i + 1 < w.len() && w[i] == -w[i + 1] {
                i += 2;
                changed = true;
            } else {
                out.push(w[i]);
                i += 1;
            }
        }
        w = out;
        if !changed {
            return w;
        }
    }
}

pub fn word(letters: &[i32], rank: u32) -> Word {
    reduce(letters, rank).unwrap()
}

/// Explicit Cayley graph ball and BFS distances from every vertex.
pub struct ExplicitBall {
    pub vertices: Vec<Vec<i32>>,
    pub index: BTreeMap<Vec<i32>, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl ExplicitBall {
    pub fn new(rank: i32, radius: usize) -> ExplicitBall {
        let mut vertices: Vec<Vec<i32>> = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in &frontier {
                for g in (1..=rank).flat_map(|i| [i, -i]) {
                    if v.last() == Some(&-g) {
                        continue;
                    }
                    let mut w: Vec<i32> = v.clone();
                    w.push(g);
                    next.push(w);
                }
            }
            vertices.extend(next.iter().cloned());
            frontier = next;
        }
        let index: BTreeMap<Vec<i32>, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            for g in (1..=rank).flat_map(|i| [i, -i]) {
                let w = naive_reduce(&[v.as_slice(), &[g]].concat());
                if let Some(&j) = index.get(&w) {
                    adj[i].push(j);
                }
            }
        }
        ExplicitBall {
            vertices,
            index,
            adj,
        }
    }

    pub fn bfs(&self, from: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.vertices.len()];
        d[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        d
    }
}
