//! End-to-end runs behind the CLI commands. Each returns a serializable
//! report whose verdicts can be recomputed from the numbers it carries.

use serde::Serialize;

use crate::audit::{quasi_iso_audit, QiAudit};
use crate::crossings::{crossing_profile, lift_cells, shared_between, LineCells};
use crate::error::{Error, Result};
use crate::kernel::DiskPoint;
use crate::lifts::{enumerate_lifts, find_triangles, verify_theorem1, LiftSet, TriangleSearch, Verdict};
use crate::surface::{Certificate, SurfaceGroup};
use crate::tolerance::{self, Tolerances};
use crate::tree::{lemma2_sweep_elements, tree_triangle_search, Lemma2Sweep, TreeTriangle};
use crate::words::{parse, Word};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSummary {
    pub lift_indices: [usize; 3],
    pub reps: [Word; 3],
    pub vertices: [DiskPoint; 3],
    pub side_lengths: [f64; 3],
    pub margins: [f64; 3],
    pub min_margin: f64,
    pub verdict: Verdict,
}

/// Shared wall crossings of two lifts whose dual lines meet in the tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingCheck {
    pub pair: [usize; 2],
    pub shared: usize,
    /// `L(W) - 1`; the check passes iff `shared < bound`.
    pub bound: i64,
    pub verdict: Verdict,
}

/// Wall crossings along one and two periods of the axis of the core.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodCheck {
    pub start: DiskPoint,
    pub core_length: usize,
    pub one_period: usize,
    pub two_period: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub surface: String,
    pub gamma: Word,
    pub core: Word,
    pub radius: usize,
    pub crossing_radius: usize,
    pub ell_gamma: f64,
    pub lift_count: usize,
    pub coset_count: usize,
    pub triangles: Vec<TriangleSummary>,
    pub near_concurrent: Vec<[usize; 3]>,
    pub skipped_asymptotic: usize,
    pub period_check: PeriodCheck,
    /// Lift pairs examined for shared crossings. Pairs whose dual lines
    /// share no cell cross no common wall and are not listed.
    pub pairs_checked: usize,
    pub crossing_checks: Vec<CrossingCheck>,
    pub max_shared: usize,
    pub certificate: Certificate,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub verdict: Verdict,
}

fn worst(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    if vs.into_iter().any(|v| v == Verdict::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    }
}

/// Radius for walking lifts: enough to reach each lift's closest cell and
/// the common stretch of two lifts beyond it.
pub fn crossing_radius(radius: usize, core_length: usize) -> usize {
    radius + 2 * core_length + 2
}

pub fn run_lifts(group: &SurfaceGroup, gamma: &str, radius: usize) -> Result<(LiftSet, TriangleSearch)> {
    let w = parse(gamma, group.rank())?;
    let set = enumerate_lifts(group, &w, radius)?;
    let search = find_triangles(&set);
    Ok((set, search))
}

fn period_check(group: &SurfaceGroup, core: &Word, radius: usize) -> Result<PeriodCheck> {
    let t = group.evaluate(core)?;
    let axis = t.axis()?;
    let mut s = 0.37;
    loop {
        let x = axis.point_at(s);
        let two = t.compose(&t);
        match (
            crossing_profile(x, t.apply(x), group, radius),
            crossing_profile(x, two.apply(x), group, radius),
        ) {
            (Ok(a), Ok(b)) => {
                let l = core.len();
                return Ok(PeriodCheck {
                    start: x,
                    core_length: l,
                    one_period: a.total,
                    two_period: b.total,
                    verdict: if a.total == l && b.total == 2 * l {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    },
                });
            }
            (Err(Error::OnWall), _) | (_, Err(Error::OnWall)) if s < 1.0 => s += 0.01,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
}

pub fn run_triangles(
    group: &SurfaceGroup,
    gamma: &str,
    radius: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let (set, search) = run_lifts(group, gamma, radius)?;
    let triangles: Vec<TriangleSummary> = search
        .triangles
        .iter()
        .map(|t| {
            let v = verify_theorem1(t, set.ell_gamma);
            TriangleSummary {
                lift_indices: t.lift_indices,
                reps: t.reps.clone(),
                vertices: t.vertices,
                side_lengths: v.side_lengths,
                margins: v.margins,
                min_margin: v.min_margin,
                verdict: v.verdict,
            }
        })
        .collect();

    let l = set.core.len();
    let cr = crossing_radius(radius, l);
    let period_check = period_check(group, &set.core, cr)?;
    let cells: Vec<LineCells> = set
        .lifts
        .iter()
        .map(|lift| lift_cells(group, &set.core.conjugate_by(&lift.rep)?, cr))
        .collect::<Result<_>>()?;
    let mut crossing_checks = Vec::new();
    let mut pairs_checked = 0;
    let mut max_shared = 0;
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            pairs_checked += 1;
            if !cells[i].cells.iter().any(|c| cells[j].cells.contains(c)) {
                continue;
            }
            let shared = shared_between(&cells[i], &cells[j], cr)?.count;
            max_shared = max_shared.max(shared);
            let bound = l as i64 - 1;
            crossing_checks.push(CrossingCheck {
                pair: [i, j],
                shared,
                bound,
                verdict: if (shared as i64) < bound {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            });
        }
    }

    let verdict = worst(
        triangles
            .iter()
            .map(|t| t.verdict)
            .chain(crossing_checks.iter().map(|c| c.verdict))
            .chain([period_check.verdict]),
    );
    Ok(ExperimentReport {
        surface: group.name().to_string(),
        gamma: set.gamma.clone(),
        core: set.core.clone(),
        radius,
        crossing_radius: cr,
        ell_gamma: set.ell_gamma,
        lift_count: set.lifts.len(),
        coset_count: set.coset_count,
        triangles,
        near_concurrent: search.near_concurrent,
        skipped_asymptotic: search.skipped_asymptotic,
        period_check,
        pairs_checked,
        crossing_checks,
        max_shared,
        certificate: group.certificate().clone(),
        tolerances: *tolerance::active(),
        seed,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeReport {
    pub rank: u32,
    pub f: Word,
    pub core: Word,
    pub conjugator_bound: usize,
    /// Rank one: every conjugate axis is the tree itself.
    pub degenerate_line: bool,
    pub lemma2: Lemma2Sweep,
    pub tree_triangles: Vec<TreeTriangle>,
    pub verdict: Verdict,
}

pub fn run_tree(rank: u32, f: &str, conjugator_bound: usize) -> Result<TreeReport> {
    let w = parse(f, rank)?;
    let core = w.cyclic_reduce().0;
    if core.is_empty() {
        return Err(Error::IdentityElement);
    }
    let lemma2 = lemma2_sweep_elements(&[w.clone()], rank, conjugator_bound)?;
    let tree_triangles = tree_triangle_search(&w, conjugator_bound)?;
    let verdict = if lemma2.violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(TreeReport {
        rank,
        f: w,
        core,
        conjugator_bound,
        degenerate_line: rank == 1,
        lemma2,
        tree_triangles,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub surface: String,
    pub audit: QiAudit,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
}

pub fn run_audit(group: &SurfaceGroup, ball: f64, samples: usize, seed: u64) -> Result<AuditReport> {
    let audit = quasi_iso_audit(group, ball, samples, seed)?;
    let finite = [audit.standard.a, audit.standard.b, audit.same_constant.a, audit.same_constant.b]
        .iter()
        .all(|x| x.is_finite());
    let verdict = if finite && audit.equivariance_failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AuditReport {
        surface: group.name().to_string(),
        audit,
        tolerances: *tolerance::active(),
        verdict,
    })
}
