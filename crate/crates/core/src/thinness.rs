//! The thin condition on finite geodesic spaces: a space is (R, D)-thin when
//! every point whose inverse-projection fiber meets the middle of a long
//! segment lies within D of that segment. This module decides the condition,
//! produces replayable witnesses on failure, profiles the least passing D, and
//! tests the 3D-net trichotomy of projected curves.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{DiscreteSegment, FiniteGeodesicSpace, PointSet, Vertex};

/// Options for [`thin_check`].
#[derive(Debug, Clone)]
pub struct ThinOpts {
    /// Grid step for the segment parameter; defaults to D/4 and must not
    /// exceed it.
    pub t_step: Option<f64>,
    /// Fiber slack compensating discreteness; defaults to the space scale
    /// (one edge length).
    pub tol: Option<f64>,
    /// Maximum number of vertex pairs whose segments are checked.
    pub segment_budget: Option<usize>,
    /// When the budget is exceeded: sample deterministically (true) or fail
    /// with `BudgetExceeded` (false).
    pub allow_sampling: bool,
}

impl Default for ThinOpts {
    fn default() -> Self {
        ThinOpts { t_step: None, tol: None, segment_budget: None, allow_sampling: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Serializable segment: vertex ids plus cumulative arclengths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentReport {
    pub path: Vec<String>,
    pub params: Vec<f64>,
}

impl SegmentReport {
    pub fn from_segment(space: &FiniteGeodesicSpace, seg: &DiscreteSegment) -> Self {
        SegmentReport {
            path: seg.path.iter().map(|&v| space.id(v).to_string()).collect(),
            params: seg.params.clone(),
        }
    }

    pub fn to_segment(&self, space: &FiniteGeodesicSpace) -> Result<DiscreteSegment> {
        let path: Result<Vec<Vertex>> = self.path.iter().map(|id| space.vertex(id)).collect();
        space.segment_from_path(&path?)
    }
}

/// A thin-condition violation: a fiber member of a middle parameter of a long
/// segment that sits at distance >= D from the segment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub segment: SegmentReport,
    pub t: f64,
    pub x: String,
    pub dist_x_r: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThinnessReport {
    pub r: f64,
    pub d: f64,
    pub t_step: f64,
    pub tol: f64,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub segments_checked: usize,
    pub sampled: bool,
}

impl ThinnessReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Decides the (R, D)-thin condition.
///
/// Checks one canonical shortest segment per qualifying vertex pair (distance
/// strictly above 2R), in both parametrizations, against the grid of middle
/// parameters. On failure the witness is the maximal-distance violator of the
/// first failing (segment, parameter) in deterministic order.
///
/// The discrete middle zone is resolved at vertex granularity, so the verdict
/// is meaningful when R is at least a couple of edge lengths; below that even
/// path graphs fail, because fibers of near-end vertices leak into the grid.
pub fn thin_check(
    space: &FiniteGeodesicSpace,
    r: f64,
    d: f64,
    opts: &ThinOpts,
) -> Result<ThinnessReport> {
    if !(d > 0.0) || !r.is_finite() {
        return Err(Error::BadParameters(format!("need R, D > 0, got R={r}, D={d}")));
    }
    if r < 20.0 * d {
        return Err(Error::BadParameters(format!("need R >= 20 D, got R={r}, D={d}")));
    }
    let t_step = opts.t_step.unwrap_or(d / 4.0);
    if !(t_step > 0.0) || t_step > d / 4.0 {
        return Err(Error::BadParameters(format!(
            "t_step must lie in (0, D/4], got {t_step} with D={d}"
        )));
    }
    let tol = opts.tol.unwrap_or(space.scale());
    if tol < 0.0 {
        return Err(Error::BadParameters(format!("tol must be nonnegative, got {tol}")));
    }

    let (pairs, sampled) = qualifying_pairs(space, r, opts)?;

    // blocks keep the scan parallel while allowing an early exit at the
    // first failing segment in deterministic order
    const BLOCK: usize = 256;
    let mut first: Option<(usize, Witness)> = None;
    for (block_idx, block) in pairs.chunks(BLOCK).enumerate() {
        let hit = block
            .par_iter()
            .enumerate()
            .filter_map(|(i, &(u, v))| check_pair(space, u, v, r, d, t_step, tol).map(|w| (i, w)))
            .min_by_key(|(i, _)| *i);
        if let Some((i, w)) = hit {
            first = Some((block_idx * BLOCK + i, w));
            break;
        }
    }

    let (segments_checked, witness) = match first {
        Some((idx, w)) => (idx + 1, Some(w)),
        None => (pairs.len(), None),
    };
    Ok(ThinnessReport {
        r,
        d,
        t_step,
        tol,
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
        segments_checked,
        sampled,
    })
}

/// Pairs at distance > 2R, sorted by decreasing distance then lexicographic
/// ids. Returns `(pairs, sampled)`.
fn qualifying_pairs(
    space: &FiniteGeodesicSpace,
    r: f64,
    opts: &ThinOpts,
) -> Result<(Vec<(Vertex, Vertex)>, bool)> {
    let n = space.vertex_count();
    let threshold = 2.0 * r;

    // For large on-demand spaces under a budget, enumerate from a
    // deterministic stride of source rows instead of the full matrix.
    let sources: Vec<usize> = match opts.segment_budget {
        Some(budget) if opts.allow_sampling && n > 20_000 => {
            let want = ((2.0 * budget as f64).sqrt().ceil() as usize * 2).clamp(8, n);
            let stride = (n / want).max(1);
            (0..n).step_by(stride).collect()
        }
        _ => (0..n).collect(),
    };
    let subset = sources.len() < n;

    let mut pairs: Vec<(f64, usize, usize)> = sources
        .par_iter()
        .flat_map_iter(|&u| {
            space.with_row(Vertex(u), |row| {
                row.iter()
                    .enumerate()
                    .filter(|&(v, &dv)| dv > threshold && u < v)
                    .map(|(v, &dv)| (dv, u, v))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    if subset {
        // a sampled source's row may also contain sampled peers; drop dups
        pairs.sort_unstable_by(|a, b| (a.1, a.2).cmp(&(b.1, b.2)));
        pairs.dedup_by(|a, b| (a.1, a.2) == (b.1, b.2));
    }
    pairs.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then_with(|| (a.1, a.2).cmp(&(b.1, b.2))));

    let mut sampled = subset;
    if let Some(budget) = opts.segment_budget {
        if pairs.len() > budget {
            if !opts.allow_sampling {
                return Err(Error::BudgetExceeded { budget, pairs: pairs.len() });
            }
            pairs.truncate(budget);
            sampled = true;
        }
    }
    Ok((pairs.into_iter().map(|(_, u, v)| (Vertex(u), Vertex(v))).collect(), sampled))
}

/// Checks one canonical segment (both parametrizations). Returns the witness
/// of the first failing grid parameter, with the maximal-distance violator.
fn check_pair(
    space: &FiniteGeodesicSpace,
    u: Vertex,
    v: Vertex,
    r: f64,
    d: f64,
    t_step: f64,
    tol: f64,
) -> Option<Witness> {
    let forward = space.shortest_segment(u, v);
    let len = forward.len();
    let support: Vec<(Vertex, f64)> =
        forward.path.iter().copied().zip(forward.params.iter().copied()).collect();
    let (dist_seg, _) = space.dist_to_set_with_params(&support);

    // potential witnesses: vertices at distance >= D from the segment
    let candidates: Vec<Vertex> = (0..space.vertex_count())
        .map(Vertex)
        .filter(|x| dist_seg[x.0] >= d)
        .collect();
    if candidates.is_empty() {
        return None;
    }

    // prune candidates that cannot reach any middle-zone fiber: for a segment
    // vertex at parameter p, d(x, y) >= |d(x, start) - p| and
    // d(x, y) >= |d(x, end) - (len - p)|, so membership at radius
    // d(x, segment) + tol needs a parameter in the intersection of two
    // intervals around d(x, start) and len - d(x, end) meeting the middle
    let slack = space.scale();
    let fuzz = 1e-9 * (1.0 + len);
    let (mid_lo, mid_hi) = (r - slack, len - r + slack);
    let survivors: Vec<Vertex> = space.with_row(u, |row_start| {
        space.with_row(v, |row_end| {
            candidates
                .iter()
                .copied()
                .filter(|x| {
                    let radius = dist_seg[x.0] + tol + fuzz;
                    let (ds, de) = (row_start[x.0], row_end[x.0]);
                    let lo = (ds - radius).max(len - de - radius).max(mid_lo);
                    let hi = (ds + radius).min(len - de + radius).min(mid_hi);
                    lo <= hi
                })
                .collect()
        })
    });
    if survivors.is_empty() {
        return None;
    }

    // fiber membership: x belongs to the fiber of segment vertex y iff
    // d(x, y) <= d(x, segment) + tol
    let mut hits: HashMap<usize, Vec<Vertex>> = HashMap::new();
    let on_segment: PointSet = forward.point_set();
    for &x in &survivors {
        let radius = dist_seg[x.0] + tol;
        for (y, dy) in space.dist_within(x, radius) {
            if on_segment.contains(y) && dy <= radius {
                hits.entry(y.0).or_default().push(x);
            }
        }
    }
    if hits.is_empty() {
        return None;
    }

    for seg in [forward.clone(), forward.reversed()] {
        let mut k = 1u64;
        loop {
            let t = r + (k as f64) * t_step;
            if t >= len - r {
                break;
            }
            k += 1;
            let (y, _) = seg.nearest_vertex(t);
            if let Some(violators) = hits.get(&y.0) {
                let &worst = violators
                    .iter()
                    .max_by(|&&a, &&b| {
                        dist_seg[a.0].total_cmp(&dist_seg[b.0]).then_with(|| b.cmp(&a))
                    })
                    .unwrap();
                return Some(Witness {
                    segment: SegmentReport::from_segment(space, &seg),
                    t,
                    x: space.id(worst).to_string(),
                    dist_x_r: dist_seg[worst.0],
                });
            }
        }
    }
    None
}

/// Re-validates a witness through the metric primitives alone.
///
/// Checks that the recorded path is a geodesic with the recorded parameters,
/// that `t` is a middle parameter, that `x` belongs to the tol-fiber of the
/// vertex nearest to `t`, and that `x` sits at distance >= D from the segment.
pub fn replay_witness(
    space: &FiniteGeodesicSpace,
    witness: &Witness,
    r: f64,
    d: f64,
    tol: f64,
) -> Result<()> {
    let seg = witness.segment.to_segment(space)?;
    if seg.params != witness.segment.params {
        return Err(Error::Parse("segment parameters do not match edge lengths".into()));
    }
    if seg.geo_defect != 0.0 {
        return Err(Error::HypothesisNotMet(format!(
            "witness path is not a segment (defect {})",
            seg.geo_defect
        )));
    }
    let len = seg.len();
    if !(len > 2.0 * r) {
        return Err(Error::HypothesisNotMet(format!("segment length {len} <= 2R")));
    }
    if !(witness.t > r && witness.t < len - r) {
        return Err(Error::HypothesisNotMet(format!("t = {} outside (R, L-R)", witness.t)));
    }
    let x = space.vertex(&witness.x)?;
    let (y, _) = seg.nearest_vertex(witness.t);
    let support = seg.point_set();
    let dist_seg = {
        let ds = space.dist_to_set(&support);
        ds[x.0]
    };
    if dist_seg != witness.dist_x_r {
        return Err(Error::HypothesisNotMet(format!(
            "recorded distance {} differs from recomputed {}",
            witness.dist_x_r, dist_seg
        )));
    }
    let fiber = space.inverse_project(&support, y, tol)?;
    if !fiber.contains(x) {
        return Err(Error::HypothesisNotMet("x is not in the inverse-projection fiber".into()));
    }
    if !(dist_seg >= d) {
        return Err(Error::HypothesisNotMet(format!("distance {dist_seg} below D = {d}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub r: f64,
    /// Least D on the grid certifying (R, D)-thinness; `None` when no grid
    /// value passes (the +infinity marker).
    pub d_min: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThinnessProfile {
    pub entries: Vec<ProfileEntry>,
}

/// For each R in the grid, binary-searches the least D in the grid that makes
/// the space (R, D)-thin. Grid values violating R >= 20D are skipped; the
/// parameter step is fixed to that of the smallest admissible D so the fiber
/// grid is identical across the search, which makes pass monotone in D.
pub fn thinness_profile(
    space: &FiniteGeodesicSpace,
    r_grid: &[f64],
    d_grid: &[f64],
    opts: &ThinOpts,
) -> Result<ThinnessProfile> {
    if r_grid.windows(2).any(|w| w[0] >= w[1]) || d_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameters("grids must be strictly increasing".into()));
    }
    if d_grid.iter().chain(r_grid.iter()).any(|&x| x <= 0.0) {
        return Err(Error::BadParameters("grids must be positive".into()));
    }
    let mut entries = Vec::new();
    for &r in r_grid {
        let ds: Vec<f64> = d_grid.iter().copied().filter(|&d| r >= 20.0 * d).collect();
        if ds.is_empty() {
            entries.push(ProfileEntry { r, d_min: None });
            continue;
        }
        let shared = ThinOpts { t_step: Some(ds[0] / 4.0), ..opts.clone() };
        let passes = |d: f64| -> Result<bool> { Ok(thin_check(space, r, d, &shared)?.passed()) };
        let mut lo = 0usize;
        let mut hi = ds.len();
        // invariant: every index < lo fails; if some index passes, the least
        // passing one is in [lo, hi)
        if !passes(ds[ds.len() - 1])? {
            entries.push(ProfileEntry { r, d_min: None });
            continue;
        }
        hi -= 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if passes(ds[mid])? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        entries.push(ProfileEntry { r, d_min: Some(ds[lo]) });
    }
    Ok(ThinnessProfile { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyCase {
    CaseA,
    CaseB,
    Violation,
}

/// Tests the 3D-net trichotomy for a curve `alpha` against a segment `l`:
/// when alpha's start projects to a middle parameter t and its end projects to
/// an end zone, the projection of alpha must contain a 3D-net of `[l(R), l(t)]`
/// (case A) or of `[l(t), l(L-R)]` (case B).
pub fn net_trichotomy_check(
    space: &FiniteGeodesicSpace,
    l: &DiscreteSegment,
    alpha: &[Vertex],
    r: f64,
    d: f64,
) -> Result<TrichotomyCase> {
    let len = l.len();
    if !(len > 2.0 * r) {
        return Err(Error::HypothesisNotMet(format!("segment length {len} <= 2R")));
    }
    if alpha.is_empty() {
        return Err(Error::HypothesisNotMet("empty curve".into()));
    }
    // alpha must be a walk in the graph
    space.segment_from_path(alpha)?;

    let support = l.point_set();
    let param_of: HashMap<usize, f64> = l
        .path
        .iter()
        .zip(l.params.iter())
        .map(|(v, &p)| (v.0, p))
        .collect();

    let middle_params = |set: &PointSet| -> Option<f64> {
        set.iter()
            .filter_map(|y| param_of.get(&y.0).copied())
            .filter(|&p| p > r && p < len - r)
            .fold(None, |acc: Option<f64>, p| Some(acc.map_or(p, |a| a.min(p))))
    };
    let in_end_zone = |set: &PointSet| -> bool {
        set.iter()
            .filter_map(|y| param_of.get(&y.0).copied())
            .any(|p| p <= r || p >= len - r)
    };

    let start_proj = space.project(&support, alpha[0])?;
    let end_proj = space.project(&support, *alpha.last().unwrap())?;
    if !in_end_zone(&start_proj) && !in_end_zone(&end_proj) {
        return Err(Error::HypothesisNotMet(
            "neither endpoint of alpha projects to an end zone".into(),
        ));
    }

    let mut proj_union = Vec::new();
    for &a in alpha {
        proj_union.extend(space.project(&support, a)?.iter());
    }
    let proj_union = PointSet::new(proj_union);

    // the reference parameter: an endpoint's middle projection when one
    // exists, otherwise the first middle parameter the curve projects to
    let t = middle_params(&start_proj)
        .or_else(|| middle_params(&end_proj))
        .or_else(|| middle_params(&proj_union))
        .ok_or_else(|| {
            Error::HypothesisNotMet("alpha never projects to a middle parameter".into())
        })?;
    let dp = space.dist_to_set(&proj_union);

    let covered = |lo: f64, hi: f64| -> bool {
        l.path
            .iter()
            .zip(l.params.iter())
            .filter(|(_, &p)| p >= lo && p <= hi)
            .all(|(v, _)| dp[v.0] <= 3.0 * d)
    };

    if covered(r, t) {
        Ok(TrichotomyCase::CaseA)
    } else if covered(t, len - r) {
        Ok(TrichotomyCase::CaseB)
    } else {
        Ok(TrichotomyCase::Violation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn long_path_passes() {
        let s = path_space(200);
        let rep = thin_check(&s, 20.0, 1.0, &ThinOpts::default()).unwrap();
        assert!(rep.passed());
        assert!(!rep.sampled);
        assert!(rep.segments_checked > 0);
    }

    #[test]
    fn tripod_fails_with_tip_witness() {
        let s = tripod_space(100);
        let rep = thin_check(&s, 20.0, 1.0, &ThinOpts::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witness.expect("witness");
        assert_eq!(w.dist_x_r, 100.0);
        assert!(w.x.ends_with("0100"));
        replay_witness(&s, &w, rep.r, rep.d, rep.tol).unwrap();
    }

    #[test]
    fn bad_parameters_rejected() {
        let s = path_space(10);
        assert!(matches!(
            thin_check(&s, 10.0, 1.0, &ThinOpts::default()),
            Err(Error::BadParameters(_))
        ));
        let opts = ThinOpts { t_step: Some(1.0), ..Default::default() };
        assert!(matches!(thin_check(&s, 20.0, 1.0, &opts), Err(Error::BadParameters(_))));
    }

    #[test]
    fn budget_exceeded_without_sampling() {
        let s = path_space(200);
        let opts = ThinOpts {
            segment_budget: Some(3),
            allow_sampling: false,
            ..Default::default()
        };
        assert!(matches!(
            thin_check(&s, 20.0, 1.0, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
        let opts = ThinOpts { segment_budget: Some(3), allow_sampling: true, ..Default::default() };
        let rep = thin_check(&s, 20.0, 1.0, &opts).unwrap();
        assert!(rep.sampled);
        assert_eq!(rep.segments_checked, 3);
    }

    #[test]
    fn grid_vacuous_then_fails() {
        let s = grid_space(21, 21);
        // diameter 40 = 2R: no qualifying segment
        let rep = thin_check(&s, 20.0, 1.0, &ThinOpts::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.segments_checked, 0);

        let rep = thin_check(&s, 15.0, 0.75, &ThinOpts::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witness.unwrap();
        assert!(w.dist_x_r >= 0.75);
        replay_witness(&s, &w, rep.r, rep.d, rep.tol).unwrap();
    }

    #[test]
    fn profile_on_cycle_vacuous() {
        // max segment on a 100-cycle is 50 <= 2R = 52, so every D passes
        let s = cycle_space(100);
        let profile =
            thinness_profile(&s, &[26.0], &[0.5, 1.0, 1.3], &ThinOpts::default()).unwrap();
        assert_eq!(profile.entries[0].d_min, Some(0.5));
    }

    #[test]
    fn profile_on_path_minimal() {
        let s = path_space(120);
        let profile =
            thinness_profile(&s, &[20.0, 30.0], &[0.25, 0.5, 1.0], &ThinOpts::default()).unwrap();
        for e in &profile.entries {
            assert_eq!(e.d_min, Some(0.25));
        }
    }

    #[test]
    fn profile_skips_unbalanced_pairs() {
        let s = path_space(50);
        let profile = thinness_profile(&s, &[5.0], &[1.0, 2.0], &ThinOpts::default()).unwrap();
        assert_eq!(profile.entries[0].d_min, None);
    }

    #[test]
    fn trichotomy_on_segment_itself() {
        let s = path_space(100);
        let l = s.shortest_segment(s.vertex("v0000").unwrap(), s.vertex("v0099").unwrap());
        let alpha: Vec<Vertex> = l.path.clone();
        let case = net_trichotomy_check(&s, &l, &alpha, 20.0, 1.0).unwrap();
        assert_eq!(case, TrichotomyCase::CaseA);
    }

    #[test]
    fn trichotomy_on_cylinder_helix() {
        // a helical curve from a far fiber to the end of a longitudinal
        // geodesic: its projection sweeps one side, so exactly one case holds
        let s = cylinder_space(12, 200);
        let at = |k: usize, j: usize| s.vertex(&format!("c{k:02}a{j:04}")).unwrap();
        let l = s.shortest_segment(at(0, 0), at(0, 200));
        assert_eq!(l.len(), 200.0);
        let mut alpha = vec![at(6, 50)];
        let mut ring = 6;
        for j in 51..=200 {
            alpha.push(at(ring, j));
            if j % 25 == 0 && ring < 12 {
                let next = (ring + 1) % 12;
                alpha.push(at(next, j));
                ring = next;
            }
        }
        assert_eq!(*alpha.last().unwrap(), at(0, 200));
        let case = net_trichotomy_check(&s, &l, &alpha, 20.0, 1.0).unwrap();
        assert_eq!(case, TrichotomyCase::CaseB);
    }

    #[test]
    fn trichotomy_on_tripod_covers_one_side() {
        // on a tree, any curve from a middle fiber to an end tracks the
        // segment, so a case always holds despite the space not being thin
        let s = tripod_space(100);
        let l = s.shortest_segment(s.vertex("a0100").unwrap(), s.vertex("b0100").unwrap());
        let mut alpha = s.shortest_segment(s.vertex("c0100").unwrap(), s.vertex("c").unwrap()).path;
        alpha.extend(s.shortest_segment(s.vertex("c").unwrap(), s.vertex("a0100").unwrap()).path[1..].iter());
        let case = net_trichotomy_check(&s, &l, &alpha, 20.0, 1.0).unwrap();
        assert_ne!(case, TrichotomyCase::Violation);
    }

    #[test]
    fn trichotomy_violation_needs_a_bypass() {
        // tripod with a spike at the center and a long shortcut from the
        // spike tip to one segment end: the curve's projection skips both
        // middle windows
        let mut edges = tripod_edges(100);
        edges.push(("c".into(), "s0001".into(), 1.0));
        for i in 1..30 {
            edges.push((format!("s{i:04}"), format!("s{:04}", i + 1), 1.0));
        }
        edges.push(("s0030".into(), "b0100".into(), 150.0));
        let s = FiniteGeodesicSpace::from_edges(&edges).unwrap();
        let l = s.shortest_segment(s.vertex("a0100").unwrap(), s.vertex("b0100").unwrap());
        assert_eq!(l.len(), 200.0);
        assert_eq!(l.geo_defect, 0.0);
        let alpha = vec![s.vertex("s0030").unwrap(), s.vertex("b0100").unwrap()];
        let case = net_trichotomy_check(&s, &l, &alpha, 20.0, 1.0).unwrap();
        assert_eq!(case, TrichotomyCase::Violation);
    }

    #[test]
    fn profile_finds_half_girth_on_cylinder() {
        // ring distance caps fiber spread at 6, so the least passing D sits
        // within one grid step above half the girth
        let s = cylinder_space(12, 600);
        let opts = ThinOpts { segment_budget: Some(24), ..Default::default() };
        let profile =
            thinness_profile(&s, &[140.0], &[6.0, 6.5, 7.0], &opts).unwrap();
        assert_eq!(profile.entries[0].d_min, Some(6.5));
    }

    #[test]
    fn trichotomy_hypothesis_errors() {
        let s = path_space(100);
        let l = s.shortest_segment(s.vertex("v0000").unwrap(), s.vertex("v0099").unwrap());
        // both ends of alpha project to the middle
        let alpha = vec![s.vertex("v0040").unwrap(), s.vertex("v0041").unwrap()];
        assert!(matches!(
            net_trichotomy_check(&s, &l, &alpha, 20.0, 1.0),
            Err(Error::HypothesisNotMet(_))
        ));
    }
}
