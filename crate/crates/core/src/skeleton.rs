//! Extraction of the 1-dimensional model of a thin space: the longest segment
//! when it already covers the space at the thinness scale, otherwise the
//! shortest cycle anchored near the midpoints of the longest segment and two
//! connecting segments from a far point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{DiscreteSegment, FiniteGeodesicSpace, PointSet, SegmentSearch, Vertex};
use crate::thinness::ThinnessReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkeletonKind {
    Segment,
    Circle,
}

/// The 1-dimensional model: an ordered support with arclength parameters,
/// its covering radius, and (for circles) the metric distortion against the
/// arc metric.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub kind: SkeletonKind,
    pub support: Vec<Vertex>,
    pub params: Vec<f64>,
    pub total_len: f64,
    pub covering_radius: f64,
    pub distortion: Option<f64>,
    /// False when the support came from the double-sweep heuristic and may be
    /// sub-maximal.
    pub exact_support: bool,
    pub r: f64,
    pub d: f64,
}

impl Skeleton {
    pub fn support_set(&self) -> PointSet {
        PointSet::new(self.support.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub kind: SkeletonKind,
    pub support: Vec<String>,
    pub params: Vec<f64>,
    pub total_len: f64,
    pub covering_radius: f64,
    pub distortion: Option<f64>,
    pub exact_support: bool,
    pub r: f64,
    pub d: f64,
}

impl SkeletonReport {
    pub fn from_skeleton(space: &FiniteGeodesicSpace, sk: &Skeleton) -> Self {
        SkeletonReport {
            kind: sk.kind,
            support: sk.support.iter().map(|&v| space.id(v).to_string()).collect(),
            params: sk.params.clone(),
            total_len: sk.total_len,
            covering_radius: sk.covering_radius,
            distortion: sk.distortion,
            exact_support: sk.exact_support,
            r: sk.r,
            d: sk.d,
        }
    }

    pub fn to_skeleton(&self, space: &FiniteGeodesicSpace) -> Result<Skeleton> {
        let support: Result<Vec<Vertex>> =
            self.support.iter().map(|id| space.vertex(id)).collect();
        let support = support.map_err(|_| {
            Error::SkeletonMismatch("support vertex not present in this space".into())
        })?;
        if support.len() != self.params.len() {
            return Err(Error::SkeletonMismatch("support/params length mismatch".into()));
        }
        Ok(Skeleton {
            kind: self.kind,
            support,
            params: self.params.clone(),
            total_len: self.total_len,
            covering_radius: self.covering_radius,
            distortion: self.distortion,
            exact_support: self.exact_support,
            r: self.r,
            d: self.d,
        })
    }
}

/// Three sub-intervals, one per anchor segment, each centered at its
/// segment's midpoint with parameter radius 5R.
#[derive(Debug, Clone)]
pub struct AnchorTriple {
    pub intervals: [Vec<Vertex>; 3],
}

impl AnchorTriple {
    /// Cuts the interval of parameter radius `5R` around the midpoint of each
    /// segment. The midpoint vertex is always included.
    pub fn from_segments(segments: [&DiscreteSegment; 3], r: f64) -> Self {
        let intervals = segments.map(|seg| {
            let mid = seg.len() / 2.0;
            let mut verts = seg.slice_by_param(mid - 5.0 * r, mid + 5.0 * r);
            let (mv, _) = seg.nearest_vertex(mid);
            if !verts.contains(&mv) {
                verts.push(mv);
            }
            verts
        });
        AnchorTriple { intervals }
    }
}

/// A closed walk with cumulative arclength parameters.
#[derive(Debug, Clone)]
pub struct CycleSupport {
    pub vertices: Vec<Vertex>,
    pub params: Vec<f64>,
    pub total_len: f64,
}

const FULL_SEARCH_LIMIT: usize = 20_000;

/// Extracts the skeleton of a space certified (R, D)-thin.
///
/// The longest segment wins when its covering radius is within `D + scale`
/// (it already covers as tightly as a circle could). Otherwise the circle
/// branch runs: anchors are built from the far point's two connecting
/// segments, the minimal anchored cycle is taken, and the circle audits
/// (distortion <= 2 scale, covering radius <= D + scale, length >= 50R) must
/// hold. When the circle branch is unreachable but the segment still covers
/// within 200R, the segment is returned.
pub fn extract_skeleton(
    space: &FiniteGeodesicSpace,
    r: f64,
    d: f64,
    evidence: &ThinnessReport,
) -> Result<Skeleton> {
    if !evidence.passed() {
        return Err(Error::NotThinEvidence("report verdict is fail".into()));
    }
    if evidence.r != r || evidence.d != d {
        return Err(Error::NotThinEvidence(format!(
            "report certifies (R, D) = ({}, {}), requested ({r}, {d})",
            evidence.r, evidence.d
        )));
    }

    let mode = if space.vertex_count() <= FULL_SEARCH_LIMIT {
        SegmentSearch::Exhaustive
    } else {
        SegmentSearch::DoubleSweep
    };
    let max_seg = space.maximal_segment(mode);
    let l = max_seg.segment;
    let support_set = l.point_set();
    let dist_l = space.dist_to_set(&support_set);
    let cover_l = dist_l.iter().fold(0.0_f64, |a, &b| a.max(b));

    let seg_tol = d + space.scale();
    let make_segment = |cover: f64| Skeleton {
        kind: SkeletonKind::Segment,
        support: l.path.clone(),
        params: l.params.clone(),
        total_len: l.len(),
        covering_radius: cover,
        distortion: None,
        exact_support: max_seg.exact,
        r,
        d,
    };

    if cover_l <= seg_tol {
        if cover_l > 200.0 * r {
            return Err(Error::SkeletonAudit(format!(
                "segment covering radius {cover_l} exceeds 200R = {}",
                200.0 * r
            )));
        }
        return Ok(make_segment(cover_l));
    }

    // circle branch
    let attempt = circle_attempt(space, &l, &dist_l, r, d, seg_tol);
    match attempt {
        Ok(skeleton) => Ok(skeleton),
        Err(e) => {
            if cover_l <= 200.0 * r {
                Ok(make_segment(cover_l))
            } else {
                Err(Error::CircleBranchUnreachable(format!(
                    "{e}; segment covering radius {cover_l} also exceeds 200R"
                )))
            }
        }
    }
}

fn circle_attempt(
    space: &FiniteGeodesicSpace,
    l: &DiscreteSegment,
    dist_l: &[f64],
    r: f64,
    d: f64,
    seg_tol: f64,
) -> Result<Skeleton> {
    if l.len() < 50.0 * r {
        return Err(Error::CircleBranchUnreachable(format!(
            "longest segment {} shorter than 50R = {}",
            l.len(),
            50.0 * r
        )));
    }
    // far point: maximal distance from l, ties toward the smallest id
    let p = (0..space.vertex_count())
        .map(Vertex)
        .max_by(|a, b| dist_l[a.0].total_cmp(&dist_l[b.0]).then_with(|| b.cmp(a)))
        .unwrap();
    if dist_l[p.0] <= seg_tol {
        return Err(Error::CircleBranchUnreachable("no point far from the segment".into()));
    }
    let gamma1 = space.shortest_segment(p, l.end());
    let gamma2 = space.shortest_segment(p, l.start());
    let anchors = AnchorTriple::from_segments([&gamma1, &gamma2, l], r);
    let cyc = min_anchored_cycle(space, &anchors, d)?;

    let distortion = circle_distortion(space, &cyc.vertices, &cyc.params, cyc.total_len);
    let support = PointSet::new(cyc.vertices.clone());
    let dist_c = space.dist_to_set(&support);
    let cover_c = dist_c.iter().fold(0.0_f64, |a, &b| a.max(b));

    let distortion_tol = 2.0 * space.scale();
    if distortion > distortion_tol {
        return Err(Error::SkeletonAudit(format!(
            "cycle distortion {distortion} exceeds {distortion_tol}"
        )));
    }
    if cover_c > seg_tol {
        return Err(Error::SkeletonAudit(format!(
            "cycle covering radius {cover_c} exceeds D + scale = {seg_tol}"
        )));
    }
    if cyc.total_len < 50.0 * r {
        return Err(Error::SkeletonAudit(format!(
            "cycle length {} below 50R = {}",
            cyc.total_len,
            50.0 * r
        )));
    }
    Ok(Skeleton {
        kind: SkeletonKind::Circle,
        support: cyc.vertices,
        params: cyc.params,
        total_len: cyc.total_len,
        covering_radius: cover_c,
        distortion: Some(distortion),
        exact_support: true,
        r,
        d,
    })
}

/// Minimizes `d(a,b) + d(b,c) + d(c,a)` over triples drawn from the closed
/// D-neighborhoods of the three anchor intervals and returns the concatenation
/// of the three canonical shortest paths. The three neighborhoods must be
/// pairwise disjoint.
pub fn min_anchored_cycle(
    space: &FiniteGeodesicSpace,
    anchors: &AnchorTriple,
    d: f64,
) -> Result<CycleSupport> {
    let mut candidates: Vec<Vec<Vertex>> = Vec::with_capacity(3);
    for interval in &anchors.intervals {
        if interval.is_empty() {
            return Err(Error::EmptyAnchorNeighborhood);
        }
        let set = PointSet::new(interval.clone());
        let hood = space.closed_neighborhood(&set, d)?;
        if hood.is_empty() {
            return Err(Error::EmptyAnchorNeighborhood);
        }
        candidates.push(hood.members().to_vec());
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let a = PointSet::new(candidates[i].clone());
            let b = PointSet::new(candidates[j].clone());
            if a.intersects(&b) {
                return Err(Error::AnchorsOverlap);
            }
        }
    }

    let (ca, cb, cc) = (&candidates[0], &candidates[1], &candidates[2]);
    // distances from every b to every c, computed once
    let d_bc: Vec<Vec<f64>> = cb
        .par_iter()
        .map(|&b| space.with_row(b, |row| cc.iter().map(|&c| row[c.0]).collect()))
        .collect();

    let best = ca
        .par_iter()
        .map(|&a| {
            space.with_row(a, |row| {
                let mut local: Option<(f64, Vertex, Vertex, Vertex)> = None;
                for (bi, &b) in cb.iter().enumerate() {
                    let dab = row[b.0];
                    for (ci, &c) in cc.iter().enumerate() {
                        let total = dab + d_bc[bi][ci] + row[c.0];
                        let cand = (total, a, b, c);
                        let better = match &local {
                            None => true,
                            Some(cur) => {
                                total < cur.0
                                    || (total == cur.0 && (a, b, c) < (cur.1, cur.2, cur.3))
                            }
                        };
                        if better {
                            local = Some(cand);
                        }
                    }
                }
                local.unwrap()
            })
        })
        .reduce_with(|x, y| {
            if y.0 < x.0 || (y.0 == x.0 && (y.1, y.2, y.3) < (x.1, x.2, x.3)) {
                y
            } else {
                x
            }
        })
        .ok_or(Error::EmptyAnchorNeighborhood)?;

    let (_, a, b, c) = best;
    let mut vertices = Vec::new();
    let mut params = Vec::new();
    let mut offset = 0.0;
    for (from, to) in [(a, b), (b, c), (c, a)] {
        let seg = space.shortest_segment(from, to);
        let skip = usize::from(!vertices.is_empty());
        for (v, p) in seg.path.iter().zip(seg.params.iter()).skip(skip) {
            vertices.push(*v);
            params.push(offset + p);
        }
        offset += seg.len();
    }
    // drop the duplicated closing vertex
    vertices.pop();
    params.pop();
    Ok(CycleSupport { vertices, params, total_len: offset })
}

const DISTORTION_PAIR_LIMIT: usize = 2_000;

/// Worst gap between the space metric and the arc metric over support pairs
/// (all pairs up to 2000 support vertices, a deterministic stride sample
/// above).
pub fn circle_distortion(
    space: &FiniteGeodesicSpace,
    vertices: &[Vertex],
    params: &[f64],
    total_len: f64,
) -> f64 {
    let m = vertices.len();
    let idx: Vec<usize> = if m <= DISTORTION_PAIR_LIMIT {
        (0..m).collect()
    } else {
        let stride = m.div_ceil(DISTORTION_PAIR_LIMIT);
        (0..m).step_by(stride).collect()
    };
    idx.par_iter()
        .map(|&i| {
            space.with_row(vertices[i], |row| {
                let mut worst = 0.0_f64;
                for &j in &idx {
                    if j <= i {
                        continue;
                    }
                    let arc_raw = (params[j] - params[i]).abs();
                    let arc = arc_raw.min(total_len - arc_raw);
                    worst = worst.max((row[vertices[j].0] - arc).abs());
                }
                worst
            })
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::thinness::{thin_check, ThinOpts};

    #[test]
    fn path_gives_segment() {
        let s = path_space(120);
        let ev = thin_check(&s, 2.0, 0.1, &ThinOpts::default()).unwrap();
        let sk = extract_skeleton(&s, 2.0, 0.1, &ev).unwrap();
        assert_eq!(sk.kind, SkeletonKind::Segment);
        assert_eq!(sk.covering_radius, 0.0);
        assert_eq!(sk.total_len, 119.0);
    }

    #[test]
    fn cycle_gives_circle() {
        let s = cycle_space(200);
        let ev = thin_check(
            &s,
            2.0,
            0.1,
            &ThinOpts { segment_budget: Some(60), ..Default::default() },
        )
        .unwrap();
        assert!(ev.passed());
        let sk = extract_skeleton(&s, 2.0, 0.1, &ev).unwrap();
        assert_eq!(sk.kind, SkeletonKind::Circle);
        assert_eq!(sk.total_len, 200.0);
        assert_eq!(sk.distortion, Some(0.0));
        assert_eq!(sk.covering_radius, 0.0);
    }

    #[test]
    fn evidence_is_required() {
        let s = path_space(50);
        let mut ev = thin_check(&s, 2.0, 0.1, &ThinOpts::default()).unwrap();
        ev.verdict = crate::thinness::Verdict::Fail;
        assert!(matches!(
            extract_skeleton(&s, 2.0, 0.1, &ev),
            Err(Error::NotThinEvidence(_))
        ));
        let ev = thin_check(&s, 2.0, 0.1, &ThinOpts::default()).unwrap();
        assert!(matches!(
            extract_skeleton(&s, 4.0, 0.2, &ev),
            Err(Error::NotThinEvidence(_))
        ));
    }

    #[test]
    fn anchored_cycle_full_cycle() {
        let s = cycle_space(300);
        let at = |i: usize| s.vertex(&format!("v{i:04}")).unwrap();
        let anchors = AnchorTriple {
            intervals: [vec![at(0)], vec![at(100)], vec![at(200)]],
        };
        let cyc = min_anchored_cycle(&s, &anchors, 1.0).unwrap();
        assert_eq!(cyc.total_len, 300.0);
        assert_eq!(cyc.vertices.len(), 300);
    }

    #[test]
    fn anchored_cycle_avoids_rung_shortcut() {
        // outer 60-cycle, inner 30-cycle, one connecting rung
        let mut edges = Vec::new();
        for i in 0..60 {
            edges.push((format!("o{i:03}"), format!("o{:03}", (i + 1) % 60), 1.0));
        }
        for i in 0..30 {
            edges.push((format!("i{i:03}"), format!("i{:03}", (i + 1) % 30), 1.0));
        }
        edges.push(("o000".into(), "i000".into(), 1.0));
        let s = FiniteGeodesicSpace::from_edges(&edges).unwrap();
        let at = |id: &str| s.vertex(id).unwrap();
        let anchors = AnchorTriple {
            intervals: [vec![at("o010")], vec![at("o030")], vec![at("o050")]],
        };
        let cyc = min_anchored_cycle(&s, &anchors, 1.0).unwrap();
        assert_eq!(cyc.total_len, 60.0);
        assert!(cyc.vertices.iter().all(|&v| s.id(v).starts_with('o')));
    }

    #[test]
    fn overlapping_anchors_rejected() {
        let s = cycle_space(100);
        let at = |i: usize| s.vertex(&format!("v{i:04}")).unwrap();
        let anchors = AnchorTriple {
            intervals: [vec![at(0)], vec![at(3)], vec![at(50)]],
        };
        assert!(matches!(
            min_anchored_cycle(&s, &anchors, 3.0),
            Err(Error::AnchorsOverlap)
        ));
    }

    #[test]
    fn distortion_of_cycle_is_zero() {
        let s = cycle_space(50);
        let support: Vec<Vertex> = (0..50).map(|i| s.vertex(&format!("v{i:04}")).unwrap()).collect();
        let params: Vec<f64> = (0..50).map(|i| i as f64).collect();
        assert_eq!(circle_distortion(&s, &support, &params, 50.0), 0.0);
    }

    #[test]
    fn distortion_square_in_grid() {
        let s = grid_space(3, 3);
        let ids = ["g00x00", "g00x01", "g01x01", "g01x00"];
        let support: Vec<Vertex> = ids.iter().map(|id| s.vertex(id).unwrap()).collect();
        let params = vec![0.0, 1.0, 2.0, 3.0];
        assert_eq!(circle_distortion(&s, &support, &params, 4.0), 0.0);
    }

    #[test]
    fn distortion_detects_chord() {
        let mut edges = cycle_edges(40);
        edges.push(("v0000".into(), "v0010".into(), 3.0));
        let s = FiniteGeodesicSpace::from_edges(&edges).unwrap();
        let support: Vec<Vertex> = (0..40).map(|i| s.vertex(&format!("v{i:04}")).unwrap()).collect();
        let params: Vec<f64> = (0..40).map(|i| i as f64).collect();
        // arc distance 10 vs chord route 3: detour gain 7
        assert_eq!(circle_distortion(&s, &support, &params, 40.0), 7.0);
    }
}
