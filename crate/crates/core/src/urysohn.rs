//! Explicit width maps onto an interval or a circle, one per skeleton case,
//! with exact fiber-diameter statistics against the 2000R + 2*bin bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::{Skeleton, SkeletonKind};
use crate::space::{FiniteGeodesicSpace, PointSet, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UrysohnTarget {
    Interval,
    Circle,
}

/// Which construction produced the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapCase {
    /// Distance from the start fiber of a segment skeleton.
    StartFiber,
    /// Signed distance from a large ball at the segment midpoint (mass on
    /// both sides).
    SignedLine,
    /// Two-ball map onto a circle for circle skeletons.
    TwoBallCircle,
    /// Constant map fallback for short circles.
    Constant,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberBin {
    pub center: f64,
    pub count: usize,
    pub diameter: f64,
}

/// Per-vertex values of the width map plus fiber statistics.
#[derive(Debug, Clone)]
pub struct UrysohnMap {
    pub target: UrysohnTarget,
    pub case: MapCase,
    pub values: Vec<f64>,
    pub base: Vertex,
    pub antipode: Option<Vertex>,
    pub ball_radius: f64,
    /// Circle case: the target is [0, 2 d(B1,B2)] with endpoints identified.
    pub d12: Option<f64>,
    pub r: f64,
    pub delta_bin: f64,
    pub fiber_stats: Vec<FiberBin>,
}

impl UrysohnMap {
    pub fn max_fiber_diameter(&self) -> f64 {
        self.fiber_stats.iter().fold(0.0, |a, b| a.max(b.diameter))
    }

    /// The audited worst-case constant.
    pub fn diameter_bound(&self) -> f64 {
        2000.0 * self.r + 2.0 * self.delta_bin
    }
}

/// Summary for reports; the per-vertex values are emitted as CSV instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UrysohnReport {
    pub target: UrysohnTarget,
    pub case: MapCase,
    pub base: String,
    pub antipode: Option<String>,
    pub ball_radius: f64,
    pub d12: Option<f64>,
    pub r: f64,
    pub delta_bin: f64,
    pub vertex_count: usize,
    pub max_fiber_diameter: f64,
    pub diameter_bound: f64,
    pub fiber_stats: Vec<FiberBin>,
}

impl UrysohnReport {
    pub fn from_map(space: &FiniteGeodesicSpace, map: &UrysohnMap) -> Self {
        UrysohnReport {
            target: map.target,
            case: map.case,
            base: space.id(map.base).to_string(),
            antipode: map.antipode.map(|v| space.id(v).to_string()),
            ball_radius: map.ball_radius,
            d12: map.d12,
            r: map.r,
            delta_bin: map.delta_bin,
            vertex_count: map.values.len(),
            max_fiber_diameter: map.max_fiber_diameter(),
            diameter_bound: map.diameter_bound(),
            fiber_stats: map.fiber_stats.clone(),
        }
    }
}

/// Builds the width map for an extracted skeleton.
///
/// Segment skeletons map to an interval: by default the distance from the
/// start fiber (the inverse projection of the base vertex), whose level sets
/// follow the skeleton parameter; when the space extends beyond 1000R on both
/// sides of the segment midpoint, the signed distance from the 1000R midpoint
/// ball is used instead. Circle skeletons map onto
/// `[0, 2 d(B1,B2)]` with endpoints identified via the two antipodal 1000R
/// balls, falling back to the constant map when the cycle is too short for
/// the balls to be disjoint.
pub fn build_urysohn_map(
    space: &FiniteGeodesicSpace,
    skeleton: &Skeleton,
    r: f64,
    delta_bin: Option<f64>,
) -> Result<UrysohnMap> {
    if !(r > 0.0) {
        return Err(Error::BadParameters(format!("R must be positive, got {r}")));
    }
    let delta = delta_bin.unwrap_or(r / 10.0);
    if !(delta > 0.0) {
        return Err(Error::BadParameters(format!("bin width must be positive, got {delta}")));
    }
    if skeleton.support.iter().any(|v| v.0 >= space.vertex_count())
        || skeleton.support.len() != skeleton.params.len()
        || skeleton.support.is_empty()
    {
        return Err(Error::SkeletonMismatch("support does not index this space".into()));
    }

    match skeleton.kind {
        SkeletonKind::Segment => segment_map(space, skeleton, r, delta),
        SkeletonKind::Circle => circle_map(space, skeleton, r, delta),
    }
}

fn support_sources(skeleton: &Skeleton) -> Vec<(Vertex, f64)> {
    skeleton
        .support
        .iter()
        .copied()
        .zip(skeleton.params.iter().copied())
        .collect()
}

fn segment_map(
    space: &FiniteGeodesicSpace,
    skeleton: &Skeleton,
    r: f64,
    delta: f64,
) -> Result<UrysohnMap> {
    let base = skeleton.support[0];
    let ball_radius = 1000.0 * r;
    let sources = support_sources(skeleton);
    let (_, spans) = space.dist_to_set_with_params(&sources);

    // midpoint of the support
    let mid_param = skeleton.total_len / 2.0;
    let (mid, mid_p) = nearest_support(skeleton, mid_param);
    let mid_row = space.dist_row(mid);

    let mut plus = false;
    let mut minus = false;
    for x in 0..space.vertex_count() {
        if mid_row[x] > ball_radius {
            if spans[x].0 > mid_p {
                plus = true;
            }
            if spans[x].1 < mid_p {
                minus = true;
            }
        }
        if plus && minus {
            break;
        }
    }

    if plus && minus {
        // signed distance from the midpoint ball
        let ball = PointSet::new(
            (0..space.vertex_count()).filter(|&x| mid_row[x] <= ball_radius).map(Vertex).collect(),
        );
        let db = space.dist_to_set(&ball);
        let mut values = vec![0.0_f64; space.vertex_count()];
        for x in 0..space.vertex_count() {
            let sign = if spans[x].0 > mid_p {
                1.0
            } else if spans[x].1 < mid_p {
                -1.0
            } else if db[x] == 0.0 {
                1.0
            } else if db[x] <= space.scale() {
                // straddling projections just outside the ball resolve to the
                // positive side
                1.0
            } else {
                return Err(Error::AmbiguousSide(space.id(Vertex(x)).to_string()));
            };
            values[x] = sign * db[x];
        }
        let fiber_stats = fiber_bins(space, &values, delta, None);
        return Ok(UrysohnMap {
            target: UrysohnTarget::Interval,
            case: MapCase::SignedLine,
            values,
            base: mid,
            antipode: None,
            ball_radius,
            d12: None,
            r,
            delta_bin: delta,
            fiber_stats,
        });
    }

    // distance from the start fiber
    let support_set = skeleton.support_set();
    let start_fiber = space.inverse_project(&support_set, base, 0.0)?;
    let values = space.dist_to_set(&start_fiber);
    let fiber_stats = fiber_bins(space, &values, delta, None);
    Ok(UrysohnMap {
        target: UrysohnTarget::Interval,
        case: MapCase::StartFiber,
        values,
        base,
        antipode: None,
        ball_radius,
        d12: None,
        r,
        delta_bin: delta,
        fiber_stats,
    })
}

fn circle_map(
    space: &FiniteGeodesicSpace,
    skeleton: &Skeleton,
    r: f64,
    delta: f64,
) -> Result<UrysohnMap> {
    let base = skeleton.support[0];
    let ball_radius = 1000.0 * r;
    let l_cyc = skeleton.total_len;

    let constant = |reason: &str| {
        log::debug!("constant fallback: {reason}");
        let values = vec![0.0_f64; space.vertex_count()];
        let fiber_stats = fiber_bins(space, &values, delta, None);
        UrysohnMap {
            target: UrysohnTarget::Interval,
            case: MapCase::Constant,
            values,
            base,
            antipode: None,
            ball_radius,
            d12: None,
            r,
            delta_bin: delta,
            fiber_stats,
        }
    };

    let (anti, _) = nearest_support(skeleton, l_cyc / 2.0);
    let base_row = space.dist_row(base);
    let anti_row = space.dist_row(anti);
    let b1 = PointSet::new(
        (0..space.vertex_count()).filter(|&x| base_row[x] <= ball_radius).map(Vertex).collect(),
    );
    let b2 = PointSet::new(
        (0..space.vertex_count()).filter(|&x| anti_row[x] <= ball_radius).map(Vertex).collect(),
    );
    if b1.intersects(&b2) {
        return Ok(constant("antipodal balls intersect"));
    }
    let db1 = space.dist_to_set(&b1);
    let db2 = space.dist_to_set(&b2);
    let d12 = b2.iter().map(|v| db1[v.0]).fold(f64::INFINITY, f64::min);

    let sources = support_sources(skeleton);
    let (_, spans) = space.dist_to_set_with_params(&sources);
    let half = l_cyc / 2.0;

    let mut values = vec![0.0_f64; space.vertex_count()];
    for x in 0..space.vertex_count() {
        let hit1 = spans[x].0 <= half;
        let hit2 = spans[x].1 >= half || spans[x].0 == 0.0;
        let v = match (hit1, hit2) {
            (true, false) => db1[x].min(d12),
            (false, true) => (d12 + db2[x]).min(2.0 * d12),
            (true, true) => {
                if db1[x] == 0.0 {
                    0.0
                } else if db2[x] == 0.0 {
                    d12
                } else if db1[x].min(db2[x]) <= space.scale() {
                    if db1[x] <= db2[x] {
                        db1[x].min(d12)
                    } else {
                        (d12 + db2[x]).min(2.0 * d12)
                    }
                } else {
                    return Err(Error::AmbiguousSide(space.id(Vertex(x)).to_string()));
                }
            }
            (false, false) => unreachable!("projection parameters always hit a half"),
        };
        values[x] = v;
    }
    let fiber_stats = fiber_bins(space, &values, delta, Some(2.0 * d12));
    Ok(UrysohnMap {
        target: UrysohnTarget::Circle,
        case: MapCase::TwoBallCircle,
        values,
        base,
        antipode: Some(anti),
        ball_radius,
        d12: Some(d12),
        r,
        delta_bin: delta,
        fiber_stats,
    })
}

fn nearest_support(skeleton: &Skeleton, t: f64) -> (Vertex, f64) {
    let mut best = (skeleton.support[0], skeleton.params[0]);
    let mut gap = (skeleton.params[0] - t).abs();
    for (&v, &p) in skeleton.support.iter().zip(skeleton.params.iter()).skip(1) {
        let g = (p - t).abs();
        if g < gap {
            gap = g;
            best = (v, p);
        }
    }
    best
}

/// Buckets vertices by map value into width-`delta` bins and computes the
/// exact diameter of each bin. Circle targets bin circularly over
/// `[0, span)` with `span` identified to `0`.
pub fn fiber_diameters(
    space: &FiniteGeodesicSpace,
    map: &UrysohnMap,
    delta: f64,
) -> Vec<FiberBin> {
    let span = match map.target {
        UrysohnTarget::Circle => map.d12.map(|d| 2.0 * d),
        UrysohnTarget::Interval => None,
    };
    fiber_bins(space, &map.values, delta, span)
}

fn fiber_bins(
    space: &FiniteGeodesicSpace,
    values: &[f64],
    delta: f64,
    circle_span: Option<f64>,
) -> Vec<FiberBin> {
    let mut buckets: std::collections::BTreeMap<i64, Vec<Vertex>> = Default::default();
    match circle_span {
        None => {
            let vmin = values.iter().copied().fold(f64::INFINITY, f64::min);
            for (x, &v) in values.iter().enumerate() {
                let k = ((v - vmin) / delta).floor() as i64;
                buckets.entry(k).or_default().push(Vertex(x));
            }
            let mut bins: Vec<(i64, Vec<Vertex>)> = buckets.into_iter().collect();
            bins.par_iter_mut()
                .map(|(k, members)| FiberBin {
                    center: vmin + (*k as f64 + 0.5) * delta,
                    count: members.len(),
                    diameter: space.set_diameter(members),
                })
                .collect()
        }
        Some(span) => {
            let nbins = (span / delta).ceil().max(1.0) as i64;
            for (x, &v) in values.iter().enumerate() {
                let k = ((v / delta).floor() as i64).rem_euclid(nbins);
                buckets.entry(k).or_default().push(Vertex(x));
            }
            let mut bins: Vec<(i64, Vec<Vertex>)> = buckets.into_iter().collect();
            bins.par_iter_mut()
                .map(|(k, members)| FiberBin {
                    center: (*k as f64 + 0.5) * delta,
                    count: members.len(),
                    diameter: space.set_diameter(members),
                })
                .collect()
        }
    }
}

/// Worst 1-Lipschitz violation of the map over vertex pairs (exact up to
/// `pair_limit` vertices, a deterministic stride sample above): the maximum of
/// `|f(x)-f(y)| - d(x,y)` under the target metric. Nonpositive means the map
/// is 1-Lipschitz on the checked pairs.
pub fn lipschitz_excess(space: &FiniteGeodesicSpace, map: &UrysohnMap, pair_limit: usize) -> f64 {
    let n = space.vertex_count();
    let idx: Vec<usize> = if n <= pair_limit {
        (0..n).collect()
    } else {
        let stride = n.div_ceil(pair_limit);
        (0..n).step_by(stride).collect()
    };
    let span = map.d12.map(|d| 2.0 * d);
    idx.par_iter()
        .map(|&i| {
            space.with_row(Vertex(i), |row| {
                let mut worst = f64::NEG_INFINITY;
                for &j in &idx {
                    if j <= i {
                        continue;
                    }
                    let raw = (map.values[i] - map.values[j]).abs();
                    let gap = match span {
                        Some(s) => raw.min(s - raw),
                        None => raw,
                    };
                    worst = worst.max(gap - row[j]);
                }
                worst
            })
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Worst per-edge continuity violation: max over edges of
/// `|f(u)-f(v)| - length(u,v)` in the target metric.
pub fn edge_continuity_excess(space: &FiniteGeodesicSpace, map: &UrysohnMap) -> f64 {
    let span = map.d12.map(|d| 2.0 * d);
    let mut worst = f64::NEG_INFINITY;
    for u in space.vertices() {
        for &(w, len) in space.neighbors(u) {
            if w < u.0 {
                continue;
            }
            let raw = (map.values[u.0] - map.values[w]).abs();
            let gap = match span {
                Some(s) => raw.min(s - raw),
                None => raw,
            };
            worst = worst.max(gap - len);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::skeleton::extract_skeleton;
    use crate::thinness::{thin_check, ThinOpts};

    #[test]
    fn path_identity_map() {
        let s = path_space(200);
        let ev = thin_check(&s, 2.0, 0.1, &ThinOpts::default()).unwrap();
        let sk = extract_skeleton(&s, 2.0, 0.1, &ev).unwrap();
        let map = build_urysohn_map(&s, &sk, 2.0, Some(1.0)).unwrap();
        assert_eq!(map.case, MapCase::StartFiber);
        for i in 0..200 {
            let v = s.vertex(&format!("v{i:04}")).unwrap();
            assert_eq!(map.values[v.0], i as f64);
        }
        assert_eq!(map.max_fiber_diameter(), 0.0);
        assert!(lipschitz_excess(&s, &map, 500) <= 0.0);
        assert!(edge_continuity_excess(&s, &map) <= 0.0);
    }

    #[test]
    fn cylinder_ring_fibers() {
        let s = cylinder_space(12, 100);
        let ev = thin_check(
            &s,
            140.0,
            7.0,
            &ThinOpts { segment_budget: Some(30), ..Default::default() },
        )
        .unwrap();
        assert!(ev.passed());
        let sk = extract_skeleton(&s, 140.0, 7.0, &ev).unwrap();
        let map = build_urysohn_map(&s, &sk, 140.0, Some(1.0)).unwrap();
        assert_eq!(map.case, MapCase::StartFiber);
        // fibers are rings of diameter 6 (7 near the ends)
        assert!(map.max_fiber_diameter() <= 8.0, "max {}", map.max_fiber_diameter());
        assert!(lipschitz_excess(&s, &map, 500) <= 0.0);
    }

    #[test]
    fn signed_line_map_on_long_path() {
        // both ends extend past 1000R = 2000 from the midpoint
        let s = path_space(4401);
        let ev = thin_check(
            &s,
            2.0,
            0.1,
            &ThinOpts { segment_budget: Some(20), ..Default::default() },
        )
        .unwrap();
        let sk = extract_skeleton(&s, 2.0, 0.1, &ev).unwrap();
        let map = build_urysohn_map(&s, &sk, 2.0, Some(0.5)).unwrap();
        assert_eq!(map.case, MapCase::SignedLine);
        let val = |i: usize| map.values[s.vertex(&format!("v{i:04}")).unwrap().0];
        assert_eq!(val(2200), 0.0);
        assert_eq!(val(4400), 200.0);
        assert_eq!(val(0), -200.0);
        assert_eq!(val(4300), 100.0);
        assert!(lipschitz_excess(&s, &map, 400) <= 0.0);
        // the zero fiber is the whole 2000R ball
        assert!(map.max_fiber_diameter() <= map.diameter_bound());
    }

    #[test]
    fn short_cycle_falls_back_to_constant() {
        let s = cycle_space(2000);
        let ev = thin_check(
            &s,
            20.0,
            1.0,
            &ThinOpts { segment_budget: Some(40), ..Default::default() },
        )
        .unwrap();
        let sk = extract_skeleton(&s, 20.0, 1.0, &ev).unwrap();
        let map = build_urysohn_map(&s, &sk, 20.0, None).unwrap();
        assert_eq!(map.case, MapCase::Constant);
        assert_eq!(map.fiber_stats.len(), 1);
        // the single fiber is the whole space
        assert_eq!(map.fiber_stats[0].diameter, 1000.0);
    }

    #[test]
    fn genuine_circle_map() {
        let s = cycle_space(2000);
        let ev = thin_check(
            &s,
            20.0,
            1.0,
            &ThinOpts { segment_budget: Some(40), ..Default::default() },
        )
        .unwrap();
        let sk = extract_skeleton(&s, 20.0, 1.0, &ev).unwrap();
        // rebuild the map at a much smaller width scale
        let r = 0.05;
        let map = build_urysohn_map(&s, &sk, r, Some(r / 10.0)).unwrap();
        assert_eq!(map.case, MapCase::TwoBallCircle);
        let d12 = map.d12.unwrap();
        assert_eq!(d12, 900.0);
        let bound = map.diameter_bound();
        assert!(map.max_fiber_diameter() <= bound, "{} > {bound}", map.max_fiber_diameter());
        // the base-ball fiber realizes the 2000R constant exactly
        assert_eq!(map.max_fiber_diameter(), 100.0);
        assert!(lipschitz_excess(&s, &map, 600) <= 0.0);
    }

    #[test]
    fn ambiguous_side_detected() {
        // half-circle skeleton of a big cycle with a tiny map scale: the
        // antipode of the midpoint projects to both support ends
        let s = cycle_space(1000);
        let seg = s.shortest_segment(s.vertex("v0000").unwrap(), s.vertex("v0500").unwrap());
        let sk = Skeleton {
            kind: SkeletonKind::Segment,
            support: seg.path.clone(),
            params: seg.params.clone(),
            total_len: seg.len(),
            covering_radius: 250.0,
            distortion: None,
            exact_support: true,
            r: 0.01,
            d: 0.0005,
        };
        let err = build_urysohn_map(&s, &sk, 0.01, None);
        assert!(matches!(err, Err(Error::AmbiguousSide(_))));
    }
}
