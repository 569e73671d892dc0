//! Shared test support: an independent brute-force thinness oracle that
//! enumerates every shortest path between every pair and every fiber member
//! by definition, plus small helpers.

use thinspace_core::space::{FiniteGeodesicSpace, PointSet, Vertex};

/// Enumerates all shortest paths from `u` to `v` by walking tight edges of
/// the distance field toward `v`. Truncates at `cap` paths.
pub fn all_shortest_paths(
    space: &FiniteGeodesicSpace,
    u: Vertex,
    v: Vertex,
    cap: usize,
) -> Vec<Vec<Vertex>> {
    let to_v = space.dist_row(v);
    let mut out = Vec::new();
    let mut stack = vec![u];
    walk(space, &to_v, v, &mut stack, &mut out, cap);
    out
}

fn walk(
    space: &FiniteGeodesicSpace,
    to_v: &[f64],
    v: Vertex,
    stack: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let cur = *stack.last().unwrap();
    if cur == v {
        out.push(stack.clone());
        return;
    }
    for &(w, len) in space.neighbors(cur) {
        if len + to_v[w] == to_v[cur.0] {
            stack.push(Vertex(w));
            walk(space, to_v, v, stack, out, cap);
            stack.pop();
        }
    }
}

/// Definition-level thin check: every shortest path between every qualifying
/// pair, both parametrizations, every grid parameter, every fiber member.
/// Returns true when a violation exists.
pub fn oracle_thin_fails(
    space: &FiniteGeodesicSpace,
    r: f64,
    d: f64,
    t_step: f64,
    tol: f64,
) -> bool {
    let n = space.vertex_count();
    for a in 0..n {
        let row = space.dist_row(Vertex(a));
        for b in (a + 1)..n {
            if row[b] <= 2.0 * r {
                continue;
            }
            for path in all_shortest_paths(space, Vertex(a), Vertex(b), 10_000) {
                if oracle_path_fails(space, &path, r, d, t_step, tol) {
                    return true;
                }
            }
        }
    }
    false
}

fn oracle_path_fails(
    space: &FiniteGeodesicSpace,
    path: &[Vertex],
    r: f64,
    d: f64,
    t_step: f64,
    tol: f64,
) -> bool {
    let mut params = vec![0.0];
    for w in path.windows(2) {
        let len = space
            .neighbors(w[0])
            .iter()
            .find(|(x, _)| *x == w[1].0)
            .map(|(_, l)| *l)
            .unwrap();
        params.push(params.last().unwrap() + len);
    }
    let total = *params.last().unwrap();
    let support = PointSet::new(path.to_vec());
    let dist_set = space.dist_to_set(&support);

    let reversed: Vec<f64> = params.iter().rev().map(|p| total - p).collect();
    let rev_path: Vec<Vertex> = path.iter().rev().copied().collect();
    for (pth, prm) in [(path.to_vec(), params.clone()), (rev_path, reversed)] {
        let mut k = 1u64;
        loop {
            let t = r + k as f64 * t_step;
            if t >= total - r {
                break;
            }
            k += 1;
            // nearest vertex, ties to the smaller parameter
            let mut y = pth[0];
            let mut best = (prm[0] - t).abs();
            for (vv, &p) in pth.iter().zip(prm.iter()).skip(1) {
                let g = (p - t).abs();
                if g < best {
                    best = g;
                    y = *vv;
                }
            }
            let yrow = space.dist_row(y);
            for x in 0..space.vertex_count() {
                let in_fiber = dist_set[x] >= yrow[x] - tol;
                if in_fiber && dist_set[x] >= d {
                    return true;
                }
            }
        }
    }
    false
}

/// Brute-force minimal anchored triple: scans all vertex triples of the three
/// closed D-neighborhoods and returns the minimal perimeter.
pub fn oracle_min_anchored_len(
    space: &FiniteGeodesicSpace,
    intervals: &[Vec<Vertex>; 3],
    d: f64,
) -> Option<f64> {
    let mut hoods: Vec<Vec<Vertex>> = Vec::new();
    for iv in intervals {
        let set = PointSet::new(iv.clone());
        let dist = space.dist_to_set(&set);
        hoods.push(
            (0..space.vertex_count())
                .map(Vertex)
                .filter(|x| dist[x.0] <= d)
                .collect(),
        );
    }
    let mut best: Option<f64> = None;
    for &a in &hoods[0] {
        let ra = space.dist_row(a);
        for &b in &hoods[1] {
            let rb = space.dist_row(b);
            for &c in &hoods[2] {
                let total = ra[b.0] + rb[c.0] + ra[c.0];
                best = Some(best.map_or(total, |cur: f64| cur.min(total)));
            }
        }
    }
    best
}
