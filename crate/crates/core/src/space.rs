//! Finite geodesic spaces: connected weighted graphs with the shortest-path
//! metric, plus the projection / inverse-projection / neighborhood primitives
//! every other module consumes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex inside a [`FiniteGeodesicSpace`].
///
/// Indices follow the lexicographic order of the vertex ids, so comparing two
/// `Vertex` values compares their ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub usize);

/// A set of vertices, stored sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointSet {
    members: Vec<Vertex>,
}

impl PointSet {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        PointSet { members }
    }

    pub fn singleton(v: Vertex) -> Self {
        PointSet { members: vec![v] }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        // merge walk over two sorted lists
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Max vertex count for which the full distance matrix is precomputed.
/// Above this, rows are computed on demand and kept in an LRU cache.
const FULL_MATRIX_LIMIT: usize = 20_000;

const ROW_CACHE_BYTES: usize = 1 << 30;

enum DistStore {
    Full(Vec<f64>),
    OnDemand {
        cache: Mutex<RowCache>,
    },
}

struct RowCache {
    capacity: usize,
    tick: u64,
    rows: HashMap<usize, (u64, Arc<Vec<f64>>)>,
}

impl RowCache {
    fn new(n: usize) -> Self {
        let capacity = (ROW_CACHE_BYTES / (8 * n.max(1))).clamp(16, 4096);
        RowCache { capacity, tick: 0, rows: HashMap::new() }
    }

    fn get(&mut self, src: usize) -> Option<Arc<Vec<f64>>> {
        self.tick += 1;
        let tick = self.tick;
        self.rows.get_mut(&src).map(|slot| {
            slot.0 = tick;
            slot.1.clone()
        })
    }

    fn put(&mut self, src: usize, row: Arc<Vec<f64>>) {
        self.tick += 1;
        if self.rows.len() >= self.capacity {
            if let Some((&evict, _)) = self.rows.iter().min_by_key(|(_, (t, _))| *t) {
                self.rows.remove(&evict);
            }
        }
        self.rows.insert(src, (self.tick, row));
    }
}

/// A connected weighted graph with cached exact geodesic distances.
///
/// Immutable after construction; concurrent reads are safe.
pub struct FiniteGeodesicSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<(usize, f64)>>,
    scale: f64,
    edge_count: usize,
    store: DistStore,
    warnings: Vec<String>,
    row_computations: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentSearch {
    /// True diameter-realizing segment; scans all pairs.
    Exhaustive,
    /// Two sweeps from extremal vertices; long but possibly sub-maximal.
    DoubleSweep,
}

/// Output of [`FiniteGeodesicSpace::maximal_segment`].
pub struct MaximalSegment {
    pub segment: DiscreteSegment,
    /// False when the double-sweep heuristic was used: the segment may be
    /// sub-maximal.
    pub exact: bool,
}

impl FiniteGeodesicSpace {
    /// Builds the space from an undirected edge list.
    ///
    /// Duplicate edges keep the shorter length (recorded as a warning);
    /// non-positive lengths, self loops, and disconnected graphs are errors.
    pub fn from_edges(edges: &[(String, String, f64)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::BadParameters("empty edge list".into()));
        }
        let mut ids: Vec<String> = Vec::new();
        for (u, v, len) in edges {
            if !len.is_finite() || *len <= 0.0 {
                return Err(Error::NonPositiveEdge { u: u.clone(), v: v.clone(), length: *len });
            }
            if u == v {
                return Err(Error::BadParameters(format!("self loop on `{u}`")));
            }
            ids.push(u.clone());
            ids.push(v.clone());
        }
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let n = ids.len();
        let mut warnings = Vec::new();
        let mut best: HashMap<(usize, usize), f64> = HashMap::new();
        for (u, v, len) in edges {
            let (a, b) = (index[u], index[v]);
            let key = (a.min(b), a.max(b));
            match best.get_mut(&key) {
                None => {
                    best.insert(key, *len);
                }
                Some(existing) => {
                    let kept = existing.min(*len);
                    warnings.push(format!(
                        "duplicate edge ({u}, {v}): keeping length {kept}"
                    ));
                    *existing = kept;
                }
            }
        }
        for w in &warnings {
            log::warn!("{w}");
        }

        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut scale = 0.0_f64;
        for (&(a, b), &len) in best.iter() {
            adj[a].push((b, len));
            adj[b].push((a, len));
            scale = scale.max(len);
        }
        for list in &mut adj {
            list.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        }
        let edge_count = best.len();

        let mut space = FiniteGeodesicSpace {
            ids,
            index,
            adj,
            scale,
            edge_count,
            store: DistStore::OnDemand { cache: Mutex::new(RowCache::new(n)) },
            warnings,
            row_computations: AtomicU64::new(0),
        };

        // connectivity check via one sweep
        let reach = space.dijkstra_row(0);
        let unreachable = reach.iter().filter(|d| !d.is_finite()).count();
        if unreachable > 0 {
            return Err(Error::DisconnectedGraph { components: 1 + component_count(&space.adj, &reach) });
        }

        if n <= FULL_MATRIX_LIMIT {
            let mut matrix = vec![0.0_f64; n * n];
            matrix
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(src, row)| row.copy_from_slice(&space.dijkstra_row(src)));
            // summation order can drift by ulps on irrational weights; pin
            // the symmetric entry to the smaller sum
            for u in 0..n {
                for v in (u + 1)..n {
                    let d = matrix[u * n + v].min(matrix[v * n + u]);
                    matrix[u * n + v] = d;
                    matrix[v * n + u] = d;
                }
            }
            space.store = DistStore::Full(matrix);
        }
        Ok(space)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Maximum edge length; the discreteness scale of the space.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn build_warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn id(&self, v: Vertex) -> &str {
        &self.ids[v.0]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.index
            .get(id)
            .copied()
            .map(Vertex)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.ids.len()).map(Vertex)
    }

    pub fn neighbors(&self, v: Vertex) -> &[(usize, f64)] {
        &self.adj[v.0]
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> f64 {
        match &self.store {
            DistStore::Full(m) => m[u.0 * self.ids.len() + v.0],
            DistStore::OnDemand { .. } => self.dist_row(u)[v.0],
        }
    }

    /// Distance row from `u` to every vertex. Cheap for full-matrix spaces;
    /// on-demand spaces compute and cache the row.
    pub fn dist_row(&self, u: Vertex) -> Arc<Vec<f64>> {
        match &self.store {
            DistStore::Full(m) => {
                let n = self.ids.len();
                Arc::new(m[u.0 * n..(u.0 + 1) * n].to_vec())
            }
            DistStore::OnDemand { cache } => {
                if let Some(row) = cache.lock().unwrap().get(u.0) {
                    return row;
                }
                let row = Arc::new(self.dijkstra_row(u.0));
                cache.lock().unwrap().put(u.0, row.clone());
                row
            }
        }
    }

    /// Looks up a distance against a borrowed full-matrix row when available,
    /// avoiding the row copy of [`dist_row`].
    pub fn with_row<R>(&self, u: Vertex, f: impl FnOnce(&[f64]) -> R) -> R {
        match &self.store {
            DistStore::Full(m) => {
                let n = self.ids.len();
                f(&m[u.0 * n..(u.0 + 1) * n])
            }
            DistStore::OnDemand { .. } => f(&self.dist_row(u)),
        }
    }

    /// Number of single-source computations run so far (cache misses).
    pub fn row_computations(&self) -> u64 {
        self.row_computations.load(AtomicOrdering::Relaxed)
    }

    fn dijkstra_row(&self, src: usize) -> Vec<f64> {
        self.row_computations.fetch_add(1, AtomicOrdering::Relaxed);
        let n = self.ids.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(HeapEntry { dist: 0.0, v: src });
        while let Some(HeapEntry { dist: d, v }) = heap.pop() {
            if settled[v] {
                continue;
            }
            settled[v] = true;
            for &(w, len) in &self.adj[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(HeapEntry { dist: nd, v: w });
                }
            }
        }
        dist
    }

    /// Distance to `src` together with the canonical next-hop tree toward
    /// `src`: `parent[x]` is the smallest-id neighbor of `x` lying on a
    /// shortest path from `x` to `src`. Walking parents from any vertex yields
    /// the canonical shortest path.
    fn dijkstra_tree(&self, src: usize) -> (Vec<f64>, Vec<usize>) {
        let n = self.ids.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(HeapEntry { dist: 0.0, v: src });
        while let Some(HeapEntry { dist: d, v }) = heap.pop() {
            if settled[v] {
                continue;
            }
            settled[v] = true;
            for &(w, len) in &self.adj[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    parent[w] = v;
                    heap.push(HeapEntry { dist: nd, v: w });
                } else if nd == dist[w] && v < parent[w] {
                    // equal-length route through a smaller-id neighbor
                    parent[w] = v;
                }
            }
        }
        (dist, parent)
    }

    /// Multi-source distances: `d(x, S)` for every vertex `x`.
    pub fn dist_to_set(&self, set: &PointSet) -> Vec<f64> {
        self.multi_source(set.members().iter().map(|&v| (v, 0.0))).0
    }

    /// Multi-source distances where each source carries an arclength
    /// parameter. Returns per-vertex `d(x, S)` and the min/max parameter over
    /// sources realizing it.
    pub fn dist_to_set_with_params(
        &self,
        sources: &[(Vertex, f64)],
    ) -> (Vec<f64>, Vec<(f64, f64)>) {
        let (dist, spans) = self.multi_source(sources.iter().copied());
        (dist, spans)
    }

    fn multi_source(
        &self,
        sources: impl Iterator<Item = (Vertex, f64)>,
    ) -> (Vec<f64>, Vec<(f64, f64)>) {
        let n = self.ids.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut span = vec![(f64::INFINITY, f64::NEG_INFINITY); n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        for (v, param) in sources {
            if 0.0 < dist[v.0] {
                dist[v.0] = 0.0;
                span[v.0] = (param, param);
                heap.push(HeapEntry { dist: 0.0, v: v.0 });
            } else {
                span[v.0].0 = span[v.0].0.min(param);
                span[v.0].1 = span[v.0].1.max(param);
            }
        }
        while let Some(HeapEntry { dist: d, v }) = heap.pop() {
            if settled[v] {
                continue;
            }
            settled[v] = true;
            for &(w, len) in &self.adj[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    span[w] = span[v];
                    heap.push(HeapEntry { dist: nd, v: w });
                } else if nd == dist[w] {
                    span[w].0 = span[w].0.min(span[v].0);
                    span[w].1 = span[w].1.max(span[v].1);
                }
            }
        }
        (dist, span)
    }

    /// Sparse single-source distances truncated at `cutoff`: all `(v, d)` with
    /// `d <= cutoff`, in id order.
    pub fn dist_within(&self, src: Vertex, cutoff: f64) -> Vec<(Vertex, f64)> {
        let mut dist: HashMap<usize, f64> = HashMap::new();
        let mut settled: Vec<(Vertex, f64)> = Vec::new();
        let mut done: HashMap<usize, bool> = HashMap::new();
        let mut heap = BinaryHeap::new();
        dist.insert(src.0, 0.0);
        heap.push(HeapEntry { dist: 0.0, v: src.0 });
        while let Some(HeapEntry { dist: d, v }) = heap.pop() {
            if d > cutoff {
                break;
            }
            if done.get(&v).copied().unwrap_or(false) {
                continue;
            }
            done.insert(v, true);
            settled.push((Vertex(v), d));
            for &(w, len) in &self.adj[v] {
                let nd = d + len;
                if nd <= cutoff && nd < dist.get(&w).copied().unwrap_or(f64::INFINITY) {
                    dist.insert(w, nd);
                    heap.push(HeapEntry { dist: nd, v: w });
                }
            }
        }
        settled.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        settled
    }

    /// Canonical shortest segment from `u` to `v` (ties broken toward the
    /// smallest next-vertex id).
    pub fn shortest_segment(&self, u: Vertex, v: Vertex) -> DiscreteSegment {
        if u == v {
            return DiscreteSegment::trivial(u);
        }
        let (dist, parent) = self.dijkstra_tree(v.0);
        let mut path = vec![u];
        let mut params = vec![0.0];
        let mut cur = u.0;
        while cur != v.0 {
            let next = parent[cur];
            debug_assert!(next != usize::MAX);
            let len = self.adj[cur]
                .iter()
                .find(|(w, _)| *w == next)
                .map(|(_, l)| *l)
                .expect("parent edge exists");
            params.push(params.last().unwrap() + len);
            path.push(Vertex(next));
            cur = next;
        }
        let _ = dist;
        self.finish_segment(path, params)
    }

    fn finish_segment(&self, path: Vec<Vertex>, params: Vec<f64>) -> DiscreteSegment {
        let mut seg = DiscreteSegment { path, params, geo_defect: 0.0 };
        // Prefix params of a Dijkstra-canonical path equal the source row, so
        // the triangle squeeze |t_i - t_j| <= d(v_i, v_j) <= t_j - t_i forces
        // zero defect. Verify the prefix identity; fall back to the exact
        // pairwise scan when it does not hold bitwise.
        let ok = self.with_row(seg.path[0], |row| {
            seg.path
                .iter()
                .zip(seg.params.iter())
                .all(|(v, t)| row[v.0] == *t)
        });
        if !ok {
            seg.geo_defect = self.segment_defect(&seg);
        }
        seg
    }

    /// Exact geodesic defect of an arbitrary path with arclength params.
    pub fn segment_defect(&self, seg: &DiscreteSegment) -> f64 {
        let m = seg.path.len();
        let mut worst = 0.0_f64;
        for i in 0..m {
            self.with_row(seg.path[i], |row| {
                for j in (i + 1)..m {
                    let gap = (seg.params[j] - seg.params[i]).abs();
                    worst = worst.max((row[seg.path[j].0] - gap).abs());
                }
            });
        }
        worst
    }

    /// Builds a segment from an explicit vertex walk, checking adjacency and
    /// computing the exact geodesic defect.
    pub fn segment_from_path(&self, path: &[Vertex]) -> Result<DiscreteSegment> {
        if path.is_empty() {
            return Err(Error::BadParameters("empty path".into()));
        }
        let mut params = vec![0.0];
        for win in path.windows(2) {
            let len = self.adj[win[0].0]
                .iter()
                .find(|(w, _)| *w == win[1].0)
                .map(|(_, l)| *l)
                .ok_or_else(|| {
                    Error::BadParameters(format!(
                        "vertices `{}` and `{}` are not adjacent",
                        self.id(win[0]),
                        self.id(win[1])
                    ))
                })?;
            params.push(params.last().unwrap() + len);
        }
        let mut seg = DiscreteSegment { path: path.to_vec(), params, geo_defect: 0.0 };
        seg.geo_defect = self.segment_defect(&seg);
        Ok(seg)
    }

    /// Nearest points of `k` to `x`: the exact argmin set, no tolerance.
    pub fn project(&self, k: &PointSet, x: Vertex) -> Result<PointSet> {
        if k.is_empty() {
            return Err(Error::EmptyTarget);
        }
        self.with_row(x, |row| {
            let best = k
                .iter()
                .map(|y| row[y.0])
                .fold(f64::INFINITY, f64::min);
            Ok(PointSet::new(
                k.iter().filter(|y| row[y.0] == best).collect(),
            ))
        })
    }

    /// Inverse projection fiber: all `x` with `d(x, K) >= d(x, y) - tol`.
    /// With `tol = 0` this is the literal fiber `{x : d(x, K) = d(x, y)}`.
    pub fn inverse_project(&self, k: &PointSet, y: Vertex, tol: f64) -> Result<PointSet> {
        if k.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if !k.contains(y) {
            return Err(Error::TargetNotInSet(self.id(y).to_string()));
        }
        let dk = self.dist_to_set(k);
        self.with_row(y, |row| {
            Ok(PointSet::new(
                (0..self.ids.len())
                    .filter(|&x| dk[x] >= row[x] - tol)
                    .map(Vertex)
                    .collect(),
            ))
        })
    }

    /// Open metric neighborhood `{x : d(x, A) < r}`.
    pub fn neighborhood(&self, a: &PointSet, r: f64) -> Result<PointSet> {
        if a.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let da = self.dist_to_set(a);
        Ok(PointSet::new(
            (0..self.ids.len()).filter(|&x| da[x] < r).map(Vertex).collect(),
        ))
    }

    /// Closed variant `{x : d(x, A) <= r}`, used for candidate restriction.
    pub fn closed_neighborhood(&self, a: &PointSet, r: f64) -> Result<PointSet> {
        if a.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let da = self.dist_to_set(a);
        Ok(PointSet::new(
            (0..self.ids.len()).filter(|&x| da[x] <= r).map(Vertex).collect(),
        ))
    }

    /// True iff every `a` in `A` is within `eps` of `S`.
    pub fn is_net(&self, s: &PointSet, a: &PointSet, eps: f64) -> bool {
        if s.is_empty() {
            return a.is_empty();
        }
        let ds = self.dist_to_set(s);
        a.iter().all(|v| ds[v.0] <= eps)
    }

    /// Longest segment of the space. `Exhaustive` scans all pairs and returns
    /// a true diameter realizer; `DoubleSweep` runs two farthest-point sweeps.
    pub fn maximal_segment(&self, mode: SegmentSearch) -> MaximalSegment {
        let n = self.ids.len();
        if n == 1 {
            return MaximalSegment { segment: DiscreteSegment::trivial(Vertex(0)), exact: true };
        }
        match mode {
            SegmentSearch::Exhaustive => {
                let (u, v, _) = (0..n)
                    .into_par_iter()
                    .map(|u| {
                        self.with_row(Vertex(u), |row| {
                            let mut best = (u, u, 0.0_f64);
                            for v in (u + 1)..n {
                                if row[v] > best.2 {
                                    best = (u, v, row[v]);
                                }
                            }
                            best
                        })
                    })
                    .reduce(
                        || (0, 0, f64::NEG_INFINITY),
                        |a, b| {
                            // max by distance, ties toward the lexicographically
                            // smallest pair
                            if b.2 > a.2 || (b.2 == a.2 && (b.0, b.1) < (a.0, a.1)) {
                                b
                            } else {
                                a
                            }
                        },
                    );
                MaximalSegment {
                    segment: self.shortest_segment(Vertex(u), Vertex(v)),
                    exact: true,
                }
            }
            SegmentSearch::DoubleSweep => {
                let a = self.farthest_from(Vertex(0));
                let b = self.farthest_from(a);
                let (u, v) = if a <= b { (a, b) } else { (b, a) };
                MaximalSegment { segment: self.shortest_segment(u, v), exact: false }
            }
        }
    }

    fn farthest_from(&self, src: Vertex) -> Vertex {
        self.with_row(src, |row| {
            let mut best = (src.0, f64::NEG_INFINITY);
            for (v, &d) in row.iter().enumerate() {
                if d > best.1 {
                    best = (v, d);
                }
            }
            Vertex(best.0)
        })
    }

    /// Exact diameter of a vertex set, via truncated searches that expand the
    /// cutoff until all members are mutually reached.
    pub fn set_diameter(&self, members: &[Vertex]) -> f64 {
        if members.len() < 2 {
            return 0.0;
        }
        if let DistStore::Full(_) = self.store {
            let mut worst = 0.0_f64;
            for (i, &a) in members.iter().enumerate() {
                self.with_row(a, |row| {
                    for &b in &members[i + 1..] {
                        worst = worst.max(row[b.0]);
                    }
                });
            }
            return worst;
        }
        let want: Vec<usize> = members.iter().map(|v| v.0).collect();
        let mut worst = 0.0_f64;
        for &a in members {
            let mut cutoff = self.scale * 4.0;
            loop {
                let reached = self.dist_within(a, cutoff);
                let mut hit = 0usize;
                let mut local = 0.0_f64;
                for (v, d) in &reached {
                    if want.binary_search(&v.0).is_ok() {
                        hit += 1;
                        local = local.max(*d);
                    }
                }
                if hit == members.len() {
                    worst = worst.max(local);
                    break;
                }
                cutoff *= 2.0;
            }
        }
        worst
    }
}

fn component_count(adj: &[Vec<(usize, f64)>], reach: &[f64]) -> usize {
    // rough count of extra components beyond the one containing vertex 0
    let mut seen: Vec<bool> = reach.iter().map(|d| d.is_finite()).collect();
    let mut extra = 0;
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        extra += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    extra
}

struct HeapEntry {
    dist: f64,
    v: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.v == other.v
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, vertex) via reversed comparison
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.v.cmp(&self.v))
    }
}

/// An ordered vertex path with cumulative arclength parameters.
///
/// `geo_defect` is the worst gap between path distance and space distance over
/// vertex pairs of the path; it is zero exactly when the path realizes the
/// distance between every pair of its vertices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DiscreteSegment {
    pub path: Vec<Vertex>,
    pub params: Vec<f64>,
    pub geo_defect: f64,
}

impl DiscreteSegment {
    fn trivial(v: Vertex) -> Self {
        DiscreteSegment { path: vec![v], params: vec![0.0], geo_defect: 0.0 }
    }

    pub fn len(&self) -> f64 {
        *self.params.last().unwrap()
    }

    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn end(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::new(self.path.clone())
    }

    /// Path vertex nearest to arclength `t`; ties resolve to the smaller
    /// parameter.
    pub fn nearest_vertex(&self, t: f64) -> (Vertex, f64) {
        let i = self.params.partition_point(|&p| p < t);
        if i == 0 {
            return (self.path[0], self.params[0]);
        }
        if i >= self.params.len() {
            let last = self.params.len() - 1;
            return (self.path[last], self.params[last]);
        }
        // params[i-1] < t <= params[i]; ties go to the smaller parameter
        if (self.params[i] - t).abs() < (t - self.params[i - 1]).abs() {
            (self.path[i], self.params[i])
        } else {
            (self.path[i - 1], self.params[i - 1])
        }
    }

    /// Vertices whose parameter lies in `[lo, hi]`.
    pub fn slice_by_param(&self, lo: f64, hi: f64) -> Vec<Vertex> {
        self.path
            .iter()
            .zip(self.params.iter())
            .filter(|(_, &p)| p >= lo && p <= hi)
            .map(|(v, _)| *v)
            .collect()
    }

    /// The same walk traversed backwards, with parameters re-accumulated.
    pub fn reversed(&self) -> DiscreteSegment {
        let total = self.len();
        let path: Vec<Vertex> = self.path.iter().rev().copied().collect();
        let params: Vec<f64> = self.params.iter().rev().map(|p| total - p).collect();
        DiscreteSegment { path, params, geo_defect: self.geo_defect }
    }
}
