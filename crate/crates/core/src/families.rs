//! Standard graph families used by tests, benchmarks, and examples: paths,
//! cycles, tripods, grids, cylinders, and seeded random connected graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::space::FiniteGeodesicSpace;

pub fn path_edges(n: usize) -> Vec<(String, String, f64)> {
    (0..n - 1)
        .map(|i| (format!("v{i:04}"), format!("v{:04}", i + 1), 1.0))
        .collect()
}

/// Path graph on `n` vertices with unit edges.
pub fn path_space(n: usize) -> FiniteGeodesicSpace {
    FiniteGeodesicSpace::from_edges(&path_edges(n)).unwrap()
}

pub fn cycle_edges(n: usize) -> Vec<(String, String, f64)> {
    (0..n)
        .map(|i| (format!("v{i:04}"), format!("v{:04}", (i + 1) % n), 1.0))
        .collect()
}

/// Cycle graph on `n` vertices with unit edges.
pub fn cycle_space(n: usize) -> FiniteGeodesicSpace {
    FiniteGeodesicSpace::from_edges(&cycle_edges(n)).unwrap()
}

pub fn tripod_edges(leg: usize) -> Vec<(String, String, f64)> {
    let mut edges = Vec::new();
    for name in ["a", "b", "c"] {
        edges.push(("c".to_string(), format!("{name}0001"), 1.0));
        for i in 1..leg {
            edges.push((format!("{name}{i:04}"), format!("{name}{:04}", i + 1), 1.0));
        }
    }
    edges
}

/// Three unit-edge legs of equal length joined at a center vertex `c`.
pub fn tripod_space(leg: usize) -> FiniteGeodesicSpace {
    FiniteGeodesicSpace::from_edges(&tripod_edges(leg)).unwrap()
}

pub fn grid_edges(rows: usize, cols: usize) -> Vec<(String, String, f64)> {
    let name = |r: usize, c: usize| format!("g{r:02}x{c:02}");
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                edges.push((name(r, c), name(r + 1, c), 1.0));
            }
            if c + 1 < cols {
                edges.push((name(r, c), name(r, c + 1), 1.0));
            }
        }
    }
    edges
}

/// rows x cols unit grid graph.
pub fn grid_space(rows: usize, cols: usize) -> FiniteGeodesicSpace {
    FiniteGeodesicSpace::from_edges(&grid_edges(rows, cols)).unwrap()
}

pub fn cylinder_edges(ring: usize, len: usize) -> Vec<(String, String, f64)> {
    let name = |k: usize, j: usize| format!("c{k:02}a{j:04}");
    let mut edges = Vec::new();
    for j in 0..=len {
        for k in 0..ring {
            edges.push((name(k, j), name((k + 1) % ring, j), 1.0));
            if j < len {
                edges.push((name(k, j), name(k, j + 1), 1.0));
            }
        }
    }
    edges
}

/// Product of an `m`-cycle and a path of `len` edges, unit lengths: the
/// thickened-path cylinder C_m x P_len.
pub fn cylinder_space(ring: usize, len: usize) -> FiniteGeodesicSpace {
    FiniteGeodesicSpace::from_edges(&cylinder_edges(ring, len)).unwrap()
}

/// Cylinder plus seeded metric-preserving noise edges: each extra edge joins
/// vertices at graph distance `floor(ring/4) >= 2` with length equal to that
/// distance, so the shortest-path metric is unchanged.
pub fn noisy_cylinder_space(ring: usize, len: usize, noise: usize, seed: u64) -> FiniteGeodesicSpace {
    let mut edges = cylinder_edges(ring, len);
    let gap = ring / 4;
    if gap >= 2 {
        let base = FiniteGeodesicSpace::from_edges(&edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = base.vertex_count();
        let mut added = 0;
        while added < noise {
            let u = base.ids()[rng.random_range(0..n)].clone();
            // walk `gap` axial steps when possible, otherwise around the ring
            let uv = base.vertex(&u).unwrap();
            let mut targets: Vec<String> = base
                .dist_within(uv, gap as f64)
                .into_iter()
                .filter(|(v, d)| *d == gap as f64 && *v != uv)
                .map(|(v, _)| base.id(v).to_string())
                .collect();
            if targets.is_empty() {
                continue;
            }
            let v = targets.swap_remove(rng.random_range(0..targets.len()));
            edges.push((u, v, gap as f64));
            added += 1;
        }
    }
    FiniteGeodesicSpace::from_edges(&edges).unwrap()
}

/// Path graph with seeded dyadic edge weights (thin for moderate R).
pub fn random_weighted_path_space(n: usize, seed: u64) -> FiniteGeodesicSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(String, String, f64)> = (0..n - 1)
        .map(|i| {
            let w = rng.random_range(4..=32) as f64 / 8.0 + i as f64 / 1_048_576.0;
            (format!("v{i:04}"), format!("v{:04}", i + 1), w)
        })
        .collect();
    FiniteGeodesicSpace::from_edges(&edges).unwrap()
}

/// Cycle graph with seeded dyadic edge weights.
pub fn random_weighted_cycle_space(n: usize, seed: u64) -> FiniteGeodesicSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(String, String, f64)> = (0..n)
        .map(|i| {
            let w = rng.random_range(4..=32) as f64 / 8.0 + i as f64 / 1_048_576.0;
            (format!("v{i:04}"), format!("v{:04}", (i + 1) % n), w)
        })
        .collect();
    FiniteGeodesicSpace::from_edges(&edges).unwrap()
}

/// Seeded random connected graph on `n` vertices: a random spanning tree plus
/// `extra` chords. Edge lengths are dyadic rationals (multiples of 1/8 with a
/// per-edge 2^-20 offset), so all shortest-path sums are exact in f64 and
/// geodesics are almost surely unique.
pub fn random_connected_space(n: usize, extra: usize, seed: u64) -> FiniteGeodesicSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = |i: usize| format!("v{i:04}");
    let mut edges = Vec::new();
    let mut edge_idx = 0usize;
    let weight = |rng: &mut ChaCha8Rng, idx: usize| {
        let eighths = rng.random_range(4..=32) as f64; // 0.5 ..= 4.0
        eighths / 8.0 + (idx as f64) * (1.0 / 1_048_576.0)
    };
    for i in 1..n {
        let j = rng.random_range(0..i);
        let w = weight(&mut rng, edge_idx);
        edge_idx += 1;
        edges.push((name(j), name(i), w));
    }
    let mut guard = 0;
    let mut added = 0;
    while added < extra && guard < extra * 20 {
        guard += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let (a, b) = (a.min(b), a.max(b));
        if edges.iter().any(|(u, v, _)| {
            (u == &name(a) && v == &name(b)) || (u == &name(b) && v == &name(a))
        }) {
            continue;
        }
        let w = weight(&mut rng, edge_idx);
        edge_idx += 1;
        edges.push((name(a), name(b), w));
        added += 1;
    }
    FiniteGeodesicSpace::from_edges(&edges).unwrap()
}
