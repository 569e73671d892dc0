//! Graph ingestion: JSON edge lists and point-cloud CSVs converted to
//! symmetric k-nearest-neighbor graphs with Euclidean edge lengths.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::FiniteGeodesicSpace;

pub const DEFAULT_KNN: usize = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, f64)>,
}

pub fn load_graph_json(path: &Path) -> Result<FiniteGeodesicSpace> {
    let text = std::fs::read_to_string(path)?;
    let file: GraphFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let space = FiniteGeodesicSpace::from_edges(&file.edges)?;
    for id in &file.vertices {
        space.vertex(id)?;
    }
    Ok(space)
}

pub fn save_graph_json(path: &Path, space: &FiniteGeodesicSpace) -> Result<()> {
    let mut edges = Vec::new();
    for u in space.vertices() {
        for &(w, len) in space.neighbors(u) {
            if u.0 < w {
                edges.push((space.id(u).to_string(), space.id(crate::space::Vertex(w)).to_string(), len));
            }
        }
    }
    let file = GraphFile { vertices: space.ids().to_vec(), edges };
    std::fs::write(path, serde_json::to_string_pretty(&file).unwrap())?;
    Ok(())
}

/// Reads CSV rows of coordinates (x,y[,z,...]) and connects each point to its
/// `k` nearest neighbors symmetrically, with Euclidean edge lengths.
pub fn load_point_cloud_csv(path: &Path, k: usize) -> Result<FiniteGeodesicSpace> {
    let text = std::fs::read_to_string(path)?;
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if lineno == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue; // header row
        }
        let coords: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        let coords = coords.map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = points.first() {
            if coords.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {}: expected {} coordinates, got {}",
                    lineno + 1,
                    first.len(),
                    coords.len()
                )));
            }
        }
        points.push(coords);
    }
    points_to_knn_space(&points, k)
}

pub fn points_to_knn_space(points: &[Vec<f64>], k: usize) -> Result<FiniteGeodesicSpace> {
    if points.len() < 2 {
        return Err(Error::Parse("need at least two points".into()));
    }
    if k == 0 {
        return Err(Error::BadParameters("k must be at least 1".into()));
    }
    let name = |i: usize| format!("p{i:06}");
    let dist = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    };
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut near: Vec<(f64, usize)> = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(j, q)| (dist(p, q), j))
            .collect();
        near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(d, j) in near.iter().take(k) {
            if d <= 0.0 {
                return Err(Error::Parse(format!(
                    "points {i} and {j} coincide; the nearest-neighbor graph needs distinct points"
                )));
            }
            let (a, b) = (i.min(j), i.max(j));
            edges.push((name(a), name(b), d));
        }
    }
    // duplicates collapse inside the builder (symmetric union)
    FiniteGeodesicSpace::from_edges(&edges)
}
