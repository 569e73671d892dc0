//! Ball-growth counts from a base vertex with a least-squares linear fit: the
//! discrete surrogate of linear volume growth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{FiniteGeodesicSpace, Vertex};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VolumeGrowth {
    pub base: String,
    pub counts: Vec<(f64, usize)>,
    pub fit_slope: f64,
    pub fit_intercept: f64,
    pub max_residual: f64,
    /// Worst per-point relative residual `|count - fit| / count`: below a few
    /// percent signals linear growth, large values flag superlinear behavior.
    pub rel_max_residual: f64,
}

/// Counts `|B_t(base)| = #{v : d(v, base) <= t}` per grid value and fits a
/// line by least squares.
pub fn volume_growth(
    space: &FiniteGeodesicSpace,
    base: Vertex,
    t_grid: &[f64],
) -> Result<VolumeGrowth> {
    if t_grid.is_empty() || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameters("t grid must be nonempty and increasing".into()));
    }
    let row = space.dist_row(base);
    let mut sorted: Vec<f64> = row.to_vec();
    sorted.sort_by(f64::total_cmp);
    let counts: Vec<(f64, usize)> = t_grid
        .iter()
        .map(|&t| (t, sorted.partition_point(|&d| d <= t)))
        .collect();

    let n = counts.len() as f64;
    let sx: f64 = counts.iter().map(|(t, _)| t).sum();
    let sy: f64 = counts.iter().map(|(_, c)| *c as f64).sum();
    let sxx: f64 = counts.iter().map(|(t, _)| t * t).sum();
    let sxy: f64 = counts.iter().map(|(t, c)| t * *c as f64).sum();
    let denom = n * sxx - sx * sx;
    let (slope, intercept) = if denom == 0.0 {
        (0.0, sy / n)
    } else {
        let slope = (n * sxy - sx * sy) / denom;
        (slope, (sy - slope * sx) / n)
    };
    let max_residual = counts
        .iter()
        .map(|(t, c)| (*c as f64 - (slope * t + intercept)).abs())
        .fold(0.0, f64::max);
    let rel_max_residual = counts
        .iter()
        .map(|(t, c)| (*c as f64 - (slope * t + intercept)).abs() / (*c as f64).max(1.0))
        .fold(0.0, f64::max);
    Ok(VolumeGrowth {
        base: space.id(base).to_string(),
        counts,
        fit_slope: slope,
        fit_intercept: intercept,
        max_residual,
        rel_max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn path_from_endpoint_is_linear() {
        let s = path_space(1000);
        let grid: Vec<f64> = (1..=50).map(|i| i as f64 * 10.0).collect();
        let vg = volume_growth(&s, s.vertex("v0000").unwrap(), &grid).unwrap();
        for (t, c) in &vg.counts {
            assert_eq!(*c, (*t as usize) + 1);
        }
        assert!((vg.fit_slope - 1.0).abs() < 1e-9);
        assert!(vg.rel_max_residual < 1e-9);
    }

    #[test]
    fn cylinder_is_linear_grid_is_not() {
        let cyl = cylinder_space(12, 400);
        let base = cyl.vertex("c00a0200").unwrap();
        let grid: Vec<f64> = (1..=19).map(|i| i as f64 * 10.0).collect();
        let vg = volume_growth(&cyl, base, &grid).unwrap();
        assert!((vg.fit_slope - 24.0).abs() < 1.0, "slope {}", vg.fit_slope);
        assert!(vg.rel_max_residual < 0.05, "residual {}", vg.rel_max_residual);

        let grid41 = grid_space(41, 41);
        let center = grid41.vertex("g20x20").unwrap();
        let tg: Vec<f64> = (1..=40).map(|i| i as f64).collect();
        let vg = volume_growth(&grid41, center, &tg).unwrap();
        assert!(vg.rel_max_residual > 0.25, "residual {}", vg.rel_max_residual);
    }
}
