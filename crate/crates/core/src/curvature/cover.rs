//! Scale-picking Vitali covers of a discretized ball: cells where the scaled
//! running average of a nonnegative field exceeds a threshold are covered by
//! balls of maximal qualifying radius whose fifth-radius cores are disjoint,
//! and the weighted sum of the dilated balls is bounded by the total integral.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cell of a 1-D discretized ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cell {
    pub center: f64,
    pub width: f64,
    pub value: f64,
}

/// A 1-D discretized ball: sorted cells with nonnegative field values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscretizedBall {
    pub cells: Vec<Cell>,
}

impl DiscretizedBall {
    pub fn uniform(domain_lo: f64, domain_hi: f64, cells: usize, values: Vec<f64>) -> Result<Self> {
        if cells == 0 || values.len() != cells || domain_hi <= domain_lo {
            return Err(Error::BadParameters("bad discretization".into()));
        }
        let width = (domain_hi - domain_lo) / cells as f64;
        Ok(DiscretizedBall {
            cells: values
                .into_iter()
                .enumerate()
                .map(|(i, value)| Cell {
                    center: domain_lo + (i as f64 + 0.5) * width,
                    width,
                    value,
                })
                .collect(),
        })
    }

    pub fn total_integral(&self) -> f64 {
        self.cells.iter().map(|c| c.value * c.width).sum()
    }

    pub fn max_cell_width(&self) -> f64 {
        self.cells.iter().fold(0.0, |a, c| a.max(c.width))
    }

    fn validate(&self) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::BadParameters("empty discretization".into()));
        }
        if self.cells.iter().any(|c| c.value < 0.0 || c.width <= 0.0) {
            return Err(Error::BadParameters("cells need nonnegative values, positive widths".into()));
        }
        if self.cells.windows(2).any(|w| w[0].center >= w[1].center) {
            return Err(Error::BadParameters("cell centers must be increasing".into()));
        }
        Ok(())
    }

    /// Grid volume and integral of the field over `[y - r, y + r]` (cells by
    /// center membership).
    fn ball_stats(&self, y: f64, r: f64) -> (f64, f64) {
        let mut vol = 0.0;
        let mut integral = 0.0;
        for c in &self.cells {
            if (c.center - y).abs() <= r {
                vol += c.width;
                integral += c.value * c.width;
            }
        }
        (vol, integral)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverBall {
    pub center: f64,
    /// Radius of the disjoint core; the emitted ball has radius `5 * core`.
    pub core_radius: f64,
    pub grid_volume: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalePickCover {
    pub s: f64,
    pub eta: f64,
    pub balls: Vec<CoverBall>,
    /// `sum Vol(B_{5r}) (5r)^{-2s}` over selected balls.
    pub weighted_sum: f64,
    pub total_integral: f64,
    /// Documented grid constant: `weighted_sum <= grid_constant / eta * total`.
    pub grid_constant: f64,
}

/// The covering constant of a 1-D grid with max cell width `w`, valid for
/// radii >= `r_min > w`: grid volumes satisfy `Vol(B_5r) <= 10r + 2w` and
/// `Vol(B_r) >= 2r - 2w`, so each dilated ball costs at most
/// `(10 r_min + 2w) / (2 r_min - 2w) * 5^(-2s)` times its core's integral
/// bound.
pub fn grid_constant(ball: &DiscretizedBall, s: f64, r_min: f64) -> f64 {
    let w = ball.max_cell_width();
    ((10.0 * r_min + 2.0 * w) / (2.0 * r_min - 2.0 * w)) * 5.0_f64.powf(-2.0 * s)
}

/// Runs the scale-picking cover on a dyadic radius grid between `r_min` and
/// `r_max`.
///
/// For each cell whose scaled average `r^{2s} avg_{B_r}(field)` exceeds `eta`
/// at some grid radius, the maximal such radius is picked; a greedy Vitali
/// pass keeps a subfamily with pairwise disjoint cores and emits the
/// fifth-radius dilates. The weighted sum obeys
/// `weighted_sum <= grid_constant / eta * total_integral` exactly.
pub fn scale_pick_cover(
    ball: &DiscretizedBall,
    s: f64,
    eta: f64,
    r_min: f64,
    r_max: f64,
) -> Result<ScalePickCover> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::BadExponent(s));
    }
    if !(eta > 0.0) {
        return Err(Error::BadParameters(format!("eta must be positive, got {eta}")));
    }
    if !(0.0 < r_min && r_min < r_max) {
        return Err(Error::BadParameters(format!(
            "need 0 < r_min < r_max, got {r_min}, {r_max}"
        )));
    }
    ball.validate()?;
    let w = ball.max_cell_width();
    if r_min <= w {
        return Err(Error::BadParameters(format!(
            "r_min = {r_min} must exceed the max cell width {w} for the grid constant to hold"
        )));
    }

    // dyadic radius grid from r_max down to r_min
    let mut radii = Vec::new();
    let mut r = r_max;
    while r > r_min {
        radii.push(r);
        r /= 2.0;
    }
    radii.push(r_min);

    // pick the maximal qualifying radius per cell
    let mut picked: Vec<(f64, f64, f64)> = Vec::new(); // (center, r_y, cell value)
    for cell in &ball.cells {
        let mut best: Option<f64> = None;
        for &r in &radii {
            let (vol, integral) = ball.ball_stats(cell.center, r);
            if vol > 0.0 {
                let avg = integral / vol;
                if r.powf(2.0 * s) * avg >= eta {
                    best = Some(r);
                    break; // radii are visited descending: first hit is maximal
                }
            }
        }
        if let Some(r) = best {
            picked.push((cell.center, r, cell.value));
        }
    }
    if picked.is_empty() {
        return Ok(ScalePickCover {
            s,
            eta,
            balls: Vec::new(),
            weighted_sum: 0.0,
            total_integral: ball.total_integral(),
            grid_constant: grid_constant(ball, s, r_min),
        });
    }

    // greedy Vitali: largest radius first, densest anchor cell next (so a
    // lone spike anchors its own ball), then leftmost center
    picked.sort_by(|a, b| {
        b.1.total_cmp(&a.1).then(b.2.total_cmp(&a.2)).then(a.0.total_cmp(&b.0))
    });
    let mut selected: Vec<(f64, f64)> = Vec::new();
    for (y, r, _) in picked {
        let disjoint = selected.iter().all(|&(y2, r2)| (y - y2).abs() > r + r2);
        if disjoint {
            selected.push((y, r));
        }
    }

    let mut balls = Vec::new();
    let mut weighted_sum = 0.0;
    for &(y, r) in &selected {
        let (vol5, _) = ball.ball_stats(y, 5.0 * r);
        weighted_sum += vol5 * (5.0 * r).powf(-2.0 * s);
        balls.push(CoverBall { center: y, core_radius: r, grid_volume: vol5 });
    }
    Ok(ScalePickCover {
        s,
        eta,
        balls,
        weighted_sum,
        total_integral: ball.total_integral(),
        grid_constant: grid_constant(ball, s, r_min),
    })
}

/// Exact disjointness check of the selected cores.
pub fn cores_disjoint(cover: &ScalePickCover) -> bool {
    for (i, a) in cover.balls.iter().enumerate() {
        for b in &cover.balls[i + 1..] {
            if (a.center - b.center).abs() <= a.core_radius + b.core_radius {
                return false;
            }
        }
    }
    true
}
