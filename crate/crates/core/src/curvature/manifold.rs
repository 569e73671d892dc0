//! Closed-form manifold families with Ricci eigenvalues and the radial
//! structure used by rotationally symmetric ball integrals.

use serde::{Deserialize, Serialize};

use crate::curvature::quad::{adaptive_simpson, invert_monotone, DEFAULT_MAX_DEPTH, DEFAULT_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ManifoldFamily {
    /// Round n-sphere of radius `radius`.
    Sphere { dim: usize, radius: f64 },
    /// Euclidean space.
    Flat { dim: usize },
    /// S^2(radius) x R^flat_dim.
    ProductSphereFlat { radius: f64, flat_dim: usize },
    /// The surface z = x^2 + y^2 in R^3, parametrized by the chart radius.
    Paraboloid,
    /// Cylinder of radius `radius` and height `height` with two hemispherical
    /// caps, parametrized by profile arclength from the bottom pole.
    CappedCylinder { radius: f64, height: f64 },
}

#[derive(Debug, Clone)]
pub struct AnalyticManifold {
    pub family: ManifoldFamily,
}

impl AnalyticManifold {
    pub fn new(family: ManifoldFamily) -> Result<Self> {
        match &family {
            ManifoldFamily::Sphere { dim, radius } => {
                if *dim < 2 || !(*radius > 0.0) {
                    return Err(Error::BadParameters("sphere needs dim >= 2 and radius > 0".into()));
                }
            }
            ManifoldFamily::Flat { dim } => {
                if *dim == 0 {
                    return Err(Error::BadParameters("flat space needs dim >= 1".into()));
                }
            }
            ManifoldFamily::ProductSphereFlat { radius, flat_dim } => {
                if !(*radius > 0.0) || *flat_dim == 0 {
                    return Err(Error::BadParameters(
                        "product needs radius > 0 and flat_dim >= 1".into(),
                    ));
                }
            }
            ManifoldFamily::Paraboloid => {}
            ManifoldFamily::CappedCylinder { radius, height } => {
                if !(*radius > 0.0) || !(*height > 0.0) {
                    return Err(Error::BadParameters(
                        "capped cylinder needs radius > 0 and height > 0".into(),
                    ));
                }
            }
        }
        Ok(AnalyticManifold { family })
    }

    pub fn dim(&self) -> usize {
        match &self.family {
            ManifoldFamily::Sphere { dim, .. } => *dim,
            ManifoldFamily::Flat { dim } => *dim,
            ManifoldFamily::ProductSphereFlat { flat_dim, .. } => flat_dim + 2,
            ManifoldFamily::Paraboloid => 2,
            ManifoldFamily::CappedCylinder { .. } => 2,
        }
    }

    /// Chart coordinate of the point, validated per family. Homogeneous
    /// families accept any point (the empty slice included); the paraboloid
    /// takes the chart radius, the capped cylinder the profile arclength.
    pub fn chart_coord(&self, point: &[f64]) -> Result<f64> {
        match &self.family {
            ManifoldFamily::Sphere { .. }
            | ManifoldFamily::Flat { .. }
            | ManifoldFamily::ProductSphereFlat { .. } => Ok(0.0),
            ManifoldFamily::Paraboloid => {
                let rho = point.first().copied().unwrap_or(f64::NAN);
                if !rho.is_finite() || rho < 0.0 {
                    return Err(Error::OutOfChart(format!("paraboloid chart radius {rho}")));
                }
                Ok(rho)
            }
            ManifoldFamily::CappedCylinder { radius, height } => {
                let s = point.first().copied().unwrap_or(f64::NAN);
                let total = std::f64::consts::PI * radius + height;
                if !s.is_finite() || s < 0.0 || s > total {
                    return Err(Error::OutOfChart(format!(
                        "profile arclength {s} outside [0, {total}]"
                    )));
                }
                Ok(s)
            }
        }
    }

    /// Gaussian curvature of the paraboloid at chart radius `rho`.
    pub fn paraboloid_curvature(rho: f64) -> f64 {
        let w = 1.0 + 4.0 * rho * rho;
        4.0 / (w * w)
    }

    /// Ricci eigenvalues at the point, sorted ascending.
    pub fn ricci_eigenvalues(&self, point: &[f64]) -> Result<Vec<f64>> {
        let coord = self.chart_coord(point)?;
        Ok(match &self.family {
            ManifoldFamily::Sphere { dim, radius } => {
                vec![(*dim as f64 - 1.0) / (radius * radius); *dim]
            }
            ManifoldFamily::Flat { dim } => vec![0.0; *dim],
            ManifoldFamily::ProductSphereFlat { radius, flat_dim } => {
                let mut eigs = vec![0.0; *flat_dim];
                eigs.push(1.0 / (radius * radius));
                eigs.push(1.0 / (radius * radius));
                eigs
            }
            ManifoldFamily::Paraboloid => {
                let k = Self::paraboloid_curvature(coord);
                vec![k, k]
            }
            ManifoldFamily::CappedCylinder { radius, height } => {
                let k = capped_cylinder_curvature(*radius, *height, coord);
                vec![k, k]
            }
        })
    }

    /// Sum of the `k` lowest Ricci eigenvalues.
    pub fn r_k(&self, point: &[f64], k: usize) -> Result<f64> {
        let n = self.dim();
        if k < 1 || k > n {
            return Err(Error::BadK { k, n });
        }
        let eigs = self.ricci_eigenvalues(point)?;
        Ok(eigs[..k].iter().sum())
    }

    /// Scalar curvature (all eigenvalues).
    pub fn scalar(&self, point: &[f64]) -> Result<f64> {
        self.r_k(point, self.dim())
    }

    /// Geodesic distance from the symmetry base to the whole space, or
    /// infinity for non-compact families.
    pub fn max_radius(&self) -> f64 {
        match &self.family {
            ManifoldFamily::Sphere { radius, .. } => std::f64::consts::PI * radius,
            ManifoldFamily::Flat { .. } => f64::INFINITY,
            ManifoldFamily::ProductSphereFlat { .. } => f64::INFINITY,
            ManifoldFamily::Paraboloid => f64::INFINITY,
            ManifoldFamily::CappedCylinder { radius, height } => {
                std::f64::consts::PI * radius + height
            }
        }
    }

    /// Whether the Ricci tensor is the same at every point, so integrands
    /// depending only on it are constant fields.
    pub fn homogeneous(&self) -> bool {
        matches!(
            self.family,
            ManifoldFamily::Sphere { .. }
                | ManifoldFamily::Flat { .. }
                | ManifoldFamily::ProductSphereFlat { .. }
        )
    }

    /// Radial profile from the symmetry base: at geodesic radius `s`, the
    /// area density of the geodesic sphere (up to a constant factor that
    /// cancels in averages). Only meaningful for radially reducible families.
    pub fn radial_density(&self, s: f64) -> f64 {
        match &self.family {
            ManifoldFamily::Sphere { dim, radius } => {
                (s / radius).sin().max(0.0).powi(*dim as i32 - 1)
            }
            ManifoldFamily::Flat { dim } => s.powi(*dim as i32 - 1),
            ManifoldFamily::CappedCylinder { radius, height } => {
                let quarter = std::f64::consts::FRAC_PI_2 * radius;
                if s <= quarter {
                    (s / radius).sin()
                } else if s <= quarter + height {
                    1.0
                } else {
                    ((s - quarter - height) / radius).cos().max(0.0)
                }
            }
            // paraboloid integrals run in the chart coordinate instead
            ManifoldFamily::Paraboloid => f64::NAN,
            ManifoldFamily::ProductSphereFlat { .. } => f64::NAN,
        }
    }

    /// Chart coordinate at geodesic radius `s` for radial families (identity
    /// except for the capped cylinder, where the profile arclength is the
    /// geodesic radius already).
    pub fn chart_at_radius(&self, s: f64) -> Vec<f64> {
        match &self.family {
            ManifoldFamily::Paraboloid => vec![paraboloid_chart_radius(s)],
            _ => vec![s],
        }
    }

    /// Paraboloid arclength from the apex to chart radius `u`, by quadrature
    /// of sqrt(1 + 4 t^2).
    pub fn paraboloid_arclength(u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        adaptive_simpson(&|t: f64| (1.0 + 4.0 * t * t).sqrt(), 0.0, u, DEFAULT_TOL, DEFAULT_MAX_DEPTH).0
    }
}

/// Chart radius of the paraboloid ball of geodesic radius `s` around the apex.
pub fn paraboloid_chart_radius(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    invert_monotone(&AnalyticManifold::paraboloid_arclength, s, 0.0, s.sqrt().max(1.0))
}

fn capped_cylinder_curvature(radius: f64, height: f64, s: f64) -> f64 {
    let quarter = std::f64::consts::FRAC_PI_2 * radius;
    // the weld circles carry the cylinder value
    if s < quarter || s > quarter + height {
        1.0 / (radius * radius)
    } else {
        0.0
    }
}
