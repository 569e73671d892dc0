//! Closed-form manifolds, curvature-integral functionals, the eigenvalue
//! inequality harness, and scale-picking covers.

pub mod cover;
pub mod eigen;
pub mod integral;
pub mod manifold;
pub mod quad;

pub use cover::{cores_disjoint, grid_constant, scale_pick_cover, Cell, DiscretizedBall, ScalePickCover};
pub use eigen::{eigen_inequality_search, eigen_inequality_verify, EigenSample, EigenInequalityOutcome, EigenSearchResult};
pub use integral::{
    ball_integral, tangent_hypothesis_scan, Integrand, IntegralEstimate, Method, MethodKind,
    ScanPoint, ScanResult, Trend,
};
pub use manifold::{paraboloid_chart_radius, AnalyticManifold, ManifoldFamily};
