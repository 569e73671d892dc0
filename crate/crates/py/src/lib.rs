//! Python bindings: finite geodesic spaces, thinness checks, skeletons,
//! width maps, and the curvature toolbox.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use thinspace_core::curvature::{
    ball_integral, eigen_inequality_search, scale_pick_cover, tangent_hypothesis_scan, AnalyticManifold,
    DiscretizedBall, Integrand, ManifoldFamily, Method,
};
use thinspace_core::skeleton::{extract_skeleton, SkeletonKind, SkeletonReport};
use thinspace_core::space::{FiniteGeodesicSpace, PointSet, SegmentSearch, Vertex};
use thinspace_core::thinness::{thin_check, ThinOpts, ThinnessReport};
use thinspace_core::urysohn::{build_urysohn_map, UrysohnReport};
use thinspace_core::volume::volume_growth;

fn err(e: thinspace_core::Error) -> PyErr {
    PyValueError::new_err(format!("[{}] {e}", e.code()))
}

/// A connected weighted graph with the exact shortest-path metric.
#[pyclass(name = "Space")]
struct PySpace {
    inner: Arc<FiniteGeodesicSpace>,
    skeleton: std::sync::Mutex<Option<thinspace_core::skeleton::Skeleton>>,
}

impl PySpace {
    fn vertex(&self, id: &str) -> PyResult<Vertex> {
        self.inner.vertex(id).map_err(err)
    }

    fn point_set(&self, ids: Vec<String>) -> PyResult<PointSet> {
        let members: PyResult<Vec<Vertex>> = ids.iter().map(|id| self.vertex(id)).collect();
        Ok(PointSet::new(members?))
    }

    fn names(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|v| self.inner.id(v).to_string()).collect()
    }
}

#[pymethods]
impl PySpace {
    /// Builds a space from (u, v, length) edges.
    #[staticmethod]
    fn from_edges(edges: Vec<(String, String, f64)>) -> PyResult<Self> {
        let space = FiniteGeodesicSpace::from_edges(&edges).map_err(err)?;
        Ok(PySpace { inner: Arc::new(space), skeleton: std::sync::Mutex::new(None) })
    }

    /// Loads the JSON graph format used by the CLI.
    #[staticmethod]
    fn from_graph_json(path: &str) -> PyResult<Self> {
        let space = thinspace_core::io::load_graph_json(std::path::Path::new(path)).map_err(err)?;
        Ok(PySpace { inner: Arc::new(space), skeleton: std::sync::Mutex::new(None) })
    }

    /// Connects a point cloud by symmetric k-nearest neighbors.
    #[staticmethod]
    #[pyo3(signature = (points, k = 8))]
    fn from_points(points: Vec<Vec<f64>>, k: usize) -> PyResult<Self> {
        let space = thinspace_core::io::points_to_knn_space(&points, k).map_err(err)?;
        Ok(PySpace { inner: Arc::new(space), skeleton: std::sync::Mutex::new(None) })
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn scale(&self) -> f64 {
        self.inner.scale()
    }

    fn ids(&self) -> Vec<String> {
        self.inner.ids().to_vec()
    }

    fn dist(&self, u: &str, v: &str) -> PyResult<f64> {
        Ok(self.inner.dist(self.vertex(u)?, self.vertex(v)?))
    }

    /// Canonical shortest segment: (vertex ids, arclength params, geo_defect).
    fn shortest_segment(&self, u: &str, v: &str) -> PyResult<(Vec<String>, Vec<f64>, f64)> {
        let seg = self.inner.shortest_segment(self.vertex(u)?, self.vertex(v)?);
        let ids = seg.path.iter().map(|&x| self.inner.id(x).to_string()).collect();
        Ok((ids, seg.params.clone(), seg.geo_defect))
    }

    fn project(&self, k: Vec<String>, x: &str) -> PyResult<Vec<String>> {
        let set = self.point_set(k)?;
        let proj = self.inner.project(&set, self.vertex(x)?).map_err(err)?;
        Ok(self.names(&proj))
    }

    #[pyo3(signature = (k, y, tol = None))]
    fn inverse_project(&self, k: Vec<String>, y: &str, tol: Option<f64>) -> PyResult<Vec<String>> {
        let set = self.point_set(k)?;
        let tol = tol.unwrap_or_else(|| self.inner.scale());
        let fiber = self.inner.inverse_project(&set, self.vertex(y)?, tol).map_err(err)?;
        Ok(self.names(&fiber))
    }

    fn neighborhood(&self, a: Vec<String>, r: f64) -> PyResult<Vec<String>> {
        let set = self.point_set(a)?;
        let hood = self.inner.neighborhood(&set, r).map_err(err)?;
        Ok(self.names(&hood))
    }

    fn is_net(&self, s: Vec<String>, a: Vec<String>, eps: f64) -> PyResult<bool> {
        Ok(self.inner.is_net(&self.point_set(s)?, &self.point_set(a)?, eps))
    }

    /// Longest segment: (vertex ids, params, exact). Heuristic search sets
    /// exact = False.
    #[pyo3(signature = (exhaustive = true))]
    fn maximal_segment(&self, exhaustive: bool) -> (Vec<String>, Vec<f64>, bool) {
        let mode = if exhaustive { SegmentSearch::Exhaustive } else { SegmentSearch::DoubleSweep };
        let m = self.inner.maximal_segment(mode);
        let ids = m.segment.path.iter().map(|&x| self.inner.id(x).to_string()).collect();
        (ids, m.segment.params.clone(), m.exact)
    }

    /// Decides the (R, D)-thin condition.
    #[pyo3(signature = (r, d, budget = None, sampling = true, t_step = None, tol = None))]
    fn thin_check(
        &self,
        r: f64,
        d: f64,
        budget: Option<usize>,
        sampling: bool,
        t_step: Option<f64>,
        tol: Option<f64>,
    ) -> PyResult<PyThinness> {
        let opts = ThinOpts { t_step, tol, segment_budget: budget, allow_sampling: sampling };
        let report = thin_check(&self.inner, r, d, &opts).map_err(err)?;
        Ok(PyThinness { report })
    }

    /// Extracts the skeleton, running a budgeted thin-check as evidence, and
    /// caches it for `urysohn`.
    #[pyo3(signature = (r, d, budget = 64))]
    fn extract_skeleton(&self, r: f64, d: f64, budget: usize) -> PyResult<PySkeleton> {
        let opts = ThinOpts { segment_budget: Some(budget), ..Default::default() };
        let evidence = thin_check(&self.inner, r, d, &opts).map_err(err)?;
        let sk = extract_skeleton(&self.inner, r, d, &evidence).map_err(err)?;
        let report = SkeletonReport::from_skeleton(&self.inner, &sk);
        *self.skeleton.lock().unwrap() = Some(sk);
        Ok(PySkeleton { report })
    }

    /// Builds the width map for the most recently extracted skeleton.
    #[pyo3(signature = (r, bin = None))]
    fn urysohn(&self, r: f64, bin: Option<f64>) -> PyResult<PyUrysohn> {
        let guard = self.skeleton.lock().unwrap();
        let sk = guard.as_ref().ok_or_else(|| {
            PyValueError::new_err("extract_skeleton must run before urysohn")
        })?;
        let map = build_urysohn_map(&self.inner, sk, r, bin).map_err(err)?;
        let report = UrysohnReport::from_map(&self.inner, &map);
        let values = self
            .inner
            .vertices()
            .map(|v| (self.inner.id(v).to_string(), map.values[v.0]))
            .collect();
        Ok(PyUrysohn { report, values })
    }

    /// Ball counts and linear fit: (counts, slope, rel_max_residual).
    fn volume_growth(
        &self,
        base: &str,
        t_grid: Vec<f64>,
    ) -> PyResult<(Vec<(f64, usize)>, f64, f64)> {
        let vg = volume_growth(&self.inner, self.vertex(base)?, &t_grid).map_err(err)?;
        Ok((vg.counts.clone(), vg.fit_slope, vg.rel_max_residual))
    }
}

#[pyclass(name = "ThinnessReport")]
struct PyThinness {
    report: ThinnessReport,
}

#[pymethods]
impl PyThinness {
    #[getter]
    fn passed(&self) -> bool {
        self.report.passed()
    }

    #[getter]
    fn sampled(&self) -> bool {
        self.report.sampled
    }

    #[getter]
    fn segments_checked(&self) -> usize {
        self.report.segments_checked
    }

    /// (segment ids, t, x, distance) or None.
    #[getter]
    fn witness(&self) -> Option<(Vec<String>, f64, String, f64)> {
        self.report
            .witness
            .as_ref()
            .map(|w| (w.segment.path.clone(), w.t, w.x.clone(), w.dist_x_r))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).unwrap()
    }

    fn __repr__(&self) -> String {
        format!(
            "ThinnessReport(R={}, D={}, verdict={:?}, segments={})",
            self.report.r, self.report.d, self.report.verdict, self.report.segments_checked
        )
    }
}

#[pyclass(name = "Skeleton")]
struct PySkeleton {
    report: SkeletonReport,
}

#[pymethods]
impl PySkeleton {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.report.kind {
            SkeletonKind::Segment => "segment",
            SkeletonKind::Circle => "circle",
        }
    }

    #[getter]
    fn support(&self) -> Vec<String> {
        self.report.support.clone()
    }

    #[getter]
    fn params(&self) -> Vec<f64> {
        self.report.params.clone()
    }

    #[getter]
    fn total_len(&self) -> f64 {
        self.report.total_len
    }

    #[getter]
    fn covering_radius(&self) -> f64 {
        self.report.covering_radius
    }

    #[getter]
    fn distortion(&self) -> Option<f64> {
        self.report.distortion
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).unwrap()
    }

    fn __repr__(&self) -> String {
        format!(
            "Skeleton(kind={}, len={}, covering_radius={})",
            self.kind(),
            self.report.total_len,
            self.report.covering_radius
        )
    }
}

#[pyclass(name = "UrysohnMap")]
struct PyUrysohn {
    report: UrysohnReport,
    values: Vec<(String, f64)>,
}

#[pymethods]
impl PyUrysohn {
    #[getter]
    fn case(&self) -> String {
        serde_json::to_value(self.report.case).unwrap().as_str().unwrap().to_string()
    }

    #[getter]
    fn max_fiber_diameter(&self) -> f64 {
        self.report.max_fiber_diameter
    }

    #[getter]
    fn diameter_bound(&self) -> f64 {
        self.report.diameter_bound
    }

    fn values(&self) -> Vec<(String, f64)> {
        self.values.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).unwrap()
    }
}

fn family_from_args(
    family: &str,
    dim: usize,
    radius: f64,
    flat_dim: usize,
    height: f64,
) -> PyResult<ManifoldFamily> {
    Ok(match family {
        "sphere" => ManifoldFamily::Sphere { dim, radius },
        "flat" => ManifoldFamily::Flat { dim },
        "product" => ManifoldFamily::ProductSphereFlat { radius, flat_dim },
        "paraboloid" => ManifoldFamily::Paraboloid,
        "capped_cylinder" => ManifoldFamily::CappedCylinder { radius, height },
        other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    })
}

/// A closed-form manifold exposing Ricci eigenvalues and ball averages.
#[pyclass(name = "Manifold")]
struct PyManifold {
    inner: AnalyticManifold,
}

#[pymethods]
impl PyManifold {
    #[new]
    #[pyo3(signature = (family, dim = 2, radius = 1.0, flat_dim = 1, height = 4.0))]
    fn new(family: &str, dim: usize, radius: f64, flat_dim: usize, height: f64) -> PyResult<Self> {
        let fam = family_from_args(family, dim, radius, flat_dim, height)?;
        Ok(PyManifold { inner: AnalyticManifold::new(fam).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn ricci_eigenvalues(&self, point: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.ricci_eigenvalues(&point).map_err(err)
    }

    fn r_k(&self, point: Vec<f64>, k: usize) -> PyResult<f64> {
        self.inner.r_k(&point, k).map_err(err)
    }

    /// Average of 0 v (factor * R_k) ^ cap over the ball: (value, error).
    #[pyo3(signature = (base, r, k, factor, cap, samples = None, seed = 0))]
    fn ball_average(
        &self,
        base: Vec<f64>,
        r: f64,
        k: usize,
        factor: f64,
        cap: f64,
        samples: Option<u64>,
        seed: u64,
    ) -> PyResult<(f64, f64)> {
        let method = match samples {
            Some(samples) => Method::MonteCarlo { samples, seed },
            None => Method::Quadrature,
        };
        let integrand = Integrand::ClampRk { k, factor, cap };
        let est = ball_integral(&self.inner, &base, r, &integrand, &method).map_err(err)?;
        Ok((est.value, est.abs_error_bound))
    }

    /// Scan of F(r): returns ([(r, value, error)], trend).
    #[pyo3(signature = (k, alpha, cap, r_grid, samples = None, seed = 0))]
    fn scan(
        &self,
        k: usize,
        alpha: f64,
        cap: f64,
        r_grid: Vec<f64>,
        samples: Option<u64>,
        seed: u64,
    ) -> PyResult<(Vec<(f64, f64, f64)>, String)> {
        let method = match samples {
            Some(samples) => Method::MonteCarlo { samples, seed },
            None => Method::Quadrature,
        };
        let base = self.inner.chart_at_radius(0.0);
        let scan = tangent_hypothesis_scan(&self.inner, &base, k, alpha, cap, &r_grid, &method)
            .map_err(err)?;
        let points = scan.points.iter().map(|p| (p.r, p.value, p.error)).collect();
        let trend = serde_json::to_value(scan.trend).unwrap().as_str().unwrap().to_string();
        Ok((points, trend))
    }
}

/// Randomized falsification of the eigenvalue inequality: returns
/// (violations, trials).
#[pyfunction]
#[pyo3(signature = (n, k, trials, eps = 1.0, c = 4.0, c1 = 1e-4, eps_prime = 1e-4, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn l14(
    n: usize,
    k: usize,
    trials: u64,
    eps: f64,
    c: f64,
    c1: f64,
    eps_prime: f64,
    seed: u64,
) -> PyResult<(u64, u64)> {
    let res = eigen_inequality_search(n, k, eps, c, c1, eps_prime, trials, seed).map_err(err)?;
    Ok((res.violations, res.trials))
}

/// Scale-picking cover of a 1-D field: returns
/// ([(center, core_radius)], weighted_sum, bound).
#[pyfunction]
#[pyo3(signature = (values, lo, hi, s, eta, r_min, r_max))]
fn vitali_cover(
    values: Vec<f64>,
    lo: f64,
    hi: f64,
    s: f64,
    eta: f64,
    r_min: f64,
    r_max: f64,
) -> PyResult<(Vec<(f64, f64)>, f64, f64)> {
    let cells = values.len();
    let ball = DiscretizedBall::uniform(lo, hi, cells, values).map_err(err)?;
    let cover = scale_pick_cover(&ball, s, eta, r_min, r_max).map_err(err)?;
    let balls = cover.balls.iter().map(|b| (b.center, b.core_radius)).collect();
    let bound = cover.grid_constant / eta * cover.total_integral;
    Ok((balls, cover.weighted_sum, bound))
}

#[pymodule]
fn thinspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyThinness>()?;
    m.add_class::<PySkeleton>()?;
    m.add_class::<PyUrysohn>()?;
    m.add_class::<PyManifold>()?;
    m.add_function(wrap_pyfunction!(l14, m)?)?;
    m.add_function(wrap_pyfunction!(vitali_cover, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
