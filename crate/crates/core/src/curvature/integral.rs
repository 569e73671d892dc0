//! Average integrals over geodesic balls: radial quadrature from symmetry
//! points, stratified Monte Carlo, and the clamped curvature functionals
//! scanned over growing radii.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvature::manifold::{paraboloid_chart_radius, AnalyticManifold, ManifoldFamily};
use crate::curvature::quad::{adaptive_simpson, DEFAULT_MAX_DEPTH, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Scalar fields built from the Ricci eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Integrand {
    /// `0 v (factor * R_k) ^ cap` (max with zero, min with cap).
    ClampRk { k: usize, factor: f64, cap: f64 },
    /// `|R|^s` for the scalar curvature R.
    ScalarPower { s: f64 },
}

impl Integrand {
    pub fn eval(&self, m: &AnalyticManifold, point: &[f64]) -> Result<f64> {
        match self {
            Integrand::ClampRk { k, factor, cap } => {
                let rk = m.r_k(point, *k)?;
                Ok((factor * rk).clamp(0.0, *cap))
            }
            Integrand::ScalarPower { s } => {
                if !(*s > 0.0 && *s < 1.0) {
                    return Err(Error::BadExponent(*s));
                }
                Ok(m.scalar(point)?.abs().powf(*s))
            }
        }
    }

    fn validate(&self, m: &AnalyticManifold) -> Result<()> {
        match self {
            Integrand::ClampRk { k, cap, .. } => {
                if *k < 1 || *k > m.dim() {
                    return Err(Error::BadK { k: *k, n: m.dim() });
                }
                if !(*cap > 0.0) {
                    return Err(Error::BadParameters(format!("cap must be positive, got {cap}")));
                }
                Ok(())
            }
            Integrand::ScalarPower { s } => {
                if !(*s > 0.0 && *s < 1.0) {
                    return Err(Error::BadExponent(*s));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone)]
pub enum Method {
    Quadrature,
    MonteCarlo { samples: u64, seed: u64 },
}

/// An average-integral value with its error bound. Quadrature bounds are
/// deterministic tolerances; Monte Carlo bounds are 3-sigma estimates and
/// therefore probabilistic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method: MethodKind,
    pub evals: u64,
}

/// Average of the integrand over the geodesic ball of radius `r` at `base`.
///
/// Rotationally symmetric families integrate radially from the symmetry point
/// (apex, pole, or any point of a homogeneous family); the paraboloid off the
/// apex falls back to Monte Carlo rejection in chart coordinates.
pub fn ball_integral(
    m: &AnalyticManifold,
    base: &[f64],
    r: f64,
    integrand: &Integrand,
    method: &Method,
) -> Result<IntegralEstimate> {
    if !(r > 0.0) {
        return Err(Error::BadParameters(format!("ball radius must be positive, got {r}")));
    }
    integrand.validate(m)?;
    let coord = m.chart_coord(base)?;

    match (&m.family, method) {
        (ManifoldFamily::ProductSphereFlat { .. }, Method::Quadrature) => {
            // homogeneous: the field is constant, the average is exact
            let value = integrand.eval(m, base)?;
            Ok(IntegralEstimate { value, abs_error_bound: 0.0, method: MethodKind::Quadrature, evals: 1 })
        }
        (ManifoldFamily::ProductSphereFlat { radius, flat_dim }, Method::MonteCarlo { samples, seed }) => {
            product_monte_carlo(m, *radius, *flat_dim, r, integrand, *samples, *seed)
        }
        (ManifoldFamily::Paraboloid, Method::Quadrature) => {
            if coord != 0.0 {
                return Err(Error::UnsupportedBase(format!(
                    "paraboloid quadrature needs the apex, got chart radius {coord}"
                )));
            }
            paraboloid_apex_quadrature(m, r, integrand)
        }
        (ManifoldFamily::Paraboloid, Method::MonteCarlo { samples, seed }) => {
            if coord == 0.0 {
                paraboloid_apex_monte_carlo(m, r, integrand, *samples, *seed)
            } else {
                paraboloid_offapex_monte_carlo(m, coord, r, integrand, *samples, *seed)
            }
        }
        (ManifoldFamily::CappedCylinder { radius, height }, _) => {
            let total = std::f64::consts::PI * radius + height;
            let from_top = if coord == 0.0 {
                false
            } else if coord == total {
                true
            } else {
                return Err(Error::UnsupportedBase(format!(
                    "capped cylinder integrals need a pole, got profile arclength {coord}"
                )));
            };
            radial_integral(m, r, integrand, method, from_top)
        }
        (_, method) => radial_integral(m, r, integrand, method, false),
    }
}

/// Radial average for families with a known geodesic-sphere density.
fn radial_integral(
    m: &AnalyticManifold,
    r: f64,
    integrand: &Integrand,
    method: &Method,
    mirrored: bool,
) -> Result<IntegralEstimate> {
    let hi = r.min(m.max_radius());
    let total = m.max_radius();
    let field = |s: f64| -> f64 {
        let coord = if mirrored { total - s } else { s };
        integrand.eval(m, &m.chart_at_radius(coord)).unwrap_or(f64::NAN)
    };
    let dens = |s: f64| m.radial_density(s);
    match method {
        Method::Quadrature => {
            let (num, e1) =
                adaptive_simpson(&|s| field(s) * dens(s), 0.0, hi, DEFAULT_TOL, DEFAULT_MAX_DEPTH);
            let (den, e2) = adaptive_simpson(&dens, 0.0, hi, DEFAULT_TOL, DEFAULT_MAX_DEPTH);
            if !(den > 0.0) {
                return Err(Error::BadParameters("degenerate ball volume".into()));
            }
            let value = num / den;
            let abs_error_bound = (DEFAULT_TOL + value.abs() * DEFAULT_TOL) / den;
            Ok(IntegralEstimate { value, abs_error_bound, method: MethodKind::Quadrature, evals: e1 + e2 })
        }
        Method::MonteCarlo { samples, seed } => {
            stratified_radial_mc(&field, &dens, 0.0, hi, *samples, *seed)
        }
    }
}

/// Paraboloid ball average around the apex in the chart coordinate: the ball
/// of geodesic radius `r` is the chart disk of radius `U(r)` and the area
/// density is `u sqrt(1 + 4 u^2)`.
fn paraboloid_apex_quadrature(
    m: &AnalyticManifold,
    r: f64,
    integrand: &Integrand,
) -> Result<IntegralEstimate> {
    let u_max = paraboloid_chart_radius(r);
    let dens = |u: f64| u * (1.0 + 4.0 * u * u).sqrt();
    let field = |u: f64| integrand.eval(m, &[u]).unwrap_or(f64::NAN);
    let (num, e1) =
        adaptive_simpson(&|u| field(u) * dens(u), 0.0, u_max, DEFAULT_TOL, DEFAULT_MAX_DEPTH);
    let (den, e2) = adaptive_simpson(&dens, 0.0, u_max, DEFAULT_TOL, DEFAULT_MAX_DEPTH);
    if !(den > 0.0) {
        return Err(Error::BadParameters("degenerate ball volume".into()));
    }
    let value = num / den;
    let abs_error_bound = (DEFAULT_TOL + value.abs() * DEFAULT_TOL) / den;
    Ok(IntegralEstimate { value, abs_error_bound, method: MethodKind::Quadrature, evals: e1 + e2 })
}

fn paraboloid_apex_monte_carlo(
    m: &AnalyticManifold,
    r: f64,
    integrand: &Integrand,
    samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    let u_max = paraboloid_chart_radius(r);
    let dens = |u: f64| u * (1.0 + 4.0 * u * u).sqrt();
    let field = |u: f64| integrand.eval(m, &[u]).unwrap_or(f64::NAN);
    stratified_radial_mc(&field, &dens, 0.0, u_max, samples, seed)
}

/// Stratified 1-D Monte Carlo of `avg = int f dens / int dens` with a 3-sigma
/// error estimate (covariance between numerator and denominator ignored,
/// which errs conservative).
fn stratified_radial_mc(
    field: &dyn Fn(f64) -> f64,
    dens: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    if samples == 0 {
        return Err(Error::BadParameters("Monte Carlo needs samples >= 1".into()));
    }
    let strata = (samples / 16).clamp(4, 64);
    let per = (samples / strata).max(1);
    let width = (hi - lo) / strata as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut num = 0.0;
    let mut den = 0.0;
    let mut var_num = 0.0;
    let mut var_den = 0.0;
    let mut evals = 0u64;
    for j in 0..strata {
        let a = lo + j as f64 * width;
        let mut fd = Vec::with_capacity(per as usize);
        let mut dd = Vec::with_capacity(per as usize);
        for _ in 0..per {
            let t = a + rng.random::<f64>() * width;
            let d = dens(t);
            fd.push(field(t) * d);
            dd.push(d);
            evals += 1;
        }
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
        let var = |xs: &[f64], mu: f64| {
            if xs.len() < 2 {
                0.0
            } else {
                xs.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (xs.len() - 1) as f64
            }
        };
        let (mfd, mdd) = (mean(&fd), mean(&dd));
        num += width * mfd;
        den += width * mdd;
        var_num += width * width * var(&fd, mfd) / per as f64;
        var_den += width * width * var(&dd, mdd) / per as f64;
    }
    if !(den > 0.0) {
        return Err(Error::BadParameters("degenerate ball volume".into()));
    }
    let value = num / den;
    let sigma = (var_num + value * value * var_den).sqrt() / den;
    Ok(IntegralEstimate {
        value,
        abs_error_bound: 3.0 * sigma,
        method: MethodKind::MonteCarlo,
        evals,
    })
}

/// Monte Carlo on S^2(radius) x R^d: the flat radial coordinate is stratified
/// and each draw is weighted by the spherical cap area compatible with the
/// joint ball constraint.
fn product_monte_carlo(
    m: &AnalyticManifold,
    radius: f64,
    flat_dim: usize,
    r: f64,
    integrand: &Integrand,
    samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    if samples == 0 {
        return Err(Error::BadParameters("Monte Carlo needs samples >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strata = (samples / 16).clamp(4, 64);
    let per = (samples / strata).max(1);
    let d = flat_dim as f64;
    let cap_area = |t: f64| {
        let theta = (t / radius).min(std::f64::consts::PI);
        2.0 * std::f64::consts::PI * radius * radius * (1.0 - theta.cos())
    };
    let mut wsum = 0.0;
    let mut wfsum = 0.0;
    let mut points = Vec::new();
    for j in 0..strata {
        for _ in 0..per {
            // flat radius with density prop. to x^(d-1), stratified in the cdf
            let q = (j as f64 + rng.random::<f64>()) / strata as f64;
            let x = r * q.powf(1.0 / d);
            let w = cap_area((r * r - x * x).max(0.0).sqrt());
            let f = integrand.eval(m, &[])?;
            wsum += w;
            wfsum += w * f;
            points.push((w, f));
        }
    }
    if !(wsum > 0.0) {
        return Err(Error::BadParameters("degenerate ball volume".into()));
    }
    let value = wfsum / wsum;
    let var = points.iter().map(|(w, f)| (w * (f - value)).powi(2)).sum::<f64>();
    let sigma = var.sqrt() / wsum;
    Ok(IntegralEstimate {
        value,
        abs_error_bound: 3.0 * sigma,
        method: MethodKind::MonteCarlo,
        evals: points.len() as u64,
    })
}

/// Off-apex paraboloid ball average by rejection in chart coordinates.
///
/// Membership in the geodesic ball is decided through a lower bound (the R^3
/// chord) and an upper bound (radial-plus-arc or through-apex path lengths);
/// samples falling between the bounds contribute to the error interval.
fn paraboloid_offapex_monte_carlo(
    m: &AnalyticManifold,
    base_u: f64,
    r: f64,
    integrand: &Integrand,
    samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    if samples == 0 {
        return Err(Error::BadParameters("Monte Carlo needs samples >= 1".into()));
    }
    let s0 = AnalyticManifold::paraboloid_arclength(base_u);
    let u_lo = if s0 > r { paraboloid_chart_radius(s0 - r) } else { 0.0 };
    let u_hi = paraboloid_chart_radius(s0 + r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let chord = |u: f64, phi: f64| -> f64 {
        let (x1, y1, z1) = (u * phi.cos(), u * phi.sin(), u * u);
        let (x2, y2, z2) = (base_u, 0.0, base_u * base_u);
        ((x1 - x2).powi(2) + (y1 - y2).powi(2) + (z1 - z2).powi(2)).sqrt()
    };
    let upper = |u: f64, phi: f64| -> f64 {
        let s = AnalyticManifold::paraboloid_arclength(u);
        let around = (s - s0).abs() + u.min(base_u) * phi.abs();
        let through_apex = s + s0;
        around.min(through_apex)
    };

    let mut w_in = 0.0;
    let mut wf_in = 0.0;
    let mut w_amb = 0.0;
    let mut wf_amb = 0.0;
    let mut in_points: Vec<(f64, f64)> = Vec::new();
    for _ in 0..samples {
        let u = u_lo + rng.random::<f64>() * (u_hi - u_lo);
        let phi = (rng.random::<f64>() - 0.5) * 2.0 * std::f64::consts::PI;
        if chord(u, phi) > r {
            continue;
        }
        let w = u * (1.0 + 4.0 * u * u).sqrt();
        let f = integrand.eval(m, &[u])?;
        if upper(u, phi) <= r {
            w_in += w;
            wf_in += w * f;
            in_points.push((w, f));
        } else {
            w_amb += w;
            wf_amb += w * f;
        }
    }
    if !(w_in > 0.0) {
        return Err(Error::BadParameters("no samples landed in the ball".into()));
    }
    let v_out = wf_in / w_in;
    let v_in = (wf_in + wf_amb) / (w_in + w_amb);
    let value = 0.5 * (v_in + v_out);
    let var = in_points.iter().map(|(w, f)| (w * (f - v_out)).powi(2)).sum::<f64>();
    let sigma = var.sqrt() / w_in;
    Ok(IntegralEstimate {
        value,
        abs_error_bound: 0.5 * (v_in - v_out).abs() + 3.0 * sigma,
        method: MethodKind::MonteCarlo,
        evals: samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    ApproachingCap,
    ApproachingZero,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanResult {
    pub alpha: f64,
    pub k: usize,
    pub cap: f64,
    pub points: Vec<ScanPoint>,
    pub trend: Trend,
}

/// Evaluates `F(r) = avg over B_r of 0 v (r^(2-alpha) R_k) ^ cap` on the grid
/// and classifies the tail trend over the last third of the grid.
pub fn tangent_hypothesis_scan(
    m: &AnalyticManifold,
    base: &[f64],
    k: usize,
    alpha: f64,
    cap: f64,
    r_grid: &[f64],
    method: &Method,
) -> Result<ScanResult> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::BadParameters(format!("alpha must lie in (0, 2), got {alpha}")));
    }
    if r_grid.is_empty() || r_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameters("r grid must be nonempty and increasing".into()));
    }
    let mut points = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let integrand = Integrand::ClampRk { k, factor: r.powf(2.0 - alpha), cap };
        let est = ball_integral(m, base, r, &integrand, method)?;
        points.push(ScanPoint { r, value: est.value, error: est.abs_error_bound });
    }
    let tail_len = points.len().div_ceil(3);
    let tail = &points[points.len() - tail_len..];
    let slack: f64 = tail.iter().map(|p| p.error).sum::<f64>();
    let non_increasing = tail.windows(2).all(|w| w[1].value <= w[0].value + slack);
    let last = tail.last().unwrap().value;
    let trend = if tail.iter().all(|p| p.value >= 0.9 * cap) {
        Trend::ApproachingCap
    } else if non_increasing && last <= 0.1 * cap {
        Trend::ApproachingZero
    } else {
        Trend::Inconclusive
    };
    Ok(ScanResult { alpha, k, cap, points, trend })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifold(f: ManifoldFamily) -> AnalyticManifold {
        AnalyticManifold::new(f).unwrap()
    }

    #[test]
    fn flat_clamp_is_zero() {
        let m = manifold(ManifoldFamily::Flat { dim: 2 });
        let ig = Integrand::ClampRk { k: 1, factor: 1.0, cap: 5.0 };
        let q = ball_integral(&m, &[], 3.0, &ig, &Method::Quadrature).unwrap();
        assert_eq!(q.value, 0.0);
        let mc = ball_integral(&m, &[], 3.0, &ig, &Method::MonteCarlo { samples: 2000, seed: 1 })
            .unwrap();
        assert!(mc.value.abs() <= mc.abs_error_bound);
    }

    #[test]
    fn whole_unit_sphere_average() {
        let m = manifold(ManifoldFamily::Sphere { dim: 2, radius: 1.0 });
        let ig = Integrand::ClampRk { k: 1, factor: 1.0, cap: 10.0 };
        let q = ball_integral(&m, &[], std::f64::consts::PI, &ig, &Method::Quadrature).unwrap();
        assert!((q.value - 1.0).abs() < 1e-7, "{}", q.value);
    }

    #[test]
    fn constant_average_both_methods() {
        // clamp saturates, so the field is the constant cap
        let m = manifold(ManifoldFamily::Sphere { dim: 3, radius: 2.0 });
        let ig = Integrand::ClampRk { k: 2, factor: 100.0, cap: 0.7 };
        let q = ball_integral(&m, &[], 1.5, &ig, &Method::Quadrature).unwrap();
        assert!((q.value - 0.7).abs() <= q.abs_error_bound + 1e-9);
        let mc =
            ball_integral(&m, &[], 1.5, &ig, &Method::MonteCarlo { samples: 4000, seed: 9 }).unwrap();
        assert!((mc.value - 0.7).abs() <= mc.abs_error_bound.max(1e-9));
    }

    #[test]
    fn product_average_is_exact_constant() {
        let m = manifold(ManifoldFamily::ProductSphereFlat { radius: 1.0, flat_dim: 1 });
        let ig = Integrand::ClampRk { k: 2, factor: 1.0, cap: 10.0 };
        let q = ball_integral(&m, &[], 4.0, &ig, &Method::Quadrature).unwrap();
        assert_eq!(q.value, 1.0);
        let mc =
            ball_integral(&m, &[], 4.0, &ig, &Method::MonteCarlo { samples: 1000, seed: 3 }).unwrap();
        assert!((mc.value - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn capped_cylinder_cap_fraction() {
        // caps carry R_2 = 2 (rho = 1), the side carries 0; cap area fraction
        // of the whole space is 4 pi / (4 pi + 2 pi h)
        let m = manifold(ManifoldFamily::CappedCylinder { radius: 1.0, height: 4.0 });
        let ig = Integrand::ClampRk { k: 2, factor: 1.0, cap: 10.0 };
        let whole = m.max_radius();
        let q = ball_integral(&m, &[0.0], whole, &ig, &Method::Quadrature).unwrap();
        let exact = 2.0 * (4.0 * std::f64::consts::PI)
            / (4.0 * std::f64::consts::PI + 2.0 * std::f64::consts::PI * 4.0);
        assert!((q.value - exact).abs() < 1e-6, "{} vs {exact}", q.value);
        // same from the top pole by symmetry
        let top = ball_integral(&m, &[whole], whole, &ig, &Method::Quadrature).unwrap();
        assert!((top.value - exact).abs() < 1e-6);
        // off-pole bases are not radially reducible
        assert!(matches!(
            ball_integral(&m, &[2.0], 1.0, &ig, &Method::Quadrature),
            Err(Error::UnsupportedBase(_))
        ));
    }

    #[test]
    fn ball_volume_monotone() {
        let m = manifold(ManifoldFamily::CappedCylinder { radius: 1.0, height: 3.0 });
        let mut last = 0.0;
        for i in 1..=12 {
            let r = 0.5 * i as f64;
            let (vol, _) = adaptive_simpson(
                &|s| m.radial_density(s),
                0.0,
                r.min(m.max_radius()),
                1e-10,
                40,
            );
            assert!(vol >= last - 1e-12);
            last = vol;
        }
    }

    #[test]
    fn paraboloid_quadrature_needs_apex() {
        let m = manifold(ManifoldFamily::Paraboloid);
        let ig = Integrand::ClampRk { k: 1, factor: 1.0, cap: 1.0 };
        assert!(matches!(
            ball_integral(&m, &[2.0], 1.0, &ig, &Method::Quadrature),
            Err(Error::UnsupportedBase(_))
        ));
    }

    #[test]
    fn paraboloid_mc_matches_quadrature_at_apex() {
        let m = manifold(ManifoldFamily::Paraboloid);
        let ig = Integrand::ClampRk { k: 1, factor: 4.0, cap: 1.0 };
        let q = ball_integral(&m, &[0.0], 4.0, &ig, &Method::Quadrature).unwrap();
        let mc = ball_integral(&m, &[0.0], 4.0, &ig, &Method::MonteCarlo { samples: 60_000, seed: 7 })
            .unwrap();
        assert!(
            (q.value - mc.value).abs() <= mc.abs_error_bound + 1e-6,
            "{} vs {} +- {}",
            q.value,
            mc.value,
            mc.abs_error_bound
        );
    }

    #[test]
    fn paraboloid_offapex_constant_field() {
        let m = manifold(ManifoldFamily::Paraboloid);
        // factor large enough that the clamp saturates everywhere
        let ig = Integrand::ClampRk { k: 1, factor: 1e12, cap: 0.7 };
        let mc = ball_integral(&m, &[3.0], 2.0, &ig, &Method::MonteCarlo { samples: 20_000, seed: 5 })
            .unwrap();
        assert!((mc.value - 0.7).abs() <= mc.abs_error_bound.max(1e-9), "{}", mc.value);
    }

    #[test]
    fn clamp_monotone_in_cap_and_factor() {
        let m = manifold(ManifoldFamily::Paraboloid);
        let value = |factor: f64, cap: f64| {
            let ig = Integrand::ClampRk { k: 1, factor, cap };
            ball_integral(&m, &[0.0], 5.0, &ig, &Method::Quadrature).unwrap().value
        };
        let mut last = 0.0;
        for i in 1..=6 {
            let v = value(1.0, 0.2 * i as f64);
            assert!(v >= last - 1e-10);
            last = v;
        }
        last = 0.0;
        for i in 1..=6 {
            let v = value(0.5 * i as f64, 1.0);
            assert!(v >= last - 1e-10);
            last = v;
        }
    }

    #[test]
    fn product_scan_is_identically_zero() {
        let m = manifold(ManifoldFamily::ProductSphereFlat { radius: 1.0, flat_dim: 1 });
        let scan = tangent_hypothesis_scan(
            &m,
            &[],
            1,
            1.0,
            1.0,
            &[1.0, 2.0, 4.0, 8.0],
            &Method::Quadrature,
        )
        .unwrap();
        assert!(scan.points.iter().all(|p| p.value == 0.0));
        assert_eq!(scan.trend, Trend::ApproachingZero);
    }

    #[test]
    fn sphere_scan_saturates() {
        let m = manifold(ManifoldFamily::Sphere { dim: 2, radius: 1.0 });
        let scan = tangent_hypothesis_scan(
            &m,
            &[],
            1,
            1.0,
            1.0,
            &[4.0, 8.0, 16.0, 32.0],
            &Method::Quadrature,
        )
        .unwrap();
        assert_eq!(scan.trend, Trend::ApproachingCap);
    }

    #[test]
    fn scan_rejects_bad_alpha() {
        let m = manifold(ManifoldFamily::Paraboloid);
        assert!(tangent_hypothesis_scan(&m, &[0.0], 1, 2.0, 1.0, &[1.0], &Method::Quadrature)
            .is_err());
    }
}
