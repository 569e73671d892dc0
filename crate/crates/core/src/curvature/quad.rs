//! Adaptive Simpson quadrature with Richardson correction.

pub const DEFAULT_TOL: f64 = 1.0e-8;
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Initial uniform panels; piecewise integrands would otherwise satisfy the
/// convergence test before any panel samples their support.
const PANELS: u32 = 32;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`. Also returns the
/// number of function evaluations.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> (f64, u64) {
    if a == b {
        return (0.0, 0);
    }
    let mut evals = 0u64;
    let mut total = 0.0;
    let width = (b - a) / PANELS as f64;
    let panel_tol = tol / PANELS as f64;
    for i in 0..PANELS {
        let pa = a + i as f64 * width;
        let pb = if i + 1 == PANELS { b } else { a + (i + 1) as f64 * width };
        let m = 0.5 * (pa + pb);
        let (fa, fm, fb) = (f(pa), f(m), f(pb));
        evals += 3;
        let whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += recurse(f, pa, pb, fa, fm, fb, whole, panel_tol, max_depth, &mut evals);
    }
    (total, evals)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut u64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    *evals += 2;
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, evals)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, evals)
    }
}

/// Inverts a strictly increasing function by bisection on `[lo, hi]`.
pub fn invert_monotone<F: Fn(f64) -> f64>(f: &F, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    // expand hi until it brackets
    let mut guard = 0;
    while f(hi) < target && guard < 200 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
