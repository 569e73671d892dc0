//! The eigenvalue inequality checker: for near-orthonormal A and ordered
//! eigenvalues bounded below, `0 v sum_i sum_j lambda_j a_{j,i}^2` dominates
//! `sqrt(eps') (lambda_1 + ... + lambda_k)`. Includes a randomized
//! falsification search used to calibrate concrete (c1, eps') pairs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Calibrated defaults; the search below found no violation at these values.
pub const DEFAULT_C1: f64 = 1.0e-4;
pub const DEFAULT_EPS_PRIME: f64 = 1.0e-4;

/// An instance of the inequality: an n x k matrix with near-orthonormal
/// columns, sorted eigenvalues, and the constants of the hypotheses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenSample {
    /// Row-major n x k matrix.
    pub a: Vec<Vec<f64>>,
    /// Eigenvalues sorted ascending.
    pub lambda: Vec<f64>,
    pub eps_prime: f64,
    pub c1: f64,
    pub c: f64,
    pub eps: f64,
}

impl EigenSample {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> usize {
        self.a.first().map_or(0, |row| row.len())
    }

    /// Frobenius norm of `A^T A - I_k`.
    pub fn gram_defect(&self) -> f64 {
        let k = self.k();
        let mut sum = 0.0;
        for i in 0..k {
            for j in 0..k {
                let mut dot = 0.0;
                for row in &self.a {
                    dot += row[i] * row[j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                sum += (dot - target) * (dot - target);
            }
        }
        sum.sqrt()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.a.iter().flat_map(|row| row.iter()).map(|x| x * x).sum()
    }

    /// Checks the hypotheses of a positive instance.
    pub fn hypotheses_met(&self) -> bool {
        let (n, k) = (self.n(), self.k());
        if k == 0 || k > n || self.lambda.len() != n {
            return false;
        }
        if self.lambda.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        self.lambda[0] >= -self.eps_prime
            && self.lambda[k - 1] >= self.eps / (2.0 * k as f64)
            && self.gram_defect() <= self.c1
            && self.frobenius_sq() <= self.c
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenInequalityOutcome {
    pub holds: bool,
    pub hypotheses_met: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Evaluates both sides of the inequality exactly and compares them. When the
/// sample violates its hypotheses the raw comparison is still returned,
/// tagged by `hypotheses_met = false`.
pub fn eigen_inequality_verify(sample: &EigenSample) -> EigenInequalityOutcome {
    let k = sample.k();
    let mut weighted = 0.0;
    for i in 0..k {
        for (j, row) in sample.a.iter().enumerate() {
            weighted += sample.lambda[j] * row[i] * row[i];
        }
    }
    let lhs = weighted.max(0.0);
    let head: f64 = sample.lambda[..k].iter().sum();
    let rhs = sample.eps_prime.sqrt() * head;
    EigenInequalityOutcome { holds: lhs >= rhs, hypotheses_met: sample.hypotheses_met(), lhs, rhs }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenSearchResult {
    pub trials: u64,
    pub violations: u64,
    pub first_violation: Option<EigenSample>,
}

/// Randomized falsification search over valid samples.
///
/// Trials rotate through three generators: generic random instances,
/// boundary-pinned eigenvalues, and instances biased toward a near-zero head
/// sum with the matrix tilted onto the lowest eigenvalue (the regime where
/// large eps' fails). Only samples satisfying the hypotheses count.
#[allow(clippy::too_many_arguments)]
pub fn eigen_inequality_search(
    n: usize,
    k: usize,
    eps: f64,
    c: f64,
    c1: f64,
    eps_prime: f64,
    trials: u64,
    seed: u64,
) -> Result<EigenSearchResult> {
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    if trials < 1 {
        return Err(Error::BadParameters("need at least one trial".into()));
    }
    if (k as f64) > c {
        return Err(Error::BadParameters(format!(
            "|A|^2 of a near-orthonormal n x {k} matrix is about {k}, above c = {c}"
        )));
    }

    let outcome = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let sample = generate_sample(n, k, eps, c, c1, eps_prime, seed, trial);
            let out = eigen_inequality_verify(&sample);
            if out.hypotheses_met && !out.holds {
                (1u64, Some((trial, sample)))
            } else {
                (0u64, None)
            }
        })
        .reduce(
            || (0u64, None),
            |a, b| {
                let count = a.0 + b.0;
                let first = match (a.1, b.1) {
                    (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                    (x, y) => x.or(y),
                };
                (count, first)
            },
        );

    Ok(EigenSearchResult {
        trials,
        violations: outcome.0,
        first_violation: outcome.1.map(|(_, s)| s),
    })
}

fn splitmix(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn generate_sample(
    n: usize,
    k: usize,
    eps: f64,
    c: f64,
    c1: f64,
    eps_prime: f64,
    seed: u64,
    trial: u64,
) -> EigenSample {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed, trial));
    let floor_k = eps / (2.0 * k as f64);
    let (a, lambda) = match trial % 3 {
        0 => {
            // generic: random orthonormal columns plus a bounded perturbation
            let a = perturbed_orthonormal(&mut rng, n, k, c1, false);
            let mut high: Vec<f64> = (0..=(n - k))
                .map(|_| floor_k + rng.random::<f64>() * eps)
                .collect();
            high.sort_by(f64::total_cmp);
            let mut low: Vec<f64> = (0..k.saturating_sub(1))
                .map(|_| -eps_prime + rng.random::<f64>() * (high[0] + eps_prime))
                .collect();
            low.sort_by(f64::total_cmp);
            low.extend(high);
            (a, low)
        }
        1 => {
            // boundary: eigenvalues pinned to the hypothesis edges
            let a = perturbed_orthonormal(&mut rng, n, k, c1, true);
            let mut lambda = vec![-eps_prime; k - 1];
            lambda.push(floor_k);
            for _ in k..n {
                lambda.push(floor_k + rng.random::<f64>() * eps);
            }
            let mut tail = lambda.split_off(k);
            tail.sort_by(f64::total_cmp);
            lambda.extend(tail);
            (a, lambda)
        }
        _ => {
            // near-zero head sum with the matrix tilted onto lambda_1
            let a = perturbed_orthonormal(&mut rng, n, k, c1, true);
            let u = 0.9 + 0.1 * rng.random::<f64>();
            let mut lambda = vec![-eps_prime * u; k.saturating_sub(1)];
            let xi = 10f64.powf(-10.0 + 6.0 * rng.random::<f64>()) * eps;
            let head_target = eps_prime * u * (k as f64 - 1.0) + xi;
            lambda.push(head_target.max(floor_k));
            for _ in k..n {
                lambda.push(lambda[k - 1] + rng.random::<f64>() * eps);
            }
            let mut tail = lambda.split_off(k);
            tail.sort_by(f64::total_cmp);
            lambda.extend(tail);
            (a, lambda)
        }
    };
    let mut sample = EigenSample { a, lambda, eps_prime, c1, c, eps };
    // shrink the perturbation if rounding pushed the sample outside the
    // hypothesis region
    let mut guard = 0;
    while (sample.gram_defect() > c1 || sample.frobenius_sq() > c) && guard < 40 {
        shrink_toward_orthonormal(&mut sample.a);
        guard += 1;
    }
    sample
}

/// Random column-orthonormal n x k matrix (Gram-Schmidt on Gaussian columns),
/// perturbed within the Gram-defect budget. `tilt` mixes every column toward
/// the first coordinate axis, which moves quadratic-form weight onto the
/// lowest eigenvalue.
fn perturbed_orthonormal(rng: &mut ChaCha8Rng, n: usize, k: usize, c1: f64, tilt: bool) -> Vec<Vec<f64>> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    if tilt {
        for i in 0..k {
            let mut col = vec![0.0; n];
            col[i] = 1.0;
            cols.push(col);
        }
    } else {
        for _ in 0..k {
            let mut col: Vec<f64> =
                (0..n).map(|_| StandardNormal.sample(rng)).collect();
            for prev in &cols {
                let dot: f64 = col.iter().zip(prev).map(|(x, y)| x * y).sum();
                for (x, y) in col.iter_mut().zip(prev) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut col {
                *x /= norm.max(1e-300);
            }
            cols.push(col);
        }
    }

    if tilt {
        // tilt columns 2.. toward e_1 as far as the Gram budget allows
        let delta = 0.98 * c1 / (2.0 * (k as f64 - 1.0).max(1.0)).sqrt();
        for col in cols.iter_mut().skip(1) {
            col[0] += delta;
            let norm: f64 = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in col.iter_mut() {
                *x /= norm;
            }
        }
    } else {
        let delta = 0.3 * c1 / (n as f64 * k as f64).sqrt();
        for col in cols.iter_mut() {
            for x in col.iter_mut() {
                let g: f64 = StandardNormal.sample(rng);
                *x += delta * g;
            }
        }
    }

    // transpose to row-major
    let mut a = vec![vec![0.0; k]; n];
    for (i, col) in cols.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            a[j][i] = x;
        }
    }
    a
}

fn shrink_toward_orthonormal(a: &mut [Vec<f64>]) {
    let n = a.len();
    let k = a[0].len();
    // pull each column halfway back to the nearest coordinate frame column
    for i in 0..k {
        let mut norm = 0.0;
        for row in a.iter() {
            norm += row[i] * row[i];
        }
        let norm = norm.sqrt().max(1e-300);
        for row in a.iter_mut() {
            row[i] /= norm;
        }
    }
    let _ = n;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_sample(n: usize, k: usize, lambda: Vec<f64>, eps_prime: f64) -> EigenSample {
        let mut a = vec![vec![0.0; k]; n];
        for i in 0..k {
            a[i][i] = 1.0;
        }
        EigenSample { a, lambda, eps_prime, c1: 0.01, c: 4.0, eps: 1.0 }
    }

    #[test]
    fn orthonormal_columns_hold() {
        // all eigenvalues 1: lhs = k, rhs = 0.1 k
        let s = identity_sample(3, 2, vec![1.0, 1.0, 1.0], 0.01);
        let out = eigen_inequality_verify(&s);
        assert!(out.hypotheses_met);
        assert!(out.holds);
        assert_eq!(out.lhs, 2.0);
        assert!((out.rhs - 0.2).abs() < 1e-12);
    }

    #[test]
    fn negative_low_eigenvalue_holds() {
        let eps_prime = 0.01;
        let s = identity_sample(3, 2, vec![-eps_prime, 1.0, 1.0], eps_prime);
        let out = eigen_inequality_verify(&s);
        assert!(out.hypotheses_met);
        assert!(out.holds);
    }

    #[test]
    fn unmet_hypotheses_are_tagged() {
        // concentrate all weight on a large negative eigenvalue; the Gram
        // defect is far above c1, and the raw comparison fails
        let a = vec![vec![1.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0]];
        let s = EigenSample {
            a,
            lambda: vec![-0.9, 1.0, 1.0],
            eps_prime: 0.9,
            c1: 1e-4,
            c: 4.0,
            eps: 1.0,
        };
        let out = eigen_inequality_verify(&s);
        assert!(!out.hypotheses_met);
        // lhs clamps to 0 while rhs = sqrt(0.9) * 0.1 > 0
        assert!(!out.holds);
    }

    #[test]
    fn eigen_search_one_dimensional_clean() {
        let res = eigen_inequality_search(1, 1, 1.0, 4.0, 1e-4, 1e-4, 20_000, 7).unwrap();
        assert_eq!(res.violations, 0);
    }

    #[test]
    fn eigen_search_small_eps_prime_clean() {
        let res = eigen_inequality_search(3, 2, 1.0, 4.0, 1e-4, 1e-4, 50_000, 7).unwrap();
        assert_eq!(res.violations, 0, "unexpected violation: {:?}", res.first_violation);
    }

    #[test]
    fn eigen_search_huge_eps_prime_violates() {
        let res = eigen_inequality_search(3, 2, 1.0, 4.0, 1e-4, 0.9, 50_000, 7).unwrap();
        assert!(res.violations > 0);
        let sample = res.first_violation.unwrap();
        let out = eigen_inequality_verify(&sample);
        assert!(out.hypotheses_met);
        assert!(!out.holds);
    }
}
