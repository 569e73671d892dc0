//! Property tests for the metric primitives, the thin condition, skeleton
//! machinery, width maps, and the numeric subsystems.

mod common;

use proptest::prelude::*;

use thinspace_core::curvature::{
    ball_integral, eigen_inequality_verify, AnalyticManifold, EigenSample, Integrand, ManifoldFamily, Method,
};
use thinspace_core::families;
use thinspace_core::skeleton::{min_anchored_cycle, AnchorTriple};
use thinspace_core::space::{PointSet, SegmentSearch, Vertex};
use thinspace_core::thinness::{net_trichotomy_check, replay_witness, thin_check, ThinOpts, TrichotomyCase};
use thinspace_core::urysohn::{build_urysohn_map, edge_continuity_excess, lipschitz_excess};

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Exact triangle inequality over all triples of random small spaces.
    #[test]
    fn triangle_inequality(seed in 0u64..500, n in 5usize..40, extra in 0usize..6) {
        let s = families::random_connected_space(n, extra, seed);
        for u in s.vertices() {
            let ru = s.dist_row(u);
            for v in s.vertices() {
                let rv = s.dist_row(v);
                for w in s.vertices() {
                    prop_assert!(ru[w.0] <= ru[v.0] + rv[w.0] + 1e-12);
                }
            }
        }
    }

    /// Inverse projection members project back: x in fiber(K, y, 0) implies
    /// y in project(K, x).
    #[test]
    fn projection_consistency(seed in 0u64..500, n in 5usize..40) {
        let s = families::random_connected_space(n, 2, seed);
        let k_members: Vec<Vertex> = s.vertices().step_by(3).collect();
        let k = PointSet::new(k_members);
        let y = k.members()[seed as usize % k.len()];
        let fiber = s.inverse_project(&k, y, 0.0).unwrap();
        for x in fiber.iter() {
            let proj = s.project(&k, x).unwrap();
            prop_assert!(proj.contains(y));
        }
    }

    /// Canonical segments realize the distance, and the exhaustive maximal
    /// segment realizes the diameter.
    #[test]
    fn segments_realize_distances(seed in 0u64..500, n in 5usize..40) {
        let s = families::random_connected_space(n, 3, seed);
        let a = Vertex(seed as usize % n);
        let b = Vertex((seed as usize * 13 + 7) % n);
        let seg = s.shortest_segment(a, b);
        prop_assert_eq!(seg.len(), s.dist(a, b));
        prop_assert_eq!(seg.geo_defect, 0.0);

        let max_seg = s.maximal_segment(SegmentSearch::Exhaustive);
        let mut diameter = 0.0_f64;
        for u in s.vertices() {
            let row = s.dist_row(u);
            for v in s.vertices() {
                diameter = diameter.max(row[v.0]);
            }
        }
        prop_assert_eq!(max_seg.segment.len(), diameter);
    }

    /// Monotonicity in D at fixed R and fixed parameter step.
    #[test]
    fn thinness_monotone_in_d(seed in 0u64..300, n in 12usize..40) {
        let s = families::random_connected_space(n, seed as usize % 3, seed);
        let diam = s.maximal_segment(SegmentSearch::Exhaustive).segment.len();
        let d2 = diam / 60.0;
        let r = 20.0 * d2;
        let d1 = d2 / 2.0;
        let opts = ThinOpts { t_step: Some(d1 / 4.0), ..Default::default() };
        let rep1 = thin_check(&s, r, d1, &opts).unwrap();
        let rep2 = thin_check(&s, r, d2, &opts).unwrap();
        if rep1.passed() {
            prop_assert!(rep2.passed());
        }
    }

    /// Every failing report carries a witness that replays through the metric
    /// primitives.
    #[test]
    fn witnesses_replay(seed in 0u64..300, n in 12usize..45) {
        let s = families::random_connected_space(n, seed as usize % 4, seed);
        let diam = s.maximal_segment(SegmentSearch::Exhaustive).segment.len();
        let d = diam / 60.0;
        let r = 20.0 * d;
        let rep = thin_check(&s, r, d, &ThinOpts::default()).unwrap();
        if let Some(w) = &rep.witness {
            replay_witness(&s, w, r, d, rep.tol).unwrap();
        }
    }

    /// The minimal anchored cycle matches a brute-force scan over all triples
    /// and is invariant under cyclic relabeling of the anchors.
    #[test]
    fn anchored_cycle_oracle_and_symmetry(seed in 0u64..200, n in 30usize..60) {
        let s = families::cycle_space(n);
        let third = n / 3;
        let at = |i: usize| Vertex(i % n);
        let intervals = [
            vec![at(seed as usize % 3)],
            vec![at(third + seed as usize % 3)],
            vec![at(2 * third)],
        ];
        let d = 1.0;
        let anchors = AnchorTriple { intervals: intervals.clone() };
        let cyc = min_anchored_cycle(&s, &anchors, d).unwrap();
        let oracle = common::oracle_min_anchored_len(&s, &intervals, d).unwrap();
        prop_assert_eq!(cyc.total_len, oracle);

        let rotated = AnchorTriple {
            intervals: [intervals[1].clone(), intervals[2].clone(), intervals[0].clone()],
        };
        let cyc2 = min_anchored_cycle(&s, &rotated, d).unwrap();
        prop_assert_eq!(cyc2.total_len, cyc.total_len);
    }

    /// On certified thin spaces, hypothesis-satisfying (segment, curve) pairs
    /// never produce a trichotomy violation.
    #[test]
    fn trichotomy_never_violates_on_thin_spaces(seed in 0u64..200, half in 30usize..80) {
        // cycles are thin at R = half/4 with small D
        let n = 2 * half;
        let s = families::cycle_space(n);
        let r = half as f64 / 4.0;
        // power-of-two divisor keeps r >= 20 d exact
        let d = r / 32.0;
        let opts = ThinOpts { segment_budget: Some(16), ..Default::default() };
        let certified = thin_check(&s, r, d, &opts).unwrap();
        prop_assume!(certified.passed());

        let start = seed as usize % n;
        let l = s.shortest_segment(Vertex(start), Vertex((start + half) % n));
        prop_assume!(l.len() > 2.0 * r);
        // a curve wandering from a middle vertex to one end of the segment
        let mid = l.path[l.path.len() / 2];
        let target = l.end();
        let alpha = s.shortest_segment(mid, target).path;
        match net_trichotomy_check(&s, &l, &alpha, r, d) {
            Ok(case) => prop_assert!(case != TrichotomyCase::Violation),
            Err(thinspace_core::Error::HypothesisNotMet(_)) => {},
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    /// Width maps are 1-Lipschitz and edge-continuous on thin graph families.
    #[test]
    fn width_maps_are_lipschitz(kind in 0usize..3, size in 40usize..120, r_choice in 1usize..4) {
        let r = 2.0 * r_choice as f64;
        let (space, r, d) = match kind {
            0 => (families::path_space(size * 4), r, r / 32.0),
            1 => (families::cycle_space(size * 4), r, r / 32.0),
            _ => (families::cylinder_space(6, size), 140.0, 7.0),
        };
        let opts = ThinOpts { segment_budget: Some(24), ..Default::default() };
        let certified = thin_check(&space, r, d, &opts).unwrap();
        prop_assume!(certified.passed());
        let sk = thinspace_core::skeleton::extract_skeleton(&space, r, d, &certified).unwrap();
        let map = build_urysohn_map(&space, &sk, r, None).unwrap();
        prop_assert!(lipschitz_excess(&space, &map, 500) <= 1e-12);
        prop_assert!(edge_continuity_excess(&space, &map) <= 1e-12);
        prop_assert!(map.max_fiber_diameter() <= map.diameter_bound());
    }

    /// The average of a clamp-saturated (constant) field is the constant, for
    /// both quadrature and Monte Carlo, within reported error bounds.
    #[test]
    fn constant_field_averages(radius in 1usize..6, cap_milli in 100u64..900, seed in 0u64..100) {
        let cap = cap_milli as f64 / 1000.0;
        let m = AnalyticManifold::new(ManifoldFamily::Sphere { dim: 2, radius: radius as f64 }).unwrap();
        let integrand = Integrand::ClampRk { k: 1, factor: 1e9, cap };
        let r = radius as f64;
        let q = ball_integral(&m, &[], r, &integrand, &Method::Quadrature).unwrap();
        prop_assert!((q.value - cap).abs() <= q.abs_error_bound + 1e-9);
        let mc = ball_integral(&m, &[], r, &integrand, &Method::MonteCarlo { samples: 2000, seed }).unwrap();
        prop_assert!((mc.value - cap).abs() <= mc.abs_error_bound + 1e-9);
    }

    /// Clamped averages are monotone in the cap and the factor.
    #[test]
    fn clamp_monotonicity(f1 in 1u32..50, f2 in 1u32..50, c1 in 1u32..50, c2 in 1u32..50) {
        let m = AnalyticManifold::new(ManifoldFamily::Paraboloid).unwrap();
        let value = |factor: f64, cap: f64| {
            let ig = Integrand::ClampRk { k: 1, factor, cap };
            ball_integral(&m, &[0.0], 6.0, &ig, &Method::Quadrature).unwrap().value
        };
        let (flo, fhi) = (f1.min(f2) as f64 / 4.0, f1.max(f2) as f64 / 4.0);
        let (clo, chi) = (c1.min(c2) as f64 / 10.0, c1.max(c2) as f64 / 10.0);
        prop_assert!(value(flo, clo) <= value(fhi, clo) + 1e-9);
        prop_assert!(value(flo, clo) <= value(flo, chi) + 1e-9);
    }

    /// Both sides of the eigenvalue inequality recompute identically under
    /// compensated summation in either order.
    #[test]
    fn l14_extended_precision(seed in 0u64..400) {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (n, k) = (4usize, 2usize);
        let mut a = vec![vec![0.0; k]; n];
        for (i, col) in (0..k).enumerate() {
            a[i][col] = 1.0;
            for row in a.iter_mut() {
                row[col] += 1e-5 * (rng.random::<f64>() - 0.5);
            }
        }
        let mut lambda: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1e-4).collect();
        lambda.sort_by(f64::total_cmp);
        let sample = EigenSample { a: a.clone(), lambda: lambda.clone(), eps_prime: 1e-4, c1: 1e-2, c: 4.0, eps: 1.0 };
        let out = eigen_inequality_verify(&sample);

        // Kahan-compensated recomputation, reversed iteration order
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for i in (0..k).rev() {
            for j in (0..n).rev() {
                let term = lambda[j] * a[j][i] * a[j][i];
                let y = term - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        }
        let lhs2 = sum.max(0.0);
        prop_assert!((out.lhs - lhs2).abs() <= 1e-12 * out.lhs.abs().max(1.0));
    }
}
