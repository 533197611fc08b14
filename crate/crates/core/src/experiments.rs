//! Experiment drivers: the slow-orbit parameter family and the randomized
//! chain Monte Carlo.
//!
//! Monte Carlo runs are deterministic down to the byte: run `i` derives its
//! generator from the master seed via an independent stream, so the histogram
//! depends only on `(triangle, runs, seed, policy, max_steps)` and not on
//! scheduling or thread count.

use crate::chain::{CycleTracker, Policy, CYCLE_TOL};
use crate::error::Result;
use crate::oracles::exact_rational_orbit;
use crate::plmap::{u_from_phi, OrbitReport};
use crate::triangle::Triangle;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Exact orbit of `x0 = eps` under `a = 1`, `b = 2 - eps`. The window `I2`
/// has length `eps`, so the pre-period grows like `1/eps` as `eps` shrinks.
/// Requires `0 < eps < 1/2`.
pub fn long_preperiod_family(eps: &BigRational) -> Result<OrbitReport<BigRational>> {
    let one = BigRational::one();
    let a = one.clone();
    let b = BigRational::from_integer(BigInt::from(2)) - eps;
    let max_iter = (2.0 / eps.to_f64().unwrap_or(1e-9)).ceil() as usize + 10;
    exact_rational_orbit(&a, &b, eps, max_iter)
}

/// Distribution of detected pre-periods over many random chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub bins: BTreeMap<usize, u64>,
    pub runs: u64,
    /// Chains that ended without a detected cycle (max steps, degenerate or
    /// not constructible).
    pub failures: u64,
    pub seed: u64,
}

impl Histogram {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pre_period,count\n");
        for (pre, count) in &self.bins {
            out.push_str(&format!("{pre},{count}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }
}

#[derive(Debug, Clone)]
pub struct McConfig {
    pub runs: u64,
    pub seed: u64,
    pub max_steps: usize,
    /// Use the smaller circle at every step instead of tossing a coin.
    pub force_smaller: bool,
    pub threads: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            runs: 3000,
            seed: 0,
            max_steps: crate::chain::DEFAULT_MAX_STEPS,
            force_smaller: false,
            threads: 1,
        }
    }
}

/// Runs `cfg.runs` chains with `phi0` drawn uniformly from `(0, min beta)`
/// and records the pre-period of each detected cycle.
pub fn monte_carlo(tri: &Triangle, cfg: &McConfig) -> Histogram {
    let runs = cfg.runs as usize;
    let mut results: Vec<Option<usize>> = vec![None; runs];
    let threads = cfg.threads.max(1).min(runs.max(1));

    if threads <= 1 {
        for (i, slot) in results.iter_mut().enumerate() {
            *slot = single_run(tri, cfg, i as u64);
        }
    } else {
        let chunk = runs.div_ceil(threads);
        std::thread::scope(|scope| {
            for (c, slice) in results.chunks_mut(chunk).enumerate() {
                let base = (c * chunk) as u64;
                scope.spawn(move || {
                    for (off, slot) in slice.iter_mut().enumerate() {
                        *slot = single_run(tri, cfg, base + off as u64);
                    }
                });
            }
        });
    }

    let mut bins = BTreeMap::new();
    let mut failures = 0;
    for r in results {
        match r {
            Some(pre) => *bins.entry(pre).or_insert(0) += 1,
            None => failures += 1,
        }
    }
    Histogram {
        bins,
        runs: cfg.runs,
        failures,
        seed: cfg.seed,
    }
}

fn single_run(tri: &Triangle, cfg: &McConfig, index: u64) -> Option<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let min_beta = tri.betas().iter().cloned().fold(f64::INFINITY, f64::min);
    let phi0 = rng.random_range(0.0..min_beta);
    let policy = if cfg.force_smaller {
        Policy::AlwaysSmaller
    } else {
        Policy::Random { seed: rng.random() }
    };
    chain_summary(tri, phi0, &policy, cfg.max_steps).map(|(pre, _)| pre)
}

/// Lean chain driver for bulk runs: tracks only `(vertex, u)`, skipping the
/// Cartesian realization. Step-for-step identical to
/// [`crate::chain::run_chain`] in sequence, detection and termination.
pub(crate) fn chain_summary(
    tri: &Triangle,
    phi0: f64,
    policy: &Policy,
    max_steps: usize,
) -> Option<(usize, usize)> {
    let mut chooser = policy.chooser();
    let p = tri.semiperimeter();
    let mut u = u_from_phi(phi0, p);
    let mut vertex = 0;
    let mut detector = CycleTracker::new(3, CYCLE_TOL, policy.is_deterministic());
    detector.push(vertex, u);
    if u * u * tri.tan_half_angle(vertex) == 0.0 {
        return None; // degenerate start
    }
    let mut count = 1;
    loop {
        if count >= max_steps {
            return None;
        }
        let choice = chooser.next()?;
        match crate::chain::next_u(tri, vertex, u, choice) {
            Ok((u_next, _)) => {
                vertex = (vertex + 1) % 3;
                u = u_next;
                count += 1;
                let hit = detector.push(vertex, u);
                if u * u * tri.tan_half_angle(vertex) == 0.0 {
                    return None; // degenerate circle
                }
                if let Some(hit) = hit {
                    return Some(hit);
                }
            }
            Err(_) => return None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{circle_from_phi, run_chain, Termination};

    fn eps(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn slow_family_pre_periods() {
        assert_eq!(long_preperiod_family(&eps(1, 10)).unwrap().pre_period, 9);
        assert_eq!(long_preperiod_family(&eps(1, 100)).unwrap().pre_period, 99);
    }

    #[test]
    fn slow_family_monotone() {
        let p1 = long_preperiod_family(&eps(1, 10)).unwrap().pre_period;
        let p2 = long_preperiod_family(&eps(1, 100)).unwrap().pre_period;
        let p3 = long_preperiod_family(&eps(1, 1000)).unwrap().pre_period;
        assert!(p3 > p2 && p2 > p1);
        // floor((1 - 2 eps) / eps) lower bound
        assert!(p1 >= 8 && p2 >= 98 && p3 >= 998);
    }

    #[test]
    fn lean_driver_mirrors_run_chain() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        for (phi0, policy) in [
            (0.3, Policy::AlwaysSmaller),
            (0.52, Policy::Random { seed: 42 }),
            (0.11, Policy::Random { seed: 7 }),
            (0.47, Policy::AlwaysLarger),
        ] {
            let lean = chain_summary(&tri, phi0, &policy, 2000);
            let full = run_chain(&tri, circle_from_phi(&tri, 0, phi0), &policy, 2000);
            match lean {
                Some((pre, period)) => {
                    assert_eq!(full.termination, Termination::CycleDetected);
                    assert_eq!(full.pre_period, Some(pre));
                    assert_eq!(full.period, Some(period));
                }
                None => assert_ne!(full.termination, Termination::CycleDetected),
            }
        }
    }

    #[test]
    fn histogram_accounting_and_determinism() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let cfg = McConfig {
            runs: 200,
            seed: 99,
            max_steps: 500,
            force_smaller: false,
            threads: 1,
        };
        let h1 = monte_carlo(&tri, &cfg);
        let total: u64 = h1.bins.values().sum();
        assert_eq!(total + h1.failures, 200);

        let h2 = monte_carlo(&tri, &cfg);
        assert_eq!(h1, h2);
        assert_eq!(h1.to_csv(), h2.to_csv());
        assert_eq!(h1.to_json(), h2.to_json());

        let h3 = monte_carlo(
            &tri,
            &McConfig {
                threads: 4,
                ..cfg.clone()
            },
        );
        assert_eq!(h1, h3);

        let h4 = monte_carlo(&tri, &McConfig { seed: 100, ..cfg });
        assert_ne!(h1, h4);
    }

    #[test]
    fn forced_smaller_never_fails() {
        let tri = Triangle::from_sides(2.0, 3.0, 4.0).unwrap();
        let cfg = McConfig {
            runs: 500,
            seed: 5,
            max_steps: 10_000,
            force_smaller: true,
            threads: 2,
        };
        let h = monte_carlo(&tri, &cfg);
        assert_eq!(h.failures, 0);
        // and every one of those chains is 6-periodic
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        rng.set_stream(17);
        let min_beta = tri.betas().iter().cloned().fold(f64::INFINITY, f64::min);
        let phi0 = rng.random_range(0.0..min_beta);
        let (_, period) = chain_summary(&tri, phi0, &Policy::AlwaysSmaller, 10_000).unwrap();
        assert_eq!(period, 6);
    }
}
