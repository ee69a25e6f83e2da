//! Seeded multi-restart ascent on a smoothed minimum pairwise distance.
//!
//! The exact objective `min_{i<j} |x_i - x_j|` is non-smooth exactly where
//! the interesting configurations live, so each stage ascends the soft
//! minimum `-(1/beta) ln sum exp(-beta d_ij^2)` instead and the schedule
//! sharpens `beta` until the soft and exact objectives agree to far below
//! the certification tolerances. Restarts are embarrassingly parallel and
//! each one derives its own random stream from the base seed, so results
//! are reproducible regardless of thread count.

use std::f64::consts::SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{PointSet, Vector};

/// Margin added to `sqrt(2)` in the internal consistency assertion: any
/// `k >= dim + 2` run finishing above this is a bug, not a discovery.
const UPPER_BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub k: usize,
    pub dim: usize,
    /// Restrict points to the unit sphere instead of the unit ball.
    pub surface_only: bool,
    pub restarts: usize,
    pub seed: u64,
    /// Increasing inverse temperatures; later stages track the exact
    /// minimum more closely.
    pub smoothing_schedule: Vec<f64>,
    pub max_iters_per_stage: usize,
    /// Line-search steps below this end a stage.
    pub step_tolerance: f64,
}

impl OptimizerConfig {
    pub fn new(k: usize, dim: usize) -> Self {
        Self {
            k,
            dim,
            surface_only: false,
            restarts: 64,
            seed: 42,
            smoothing_schedule: vec![1e1, 1e2, 1e3, 1e4, 1e5],
            max_iters_per_stage: 10_000,
            step_tolerance: 1e-12,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_surface_only(mut self, surface_only: bool) -> Self {
        self.surface_only = surface_only;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!(
                "dispersion needs at least 2 points, got k = {}",
                self.k
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if self.smoothing_schedule.is_empty()
            || self
                .smoothing_schedule
                .iter()
                .any(|b| !b.is_finite() || *b <= 0.0)
        {
            return Err(Error::InvalidParameter(
                "smoothing schedule must be non-empty with positive finite entries".into(),
            ));
        }
        if self.max_iters_per_stage == 0 {
            return Err(Error::InvalidParameter(
                "max_iters_per_stage must be >= 1".into(),
            ));
        }
        if !self.step_tolerance.is_finite() || self.step_tolerance <= 0.0 {
            return Err(Error::InvalidParameter(
                "step_tolerance must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerResult {
    pub best: PointSet,
    /// Exact (unsmoothed) minimum pairwise distance of `best`.
    pub achieved_min_distance: f64,
    /// Exact minimum distance reached by each restart, in restart order.
    pub per_restart_values: Vec<f64>,
    /// Total accepted-iteration count summed over restarts and stages.
    pub iterations_used: usize,
}

/// Maximize the minimum pairwise distance of `k` points in the closed unit
/// ball (or on the unit sphere). Deterministic in `(seed, config)`.
pub fn maximin_optimize(cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    let runs: Vec<RestartRun> = (0..cfg.restarts)
        .into_par_iter()
        .map(|index| run_restart(cfg, index))
        .collect();

    let mut best_index = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.value > runs[best_index].value {
            best_index = i;
        }
    }
    let iterations_used = runs.iter().map(|r| r.iterations).sum();
    let per_restart_values = runs.iter().map(|r| r.value).collect();
    let best = flat_to_point_set(&runs[best_index].flat, cfg.k, cfg.dim);
    let achieved_min_distance = runs[best_index].value;

    // Consistency guard: with k >= dim + 2 points in the unit ball some pair
    // is always within sqrt(2), so exceeding it means the optimizer (or the
    // projection) is broken and the run must not be trusted.
    if cfg.k >= cfg.dim + 2 {
        assert!(
            achieved_min_distance <= SQRT_2 + UPPER_BOUND_SLACK,
            "min distance {achieved_min_distance} exceeds the sqrt(2) bound for \
             k = {} points in the {}-ball",
            cfg.k,
            cfg.dim
        );
    }

    Ok(OptimizerResult {
        best,
        achieved_min_distance,
        per_restart_values,
        iterations_used,
    })
}

/// Polish an existing configuration with the sharpest smoothing stage only.
/// The result never has a smaller exact minimum distance than the input:
/// if polishing cannot improve it, the input is returned unchanged.
pub fn refine_local(points: &PointSet, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    if points.len() != cfg.k || points.dim() != cfg.dim {
        return Err(Error::ConfigMismatch(format!(
            "configuration is {} points in dimension {}, config says k = {} dim = {}",
            points.len(),
            points.dim(),
            cfg.k,
            cfg.dim
        )));
    }

    let input_value = exact_min_distance_of(points);
    let mut flat: Vec<f64> = points.iter().flat_map(|p| p.coords().to_vec()).collect();
    project_all(&mut flat, cfg);
    let beta = *cfg
        .smoothing_schedule
        .last()
        .expect("validated schedules are non-empty");
    let iterations = run_stage(&mut flat, cfg, beta);
    let refined_value = exact_min_distance(&flat, cfg.k, cfg.dim);

    let (best, achieved) = if refined_value >= input_value {
        (flat_to_point_set(&flat, cfg.k, cfg.dim), refined_value)
    } else {
        (points.clone(), input_value)
    };
    Ok(OptimizerResult {
        best,
        achieved_min_distance: achieved,
        per_restart_values: vec![achieved],
        iterations_used: iterations,
    })
}

/// Uniform sample from the closed unit ball: uniform direction scaled by
/// `U^(1/dim)`.
pub fn sample_unit_ball<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    let dir = sample_unit_sphere(dim, rng);
    let u: f64 = rng.gen();
    dir.scale(u.powf(1.0 / dim as f64))
}

/// Uniform sample from the unit sphere (normalized Gaussian).
pub fn sample_unit_sphere<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    loop {
        let coords: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            let v = Vector::new(coords).expect("gaussian coordinates are finite");
            return v.scale(1.0 / norm);
        }
    }
}

struct RestartRun {
    value: f64,
    flat: Vec<f64>,
    iterations: usize,
}

fn run_restart(cfg: &OptimizerConfig, index: usize) -> RestartRun {
    // SplitMix-style stream separation keeps restart streams decorrelated
    // while staying reproducible for any thread count.
    let stream_seed = cfg
        .seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index as u64 + 1));
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);

    let mut flat = Vec::with_capacity(cfg.k * cfg.dim);
    for _ in 0..cfg.k {
        let p = if cfg.surface_only {
            sample_unit_sphere(cfg.dim, &mut rng)
        } else {
            sample_unit_ball(cfg.dim, &mut rng)
        };
        flat.extend_from_slice(p.coords());
    }

    let mut iterations = 0;
    for &beta in &cfg.smoothing_schedule {
        iterations += run_stage(&mut flat, cfg, beta);
    }
    RestartRun {
        value: exact_min_distance(&flat, cfg.k, cfg.dim),
        flat,
        iterations,
    }
}

/// Backtracking gradient ascent at a fixed smoothing level. Returns the
/// number of iterations consumed.
fn run_stage(flat: &mut Vec<f64>, cfg: &OptimizerConfig, beta: f64) -> usize {
    let mut step = 0.1;
    let mut value = soft_min_objective(flat, cfg.k, cfg.dim, beta);
    let mut grad = vec![0.0; flat.len()];
    for iter in 0..cfg.max_iters_per_stage {
        soft_min_gradient(flat, cfg.k, cfg.dim, beta, &mut grad);
        loop {
            if step < cfg.step_tolerance {
                return iter + 1;
            }
            let mut trial = flat.clone();
            for (t, g) in trial.iter_mut().zip(&grad) {
                *t += step * g;
            }
            project_all(&mut trial, cfg);
            let trial_value = soft_min_objective(&trial, cfg.k, cfg.dim, beta);
            if trial_value > value {
                *flat = trial;
                value = trial_value;
                step = (step * 2.0).min(0.25);
                break;
            }
            step *= 0.5;
        }
    }
    cfg.max_iters_per_stage
}

/// Shifted log-sum-exp soft minimum of the squared pairwise distances;
/// stable for beta up to far beyond the default schedule.
fn soft_min_objective(flat: &[f64], k: usize, dim: usize, beta: f64) -> f64 {
    let mut d2 = Vec::with_capacity(k * (k - 1) / 2);
    let mut lowest = f64::INFINITY;
    for i in 0..k {
        for j in (i + 1)..k {
            let v = pair_dist2(flat, dim, i, j);
            lowest = lowest.min(v);
            d2.push(v);
        }
    }
    let sum: f64 = d2.iter().map(|&v| (-beta * (v - lowest)).exp()).sum();
    lowest - sum.ln() / beta
}

fn soft_min_gradient(flat: &[f64], k: usize, dim: usize, beta: f64, out: &mut [f64]) {
    out.fill(0.0);
    let mut d2 = Vec::with_capacity(k * (k - 1) / 2);
    let mut lowest = f64::INFINITY;
    for i in 0..k {
        for j in (i + 1)..k {
            let v = pair_dist2(flat, dim, i, j);
            lowest = lowest.min(v);
            d2.push(v);
        }
    }
    let mut total = 0.0;
    for v in d2.iter_mut() {
        *v = (-beta * (*v - lowest)).exp();
        total += *v;
    }
    let mut idx = 0;
    for i in 0..k {
        for j in (i + 1)..k {
            let w = 2.0 * d2[idx] / total;
            idx += 1;
            for t in 0..dim {
                let diff = flat[i * dim + t] - flat[j * dim + t];
                out[i * dim + t] += w * diff;
                out[j * dim + t] -= w * diff;
            }
        }
    }
}

fn pair_dist2(flat: &[f64], dim: usize, i: usize, j: usize) -> f64 {
    let a = &flat[i * dim..(i + 1) * dim];
    let b = &flat[j * dim..(j + 1) * dim];
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

fn project_all(flat: &mut [f64], cfg: &OptimizerConfig) {
    for i in 0..cfg.k {
        let point = &mut flat[i * cfg.dim..(i + 1) * cfg.dim];
        let norm = point.iter().map(|c| c * c).sum::<f64>().sqrt();
        if cfg.surface_only {
            if norm > 1e-12 {
                for c in point.iter_mut() {
                    *c /= norm;
                }
            } else {
                point.fill(0.0);
                point[0] = 1.0;
            }
        } else if norm > 1.0 {
            for c in point.iter_mut() {
                *c /= norm;
            }
        }
    }
}

fn exact_min_distance(flat: &[f64], k: usize, dim: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..k {
        for j in (i + 1)..k {
            best = best.min(pair_dist2(flat, dim, i, j));
        }
    }
    best.sqrt()
}

fn exact_min_distance_of(points: &PointSet) -> f64 {
    match points.min_pairwise_distance() {
        Ok((d, _)) => d,
        Err(_) => f64::INFINITY,
    }
}

fn flat_to_point_set(flat: &[f64], k: usize, dim: usize) -> PointSet {
    PointSet::from_rows(
        (0..k)
            .map(|i| flat[i * dim..(i + 1) * dim].to_vec())
            .collect(),
    )
    .expect("optimizer output stays finite")
}
