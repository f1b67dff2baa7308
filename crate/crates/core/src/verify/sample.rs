//! Deterministic source-point generators.
//!
//! Points are produced in chunks of [`CHUNK`]. Each chunk draws from its own
//! ChaCha8 stream keyed by the strategy and chunk index, so any subset of
//! chunks can be generated independently and in any order.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal, StandardUniform};

use crate::error::{Error, Result};
use crate::params::PackingParams;
use crate::points::{ProductPoint, BALL_BOUNDARY_GUARD};

pub const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Cell centres of a square grid in the first factor; other factors zero.
    Grid,
    UniformBall,
    /// Uniform directions with `sum u_i` in `[0.99 r^2, r^2)`.
    BoundaryBiased,
    /// Uniform-ball points with one randomly chosen `p_i` set to zero.
    Midline,
    /// Uniform points of the real slice: every `p_i` zero.
    DiameterOnly,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Grid,
        Strategy::UniformBall,
        Strategy::BoundaryBiased,
        Strategy::Midline,
        Strategy::DiameterOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Grid => "grid",
            Strategy::UniformBall => "uniform-ball",
            Strategy::BoundaryBiased => "boundary-biased",
            Strategy::Midline => "midline",
            Strategy::DiameterOnly => "diameter-only",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Strategy::Grid => 0,
            Strategy::UniformBall => 1,
            Strategy::BoundaryBiased => 2,
            Strategy::Midline => 3,
            Strategy::DiameterOnly => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub strategy: Strategy,
    pub count: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(strategy: Strategy, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptySample);
        }
        Ok(SampleSpec {
            strategy,
            count,
            seed,
        })
    }

    pub fn chunks(&self) -> usize {
        self.count.div_ceil(CHUNK)
    }

    fn rng(&self, chunk: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((self.strategy.tag() << 40) | chunk as u64);
        rng
    }
}

/// Every point of the specification, in order.
pub fn sample(spec: &SampleSpec, params: &PackingParams) -> Vec<ProductPoint> {
    (0..spec.chunks())
        .flat_map(|k| sample_chunk(spec, params, k))
        .collect()
}

/// Points `chunk * CHUNK ..` of the specification (fewer for the last chunk
/// and for grids, which keep only cells inside the ball).
pub fn sample_chunk(spec: &SampleSpec, params: &PackingParams, chunk: usize) -> Vec<ProductPoint> {
    let start = chunk * CHUNK;
    let end = spec.count.min(start + CHUNK);
    if start >= end {
        return Vec::new();
    }
    if spec.strategy == Strategy::Grid {
        return grid(spec.count, params, start, end);
    }
    let mut rng = spec.rng(chunk);
    let n = params.n();
    let r2 = params.radius_sq();
    (start..end)
        .map(|_| match spec.strategy {
            Strategy::UniformBall => {
                ball_point(&mut rng, 2 * n, |u| r2 * libm::pow(u, 1.0 / n as f64), r2)
            }
            Strategy::BoundaryBiased => {
                let lo = 0.99 * r2;
                let width = 0.01 * r2 - 1e-9;
                ball_point(&mut rng, 2 * n, |u| lo + width * u, r2)
            }
            Strategy::Midline => {
                let mut coords =
                    ball_point(&mut rng, 2 * n, |u| r2 * libm::pow(u, 1.0 / n as f64), r2);
                let draw: u64 = StandardUniform.sample(&mut rng);
                coords[2 * (draw % n as u64) as usize + 1] = 0.0;
                coords
            }
            Strategy::DiameterOnly => {
                let q = ball_point(&mut rng, n, |u| r2 * libm::pow(u, 2.0 / n as f64), r2);
                let mut coords = alloc::vec![0.0; 2 * n];
                for (i, v) in q.into_iter().enumerate() {
                    coords[2 * i] = v;
                }
                coords
            }
            Strategy::Grid => unreachable!(),
        })
        .map(|c| ProductPoint::new(c).expect("even length"))
        .collect()
}

/// A point with Gaussian direction in `R^dim` and squared radius
/// `radius_sq(U)`, `U` uniform in `[0, 1)`; redrawn until strictly inside the
/// open ball.
fn ball_point(
    rng: &mut ChaCha8Rng,
    dim: usize,
    radius_sq: impl Fn(f64) -> f64,
    bound_sq: f64,
) -> Vec<f64> {
    let mut g = alloc::vec![0.0; dim];
    loop {
        for x in g.iter_mut() {
            *x = StandardNormal.sample(rng);
        }
        let norm_sq: f64 = g.iter().map(|x| x * x).sum();
        let u: f64 = StandardUniform.sample(rng);
        if norm_sq == 0.0 {
            continue;
        }
        let scale = libm::sqrt(radius_sq(u) / norm_sq);
        let out: Vec<f64> = g.iter().map(|x| x * scale).collect();
        let s: f64 = out.iter().map(|x| x * x).sum();
        if s < bound_sq - BALL_BOUNDARY_GUARD {
            return out;
        }
    }
}

fn grid(count: usize, params: &PackingParams, start: usize, end: usize) -> Vec<ProductPoint> {
    let side = grid_side(count);
    let r = params.r();
    let cell = 2.0 * r / side as f64;
    let n = params.n();
    (start..end)
        .filter_map(|k| {
            let (i, j) = (k / side, k % side);
            let q = -r + (i as f64 + 0.5) * cell;
            let p = -r + (j as f64 + 0.5) * cell;
            let mut coords = alloc::vec![0.0; 2 * n];
            coords[0] = q;
            coords[1] = p;
            let point = ProductPoint::new(coords).expect("even length");
            point.check_in_ball(params).is_ok().then_some(point)
        })
        .collect()
}

/// Side of the grid used for `count` cells; `count` is rounded down to a square.
pub fn grid_side(count: usize) -> usize {
    let mut side = libm::sqrt(count as f64) as usize;
    while (side + 1) * (side + 1) <= count {
        side += 1;
    }
    while side * side > count {
        side -= 1;
    }
    side.max(1)
}
