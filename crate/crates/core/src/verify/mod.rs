//! Sampling, oracles and the aggregated verification report.
//!
//! A run is split into jobs (one chunk of one sample set each). Every job
//! produces a [`Tally`]; tallies merge with max/min reductions and
//! deterministic tie-breaks, so the report does not depend on the order in
//! which jobs run or are merged.

mod checks;
pub mod fixtures;
mod sample;

use alloc::string::String;
use alloc::vec::Vec;

pub use checks::{sharpness_record, Tally, Worst};
pub use sample::{grid_side, sample, sample_chunk, SampleSpec, Strategy, CHUNK};

use crate::curve::CurveFamily;
use crate::error::Result;
use crate::params::PackingParams;
use crate::sigma::DiscMap;

/// Thresholds for every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|det D sigma - 1|`.
    pub area: f64,
    /// Rounding slack allowed below zero on band margins.
    pub band: f64,
    /// `|P - c|` on the real slice.
    pub midline: f64,
    /// Per-coordinate round-trip error.
    pub round_trip: f64,
    /// Relative enclosed-area error.
    pub curve_area: f64,
    pub chart_symplectic: f64,
    pub chart_moment: f64,
    /// Clifford distance of real-slice images.
    pub lagrangian: f64,
    pub sharpness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            area: 1e-6,
            band: 1e-12,
            midline: 1e-12,
            round_trip: 1e-9,
            curve_area: 1e-6,
            chart_symplectic: 1e-6,
            chart_moment: 1e-15,
            lagrangian: 1e-12,
            sharpness: 1e-15,
        }
    }
}

/// Sample budget of a full run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuitePlan {
    pub seed: u64,
    pub uniform: usize,
    pub boundary: usize,
    pub midline: usize,
    pub diameter: usize,
    /// Number of grid cells (a square number) on the first factor.
    pub grid: usize,
    /// Leading uniform samples whose images also get the chart pullback check.
    pub chart_samples: usize,
    /// Points of the geometric area grid for the enclosed-area oracle.
    pub curve_areas: usize,
}

impl SuitePlan {
    /// `samples` uniform points plus a tenth as many boundary-biased ones,
    /// and fixed-size midline, diameter and grid sets.
    pub fn new(samples: usize, seed: u64) -> Self {
        SuitePlan {
            seed,
            uniform: samples,
            boundary: (samples / 10).max(1),
            midline: 1000,
            diameter: 1000,
            grid: 10_000,
            chart_samples: 1000,
            curve_areas: 32,
        }
    }

    pub fn specs(&self) -> Vec<SampleSpec> {
        [
            (Strategy::Grid, self.grid),
            (Strategy::UniformBall, self.uniform),
            (Strategy::BoundaryBiased, self.boundary),
            (Strategy::Midline, self.midline),
            (Strategy::DiameterOnly, self.diameter),
        ]
        .into_iter()
        .filter(|&(_, count)| count > 0)
        .map(|(strategy, count)| SampleSpec {
            strategy,
            count,
            seed: self.seed,
        })
        .collect()
    }

    /// Independent units of work: one per chunk of each sample set.
    pub fn jobs(&self) -> Vec<Job> {
        self.specs()
            .into_iter()
            .flat_map(|spec| (0..spec.chunks()).map(move |chunk| Job { spec, chunk }))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub spec: SampleSpec,
    pub chunk: usize,
}

/// Which way a check statistic is bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Pass iff the statistic is at most the tolerance.
    AtMost(f64),
    /// Pass iff the statistic is at least the threshold.
    AtLeast(f64),
    /// Pass iff the statistic is strictly greater than the threshold.
    Above(f64),
}

impl Bound {
    pub fn tolerance(self) -> f64 {
        match self {
            Bound::AtMost(t) | Bound::AtLeast(t) | Bound::Above(t) => t,
        }
    }

    /// Signed distance to failure; non-negative (positive for `Above`) when passing.
    pub fn margin(self, value: f64) -> f64 {
        match self {
            Bound::AtMost(t) => t - value,
            Bound::AtLeast(t) | Bound::Above(t) => value - t,
        }
    }

    pub fn accepts(self, value: f64) -> bool {
        match self {
            Bound::AtMost(t) => value <= t,
            Bound::AtLeast(t) => value >= t,
            Bound::Above(t) => value > t,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the check statistic.
    pub worst_value: f64,
    /// `bound.margin(worst_value)`: negative on failure.
    pub worst_margin: f64,
    /// Source point where the worst value occurred, if any.
    pub worst_point: Option<Vec<f64>>,
    pub samples_used: u64,
    pub tolerance: f64,
    /// Samples that broke a side condition of the check.
    pub violations: u64,
}

impl CheckRecord {
    pub(crate) fn from_worst(name: &str, worst: &Worst, bound: Bound, violations: u64) -> Self {
        let value = worst.value();
        CheckRecord {
            name: name.into(),
            passed: worst.count() > 0 && violations == 0 && bound.accepts(value),
            worst_value: value,
            worst_margin: bound.margin(value),
            worst_point: worst.point().map(<[f64]>::to_vec),
            samples_used: worst.count(),
            tolerance: bound.tolerance(),
            violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub r: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs one job.
pub fn run_job<M: DiscMap + ?Sized>(map: &M, plan: &SuitePlan, job: &Job) -> Tally {
    let mut tally = Tally::default();
    let points = sample_chunk(&job.spec, map.params(), job.chunk);
    let base = job.chunk * CHUNK;
    for (i, point) in points.iter().enumerate() {
        let chart = job.spec.strategy == Strategy::UniformBall && base + i < plan.chart_samples;
        tally.observe(map, point, chart);
    }
    tally
}

/// Adds the sample-free checks to merged tallies and assembles the report.
pub fn finish<M: DiscMap + ?Sized>(
    map: &M,
    plan: &SuitePlan,
    tol: &Tolerances,
    mut tally: Tally,
) -> VerificationReport {
    let params = *map.params();
    tally.observe_lagrangian_probes(map);
    let mut checks = tally.records(tol);
    checks.insert(
        5,
        curve_area_record(&params, plan.curve_areas, tol.curve_area),
    );
    checks.push(sharpness_record(&params, tol.sharpness));
    let overall = checks.iter().all(|c| c.passed);
    VerificationReport {
        n: params.n(),
        r: params.r(),
        epsilon: params.epsilon(),
        seed: plan.seed,
        checks,
        overall,
    }
}

/// Every check, sequentially.
pub fn run_all<M: DiscMap + ?Sized>(
    map: &M,
    plan: &SuitePlan,
    tol: &Tolerances,
) -> VerificationReport {
    let mut tally = Tally::default();
    for job in plan.jobs() {
        tally.merge(run_job(map, plan, &job));
    }
    finish(map, plan, tol, tally)
}

/// Areas `pi r^2 (1 - 1e-9) 10^{-6k/(count-1)}`, `k = 0..count`.
pub fn curve_area_grid(params: &PackingParams, count: usize) -> Vec<f64> {
    let top = params.disc_area() * (1.0 - 1e-9);
    let span = (count.max(2) - 1) as f64;
    (0..count)
        .map(|k| top * libm::pow(10.0, -6.0 * k as f64 / span))
        .collect()
}

/// `max |enclosed_area(A) - A| / A` over [`curve_area_grid`].
pub fn curve_area_record(params: &PackingParams, count: usize, tol: f64) -> CheckRecord {
    let mut worst = Worst::default();
    match CurveFamily::new(*params) {
        Ok(family) => {
            for area in curve_area_grid(params, count) {
                let err = match family.enclosed_area(area) {
                    Ok(got) => libm::fabs(got - area) / area,
                    Err(_) => f64::INFINITY,
                };
                worst.observe(err, &[area]);
            }
        }
        Err(_) => worst.observe(f64::INFINITY, &[]),
    }
    CheckRecord::from_worst("curve_area", &worst, Bound::AtMost(tol), 0)
}

/// Checks every point of `spec` and reports the per-sample checks that saw
/// at least one sample.
pub fn check_samples<M: DiscMap + ?Sized>(
    map: &M,
    spec: &SampleSpec,
    tol: &Tolerances,
) -> Result<Vec<CheckRecord>> {
    let mut tally = Tally::default();
    for chunk in 0..spec.chunks() {
        for point in sample_chunk(spec, map.params(), chunk) {
            point.check_in_ball(map.params())?;
            tally.observe(map, &point, false);
        }
    }
    Ok(tally
        .records(tol)
        .into_iter()
        .filter(|c| c.samples_used > 0)
        .collect())
}
