use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::PackingParams;

/// A point `(q, p)` of the source disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub q: f64,
    pub p: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { q: 0.0, p: 0.0 };

    pub const fn new(q: f64, p: f64) -> Self {
        DiscPoint { q, p }
    }

    /// Squared radius `q^2 + p^2`.
    pub fn u(&self) -> f64 {
        self.q * self.q + self.p * self.p
    }
}

/// A point `(Q, P)` of the target rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct ChartPoint {
    pub Q: f64,
    pub P: f64,
}

impl ChartPoint {
    #[allow(non_snake_case)]
    pub const fn new(Q: f64, P: f64) -> Self {
        ChartPoint { Q, P }
    }
}

/// Interleaved coordinates `(q1, p1, ..., qn, pn)`.
///
/// Used both for source points of `B^{2n}(r)` and for images in `K'`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint(Vec<f64>);

impl ProductPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 || !coords.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (coords.len() / 2).max(1),
                got: coords.len(),
            });
        }
        Ok(ProductPoint(coords))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut v = Vec::new();
        for (q, p) in pairs {
            v.push(q);
            v.push(p);
        }
        ProductPoint(v)
    }

    pub fn zeros(n: usize) -> Self {
        ProductPoint(alloc::vec![0.0; 2 * n])
    }

    /// Number of planar factors.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn q(&self, i: usize) -> f64 {
        self.0[2 * i]
    }

    pub fn p(&self, i: usize) -> f64 {
        self.0[2 * i + 1]
    }

    pub fn factor(&self, i: usize) -> DiscPoint {
        DiscPoint::new(self.q(i), self.p(i))
    }

    pub fn factors(&self) -> impl Iterator<Item = DiscPoint> + '_ {
        self.0.chunks_exact(2).map(|c| DiscPoint::new(c[0], c[1]))
    }

    /// `sum(q_i^2 + p_i^2)`.
    pub fn radius_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Checks length and membership in the open ball `B^{2n}(r)`.
    pub fn check_in_ball(&self, params: &PackingParams) -> Result<()> {
        if self.n() != params.n() {
            return Err(Error::DimensionMismatch {
                expected: 2 * params.n(),
                got: self.0.len(),
            });
        }
        check_open_ball(self.radius_sq(), params.radius_sq())
    }
}

/// Margin below the boundary sphere inside which points are rejected.
pub const BALL_BOUNDARY_GUARD: f64 = 1e-14;

pub(crate) fn check_open_ball(radius_sq: f64, bound_sq: f64) -> Result<()> {
    if radius_sq.is_finite() && radius_sq < bound_sq - BALL_BOUNDARY_GUARD {
        Ok(())
    } else {
        Err(Error::OutsideBall {
            radius_sq,
            bound_sq,
        })
    }
}
