//! Deliberately faulty maps, used to show that the checks can fail.

use crate::error::Result;
use crate::params::PackingParams;
use crate::points::{ChartPoint, DiscPoint};
use crate::sigma::{DiscMap, Sigma};

/// `sigma` followed by a vertical stretch `P -> c + k (P - c)` about the
/// midline. Keeps the midline, the signs and invertibility, but multiplies
/// every Jacobian determinant by `k`. Its Jacobian is the finite-difference
/// default.
///
/// With `k = 1.01` at `n = 2, r = 0.8` the band and containment margins stay
/// positive, so only area preservation breaks.
#[derive(Debug, Clone, Copy)]
pub struct BrokenSigma {
    inner: Sigma,
    stretch: f64,
}

impl BrokenSigma {
    pub const DEFAULT_STRETCH: f64 = 1.01;

    pub fn new(params: PackingParams) -> Result<Self> {
        Self::with_stretch(params, Self::DEFAULT_STRETCH)
    }

    pub fn with_stretch(params: PackingParams, stretch: f64) -> Result<Self> {
        Ok(BrokenSigma {
            inner: Sigma::new(params)?,
            stretch,
        })
    }
}

impl DiscMap for BrokenSigma {
    fn params(&self) -> &PackingParams {
        self.inner.params()
    }

    fn eval(&self, point: DiscPoint) -> Result<ChartPoint> {
        let c = self.params().c();
        let w = self.inner.eval(point)?;
        Ok(ChartPoint::new(w.Q, c + self.stretch * (w.P - c)))
    }

    fn eval_inverse(&self, point: ChartPoint) -> Result<DiscPoint> {
        let c = self.params().c();
        self.inner
            .eval_inverse(ChartPoint::new(point.Q, c + (point.P - c) / self.stretch))
    }
}
