use crate::error::{Error, Result};

/// Radius, dimension and band slack of a relative packing problem.
///
/// `c = 1/(n+1)` is the level of the Clifford torus in every moment
/// coordinate. The slack `epsilon` is bounded so that
/// `n*c + r^2/2 + n*epsilon <= 1`, with equality for the default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingParams {
    n: usize,
    r: f64,
    c: f64,
    epsilon: f64,
}

impl PackingParams {
    /// Validates `(n, r)` and fills in `c` and the slack.
    pub fn new(n: usize, r: f64, epsilon: Option<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension { n });
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius { r });
        }
        let bound_sq = 2.0 / (n as f64 + 1.0);
        if r * r >= bound_sq {
            return Err(Error::RadiusAtOrAboveBound {
                n,
                r,
                bound: libm::sqrt(bound_sq),
            });
        }
        let max = max_epsilon(n, r);
        if max <= 0.0 {
            return Err(Error::RadiusAtOrAboveBound {
                n,
                r,
                bound: libm::sqrt(bound_sq),
            });
        }
        let epsilon = match epsilon {
            None => max,
            Some(e) if e.is_finite() && e > 0.0 && e <= max => e,
            Some(e) => return Err(Error::InvalidEpsilon { epsilon: e, max }),
        };
        Ok(PackingParams {
            n,
            r,
            c: midline_level(n),
            epsilon,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn radius_sq(&self) -> f64 {
        self.r * self.r
    }

    /// Midline level `1/(n+1)`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest admissible slack; also the default.
    pub fn epsilon_max(&self) -> f64 {
        max_epsilon(self.n, self.r)
    }

    /// `pi r^2`, the area of the source disc.
    pub fn disc_area(&self) -> f64 {
        core::f64::consts::PI * self.r * self.r
    }

    /// `n*c + r^2/2 + n*epsilon_default`, which is 1 up to rounding.
    pub fn sharpness_sum(&self) -> f64 {
        let n = self.n as f64;
        n * self.c + self.r * self.r / 2.0 + n * self.epsilon_max()
    }
}

/// Free-function form of [`PackingParams::new`].
pub fn make_params(n: usize, r: f64, epsilon: Option<f64>) -> Result<PackingParams> {
    PackingParams::new(n, r, epsilon)
}

pub fn midline_level(n: usize) -> f64 {
    1.0 / (n as f64 + 1.0)
}

/// `(1/(n+1) - r^2/2) / n`; non-positive at or above the radius bound.
pub fn max_epsilon(n: usize, r: f64) -> f64 {
    (midline_level(n) - r * r / 2.0) / n as f64
}
