//! The area-preserving disc map `sigma: B^2(r) -> (0, pi) x (0, 2c)`.
//!
//! Built by action-angle matching. The source disc is foliated by circles,
//! with action `A = pi (q^2 + p^2)` and angle `phi = theta / (2 pi)`; these
//! satisfy `dq ^ dp = dA ^ dphi`. The target is foliated by the nested curves
//! of [`CurveFamily`], with action the enclosed area and angle the normalised
//! flux sweep, which again satisfy `dQ ^ dP = dA ^ dphi`. Sending
//! `(A, phi)` to `(A, phi)` is therefore area-preserving.
//!
//! Conventions: the origin goes to the centre `(pi/2, c)`, the positive `q`
//! axis to the right half of the midline `P = c`, and counterclockwise in the
//! disc to counterclockwise on every curve. Both reflections
//! `p -> -p` and `q -> -q` commute with the map exactly, because everything
//! is evaluated in the first quadrant and the signs are copied across.

use core::f64::consts::PI;

use crate::curve::{self, CurveFamily};
use crate::error::{Error, Result};
use crate::fd::{self, Matrix2, FD_STEP};
use crate::params::PackingParams;
use crate::points::{check_open_ball, ChartPoint, DiscPoint};

/// A planar map from the source disc into the target rectangle.
///
/// The harness checks are written against this trait so that deliberately
/// broken maps can be run through them.
pub trait DiscMap {
    fn params(&self) -> &PackingParams;

    /// Evaluates the map without checking that the point is in the open disc.
    fn eval(&self, point: DiscPoint) -> Result<ChartPoint>;

    /// Inverse on the image.
    fn eval_inverse(&self, point: ChartPoint) -> Result<DiscPoint>;

    fn sigma(&self, point: DiscPoint) -> Result<ChartPoint> {
        check_open_ball(point.u(), self.params().radius_sq())?;
        self.eval(point)
    }

    fn sigma_inv(&self, point: ChartPoint) -> Result<DiscPoint> {
        self.eval_inverse(point)
    }

    /// Derivative `d(Q, P) / d(q, p)`; five-point differences unless overridden.
    fn jacobian(&self, point: DiscPoint) -> Result<Matrix2> {
        check_open_ball(point.u(), self.params().radius_sq())?;
        fd::jacobian2(
            |q, p| self.eval(DiscPoint::new(q, p)).map(|z| (z.Q, z.P)),
            point.q,
            point.p,
            FD_STEP,
        )
    }

    /// Checked value and Jacobian together.
    fn sigma_with_jacobian(&self, point: DiscPoint) -> Result<(ChartPoint, Matrix2)> {
        let image = self.sigma(point)?;
        Ok((image, self.jacobian(point)?))
    }
}

#[inline]
fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// The disc map built on the nested superellipse family.
#[derive(Debug, Clone, Copy)]
pub struct Sigma {
    family: CurveFamily,
}

impl Sigma {
    pub fn new(params: PackingParams) -> Result<Self> {
        Ok(Sigma {
            family: CurveFamily::new(params)?,
        })
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    fn infeasible() -> Error {
        Error::ScheduleInfeasible {
            reason: "exponent cap reached",
        }
    }

    fn evaluate(
        &self,
        point: DiscPoint,
        want_jacobian: bool,
    ) -> Result<(ChartPoint, Option<Matrix2>)> {
        let center = self.family.center();
        let u = point.u();
        if u == 0.0 {
            let jac = want_jacobian.then_some([[1.0, 0.0], [0.0, 1.0]]);
            return Ok((center, jac));
        }
        let (sq, sp) = (sign(point.q), sign(point.p));
        let (qr, pr) = (libm::fabs(point.q), libm::fabs(point.p));
        let area = PI * u;
        let table = self.family.flux_table(area).ok_or_else(Self::infeasible)?;
        let phi = libm::atan2(pr, qr) / (2.0 * PI);
        let s = table.log_tan_for_sweep(phi);
        let (x, y) = table.reduced_point(s);
        let image = ChartPoint::new(center.Q + sq * x, center.P + sp * y);
        if !want_jacobian {
            return Ok((image, None));
        }

        let node = table.node(s);
        let rho = libm::exp(node.ln_rho.v);
        let rho_a = rho * node.ln_rho.d1;
        let rho_alpha = rho * node.dln_rho_dalpha;
        let (cos, sin) = match s {
            f64::NEG_INFINITY => (1.0, 0.0),
            f64::INFINITY => (0.0, 1.0),
            _ => {
                let (lc, ls) = curve::log_cos_sin(s);
                (libm::exp(lc), libm::exp(ls))
            }
        };
        let (_, phi_a) = table.sweep(s);
        let phi_alpha = table.sweep_density(s);
        let alpha_phi = 1.0 / phi_alpha;
        let alpha_a = -phi_a * alpha_phi;

        // d(x, y) / d(A, alpha)
        let x_a = rho_a * cos;
        let y_a = rho_a * sin;
        let x_al = rho_alpha * cos - rho * sin;
        let y_al = rho_alpha * sin + rho * cos;
        // d(x, y) / d(A, phi)
        let m = [
            [x_a + x_al * alpha_a, x_al * alpha_phi],
            [y_a + y_al * alpha_a, y_al * alpha_phi],
        ];
        // d(A, phi) / d(q, p)
        let two_pi = 2.0 * PI;
        let src = [
            [two_pi * qr, two_pi * pr],
            [-pr / (two_pi * u), qr / (two_pi * u)],
        ];
        let mut jac = [[0.0; 2]; 2];
        for (i, row) in jac.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[i][0] * src[0][j] + m[i][1] * src[1][j];
            }
        }
        let signs = [sq, sp];
        for (i, row) in jac.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell *= signs[i] * signs[j];
            }
        }
        Ok((image, Some(jac)))
    }

    /// Area and first-quadrant log-tan angle of the curve through `point`.
    fn locate(&self, point: ChartPoint) -> Result<(f64, f64, f64, f64)> {
        let center = self.family.center();
        let x = point.Q - center.Q;
        let y = point.P - center.P;
        let (xr, yr) = (libm::fabs(x), libm::fabs(y));
        let s = libm::log(yr) - libm::log(xr);
        let ln_rho0 = libm::log(libm::hypot(xr, yr));
        let resid = |area: f64| -> Result<(f64, f64)> {
            let shape = self.family.shape_at(area).ok_or_else(Self::infeasible)?;
            let n = curve::node_eval(&shape, s);
            Ok((n.ln_rho.v - ln_rho0, n.ln_rho.d1 * area))
        };

        let max = self.family.params().disc_area();
        let (f_hi, _) = resid(max)?;
        if !(f_hi > 0.0) {
            return Err(Error::NotInImage);
        }
        let mut hi = max;
        let mut lo = (PI * libm::exp(2.0 * ln_rho0)).min(max);
        loop {
            let (f, _) = resid(lo)?;
            if f < 0.0 {
                break;
            }
            if f == 0.0 {
                return Ok((lo, s, x, y));
            }
            hi = lo;
            lo *= 0.25;
            if lo < 1e-300 {
                return Err(Error::NotInImage);
            }
        }
        let mut t = libm::log(0.5 * (lo + hi));
        for _ in 0..200 {
            let area = libm::exp(t);
            let (f, df) = resid(area)?;
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                hi = area;
            } else {
                lo = area;
            }
            let mut next = t - f / df;
            let (tl, th) = (libm::log(lo), libm::log(hi));
            if !(next > tl && next < th) {
                next = 0.5 * (tl + th);
            }
            let step = libm::fabs(next - t);
            t = next;
            if step < 1e-16 || (th - tl) < 1e-16 {
                break;
            }
        }
        Ok((libm::exp(t), s, x, y))
    }
}

impl DiscMap for Sigma {
    fn params(&self) -> &PackingParams {
        self.family.params()
    }

    fn eval(&self, point: DiscPoint) -> Result<ChartPoint> {
        self.evaluate(point, false).map(|(z, _)| z)
    }

    fn eval_inverse(&self, point: ChartPoint) -> Result<DiscPoint> {
        let center = self.family.center();
        if !(point.Q.is_finite() && point.P.is_finite()) {
            return Err(Error::NotInImage);
        }
        if point.Q == center.Q && point.P == center.P {
            return Ok(DiscPoint::ORIGIN);
        }
        let (area, s, x, y) = self.locate(point)?;
        let table = self.family.flux_table(area).ok_or_else(Self::infeasible)?;
        let (phi, _) = table.sweep(s);
        let theta = 2.0 * PI * phi;
        let radius = libm::sqrt(area / PI);
        let q = sign(x) * radius * libm::cos(theta);
        let p = if phi >= 0.25 {
            sign(y) * radius
        } else {
            sign(y) * radius * libm::sin(theta)
        };
        let q = if phi >= 0.25 { 0.0 } else { q };
        Ok(DiscPoint::new(q, p))
    }

    /// Closed form through `(q, p) -> (A, phi) -> (A, alpha) -> (Q, P)`; the
    /// area derivative of the sweep at fixed angle comes from the
    /// differentiated flux integral.
    fn jacobian(&self, point: DiscPoint) -> Result<Matrix2> {
        check_open_ball(point.u(), self.params().radius_sq())?;
        let (_, jac) = self.evaluate(point, true)?;
        Ok(jac.expect("requested"))
    }

    fn sigma_with_jacobian(&self, point: DiscPoint) -> Result<(ChartPoint, Matrix2)> {
        check_open_ball(point.u(), self.params().radius_sq())?;
        let (image, jac) = self.evaluate(point, true)?;
        Ok((image, jac.expect("requested")))
    }
}

/// [`Sigma::new`] followed by a checked evaluation.
pub fn sigma(point: DiscPoint, params: &PackingParams) -> Result<ChartPoint> {
    Sigma::new(*params)?.sigma(point)
}

pub fn sigma_inv(point: ChartPoint, params: &PackingParams) -> Result<DiscPoint> {
    Sigma::new(*params)?.sigma_inv(point)
}

pub fn sigma_jacobian(point: DiscPoint, params: &PackingParams) -> Result<Matrix2> {
    Sigma::new(*params)?.jacobian(point)
}
