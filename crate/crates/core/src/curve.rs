//! The nested level-curve family that the disc map is built on.
//!
//! For every area `A` in `(0, pi r^2)` the family holds a superellipse
//!
//! ```text
//! |(Q - pi/2) / a|^m + |(P - c) / h|^m = 1
//! ```
//!
//! centred at `(pi/2, c)` with enclosed area exactly `A`. Small curves are
//! circles; as `A` grows the half height is capped below the band ceiling
//! `A/(2 pi) + epsilon/2`, the half width below `pi/2 - delta_Q`, and the
//! exponent `m` rises to make up the area. The half height, half width and
//! exponent are all strictly increasing in `A`, so the family is strictly
//! nested.
//!
//! Points on a curve are addressed in polar form about the centre through
//! `s = ln tan(alpha)`, `alpha` the polar angle in the first quadrant. The
//! area-sweep (angle) coordinate is the normalised flux
//! `phi(A, alpha) = int_0^alpha rho d(rho)/dA`, which is the coordinate
//! conjugate to `A`. It is computed by composite Gauss-Legendre quadrature in
//! `s`, with panels graded towards the superellipse corner.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::dual::Dual2;
use crate::error::{Error, Result};
use crate::params::PackingParams;
use crate::points::ChartPoint;
use crate::special;

/// Largest superellipse exponent the schedule may use.
pub const EXPONENT_CAP: f64 = 4096.0;

/// Candidate sharpness exponents for the smooth minimum, tried in order.
const SMOOTHING_EXPONENTS: [f64; 12] = [
    8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0, 96.0, 128.0, 192.0, 256.0, 384.0,
];

/// Panels cover `s` in `[-S_TAIL, S_TAIL]`; beyond that the integrand is
/// linear in `alpha` to within `alpha^3`.
const S_TAIL: f64 = 14.0;
const PANEL_GROWTH: f64 = 1.6;
const MAX_EDGES: usize = 96;

/// Relative agreement required between successive extrapolated polygon areas.
const AREA_REFINEMENT_TOL: f64 = 1e-10;

/// 8-point Gauss-Legendre nodes and weights on `[-1, 1]` (positive half).
const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

/// One member of the family, with its shape parameters as plain numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCurve {
    /// Enclosed area.
    pub area: f64,
    /// Half extent in `P`.
    pub half_height: f64,
    /// Half extent in `Q`.
    pub half_width: f64,
    /// Superellipse exponent, at least 2.
    pub exponent: f64,
    /// Centre `(pi/2, c)`.
    pub center: ChartPoint,
}

impl LevelCurve {
    /// Polar radius about the centre in direction `alpha`.
    pub fn radius(&self, alpha: f64) -> f64 {
        let tc = libm::fabs(libm::cos(alpha)) / self.half_width;
        let ts = libm::fabs(libm::sin(alpha)) / self.half_height;
        let big = tc.max(ts);
        let m = self.exponent;
        let sum = libm::pow(tc / big, m) + libm::pow(ts / big, m);
        1.0 / (big * libm::pow(sum, 1.0 / m))
    }

    pub fn point_at_angle(&self, alpha: f64) -> ChartPoint {
        let rho = self.radius(alpha);
        ChartPoint::new(
            self.center.Q + rho * libm::cos(alpha),
            self.center.P + rho * libm::sin(alpha),
        )
    }

    /// `|dQ/a|^m + |dP/h|^m - 1`: negative inside, zero on the curve.
    pub fn implicit(&self, point: ChartPoint) -> f64 {
        let x = libm::fabs(point.Q - self.center.Q) / self.half_width;
        let y = libm::fabs(point.P - self.center.P) / self.half_height;
        libm::pow(x, self.exponent) + libm::pow(y, self.exponent) - 1.0
    }

    /// Closed-form superellipse area `4 a h G(m)`.
    pub fn formula_area(&self) -> f64 {
        4.0 * self.half_width * self.half_height * special::area_factor(self.exponent)
    }
}

/// Shape parameters with first and second derivatives in the area.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Shape {
    pub a: Dual2,
    pub h: Dual2,
    pub m: Dual2,
    pub ln_a: Dual2,
    pub ln_h: Dual2,
    pub inv_m: Dual2,
}

/// Log radius at a node together with what the angular derivative needs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeEval {
    pub ln_rho: Dual2,
    /// `d ln(rho) / d alpha`.
    pub dln_rho_dalpha: f64,
}

/// `min(lo, hi)` smoothed as `(lo^-k + hi^-k)^(-1/k)`.
///
/// Returns the smoothed value, its log, the smaller input, and the
/// log-deficit `ln(min) - ln(smooth)`.
fn smooth_min(f: Dual2, g: Dual2, k: f64) -> (Dual2, Dual2, Dual2, Dual2) {
    let (lo, hi) = if f.v <= g.v { (f, g) } else { (g, f) };
    let deficit = (lo / hi).powf(k).ln_1p().scale(1.0 / k);
    let ln_s = lo.ln() - deficit;
    // lo * exp(-deficit) never rounds above lo.
    (lo * (-deficit).exp(), ln_s, lo, deficit)
}

/// The curve family for fixed packing parameters.
#[derive(Debug, Clone, Copy)]
pub struct CurveFamily {
    params: PackingParams,
    smoothing: f64,
    width_cap: f64,
    q_margin: f64,
    max_exponent: f64,
}

impl CurveFamily {
    pub fn new(params: PackingParams) -> Result<Self> {
        let eps = params.epsilon();
        let q_margin = 0.05f64.min(PI * eps / 2.0);
        let width_cap = FRAC_PI_2 - q_margin;
        let x_max = params.radius_sq();
        let ceiling = x_max / 2.0 + eps / 2.0;
        // Tightest bounding rectangle at the outer edge, relative to its area.
        let hard_fill = (PI / 4.0) * (x_max / ceiling) / width_cap;
        if hard_fill >= 1.0 {
            return Err(Error::ScheduleInfeasible {
                reason: "band and width limits leave no room for the outer curve",
            });
        }
        let reserve = 0.5 * (1.0 - hard_fill.max(PI / 4.0));
        let cap_excess = special::ln_area_factor_excess(Dual2::constant(EXPONENT_CAP)).v;
        for &k in &SMOOTHING_EXPONENTS {
            let mut fam = CurveFamily {
                params,
                smoothing: k,
                width_cap,
                q_margin,
                max_exponent: 2.0,
            };
            let excess = fam.fill_excess(x_max).v;
            let fill = (PI / 4.0) * libm::exp(excess);
            if 1.0 - fill >= reserve && excess < cap_excess {
                let shape = fam
                    .shape_at(params.disc_area())
                    .ok_or(Error::ScheduleInfeasible {
                        reason: "exponent cap reached",
                    })?;
                fam.max_exponent = shape.m.v;
                return Ok(fam);
            }
        }
        Err(Error::ScheduleInfeasible {
            reason: "no smoothing exponent keeps the outer curve inside the band",
        })
    }

    pub fn params(&self) -> &PackingParams {
        &self.params
    }

    /// Margin `delta_Q` kept between every curve and the edges `Q = 0, pi`.
    pub fn q_margin(&self) -> f64 {
        self.q_margin
    }

    /// Exponent of the outermost curve.
    pub fn max_exponent(&self) -> f64 {
        self.max_exponent
    }

    pub fn smoothing_exponent(&self) -> f64 {
        self.smoothing
    }

    pub fn center(&self) -> ChartPoint {
        ChartPoint::new(FRAC_PI_2, self.params.c())
    }

    fn half_height_and_ratio(&self, x: Dual2) -> (Dual2, Dual2, Dual2) {
        let eps = self.params.epsilon();
        let k = self.smoothing;
        let circle = x.sqrt();
        let ceiling = x.scale(0.5) + eps / 2.0;
        let (h, ln_h, _, _) = smooth_min(circle, ceiling, k);
        let v = x / h;
        (h, ln_h, v)
    }

    /// `ln(T / (pi/4))` where `T = A / (4 a h)` is the fill ratio the exponent must reach.
    fn fill_excess(&self, x: f64) -> Dual2 {
        let (_, _, v) = self.half_height_and_ratio(Dual2::constant(x));
        let w = Dual2::constant(self.width_cap);
        let (_, _, lo, deficit) = smooth_min(v, w, self.smoothing);
        if lo.v == v.v {
            deficit
        } else {
            (v / w).ln() + deficit
        }
    }

    /// Shape at area `A` without range checks (the map's finite-difference
    /// stencils step slightly past the outer curve).
    pub(crate) fn shape_at(&self, area: f64) -> Option<Shape> {
        if !(area > 0.0 && area.is_finite()) {
            return None;
        }
        let x = Dual2 {
            v: area / PI,
            d1: 1.0 / PI,
            d2: 0.0,
        };
        let (h, ln_h, v) = self.half_height_and_ratio(x);
        let w = Dual2::constant(self.width_cap);
        let (a, ln_a, lo, deficit) = smooth_min(v, w, self.smoothing);
        let excess = if lo.v == v.v {
            deficit
        } else {
            (v / w).ln() + deficit
        };
        let m = special::invert_area_factor(excess, EXPONENT_CAP)?;
        Some(Shape {
            a,
            h,
            m,
            ln_a,
            ln_h,
            inv_m: m.recip(),
        })
    }

    fn check_area(&self, area: f64) -> Result<()> {
        let max = self.params.disc_area();
        if area > 0.0 && area < max {
            Ok(())
        } else {
            Err(Error::AreaOutOfRange { area, max })
        }
    }

    /// Shape parameters `(h, a, m)` of the curve enclosing `area`.
    pub fn shape_schedule(&self, area: f64) -> Result<LevelCurve> {
        self.check_area(area)?;
        self.curve_unchecked(area)
    }

    pub(crate) fn curve_unchecked(&self, area: f64) -> Result<LevelCurve> {
        let shape = self.shape_at(area).ok_or(Error::ScheduleInfeasible {
            reason: "exponent cap reached",
        })?;
        Ok(LevelCurve {
            area,
            half_height: shape.h.v,
            half_width: shape.a.v,
            exponent: shape.m.v,
            center: self.center(),
        })
    }

    /// Point of the curve enclosing `area` at area-sweep fraction `phi`,
    /// measured counterclockwise from the right midline crossing.
    pub fn level_curve_point(&self, area: f64, phi: f64) -> Result<ChartPoint> {
        self.check_area(area)?;
        if !(0.0..1.0).contains(&phi) {
            return Err(Error::SweepOutOfRange { phi });
        }
        self.level_curve_point_closed(area, phi)
    }

    /// As [`level_curve_point`](Self::level_curve_point) but also accepts the
    /// outer boundary curve `area = pi r^2`.
    pub fn level_curve_point_closed(&self, area: f64, phi: f64) -> Result<ChartPoint> {
        if !(area > 0.0 && area <= self.params.disc_area()) {
            return Err(Error::AreaOutOfRange {
                area,
                max: self.params.disc_area(),
            });
        }
        let table = self.flux_table(area).ok_or(Error::ScheduleInfeasible {
            reason: "exponent cap reached",
        })?;
        let (phi_r, sx, sy) = if phi <= 0.25 {
            (phi, 1.0, 1.0)
        } else if phi <= 0.5 {
            (0.5 - phi, -1.0, 1.0)
        } else if phi <= 0.75 {
            (phi - 0.5, -1.0, -1.0)
        } else {
            (1.0 - phi, 1.0, -1.0)
        };
        let s = table.log_tan_for_sweep(phi_r);
        let (x, y) = table.reduced_point(s);
        let center = self.center();
        Ok(ChartPoint::new(center.Q + sx * x, center.P + sy * y))
    }

    /// Enclosed area of the curve for `area`, measured independently of the
    /// closed-form area by the line integral `1/2 (x dy - y dx)` over
    /// refined inscribed polygons with Richardson extrapolation.
    pub fn enclosed_area(&self, area: f64) -> Result<f64> {
        self.check_area(area)?;
        let curve = self.curve_unchecked(area)?;
        polygon_area_extrapolated(|alpha| curve.radius(alpha), area)
    }

    pub(crate) fn flux_table(&self, area: f64) -> Option<FluxTable> {
        self.shape_at(area).map(FluxTable::new)
    }
}

fn polygon_area(radius: &impl Fn(f64) -> f64, vertices: usize) -> f64 {
    let step = 2.0 * PI / vertices as f64;
    // Neumaier-compensated sum: the terms are tiny and there are up to 2^21 of them.
    let (mut sum, mut carry) = (0.0, 0.0);
    let mut prev = {
        let r = radius(0.0);
        (r, 0.0)
    };
    for k in 1..=vertices {
        let alpha = if k == vertices { 0.0 } else { step * k as f64 };
        let r = radius(alpha);
        let cur = (r * libm::cos(alpha), r * libm::sin(alpha));
        let term = prev.0 * cur.1 - cur.0 * prev.1;
        let t = sum + term;
        carry += if libm::fabs(sum) >= libm::fabs(term) {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        prev = cur;
    }
    0.5 * (sum + carry)
}

/// Polygon areas with `M, 2M, 4M, ...` vertices, Richardson-extrapolated
/// against the `O(M^-2)` inscribed-polygon error, until two successive
/// extrapolations agree to `1e-11` relative to `scale`.
pub(crate) fn polygon_area_extrapolated(radius: impl Fn(f64) -> f64, scale: f64) -> Result<f64> {
    let mut vertices = 1024usize;
    let mut coarse = polygon_area(&radius, vertices);
    let mut prev_extrapolated: Option<f64> = None;
    let mut change = f64::INFINITY;
    while vertices <= 1 << 20 {
        vertices *= 2;
        let fine = polygon_area(&radius, vertices);
        let extrapolated = (4.0 * fine - coarse) / 3.0;
        if let Some(prev) = prev_extrapolated {
            change = libm::fabs(extrapolated - prev) / scale;
            if change <= AREA_REFINEMENT_TOL {
                return Ok(extrapolated);
            }
        }
        prev_extrapolated = Some(extrapolated);
        coarse = fine;
    }
    Err(Error::QuadratureNonConvergent {
        last_change: change,
    })
}

/// Log radius (as a function of area) at `s = ln tan alpha`, including the
/// limits `s = -inf` (positive `Q` axis) and `s = +inf` (positive `P` axis).
pub(crate) fn node_eval(sh: &Shape, s: f64) -> NodeEval {
    if s == f64::NEG_INFINITY {
        return NodeEval {
            ln_rho: sh.ln_a,
            dln_rho_dalpha: 0.0,
        };
    }
    if s == f64::INFINITY {
        return NodeEval {
            ln_rho: sh.ln_h,
            dln_rho_dalpha: 0.0,
        };
    }
    let (ln_cos, ln_sin) = log_cos_sin(s);
    let (ln_rho, l1, l2, lf) = log_radius(sh, ln_cos, ln_sin);
    let t1 = libm::exp(l1 - lf + s);
    let t2 = libm::exp(l2 - lf - s);
    NodeEval {
        ln_rho,
        dln_rho_dalpha: t1 - t2,
    }
}

/// `ln rho` at the given angle, plus the values `m ln(cos/a)`, `m ln(sin/h)`
/// and their log-sum-exp.
#[inline]
fn log_radius(sh: &Shape, ln_cos: f64, ln_sin: f64) -> (Dual2, f64, f64, f64) {
    let l1 = (Dual2::constant(ln_cos) - sh.ln_a) * sh.m;
    let l2 = (Dual2::constant(ln_sin) - sh.ln_h) * sh.m;
    let (big, small) = if l1.v >= l2.v { (l1, l2) } else { (l2, l1) };
    let lf = big + (small - big).exp().ln_1p();
    (-(lf * sh.inv_m), l1.v, l2.v, lf.v)
}

#[inline]
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + libm::log1p(libm::exp(-z))
    } else {
        libm::log1p(libm::exp(z))
    }
}

/// `(ln cos alpha, ln sin alpha)` for `s = ln tan alpha`.
#[inline]
pub(crate) fn log_cos_sin(s: f64) -> (f64, f64) {
    let ln_cos = -0.5 * softplus(2.0 * s);
    (ln_cos, ln_cos + s)
}

/// `alpha = atan(e^s)`, accurate near both ends of the quadrant.
#[inline]
pub(crate) fn alpha_of(s: f64) -> f64 {
    if s <= 0.0 {
        libm::atan(libm::exp(s))
    } else {
        FRAC_PI_2 - libm::atan(libm::exp(-s))
    }
}

/// Flux tables for one curve: cumulative `I(s) = int rho rho_A d(alpha)` and
/// its area derivative at the panel edges.
#[derive(Debug, Clone)]
pub(crate) struct FluxTable {
    pub shape: Shape,
    edges: [f64; MAX_EDGES],
    cum: [f64; MAX_EDGES],
    cum_a: [f64; MAX_EDGES],
    len: usize,
    lo: (f64, f64),
    hi: (f64, f64),
    quarter: f64,
    quarter_a: f64,
}

impl FluxTable {
    fn new(shape: Shape) -> Self {
        let m = shape.m.v;
        let corner = (shape.ln_h.v - shape.ln_a.v).clamp(-S_TAIL + 1.0, S_TAIL - 1.0);
        let core = 0.5 / m;
        let mut left = [0.0; MAX_EDGES / 2];
        let mut right = [0.0; MAX_EDGES / 2];
        let (mut nl, mut nr) = (0, 0);
        let mut width = core;
        let mut e = corner;
        while e > -S_TAIL && nl < left.len() - 1 {
            e -= width;
            if e - width * PANEL_GROWTH * 0.5 < -S_TAIL || nl == left.len() - 2 {
                e = -S_TAIL;
            }
            left[nl] = e;
            nl += 1;
            width *= PANEL_GROWTH;
        }
        width = core;
        e = corner;
        while e < S_TAIL && nr < right.len() - 1 {
            e += width;
            if e + width * PANEL_GROWTH * 0.5 > S_TAIL || nr == right.len() - 2 {
                e = S_TAIL;
            }
            right[nr] = e;
            nr += 1;
            width *= PANEL_GROWTH;
        }
        let mut edges = [0.0; MAX_EDGES];
        let mut len = 0;
        for i in (0..nl).rev() {
            edges[len] = left[i];
            len += 1;
        }
        edges[len] = corner;
        len += 1;
        for &r in &right[..nr] {
            edges[len] = r;
            len += 1;
        }

        let mut table = FluxTable {
            shape,
            edges,
            cum: [0.0; MAX_EDGES],
            cum_a: [0.0; MAX_EDGES],
            len,
            lo: (0.0, 0.0),
            hi: (0.0, 0.0),
            quarter: 0.0,
            quarter_a: 0.0,
        };
        table.lo = table.flux_density(edges[0]);
        table.hi = table.flux_density(edges[len - 1]);
        let tail = alpha_of(-S_TAIL);
        table.cum[0] = table.lo.0 * tail;
        table.cum_a[0] = table.lo.1 * tail;
        for i in 1..len {
            let (f, fa) = table.panel(edges[i - 1], edges[i]);
            table.cum[i] = table.cum[i - 1] + f;
            table.cum_a[i] = table.cum_a[i - 1] + fa;
        }
        table.quarter = table.cum[len - 1] + table.hi.0 * tail;
        table.quarter_a = table.cum_a[len - 1] + table.hi.1 * tail;
        table
    }

    pub fn node(&self, s: f64) -> NodeEval {
        node_eval(&self.shape, s)
    }

    /// `(g, dg/dA)` with `g = rho d(rho)/dA`, per unit `alpha`.
    fn flux_density(&self, s: f64) -> (f64, f64) {
        let n = self.node(s);
        let r2 = libm::exp(2.0 * n.ln_rho.v);
        let d1 = n.ln_rho.d1;
        (r2 * d1, r2 * (2.0 * d1 * d1 + n.ln_rho.d2))
    }

    /// Integrand in `s`: flux density times `d(alpha)/ds = sin cos`.
    fn integrand(&self, s: f64) -> (f64, f64) {
        let (lc, ls) = log_cos_sin(s);
        let (ln_rho, ..) = log_radius(&self.shape, lc, ls);
        let w = libm::exp(2.0 * ln_rho.v + lc + ls);
        let d1 = ln_rho.d1;
        (w * d1, w * (2.0 * d1 * d1 + ln_rho.d2))
    }

    fn panel(&self, a: f64, b: f64) -> (f64, f64) {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = (0.0, 0.0);
        for &(x, w) in &GL8 {
            let (f1, g1) = self.integrand(mid - half * x);
            let (f2, g2) = self.integrand(mid + half * x);
            acc.0 += w * (f1 + f2);
            acc.1 += w * (g1 + g2);
        }
        (acc.0 * half, acc.1 * half)
    }

    fn edge_index(&self, s: f64) -> usize {
        // Largest i with edges[i] <= s.
        let edges = &self.edges[..self.len];
        edges.partition_point(|&e| e <= s).saturating_sub(1)
    }

    /// `(I(s), dI/dA(s))`, the unnormalised flux from `alpha = 0`.
    pub fn flux(&self, s: f64) -> (f64, f64) {
        let first = self.edges[0];
        let last = self.edges[self.len - 1];
        if s <= first {
            let alpha = if s == f64::NEG_INFINITY {
                0.0
            } else {
                alpha_of(s)
            };
            return (self.lo.0 * alpha, self.lo.1 * alpha);
        }
        if s >= last {
            let rest = if s == f64::INFINITY {
                0.0
            } else {
                libm::atan(libm::exp(-s))
            };
            return (
                self.quarter - self.hi.0 * rest,
                self.quarter_a - self.hi.1 * rest,
            );
        }
        let i = self.edge_index(s);
        let (f, fa) = self.panel(self.edges[i], s);
        (self.cum[i] + f, self.cum_a[i] + fa)
    }

    /// Total flux through the full curve, `4 I(pi/2)`; equals 1 exactly in
    /// exact arithmetic since the enclosed area equals `A`.
    #[cfg(test)]
    pub fn total(&self) -> f64 {
        4.0 * self.quarter
    }

    /// Normalised sweep `phi in [0, 1/4]` at `s` and its area derivative at fixed angle.
    pub fn sweep(&self, s: f64) -> (f64, f64) {
        let (i, ia) = self.flux(s);
        let q = self.quarter;
        (i / (4.0 * q), (ia * q - i * self.quarter_a) / (4.0 * q * q))
    }

    /// `d(phi)/d(alpha)` at `s`.
    pub fn sweep_density(&self, s: f64) -> f64 {
        self.flux_density(s).0 / (4.0 * self.quarter)
    }

    /// Inverse of [`sweep`](Self::sweep) in the first quadrant.
    pub fn log_tan_for_sweep(&self, phi: f64) -> f64 {
        if phi <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if phi >= 0.25 {
            return f64::INFINITY;
        }
        let target = 4.0 * self.quarter * phi;
        let len = self.len;
        if target <= self.cum[0] {
            let alpha = target / self.lo.0;
            return libm::log(libm::tan(alpha));
        }
        if target >= self.cum[len - 1] {
            let rest = (self.quarter - target) / self.hi.0;
            return -libm::log(libm::tan(rest));
        }
        let cum = &self.cum[..len];
        let i = cum
            .partition_point(|&c| c <= target)
            .saturating_sub(1)
            .min(len - 2);
        let (mut lo, mut hi) = (self.edges[i], self.edges[i + 1]);
        let span = self.cum[i + 1] - self.cum[i];
        let mut s = lo + (hi - lo) * ((target - self.cum[i]) / span).clamp(0.0, 1.0);
        for _ in 0..60 {
            let (f, _) = self.panel(self.edges[i], s);
            let resid = self.cum[i] + f - target;
            if resid > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let slope = self.integrand(s).0;
            let mut next = s - resid / slope;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let step = libm::fabs(next - s);
            s = next;
            if step <= 1e-15 * (1.0 + libm::fabs(s)) || hi - lo <= 1e-15 * (1.0 + libm::fabs(s)) {
                break;
            }
        }
        s
    }

    /// First-quadrant offset `(rho cos, rho sin)` from the centre at `s`.
    pub fn reduced_point(&self, s: f64) -> (f64, f64) {
        let n = self.node(s);
        let rho = libm::exp(n.ln_rho.v);
        if s == f64::NEG_INFINITY {
            return (rho, 0.0);
        }
        if s == f64::INFINITY {
            return (0.0, rho);
        }
        let (lc, ls) = log_cos_sin(s);
        (rho * libm::exp(lc), rho * libm::exp(ls))
    }
}
