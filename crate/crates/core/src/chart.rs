//! The affine ball chart of `CP^n \ CP^{n-1}` and the toric chart `j`.
//!
//! `j(q, p) = (sqrt(p_k) e^{2 i q_k})_k` sends `K' = (0, pi)^n x simplex`
//! into the open unit ball, pulls `sum dx ^ dy` back to `sum dp ^ dq`, and
//! sends the level set `p_k = c` onto the Clifford torus.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fd::{self, FD_STEP};
use crate::params::PackingParams;
use crate::points::{check_open_ball, ProductPoint};
use crate::product::phi;
use crate::sigma::DiscMap;

/// Area of a complex line in the normalisation used throughout.
pub const LINE_AREA: f64 = PI;

/// A point `(z_1, ..., z_n)` of the open unit ball in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChartPoint(Vec<Complex64>);

impl ComplexChartPoint {
    /// Fails unless `sum |z_k|^2 < 1`.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let z = ComplexChartPoint(coords);
        check_open_ball(z.norm_sq(), 1.0)?;
        Ok(z)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Real and imaginary parts interleaved.
    pub fn to_real(&self) -> Vec<f64> {
        self.0.iter().flat_map(|z| [z.re, z.im]).collect()
    }
}

/// Membership predicates for the regions of the construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec {
    n: usize,
}

impl DomainSpec {
    pub fn new(n: usize) -> Self {
        DomainSpec { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clifford level `1/(n+1)`.
    pub fn clifford_level(&self) -> f64 {
        1.0 / (self.n as f64 + 1.0)
    }

    fn sized(&self, x: &ProductPoint) -> bool {
        x.n() == self.n
    }

    /// `0 < q_k < pi` for all `k`.
    pub fn in_square(&self, x: &ProductPoint) -> bool {
        self.sized(x) && x.factors().all(|f| f.q > 0.0 && f.q < PI)
    }

    /// `p_k > 0` and `sum p_k < 1`.
    pub fn in_simplex(&self, x: &ProductPoint) -> bool {
        self.sized(x)
            && x.factors().all(|f| f.p > 0.0)
            && x.factors().map(|f| f.p).sum::<f64>() < 1.0
    }

    pub fn in_k_prime(&self, x: &ProductPoint) -> bool {
        self.in_square(x) && self.in_simplex(x)
    }

    /// `x` in `K'` with every `p_k` within `tol` of the Clifford level.
    pub fn on_l_prime(&self, x: &ProductPoint, tol: f64) -> bool {
        let c = self.clifford_level();
        self.in_k_prime(x) && x.factors().all(|f| libm::fabs(f.p - c) <= tol)
    }

    /// All `p` coordinates zero and inside the ball of the given parameters.
    pub fn in_real_slice(&self, x: &ProductPoint, params: &PackingParams) -> bool {
        self.sized(x) && x.factors().all(|f| f.p == 0.0) && x.check_in_ball(params).is_ok()
    }

    fn check_k_prime(&self, x: &ProductPoint) -> Result<()> {
        if !self.sized(x) {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: x.coords().len(),
            });
        }
        if !self.in_square(x) {
            return Err(Error::NotInDomain {
                reason: "some q_k outside (0, pi)",
            });
        }
        if !self.in_simplex(x) {
            return Err(Error::NotInDomain {
                reason: "p outside the open simplex",
            });
        }
        Ok(())
    }
}

/// `(|z_1|^2, ..., |z_n|^2)`.
pub fn moment_map(z: &ComplexChartPoint) -> Vec<f64> {
    z.0.iter().map(|w| w.norm_sqr()).collect()
}

#[inline]
fn chart_unchecked(x: &ProductPoint) -> Vec<Complex64> {
    x.factors()
        .map(|f| Complex64::from_polar(libm::sqrt(f.p), 2.0 * f.q))
        .collect()
}

pub fn chart_j(x: &ProductPoint) -> Result<ComplexChartPoint> {
    DomainSpec::new(x.n()).check_k_prime(x)?;
    Ok(ComplexChartPoint(chart_unchecked(x)))
}

/// Inverse of [`chart_j`] with `q_k = arg(z_k) / 2` taken in `(0, pi)`.
pub fn chart_j_inv(z: &ComplexChartPoint) -> Result<ProductPoint> {
    if let Some(index) = z.0.iter().position(|w| w.re == 0.0 && w.im == 0.0) {
        return Err(Error::OnAxes { index });
    }
    let mut out = Vec::with_capacity(2 * z.n());
    for (index, w) in z.0.iter().enumerate() {
        let mut arg = libm::atan2(w.im, w.re);
        if arg == 0.0 {
            return Err(Error::BranchBoundary { index });
        }
        if arg < 0.0 {
            arg += TAU;
        }
        out.push(0.5 * arg);
        out.push(w.norm_sqr());
    }
    ProductPoint::new(out)
}

/// `j(Phi(x))` for a point of the ball.
pub fn full_embedding<M: DiscMap + ?Sized>(map: &M, x: &ProductPoint) -> Result<ComplexChartPoint> {
    chart_j(&phi(map, x)?)
}

/// `max_k ||z_k|^2 - c|`; zero exactly on the Clifford torus.
pub fn clifford_distance(z: &ComplexChartPoint, params: &PackingParams) -> f64 {
    let c = params.c();
    z.0.iter()
        .map(|w| libm::fabs(w.norm_sqr() - c))
        .fold(0.0, f64::max)
}

/// Max-norm of `J^T Omega_std J - Omega_pq` for `J` the finite-difference
/// Jacobian of `j` at `x`, with both forms written in interleaved
/// coordinates `(q_1, p_1, ...)` and `(x_1, y_1, ...)`.
///
/// The `p` step shrinks to `p_k / 4` for very small `p_k` so the stencil stays
/// inside the chart.
pub fn chart_symplectic_check(x: &ProductPoint) -> Result<f64> {
    DomainSpec::new(x.n()).check_k_prime(x)?;
    if x.factors().any(|f| f.q < 1e-6 || f.q > PI - 1e-6) {
        return Err(Error::NotInDomain {
            reason: "q_k within 1e-6 of the square boundary",
        });
    }
    let d = x.coords().len();
    let steps: Vec<f64> = (0..d)
        .map(|i| {
            if i % 2 == 1 {
                FD_STEP.min(0.25 * x.coords()[i])
            } else {
                FD_STEP
            }
        })
        .collect();
    // Differentiate in rescaled variables so a single step serves every column.
    let base: Vec<f64> = x.coords().iter().zip(&steps).map(|(v, h)| v / h).collect();
    let eval = |t: &[f64]| -> Result<Vec<f64>> {
        let raw: Vec<f64> = t.iter().zip(&steps).map(|(v, h)| v * h).collect();
        let z = chart_unchecked(&ProductPoint::new(raw)?);
        Ok(z.iter().flat_map(|w| [w.re, w.im]).collect())
    };
    let mut jac = fd::jacobian(eval, &base, 1.0)?;
    for row in jac.iter_mut() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell /= steps[j];
        }
    }

    let omega = |a: usize, b: usize, sign: f64| -> f64 {
        if a / 2 != b / 2 || a == b {
            0.0
        } else if a.is_multiple_of(2) {
            sign
        } else {
            -sign
        }
    };
    let mut defect: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            let mut pulled = 0.0;
            for k in 0..d / 2 {
                let (xi, yi) = (2 * k, 2 * k + 1);
                pulled += jac[xi][a] * jac[yi][b] - jac[yi][a] * jac[xi][b];
            }
            // sum dp ^ dq has coefficient -1 on dq_k ^ dp_k.
            defect = defect.max(libm::fabs(pulled - omega(a, b, -1.0)));
        }
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn pt(v: &[f64]) -> ProductPoint {
        ProductPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn chart_example() {
        let z = chart_j(&pt(&[FRAC_PI_2, 0.25, FRAC_PI_4, 0.25])).unwrap();
        let c = z.coords();
        assert!((c[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((c[1] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        let back = chart_j_inv(&z).unwrap();
        for (a, b) in back.coords().iter().zip([FRAC_PI_2, 0.25, FRAC_PI_4, 0.25]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn moment_examples() {
        let s = 1.0 / libm::sqrt(3.0);
        let z = ComplexChartPoint::new(alloc::vec![
            Complex64::from_polar(s, 0.7),
            Complex64::from_polar(s, -2.1)
        ])
        .unwrap();
        for m in moment_map(&z) {
            assert!((m - 1.0 / 3.0).abs() < 1e-15);
        }
        let z = ComplexChartPoint::new(alloc::vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.3)
        ])
        .unwrap();
        let m = moment_map(&z);
        assert!((m[0] - 0.36).abs() < 1e-15 && (m[1] - 0.09).abs() < 1e-15);
    }

    #[test]
    fn inverse_errors() {
        let z = ComplexChartPoint::new(alloc::vec![
            Complex64::new(0.1, 0.0),
            Complex64::new(0.0, 0.0)
        ])
        .unwrap();
        assert_eq!(chart_j_inv(&z), Err(Error::OnAxes { index: 1 }));
        let z = ComplexChartPoint::new(alloc::vec![
            Complex64::new(0.1, 0.2),
            Complex64::new(0.3, 0.0)
        ])
        .unwrap();
        assert_eq!(chart_j_inv(&z), Err(Error::BranchBoundary { index: 1 }));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            chart_j(&pt(&[0.0, 0.2, 1.0, 0.2])),
            Err(Error::NotInDomain { .. })
        ));
        assert!(matches!(
            chart_j(&pt(&[1.0, 0.6, 1.0, 0.5])),
            Err(Error::NotInDomain { .. })
        ));
        assert!(matches!(
            chart_j(&pt(&[1.0, 0.0, 1.0, 0.5])),
            Err(Error::NotInDomain { .. })
        ));
        assert!(ComplexChartPoint::new(alloc::vec![Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn predicates_nest() {
        let d = DomainSpec::new(2);
        let x = pt(&[1.0, 1.0 / 3.0, 2.0, 1.0 / 3.0]);
        assert!(d.on_l_prime(&x, 0.0) && d.in_k_prime(&x));
        assert!(!d.on_l_prime(&pt(&[1.0, 0.3, 2.0, 1.0 / 3.0]), 1e-3));
        assert_eq!(LINE_AREA, PI);
    }

    #[test]
    fn pullback_is_standard() {
        let defect = chart_symplectic_check(&pt(&[FRAC_PI_2, 0.25, FRAC_PI_4, 0.25])).unwrap();
        assert!(defect < 1e-6, "{defect}");
        let defect = chart_symplectic_check(&pt(&[0.3, 5e-4, 3.0, 0.9])).unwrap();
        assert!(defect < 1e-4, "{defect}");
    }

    #[test]
    fn single_factor_determinant() {
        // d(x, y)/d(q, p) for (sqrt(p) cos 2q, sqrt(p) sin 2q) has determinant -1,
        // i.e. +1 in the (p, q) order of dp ^ dq.
        for &(q, p) in &[(0.4, 0.2), (2.9, 0.7), (1.3, 0.01)] {
            let j = fd::jacobian2(
                |q, p| {
                    Ok((
                        libm::sqrt(p) * libm::cos(2.0 * q),
                        libm::sqrt(p) * libm::sin(2.0 * q),
                    ))
                },
                q,
                p,
                1e-5,
            )
            .unwrap();
            assert!((fd::det2(&j) + 1.0).abs() < 1e-8);
        }
    }
}
