//! Second-order forward-mode numbers in a single variable.
//!
//! Used to carry the curve-family shape parameters together with their
//! first and second derivatives in the enclosed area, which the flux
//! integrand and its area derivative need.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dual2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Dual2 {
    pub const fn constant(v: f64) -> Self {
        Dual2 {
            v,
            d1: 0.0,
            d2: 0.0,
        }
    }

    pub const fn variable(v: f64) -> Self {
        Dual2 {
            v,
            d1: 1.0,
            d2: 0.0,
        }
    }

    /// Applies a scalar function given its value and first two derivatives at `self.v`.
    #[inline]
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Dual2 {
            v: f0,
            d1: f1 * self.d1,
            d2: f2 * self.d1 * self.d1 + f1 * self.d2,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Dual2 {
            v: self.v * k,
            d1: self.d1 * k,
            d2: self.d2 * k,
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = libm::sqrt(self.v);
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(libm::log(self.v), r, -r * r)
    }

    pub fn exp(self) -> Self {
        let e = libm::exp(self.v);
        self.chain(e, e, e)
    }

    pub fn ln_1p(self) -> Self {
        let r = 1.0 / (1.0 + self.v);
        self.chain(libm::log1p(self.v), r, -r * r)
    }

    /// `self^k` for a constant exponent; `self.v` must be positive.
    pub fn powf(self, k: f64) -> Self {
        let p = libm::pow(self.v, k);
        let r = 1.0 / self.v;
        self.chain(p, k * p * r, k * (k - 1.0) * p * r * r)
    }

    pub fn ln_gamma(self) -> Self {
        self.chain(
            libm::lgamma(self.v),
            crate::special::digamma(self.v),
            crate::special::trigamma(self.v),
        )
    }
}

impl Add for Dual2 {
    type Output = Dual2;
    fn add(self, o: Dual2) -> Dual2 {
        Dual2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Add<f64> for Dual2 {
    type Output = Dual2;
    fn add(self, o: f64) -> Dual2 {
        Dual2 {
            v: self.v + o,
            ..self
        }
    }
}

impl Sub for Dual2 {
    type Output = Dual2;
    fn sub(self, o: Dual2) -> Dual2 {
        Dual2 {
            v: self.v - o.v,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }
}

impl Sub<f64> for Dual2 {
    type Output = Dual2;
    fn sub(self, o: f64) -> Dual2 {
        Dual2 {
            v: self.v - o,
            ..self
        }
    }
}

impl Neg for Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        self.scale(-1.0)
    }
}

impl Mul for Dual2 {
    type Output = Dual2;
    fn mul(self, o: Dual2) -> Dual2 {
        Dual2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Mul<f64> for Dual2 {
    type Output = Dual2;
    fn mul(self, k: f64) -> Dual2 {
        self.scale(k)
    }
}

impl Div for Dual2 {
    type Output = Dual2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Dual2) -> Dual2 {
        self * o.recip()
    }
}

impl Div<f64> for Dual2 {
    type Output = Dual2;
    fn div(self, k: f64) -> Dual2 {
        self.scale(1.0 / k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (d1, d2)
    }

    #[test]
    fn composite_matches_finite_differences() {
        let f = |x: Dual2| ((x * x + 1.0).sqrt().ln() / x).exp().powf(2.5) + (x.scale(0.3)).ln_1p();
        let scalar = |x: f64| f(Dual2::constant(x)).v;
        for &x in &[0.3, 1.0, 2.7] {
            let d = f(Dual2::variable(x));
            let (d1, d2) = fd2(scalar, x, 1e-4);
            assert!(
                (d.d1 - d1).abs() < 1e-7 * (1.0 + d1.abs()),
                "{x}: {} vs {d1}",
                d.d1
            );
            assert!(
                (d.d2 - d2).abs() < 1e-5 * (1.0 + d2.abs()),
                "{x}: {} vs {d2}",
                d.d2
            );
        }
    }

    #[test]
    fn ln_gamma_derivatives() {
        let scalar = |x: f64| libm::lgamma(x);
        for &x in &[1.1, 1.5, 2.0, 7.3] {
            let d = Dual2::variable(x).ln_gamma();
            let (d1, d2) = fd2(scalar, x, 1e-4);
            assert!((d.d1 - d1).abs() < 1e-7);
            assert!((d.d2 - d2).abs() < 1e-5);
        }
    }
}
