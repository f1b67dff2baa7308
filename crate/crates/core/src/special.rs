//! Polygamma functions and the superellipse area factor.

use crate::dual::Dual2;
use core::f64::consts::PI;

/// Digamma function for `x > 0`.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * 691.0 / 32760.0)))));
    acc + libm::log(x) - 0.5 * r - series
}

/// Trigamma function for `x > 0`.
pub fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r
        + r2 / 2.0
        + r * r2
            * (1.0 / 6.0
                - r2 * (1.0 / 30.0 - r2 * (1.0 / 42.0 - r2 * (1.0 / 30.0 - r2 * 5.0 / 66.0))));
    acc + series
}

/// `ln G(m) - ln(pi/4)` where `G(m) = Gamma(1+1/m)^2 / Gamma(1+2/m)`.
///
/// A superellipse `|x/a|^m + |y/h|^m = 1` encloses `4 a h G(m)`; `G(2) = pi/4`
/// (ellipse) and `G` increases to 1 (rectangle) as `m` grows.
pub(crate) fn ln_area_factor_excess(m: Dual2) -> Dual2 {
    let inv = m.recip();
    let g1 = (inv + 1.0).ln_gamma();
    let g2 = (inv.scale(2.0) + 1.0).ln_gamma();
    g1.scale(2.0) - g2 - libm::log(PI / 4.0)
}

pub fn area_factor(m: f64) -> f64 {
    (PI / 4.0) * libm::exp(ln_area_factor_excess(Dual2::constant(m)).v)
}

/// Solves `ln G(m) - ln(pi/4) = excess` for `m` in `[2, m_cap]`, carrying
/// derivatives of `excess` through the implicit function theorem.
///
/// Returns `None` when the excess exceeds what `m_cap` can reach.
pub(crate) fn invert_area_factor(excess: Dual2, m_cap: f64) -> Option<Dual2> {
    let target = excess.v.max(0.0);
    let eval = |m: f64| ln_area_factor_excess(Dual2::variable(m));
    let top = eval(m_cap);
    if target >= top.v {
        return None;
    }
    let mut lo = 2.0;
    let mut hi = m_cap;
    // 1 - G ~ pi^2 / (6 m^2) for large m.
    let g = (PI / 4.0) * libm::exp(target);
    let mut m = if g < 1.0 {
        (PI / libm::sqrt(6.0 * (1.0 - g))).clamp(2.0, m_cap)
    } else {
        m_cap
    };
    if target == 0.0 {
        m = 2.0;
    }
    let mut f = eval(m);
    for _ in 0..100 {
        let resid = f.v - target;
        if resid == 0.0 {
            break;
        }
        if resid > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
        let mut next = m - resid / f.d1;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - m).abs();
        m = next;
        f = eval(m);
        if step <= 1e-15 * m {
            break;
        }
    }
    let g1 = f.d1;
    let g2 = f.d2;
    let d1 = excess.d1 / g1;
    let d2 = (excess.d2 - g2 * d1 * d1) / g1;
    Some(Dual2 { v: m, d1, d2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digamma_known_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + euler).abs() < 1e-14);
        assert!((digamma(0.5) + euler + 2.0 * core::f64::consts::LN_2).abs() < 1e-14);
        assert!((digamma(2.0) - (1.0 - euler)).abs() < 1e-14);
    }

    #[test]
    fn trigamma_known_values() {
        let z2 = PI * PI / 6.0;
        assert!((trigamma(1.0) - z2).abs() < 1e-13);
        assert!((trigamma(0.5) - PI * PI / 2.0).abs() < 1e-13);
        assert!((trigamma(2.0) - (z2 - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn area_factor_limits() {
        assert!((area_factor(2.0) - PI / 4.0).abs() < 1e-15);
        // Gamma(5/4)^2 / Gamma(3/2)
        let g4 = libm::tgamma(1.25).powi(2) / libm::tgamma(1.5);
        assert!((area_factor(4.0) - g4).abs() < 1e-14);
        assert!(area_factor(1000.0) > 0.99999);
    }

    #[test]
    fn inversion_round_trips() {
        for &m in &[2.0, 2.001, 3.0, 17.5, 60.0, 400.0] {
            let ex = ln_area_factor_excess(Dual2::constant(m)).v;
            let got = invert_area_factor(Dual2::constant(ex), 2000.0).unwrap();
            assert!((got.v - m).abs() < 1e-9 * m, "{m} -> {}", got.v);
        }
        assert!(invert_area_factor(Dual2::constant(1.0), 2000.0).is_none());
    }
}
