//! Finite-difference Jacobians, used as independent oracles.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;

/// Step used by every finite-difference oracle in the crate.
pub const FD_STEP: f64 = 1e-5;

/// Square matrix stored row-major.
pub type Matrix2 = [[f64; 2]; 2];

pub fn det2(m: &Matrix2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Fourth-order central difference `(-f(2h) + 8f(h) - 8f(-h) + f(-2h)) / 12h`.
#[inline]
fn five_point(fm2: f64, fm1: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
}

/// Jacobian of a planar map `(x, y) -> (X, Y)` by five-point central differences.
#[allow(clippy::needless_range_loop)]
pub fn jacobian2(
    f: impl Fn(f64, f64) -> Result<(f64, f64)>,
    x: f64,
    y: f64,
    h: f64,
) -> Result<Matrix2> {
    let mut jac = [[0.0; 2]; 2];
    for col in 0..2 {
        let at = |k: f64| {
            if col == 0 {
                f(x + k * h, y)
            } else {
                f(x, y + k * h)
            }
        };
        let (m2, m1, p1, p2) = (at(-2.0)?, at(-1.0)?, at(1.0)?, at(2.0)?);
        jac[0][col] = five_point(m2.0, m1.0, p1.0, p2.0, h);
        jac[1][col] = five_point(m2.1, m1.1, p1.1, p2.1, h);
    }
    Ok(jac)
}

/// Jacobian of `f: R^d -> R^k` by five-point central differences; `out[i][j] = df_i/dx_j`.
pub fn jacobian(
    f: impl Fn(&[f64]) -> Result<Vec<f64>>,
    x: &[f64],
    h: f64,
) -> Result<Vec<Vec<f64>>> {
    let d = x.len();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut probe = x.to_vec();
    for j in 0..d {
        let mut vals: [Vec<f64>; 4] = Default::default();
        for (slot, k) in [-2.0, -1.0, 1.0, 2.0].into_iter().enumerate() {
            probe[j] = x[j] + k * h;
            vals[slot] = f(&probe)?;
        }
        probe[j] = x[j];
        let col = (0..vals[0].len())
            .map(|i| five_point(vals[0][i], vals[1][i], vals[2][i], vals[3][i], h))
            .collect();
        cols.push(col);
    }
    let rows = cols.first().map_or(0, Vec::len);
    let mut out = vec![vec![0.0; d]; rows];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            out[i][j] = *v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let f = |x: f64, y: f64| Ok((x * x * x * y, y * y * y * y - x));
        let j = jacobian2(f, 0.7, -0.4, 1e-3).unwrap();
        assert!((j[0][0] - 3.0 * 0.49 * -0.4).abs() < 1e-10);
        assert!((j[0][1] - 0.343).abs() < 1e-10);
        assert!((j[1][0] + 1.0).abs() < 1e-10);
        assert!((j[1][1] - 4.0 * -0.064).abs() < 1e-10);
    }

    #[test]
    fn general_matches_planar() {
        let g = |v: &[f64]| Ok(vec![libm::sin(v[0]) * v[1], v[0] + v[1] * v[1]]);
        let j = jacobian(g, &[0.3, 1.1], FD_STEP).unwrap();
        let j2 = jacobian2(|x, y| Ok((libm::sin(x) * y, x + y * y)), 0.3, 1.1, FD_STEP).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                assert!((j[i][k] - j2[i][k]).abs() < 1e-12);
            }
        }
    }
}
