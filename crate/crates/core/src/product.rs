//! The product map `Phi = sigma x ... x sigma` on `B^{2n}(r)`.

use alloc::vec::Vec;

use crate::error::Result;
use crate::fd::Matrix2;
use crate::params::PackingParams;
use crate::points::ProductPoint;
use crate::sigma::DiscMap;

/// Applies the disc map to every factor of a ball point.
pub fn phi<M: DiscMap + ?Sized>(map: &M, point: &ProductPoint) -> Result<ProductPoint> {
    point.check_in_ball(map.params())?;
    let mut out = Vec::with_capacity(2 * point.n());
    for z in point.factors() {
        let w = map.eval(z)?;
        out.push(w.Q);
        out.push(w.P);
    }
    ProductPoint::new(out)
}

/// Diagonal blocks of the derivative of `Phi`; the off-diagonal blocks vanish
/// identically.
pub fn phi_jacobian<M: DiscMap + ?Sized>(map: &M, point: &ProductPoint) -> Result<Vec<Matrix2>> {
    point.check_in_ball(map.params())?;
    point.factors().map(|z| map.jacobian(z)).collect()
}

/// Band margins of one factor: `(c + u/2 + eps) - P` and `P - (c - u/2 - eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorMargin {
    pub upper: f64,
    pub lower: f64,
}

impl FactorMargin {
    pub fn min(&self) -> f64 {
        self.upper.min(self.lower)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyMargins {
    pub factors: Vec<FactorMargin>,
    /// `1 - sum P_i`.
    pub global: f64,
}

impl PropertyMargins {
    /// Smallest band margin over all factors.
    pub fn band(&self) -> f64 {
        self.factors
            .iter()
            .map(FactorMargin::min)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self) -> bool {
        self.band() >= 0.0 && self.global > 0.0
    }
}

/// Margins for a source point and its already computed image.
pub fn margins_of_image(
    params: &PackingParams,
    source: &ProductPoint,
    image: &ProductPoint,
) -> PropertyMargins {
    let c = params.c();
    let eps = params.epsilon();
    let factors = source
        .factors()
        .zip(image.factors())
        .map(|(z, w)| {
            let half = 0.5 * z.u();
            FactorMargin {
                upper: (c + half + eps) - w.p,
                lower: w.p - (c - half - eps),
            }
        })
        .collect();
    let sum: f64 = image.factors().map(|w| w.p).sum();
    PropertyMargins {
        factors,
        global: 1.0 - sum,
    }
}

/// Band and containment margins of `Phi(point)`.
pub fn property_margins<M: DiscMap + ?Sized>(
    map: &M,
    point: &ProductPoint,
) -> Result<PropertyMargins> {
    let image = phi(map, point)?;
    Ok(margins_of_image(map.params(), point, &image))
}
