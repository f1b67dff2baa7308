#![cfg_attr(not(test), no_std)]
// Negated float comparisons reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod curve;
mod dual;
pub mod error;
pub mod params;
pub mod points;
pub mod special;

pub use curve::{CurveFamily, LevelCurve};
pub use error::{Error, Result};
pub use params::{make_params, PackingParams};
pub use points::{ChartPoint, DiscPoint, ProductPoint};
pub mod fd;
pub mod sigma;
pub use sigma::{sigma, sigma_inv, sigma_jacobian, DiscMap, Sigma};
pub mod chart;
pub mod product;
pub use chart::{ComplexChartPoint, DomainSpec};
pub mod verify;
