use core::fmt;

/// Errors raised by parameter validation and the map constructions.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Fewer than two disc factors.
    InvalidDimension { n: usize },
    /// Radius not a positive finite number.
    InvalidRadius { r: f64 },
    /// `r^2 >= 2/(n+1)`: no relative packing exists at or above this radius.
    RadiusAtOrAboveBound { n: usize, r: f64, bound: f64 },
    /// Supplied band slack is non-positive or larger than the sharp maximum.
    InvalidEpsilon { epsilon: f64, max: f64 },
    /// The curve family cannot be fitted inside the band and width limits.
    ScheduleInfeasible { reason: &'static str },
    /// Enclosed-area argument outside `(0, pi r^2)`.
    AreaOutOfRange { area: f64, max: f64 },
    /// Area-sweep parameter outside `[0, 1)`.
    SweepOutOfRange { phi: f64 },
    /// Source point not inside the open ball.
    OutsideBall { radius_sq: f64, bound_sq: f64 },
    /// Coordinate vector has the wrong length for the configured dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Chart point not in the image of the disc map.
    NotInImage,
    /// Successive polyline refinements of an area integral disagree.
    QuadratureNonConvergent { last_change: f64 },
    /// Point violates one of the K' predicates.
    NotInDomain { reason: &'static str },
    /// Some complex coordinate vanishes, so the angle is undefined.
    OnAxes { index: usize },
    /// Some coordinate sits on the positive real axis (angle 0 or pi after halving).
    BranchBoundary { index: usize },
    /// A sample specification asked for no points.
    EmptySample,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension { n } => write!(f, "dimension n = {n} must be at least 2"),
            Error::InvalidRadius { r } => write!(f, "radius {r} must be positive and finite"),
            Error::RadiusAtOrAboveBound { n, r, bound } => write!(
                f,
                "radius at or above Biran–Cornea bound: r = {r} >= sqrt(2/(n+1)) = {bound} for n = {n}"
            ),
            Error::InvalidEpsilon { epsilon, max } => {
                write!(f, "epsilon {epsilon} must lie in (0, {max}]")
            }
            Error::ScheduleInfeasible { reason } => write!(f, "curve schedule infeasible: {reason}"),
            Error::AreaOutOfRange { area, max } => {
                write!(f, "enclosed area {area} outside (0, {max})")
            }
            Error::SweepOutOfRange { phi } => write!(f, "sweep parameter {phi} outside [0, 1)"),
            Error::OutsideBall { radius_sq, bound_sq } => write!(
                f,
                "point with squared radius {radius_sq} is outside the open ball of squared radius {bound_sq}"
            ),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            Error::NotInImage => f.write_str("point is not in the image of the disc map"),
            Error::QuadratureNonConvergent { last_change } => write!(
                f,
                "area quadrature did not converge (last relative change {last_change:e})"
            ),
            Error::NotInDomain { reason } => write!(f, "point not in K': {reason}"),
            Error::OnAxes { index } => write!(f, "coordinate z_{} is zero", index + 1),
            Error::BranchBoundary { index } => {
                write!(f, "coordinate z_{} lies on the angle branch cut", index + 1)
            }
            Error::EmptySample => f.write_str("sample count must be positive"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
