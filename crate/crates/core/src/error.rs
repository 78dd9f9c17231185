use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("width `{name}` must be positive and finite, got {value}")]
    NonPositiveWidth { name: &'static str, value: f64 },

    #[error("grid span {span} is narrower than the required {required}")]
    GridTooNarrow { span: f64, required: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("states live on different grids or domains")]
    GridMismatch,

    #[error("frequency shift {shift} is not an integer multiple of the grid step {step}")]
    OffGridShift { shift: f64, step: f64 },

    #[error("operation requires a {expected} domain state")]
    WrongDomain { expected: &'static str },

    #[error("logical basis is degenerate: |<0_t|1_t>| = {overlap}")]
    DegenerateBasis { overlap: f64 },

    #[error("lattice sum did not converge within {cap} shells")]
    NonConvergence { cap: i64 },

    #[error("grid resolves {samples_per_width:.2} samples per peak width, need at least 4")]
    GridTooCoarse { samples_per_width: f64 },

    #[error("collective-variable reduction requires a monochromatic pump, got pump width {0}")]
    NonMonochromatic(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_width(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveWidth { name, value })
    }
}
