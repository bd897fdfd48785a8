use alloc::string::String;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("`{op}` is not supported for the non-smooth phase `{kind}`")]
    Unsupported { op: &'static str, kind: &'static str },
    #[error("phase `{0}` is singular where x = y")]
    Singular(&'static str),
    #[error("no ray reached the requested level set")]
    EmptyLevel,
    #[error("band half-width {delta} is below a quarter cell ({min})")]
    GridTooCoarse { delta: f64, min: f64 },
    #[error("rasters live on different grids")]
    GridMismatch,
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("point {index} lies outside the grid box")]
    OutsideBox { index: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("unknown key `{key}` for `{scope}`")]
    UnknownKey { key: String, scope: String },
    #[error("bad value for `{key}`: {reason}")]
    BadValue { key: String, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
