use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-physical state: {0}")]
    NonPhysicalState(String),
    #[error("degenerate deformation gradient (det = {det:e})")]
    DegenerateDeformation { det: f64 },
    #[error("loss of hyperbolicity (c^2 = {c2:e})")]
    HyperbolicityLoss { c2: f64 },
    #[error("degenerate Riemann fan")]
    DegenerateFan,
    #[error("exact solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("vacuum formation in exact solver")]
    VacuumFormation,
    #[error("cell ({i}, {j}): {source}")]
    AtCell {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("t = {t:e} (step {step}): {source}")]
    AtTime {
        t: f64,
        step: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Strips location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtCell { source, .. } | Error::AtTime { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_numerical(&self) -> bool {
        !matches!(
            self.root(),
            Error::Parse { .. } | Error::Config(_) | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
