use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed document; the message carries line/column or the offending field.
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },

    /// A well-formed document that violates a domain invariant.
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// L_wall <= n * L_optimal does not hold.
    #[error(
        "infeasible: wall length {wall_length:.6} m exceeds {robots} robot(s) x L_optimal {l_optimal:.6} m = {capacity:.6} m",
        capacity = *robots as f64 * l_optimal
    )]
    Infeasible {
        wall_length: f64,
        robots: usize,
        l_optimal: f64,
    },

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("material offset {offset:.6} m outside reach annulus [{min:.6}, {max:.6}] m")]
    OutOfAnnulus { offset: f64, min: f64, max: f64 },

    #[error("coverage error: bricks unreachable by every robot: {0:?}")]
    Coverage(Vec<usize>),

    #[error("deadlock: no robot can progress with {remaining} brick(s) left")]
    Deadlock { remaining: usize },

    #[error("schedule invariant violated: {0}")]
    Invariant(String),

    #[error("report has no feasible rows")]
    EmptyReport,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit code: 1 usage/parse, 2 infeasibility, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation { .. } | Error::Io { .. } => 1,
            Error::Domain(_)
            | Error::Infeasible { .. }
            | Error::UnsupportedGeometry(_)
            | Error::OutOfAnnulus { .. }
            | Error::Coverage(_)
            | Error::EmptyReport => 2,
            Error::Deadlock { .. } | Error::Invariant(_) => 3,
        }
    }
}
