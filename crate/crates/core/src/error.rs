use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// Subsistence minima absorb all labor (sum of s_a = N0_a / (T_a c_a) is at least one).
    #[error("subsistence requirements infeasible: share sum {share_sum:.6} >= 1")]
    InfeasibleSubsistence { share_sum: f64 },

    #[error("sector sets do not match: {left} vs {right} sectors")]
    MismatchedSectors { left: usize, right: usize },

    #[error("year {0} not present in series")]
    MissingYear(i32),

    #[error("base year {base} for year {year} not present in series")]
    MissingBaseYear { year: i32, base: i32 },

    #[error("invalid base policy: {0}")]
    InvalidPolicy(String),

    #[error("finite-difference step {relative:.4} exceeds 0.1 of the tech level")]
    StepTooLarge { relative: f64 },

    #[error("simulation failed in year {year}: {source}")]
    Simulation {
        year: i32,
        #[source]
        source: Box<Error>,
    },

    #[error("{field}: {reason}")]
    InvalidConfig { field: String, reason: String },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
