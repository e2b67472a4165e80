//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a mathematical or physical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration, profile, or scenario input.
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested transverse wavenumber does not correspond to a guided mode.
    #[error("not a guided mode: {0}")]
    NotGuided(String),

    /// Electron matching requested with lambda_dB < lambda_C.
    #[error("relativistic regime: lambda_dB/lambda_C = {ratio} < 1")]
    RelativisticRegime { ratio: f64 },

    /// A characteristic-equation root failed the normalization positivity check.
    #[error("inconsistent root: normalization brace = {brace} <= 0 at kappa0_a = {kappa0_a}")]
    InconsistentRoot { kappa0_a: f64, brace: f64 },

    /// First-order shifts are undefined for photon states with |m_ell| = 1:
    /// their degenerate subspace is not diagonal in the unperturbed basis.
    #[error("photon |m_ell| = 1: degenerate subspace is not diagonal; shifts are not defined")]
    PhotonMEllOne,

    /// Second-order denominator too close to degeneracy.
    #[error("ill-conditioned: |beta0^2 gap| = {gap} below {threshold}")]
    IllConditioned { gap: f64, threshold: f64 },

    /// Zero spin-orbit splitting has no finite beat length.
    #[error("infinite beat length: spin-orbit splitting is zero")]
    InfiniteBeat,

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Validation(_)
            | Error::NotGuided(_)
            | Error::RelativisticRegime { .. }
            | Error::PhotonMEllOne
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::InconsistentRoot { .. }
            | Error::IllConditioned { .. }
            | Error::InfiniteBeat
            | Error::QuadratureFailure(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
