use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "grid stability bound violated: |eta|*z0*dt = {product:.6} exceeds {limit} \
         (refine the time grid)"
    )]
    GridStability { product: f64, limit: f64 },

    #[error("flip time {0} lies outside the simulated time range")]
    FlipOutsideGrid(f64),

    #[error(
        "spectral coverage violated: bandwidth ratio {bandwidth_ratio:.4} (limit 0.1), \
         window ratio {window_ratio:.4} (limit 1.0); pass SimOptions::skip_coverage_check to force"
    )]
    CoverageViolated {
        bandwidth_ratio: f64,
        window_ratio: f64,
    },

    #[error("window [{0}, {1}] is not contained in the simulated time range")]
    WindowOutOfRange(f64, f64),

    #[error("input pulse carries no energy")]
    ZeroInputEnergy,

    #[error("echo window carries no energy")]
    ZeroEchoEnergy,

    #[error("operation requires beta > 0 (gamma-function pole at beta = 0)")]
    BetaNotPositive,

    #[error("gamma function pole at zero argument")]
    GammaPole,

    #[error("echo index {index} exceeds the number of scheduled flips ({flips})")]
    EchoIndexOutOfRange { index: usize, flips: usize },

    #[error("path enumeration budget exceeded ({0} paths)")]
    EnumerationBudget(u64),

    #[error("{path}:{line}: {message}")]
    Config {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unknown scenario `{name}`; valid scenarios: {valid}")]
    UnknownScenario { name: String, valid: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
