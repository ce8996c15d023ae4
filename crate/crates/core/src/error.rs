use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("manifold {n} needs photon number {needed} but the cutoff is {cutoff}")]
    ManifoldOutOfRange { n: usize, needed: usize, cutoff: usize },

    /// The closed-form quartic divides by a vanishing intermediate.
    #[error("closed-form quartic hit a degenerate branch ({0})")]
    DegenerateBranch(&'static str),

    #[error("quartic has non-real roots (max |Im| = {max_imag:e})")]
    NonRealRoots { max_imag: f64 },

    #[error("root gap {gap:e} below threshold {threshold:e}")]
    DegenerateRoots { gap: f64, threshold: f64 },

    /// A coupling of the chain is zero, so the spectral solution is vacuous.
    #[error("coupling v_{0} vanishes")]
    VanishingCoupling(u8),

    #[error("integration step {0:e} below 1e-12")]
    StepSizeUnderflow(f64),

    #[error("time grid must be ascending and start at 0")]
    InvalidTimeGrid,

    #[error("tau = {0} is not on the trajectory time grid")]
    TimeNotOnGrid(f64),

    #[error("photon index {index} exceeds density-matrix dimension {dim}")]
    IndexOverflow { index: usize, dim: usize },

    #[error("phase moment of order {0} is not supported")]
    UnsupportedOrder(u32),

    #[error("phase grid needs at least 64 points, got {0}")]
    GridTooSmall(usize),

    #[error("manifold {n}: {source}")]
    Manifold {
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_manifold(self, n: usize) -> Error {
        match self {
            e @ Error::Manifold { .. } => e,
            e => Error::Manifold { n, source: Box::new(e) },
        }
    }
}
