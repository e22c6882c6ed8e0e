use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple type {series}{rank}")]
    InvalidType { series: String, rank: usize },

    #[error("not a member: {0}")]
    Membership(String),

    #[error("degenerate pair: {0} and {1} are proportional")]
    DegeneratePair(String, String),

    #[error("root {0} is not positive")]
    NotPositive(String),

    #[error("exhaustive search over {size} roots exceeds the limit of {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("root {0} is not simple")]
    NotSimple(String),

    #[error("no real roots supplied")]
    NoRealRoots,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("not a positive system: {0}")]
    Positivity(String),

    #[error("not admissible: {0}")]
    Admissibility(String),

    #[error("element is not ad-nilpotent")]
    NotNilpotent,

    #[error("element is outside the positive chamber: {0}")]
    Chamber(String),

    #[error("element is not regular: {0}")]
    NotRegular(String),

    #[error("stabilizer mismatch: {0}")]
    Stabilizer(String),

    #[error("no regular element found: {0}")]
    RegularitySearch(String),

    #[error("invalid real form: {0}")]
    InvalidFamily(String),

    #[error("Cartan involution check failed: {0}")]
    Involution(String),

    #[error("abelian subspace is not maximal: {0}")]
    Maximality(String),

    #[error("spectral clustering failed: {0}")]
    SpectralTolerance(String),

    #[error("could not extract a real root vector: {0}")]
    RealRootExtraction(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
