use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    InvalidOrder,

    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    InvalidEmbedding { from: usize, to: usize },

    #[error("Heisenberg level must be positive")]
    InvalidHeisenbergLevel,

    #[error("Heisenberg level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("invalid level: q must be at least 2, got {0}")]
    InvalidLevel(usize),

    #[error("gcd({r}, {k}) = {gcd} but coprime rank and degree are required")]
    NotCoprime { r: usize, k: usize, gcd: usize },

    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: usize, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("characters have different orders ({0} and {1}); no automorphism relates them")]
    NoOrbit(usize, usize),

    #[error("h = {h} does not divide the level {level}; the bundle does not split into line bundles; use decompose")]
    NotLineBundleSplit { h: usize, level: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
