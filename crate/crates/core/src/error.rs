use thiserror::Error;

/// Errors raised by group construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring order mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    OrderMismatch { left: usize, right: usize },

    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not a subgroup")]
    NotASubgroup,

    #[error("word references generator {index} but only {available} are available")]
    BadWord { index: usize, available: usize },

    #[error("dicyclic parameter must be even, got {0}")]
    OddParameter(usize),

    #[error("k = {k} does not define an automorphism of order dividing 2 of C_{n}")]
    InvalidTwist { n: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group of order {order} exceeds the supported bound {bound}")]
    TooLarge { order: usize, bound: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
