use thiserror::Error;

use crate::partition::{Family, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {partition} is not a valid {family} orbit label")]
    InvalidPartition {
        partition: Partition,
        family: Family,
    },

    #[error("cannot compare partitions of {left} and {right}: different ambient dimensions")]
    IncomparableSizes { left: u32, right: u32 },

    #[error("size {size} has the wrong parity for family {family}")]
    ParityMismatch { size: u32, family: Family },

    #[error("partition {partition} is not special in family {family}")]
    NotSpecial {
        partition: Partition,
        family: Family,
    },

    #[error("partition {partition} is not Richardson in family {family}")]
    NotRichardson {
        partition: Partition,
        family: Family,
    },

    #[error("operation requires family {expected}, got {found}")]
    WrongFamily {
        expected: &'static str,
        found: Family,
    },

    #[error("block variant {variant} is not defined for {kind}")]
    UndefinedVariant { kind: String, variant: &'static str },

    #[error("Lagrangian factor needs an even multiplicity, got {0}")]
    OddLagrangianMultiplicity(u32),

    #[error("step {0} is not a maximal isotropic Grassmannian")]
    NonMaximalStep(String),

    #[error("({richardson}, {levi}) is not a pseudo-polarization of {orbit}")]
    NotPseudoPolarization {
        orbit: Partition,
        richardson: Partition,
        levi: String,
    },

    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),

    #[error("invalid Levi type: {0}")]
    InvalidLevi(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no Springer preimage for {0}")]
    NoPreimage(Partition),
}

pub type Result<T> = std::result::Result<T, Error>;
