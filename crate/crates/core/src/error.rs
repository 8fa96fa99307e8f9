use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("letters must be positive integers, got {0}")]
    InvalidLetter(u32),
    #[error("word {0} is not packed")]
    NotPacked(String),
    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),
    #[error("degree {requested} exceeds the configured bound {bound}")]
    ResourceLimit { requested: usize, bound: usize },
    #[error("operands have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("partitions are over different ground sets ({left} and {right} elements)")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("operand has a nonzero unit component")]
    UnitOperand,
    #[error("alphabet sizes differ ({left} and {right})")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("alphabet of size {alphabet} cannot resolve degree {degree}")]
    AlphabetTooSmall { alphabet: u32, degree: usize },
    #[error("polynomial is not constant on the packing fiber of {0}")]
    NotSaturated(String),
    #[error("expected a homogeneous element of degree {expected}, found a term of degree {found}")]
    InhomogeneousInput { expected: usize, found: usize },
    #[error("tree is not in the image of the word-to-tree map: {0}")]
    UnknownTree(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
