use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph has no generators")]
    NoGenerators,
    #[error("generators[{index}]: {name:?} is not an ASCII identifier")]
    InvalidName { index: usize, name: String },
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("{0} generators given, at most 64 are supported")]
    TooManyGenerators(usize),
    #[error("relations[{relation}]: unknown generator {name:?}")]
    UnknownGenerator { relation: usize, name: String },
    #[error("relations[{relation}]: self-pair on {name:?}")]
    SelfPair { relation: usize, name: String },
    #[error("relations[{relation}]: label {value} is below 2 (use 0 or \"inf\" for ∞)")]
    LabelTooSmall { relation: usize, value: i64 },
    #[error("relations[{relation}]: label does not fit in 32 bits")]
    LabelTooLarge { relation: usize },
    #[error("relations[{relation}]: unrecognized label {text:?}")]
    BadLabel { relation: usize, text: String },
    #[error("relations[{relation}]: pair {a:?},{b:?} listed again with a different label")]
    ConflictingLabels {
        relation: usize,
        a: String,
        b: String,
    },
    #[error("unknown generator {0:?}")]
    UnknownName(String),
    #[error("subset is not contained in the generating set")]
    NotASubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("vertex set is empty or not connected in the Coxeter graph")]
    NotConnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("generator {0} is not adjacent to the subset")]
    NotAdjacent(usize),
    #[error("subset carrying the Garside factor is not of spherical type")]
    NotSpherical,
    #[error(
        "conjugation by the Garside factor does not send generator {generator} to a generator"
    )]
    DeltaActionUndefined { generator: usize },
    #[error("factor {index} of the word: conjugation does not send generator {generator} to a generator")]
    WordFactor { index: usize, generator: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("subset has {size} generators, above the configured cap of {cap}")]
    SubsetTooLarge { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("type {0} is not supported by the root-system oracle")]
    Unsupported(String),
    #[error("position {0} is out of range")]
    BadPosition(usize),
}
