use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("cannot parse homogeneous triple {0:?}: {1}")]
    ParseTriple(String, String),
    #[error("a line through a point and itself is not defined")]
    IdenticalPoints,
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("pencil base points {0:?} contain a collinear triple")]
    CollinearBase([usize; 3]),
    #[error("pencil parameter (0:0) does not select a conic")]
    ZeroParameter,
    #[error("conic matrix is not symmetric")]
    AsymmetricConic,
    #[error("conic matrix is identically zero")]
    ZeroConic,
    #[error("divisor classes live on lattices of rank {0} and {1}")]
    LatticeMismatch(usize, usize),
    #[error("unknown lattice label {0:?}")]
    UnknownLabel(String),
    #[error("configuration is not valid: {0}")]
    InvalidConfig(String),
    #[error("not a (weak) del Pezzo surface: {0}")]
    NotDelPezzo(String),
    #[error("the zero element has no cover equation")]
    ZeroElement,
    #[error("character {0} does not fit in rank {1}")]
    CharacterOutOfRange(u32, usize),
    #[error("product relation needs two distinct nonzero elements")]
    DegeneratePair,
    #[error("cover assignment has {lines} lines but {chars} characters")]
    AssignmentLength { lines: usize, chars: usize },
    #[error("line coefficient matrix has rank {0}, expected 3")]
    RankDeficient(usize),
    #[error("expected {expected} lines, got {found}")]
    LineCount { expected: usize, found: usize },
    #[error("polynomial has no nonzero coefficient")]
    EmptyPolynomial,
    #[error("monomial {0:?} is not invariant under the Z/5 action")]
    NotInvariant([u32; 4]),
    #[error("singularity with multiplicities {0:?} is outside the (3,1,0)/(1,1,1) calculus")]
    UnsupportedSingularity([usize; 3]),
    #[error("collinearity pattern P_i, P'_(i+1), P'_(i+2) fails for i in {0:?}")]
    PatternMismatch(Vec<usize>),
    #[error("operation needs m = {expected}, configuration has m = {found}")]
    WrongM { expected: String, found: usize },
    #[error("configuration with m = 2 is not nodal; no extended branch divisor exists")]
    NotNodal,
    #[error("index {0} cannot be strictly extended for this configuration")]
    NotExtendable(usize),
    #[error("conic selected for index {0} is reducible but was flagged strictly extended")]
    DegenerateConic(usize),
    #[error("conic does not pass through base point {0} of the pencil for index {1}")]
    WrongPencil(usize, usize),
    #[error("denominator reduces to zero on the total space")]
    ZeroDenominator,
    #[error("sign map does not preserve w^2 - uv - tau^2")]
    NotALift,
    #[error("internal identity failed: {0}")]
    IdentityFailed(String),
}
