use thiserror::Error;

/// Errors raised by the library. Variants are shared across modules; each
/// operation documents which ones it can return.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in input")]
    NonFinite,
    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("matrix is not unimodular (det = {re} + {im}i)")]
    NotUnimodular { re: f64, im: f64 },
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("map is not an involution: defining matrix fails the centrality test")]
    NotInvolution,
    #[error("h * t(h) is not central")]
    NotCentral,
    #[error("fixed Lie algebra has real dimension {0}, expected 8")]
    DegenerateSolve(usize),
    #[error("trace-form signature ({0}, {1}) matches no real form of SL(3,C)")]
    UnknownSignature(usize, usize),
    #[error("matrix does not preserve the Hermitian form or has det != 1")]
    NotInGroup,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("element is parabolic; parabolic orbits have no canonical form here")]
    NotSemisimpleInGroup,
    #[error("matrix is not diagonalizable")]
    NotSemisimple,
    #[error("orbit of the base point is not closed")]
    NotClosedOrbit,
    #[error("base point is not fixed by the involution")]
    NotRealPoint,
    #[error("translate g x g^-1 is not fixed by the involution")]
    NotRealTranslate,
    #[error("cocycle does not have the shape of its declared stabilizer")]
    KindMismatch,
    #[error("stabilizer/involution combination is not covered by the H^1 table")]
    UncoveredCombination,
    #[error("representation is not good (not irreducible)")]
    NotGood,
    #[error("no intertwiner: the character is not real for this involution")]
    NoIntertwiner,
    #[error("intertwiner space has dimension {0} > 1")]
    NotUnique(usize),
    #[error("algebra span did not stabilize within {0} iterations")]
    SpanNotConverged(usize),
    #[error("representation has no generators")]
    EmptyRepresentation,
}

pub type Result<T> = std::result::Result<T, Error>;
