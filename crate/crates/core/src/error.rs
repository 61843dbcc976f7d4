//! Error type shared by every module in the crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library, from domain violations to
/// operations that are deliberately left unsupported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square class of zero was requested.
    ZeroInput,
    /// Trial division ran past the configured bound without finishing.
    FactorBoundExceeded { bound: u64 },
    /// A place parameter was not an odd prime.
    NotOddPrime(u64),
    /// Residues at the even prime are not defined here.
    DyadicResidue,
    /// Graded pieces of different degree cannot be added.
    DegreeMismatch { left: usize, right: usize },
    /// The operation is only implemented for a limited degree range.
    DegreeUnsupported { degree: usize, what: &'static str },
    /// Zero tests for degree-2 restrictions to an extension field are refused.
    ExtensionDegreeTwoZeroTest,
    /// The operation needs a quadratic field.
    QuadraticFieldRequired { degree: usize },
    /// Number fields are only supported in degrees 2 through 4.
    FieldDegreeOutOfRange { degree: usize },
    /// The would-be minimal polynomial factors over the rationals.
    ReducibleMinPoly,
    /// A polynomial that must be monic is not.
    NotMonic,
    /// Division by the zero element of a field.
    ZeroElementInverse,
    /// Element coordinates do not match the field degree.
    CoordinateLength { got: usize, want: usize },
    /// The subspace handed to the small-vector solver fails its hypothesis.
    SubspaceHypothesis { dim_v: usize, field_degree: usize },
    /// The generating vectors are linearly dependent.
    DependentGenerators,
    /// An embedding index outside the field's real embeddings.
    NoSuchEmbedding { index: usize, count: usize },
    /// Text input that does not match the grammar; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
    /// A list argument that must be nonempty was empty.
    EmptyInput,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput => write!(f, "zero has no square class"),
            Error::FactorBoundExceeded { bound } => {
                write!(f, "trial division exhausted the factor bound {bound}")
            }
            Error::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::DyadicResidue => write!(f, "residue maps at p = 2 are not supported"),
            Error::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            Error::DegreeUnsupported { degree, what } => {
                write!(f, "{what} is not implemented in degree {degree}")
            }
            Error::ExtensionDegreeTwoZeroTest => {
                write!(f, "zero test for degree-2 classes over an extension field is unsupported")
            }
            Error::QuadraticFieldRequired { degree } => {
                write!(f, "operation needs a quadratic field, got degree {degree}")
            }
            Error::FieldDegreeOutOfRange { degree } => {
                write!(f, "number fields must have degree 2..=4, got {degree}")
            }
            Error::ReducibleMinPoly => write!(f, "polynomial is reducible over Q"),
            Error::NotMonic => write!(f, "polynomial must be monic"),
            Error::ZeroElementInverse => write!(f, "the zero element has no inverse"),
            Error::CoordinateLength { got, want } => {
                write!(f, "element has {got} coordinates, field degree is {want}")
            }
            Error::SubspaceHypothesis { dim_v, field_degree } => {
                write!(
                    f,
                    "need 2*dim(V) > [E:Q]: dim(V) = {dim_v}, [E:Q] = {field_degree}"
                )
            }
            Error::DependentGenerators => write!(f, "generating vectors are linearly dependent"),
            Error::NoSuchEmbedding { index, count } => {
                write!(f, "real embedding {index} does not exist ({count} available)")
            }
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::EmptyInput => write!(f, "expected a nonempty list"),
        }
    }
}

impl std::error::Error for Error {}
