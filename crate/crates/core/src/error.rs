use core::fmt;

/// Everything that can go wrong in the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A square matrix was required. Carries the offending shape.
    NonSquare(usize, usize),
    /// Two operands have incompatible shapes.
    DimensionMismatch(&'static str),
    /// Entries were expected to be integers (exponent zero only).
    NotInteger,
    /// The operation is not available over a residue ring.
    UnsupportedRing(&'static str),
    /// The determinant is not a unit, so the matrix cannot be inverted.
    NotAUnit,
    /// Forms of different symmetry sign were combined.
    MixedEps,
    NoComplementFound,
    WitnessRejected(&'static str),
    NotAnIsometry,
    NotBlockConformant(&'static str),
    InvalidStableIso(&'static str),
    NoSplittingAvailable,
    KernelUnavailable,
    NotSurjective,
    NotCoprime,
    NotComposable(&'static str),
    NotAUnitInResidueRing,
    Singular,
    BadParams(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquare(r, c) => write!(f, "matrix is not square: {} rows, {} columns", r, c),
            Error::DimensionMismatch(what) => write!(f, "dimension mismatch in {}", what),
            Error::NotInteger => f.write_str("matrix has non-constant entries"),
            Error::UnsupportedRing(what) => write!(f, "{} is not supported over a residue ring", what),
            Error::NotAUnit => f.write_str("determinant is not a unit"),
            Error::MixedEps => f.write_str("forms of different sign cannot be combined"),
            Error::NoComplementFound => f.write_str("no orthogonal complement found within the degree bound"),
            Error::WitnessRejected(why) => write!(f, "witness rejected: {}", why),
            Error::NotAnIsometry => f.write_str("matrix is not an isometry"),
            Error::NotBlockConformant(why) => write!(f, "stable isomorphism is not block conformant: {}", why),
            Error::InvalidStableIso(why) => write!(f, "invalid stable isomorphism: {}", why),
            Error::NoSplittingAvailable => f.write_str("no splitting of the embedding is available"),
            Error::KernelUnavailable => f.write_str("kernel over the Laurent ring needs a witness"),
            Error::NotSurjective => f.write_str("map is not surjective"),
            Error::NotCoprime => f.write_str("parameters are not coprime"),
            Error::NotComposable(why) => write!(f, "stable isomorphisms are not composable: {}", why),
            Error::NotAUnitInResidueRing => f.write_str("element is not a unit in the residue ring"),
            Error::Singular => f.write_str("form is singular"),
            Error::BadParams(why) => write!(f, "bad parameters: {}", why),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
