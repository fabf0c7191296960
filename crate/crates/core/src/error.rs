use alloc::string::String;
use core::fmt;

/// Errors raised by group construction and the analyses built on top of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Cycle notation could not be parsed.
    Parse { text: String, reason: String },
    /// A cycle mentions a point larger than the permutation degree.
    PointExceedsDegree { point: usize, degree: usize },
    /// A point occurs twice in the cycle notation.
    RepeatedPoint { point: usize },
    /// Generators act on different numbers of points.
    DegreeMismatch { expected: usize, found: usize },
    /// The generated group is larger than the configured cap.
    OrderCapExceeded { cap: usize },
    /// Subgroup lattice work was requested for a group above the lattice cap.
    LatticeCapExceeded { order: usize, cap: usize },
    /// Operands belong to different parent groups.
    MixedParents,
    /// An operand was expected to be contained in another.
    NotContained,
    /// A quotient was requested by a subgroup that is not normal.
    NotNormal,
    /// A subgroup is not an entry of the lattice it was looked up in.
    NotInLattice,
    /// A precondition of an operation does not hold.
    Precondition(String),
    /// Two computations that must agree did not. Always an implementation bug.
    Mismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { text, reason } => write!(f, "cannot parse {text:?}: {reason}"),
            Error::PointExceedsDegree { point, degree } => {
                write!(f, "point exceeds degree: {point} > {degree}")
            }
            Error::RepeatedPoint { point } => write!(f, "point {point} repeated in cycle notation"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "generator degree {found} does not match {expected}")
            }
            Error::OrderCapExceeded { cap } => write!(f, "group order exceeds cap of {cap}"),
            Error::LatticeCapExceeded { order, cap } => {
                write!(f, "group of order {order} exceeds lattice cap of {cap}")
            }
            Error::MixedParents => f.write_str("subgroups belong to different parent groups"),
            Error::NotContained => f.write_str("subgroup is not contained in the ambient subgroup"),
            Error::NotNormal => f.write_str("subgroup is not normal"),
            Error::NotInLattice => f.write_str("subgroup is not in the lattice"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Mismatch(msg) => write!(f, "internal mismatch: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
