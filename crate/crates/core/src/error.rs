use std::fmt;

/// Errors raised by contract violations and refused computations.
///
/// The library never silently approximates: anything it cannot do exactly
/// (or within the stated enumeration budget) comes back as one of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` failed the trial-division primality check.
    NotPrime(u64),
    /// Extension degree outside the supported range for this `p`.
    DegreeOutOfRange { p: u64, n: u32 },
    /// Division by zero in a field, polynomial ring, or rational function field.
    DivisionByZero,
    /// Two elements from different fields were combined.
    MismatchedFields,
    /// `r` is not a power of the field characteristic.
    NotPowerOfP { r: u64, p: u64 },
    /// The named field is not a subfield of the other operand's field.
    NotASubfield,
    /// Quadratic character requested in characteristic 2.
    EvenCharacteristic,
    /// A root group failed closure under addition.
    NotAdditiveGroup,
    /// An ambient field does not contain all roots of an additive polynomial.
    AmbientTooSmall { found: usize, expected: usize },
    /// Coefficient sequence does not define a monic separable additive polynomial.
    NotAdditivePolynomial,
    /// A set is not stable under the requested Frobenius power.
    NotFrobeniusStable,
    /// `r` even: the orthogonal / characteristic-2 variant is out of scope.
    EvenR,
    /// A pole order is divisible by the characteristic.
    PoleOrderDivisibleByP { order: u64, p: u64 },
    /// Structural data failed validation (message explains what).
    InvalidInput(String),
    /// An enumeration would exceed the evaluation budget.
    BudgetExceeded { needed: u64, budget: u64 },
    /// Reconstructed zeta numerator failed the functional equation.
    FunctionalEquation,
    /// A point is not on the curve it was used with.
    OffCurve,
    /// Height estimates failed to stabilize within the doubling cap.
    NoStabilization { cap: u32 },
    /// An exact square root or exact division did not exist where required.
    NotExact(String),
    /// A rank or determinant came out inconsistent with the inputs.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::DegreeOutOfRange { p, n } => {
                write!(f, "extension degree {n} out of range for p={p}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::MismatchedFields => write!(f, "elements belong to different fields"),
            Error::NotPowerOfP { r, p } => write!(f, "{r} is not a power of {p}"),
            Error::NotASubfield => write!(f, "not a subfield"),
            Error::EvenCharacteristic => write!(f, "field has even cardinality"),
            Error::NotAdditiveGroup => write!(f, "set is not an additive subgroup"),
            Error::AmbientTooSmall { found, expected } => {
                write!(f, "ambient field too small: {found} of {expected} roots found")
            }
            Error::NotAdditivePolynomial => {
                write!(f, "not a monic separable additive polynomial")
            }
            Error::NotFrobeniusStable => write!(f, "set is not Frobenius-stable"),
            Error::EvenR => write!(f, "r must be odd"),
            Error::PoleOrderDivisibleByP { order, p } => {
                write!(f, "pole order {order} is divisible by p={p}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration budget exceeded: need {needed} evaluations, budget {budget}")
            }
            Error::FunctionalEquation => {
                write!(f, "functional equation fails: miscount or wrong genus")
            }
            Error::OffCurve => write!(f, "point is not on the curve"),
            Error::NoStabilization { cap } => {
                write!(f, "height estimates did not stabilize by n={cap}")
            }
            Error::NotExact(msg) => write!(f, "exactness failure: {msg}"),
            Error::Inconsistent(msg) => write!(f, "inconsistent data: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
