use alloc::string::String;
use core::fmt;

/// Errors reported by the solvers and verifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs at least one point got none.
    EmptyPointSet,
    /// Two vectors or points that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// Input sizes do not fit the requested operation.
    Shape(String),
    /// An assignment is not an injective map `[k] -> [t]`.
    InvalidAssignment(String),
    /// An input set that must contain the origin in its hull does not.
    CaptureFailed { set: usize },
    /// The tolerant selection needs the acting group to be no larger than the dimension.
    GroupTooLarge { group: usize, dimension: usize },
    /// The tolerant theorem pipeline needs `d ≥ 2`.
    RequiresDimensionTwo,
    /// Enumeration would need more representations than the budget allows.
    BudgetExceeded { required: u128, budget: u128 },
    /// Points of a Gale primal lie in a hyperplane.
    DegeneratePrimal,
    /// Brute-force routine called beyond its size limit.
    TooLarge { size: usize, limit: usize },
    /// A search that must succeed on valid input did not.
    SearchFailed(String),
    /// A freshly built certificate failed its own exact re-check.
    VerificationFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPointSet => write!(f, "empty point set"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvalidAssignment(msg) => write!(f, "invalid assignment: {msg}"),
            Error::CaptureFailed { set } => {
                write!(f, "set {set} does not capture the origin")
            }
            Error::GroupTooLarge { group, dimension } => write!(
                f,
                "lemma precondition |G| ≤ p violated (|G| = {group}, p = {dimension})"
            ),
            Error::RequiresDimensionTwo => write!(f, "theorem requires d ≥ 2"),
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "enumeration budget exceeded: {required} representations required, budget {budget}"
            ),
            Error::DegeneratePrimal => write!(f, "points lie in a hyperplane"),
            Error::TooLarge { size, limit } => {
                write!(f, "input too large for brute force: {size} > {limit}")
            }
            Error::SearchFailed(msg) => write!(f, "search failed: {msg}"),
            Error::VerificationFailed(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
