use thiserror::Error;

use crate::axioms::{Axiom, Witness};
use crate::integrals::Property;
use crate::setfunc::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("n = {0} exceeds the supported maximum of {max}", max = crate::setfunc::MAX_N)]
    NExceedsLimit(usize),
    #[error("subset {0} assigned more than once")]
    DuplicateSubset(Subset),
    #[error("subset {subset} is not contained in {{1..{n}}}")]
    SubsetOutOfRange { subset: Subset, n: usize },
    #[error("element {0} is not a valid element label")]
    BadElement(usize),
    #[error("table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("interval [{lo}, {hi}] is empty or degenerate")]
    DegenerateInterval { lo: String, hi: String },
    #[error("set function is not a signed capacity (value at the empty set is {0})")]
    NotSignedCapacity(String),
    #[error("set function is not a capacity: {0}")]
    NotCapacity(String),
    #[error("set function is not an interval-valued capacity: {0}")]
    NotIValued(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tuple {0} leaves the box")]
    OutOfBox(String),
    #[error("threshold {0} has the wrong sign for this bracket")]
    BadThresholdSign(String),
    #[error("median radius {0} is negative")]
    NegativeRadius(String),
    #[error("sorted form gave {sorted} but region form gave {region}")]
    InternalCrossCheckFailed { sorted: String, region: String },
    #[error("coordinate {0} lies outside the capacity's interval")]
    TupleOutsideInterval(String),
    #[error("transform lacks the required property `{0}`")]
    PhiMissingProperty(Property),
    #[error("transform does not satisfy declared property `{property}`: {detail}")]
    PhiPropertyViolated { property: Property, detail: String },
    #[error("transform value {0} lies outside the capacity's interval")]
    PhiRangeOutsideI(String),
    #[error("transform evaluated at {0}, outside its breakpoint range")]
    PhiOutsideDomain(String),
    #[error("invalid breakpoints: {0}")]
    BadBreakpoints(String),
    #[error("negative input {0}; only nonnegative tuples are accepted")]
    NegativeInput(String),
    #[error("axiom `{0}` needs an auxiliary transform")]
    MissingTransform(Axiom),
    #[error("axiom `{0}` does not take an auxiliary transform")]
    UnexpectedTransform(Axiom),
    #[error("axiom `{axiom}` had no applicable operand combination on this grid ({skipped} skipped)")]
    EmptyApplicableSet { axiom: Axiom, skipped: usize },
    #[error("grid needs at least 2 points per axis, got {0}")]
    GridTooCoarse(usize),
    #[error("function undefined at {point}: {reason}")]
    DomainGap { point: String, reason: String },
    #[error("coordinate {0} is not on the sampled axis")]
    OffAxisPoint(String),
    #[error("function is not nondecreasing on the grid")]
    NotNondecreasing(Box<Witness>),
    #[error("{0}")]
    Unsupported(String),
    #[error("unknown role `{0}`")]
    BadRole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
