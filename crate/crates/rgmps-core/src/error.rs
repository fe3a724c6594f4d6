//! Error types shared across the crate.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of synthesis, compilation, routing, and simulation.
///
/// Every variant carries a short static description of the violated
/// precondition or the failed internal step; callers that need structured
/// data (caps, tolerances) get it from the variant fields.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside its mathematical domain (for example a
    /// tuning parameter with |g| > 1, or a correlation length request at
    /// the scale-invariant point g = 0).
    Domain(&'static str),
    /// Matrix or register dimensions do not match what the operation needs.
    Shape(&'static str),
    /// The transfer spectrum is (numerically) degenerate: the input is not
    /// short-range correlated and the fixed-point construction is undefined.
    DegenerateSpectrum {
        /// Moduli of the two largest transfer eigenvalues.
        leading: f64,
        subleading: f64,
    },
    /// An iterative numerical kernel failed to converge; indicates a bug or
    /// pathological input rather than a user error.
    Numerical(&'static str),
    /// A structured decomposition was requested for a matrix that lacks the
    /// required symmetry; callers should fall back to the generic path.
    SymmetryViolation(&'static str),
    /// Statevector size cap exceeded.
    SizeCap { qubits: usize, cap: usize },
    /// A postselection projector annihilated the state.
    ZeroProbability,
    /// MPS truncation exceeded the configured tolerance.
    Truncation { error: f64, tol: f64 },
    /// A gate's operands cannot be brought adjacent on the coupling map.
    Unroutable(&'static str),
    /// Layout request that the coupling map cannot satisfy.
    Layout(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::DegenerateSpectrum { leading, subleading } => write!(
                f,
                "degenerate transfer spectrum: |lambda_1| = {leading}, |lambda_2| = {subleading}"
            ),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::SymmetryViolation(msg) => write!(f, "symmetry violation: {msg}"),
            Error::SizeCap { qubits, cap } => {
                write!(f, "statevector cap exceeded: {qubits} qubits > cap {cap}")
            }
            Error::ZeroProbability => write!(f, "postselection outcome has probability zero"),
            Error::Truncation { error, tol } => {
                write!(f, "MPS truncation error {error} exceeds tolerance {tol}")
            }
            Error::Unroutable(msg) => write!(f, "unroutable gate: {msg}"),
            Error::Layout(msg) => write!(f, "layout error: {msg}"),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}
