use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the exact kernels.
///
/// Budget exhaustion that is part of a normal answer (an `Undetermined`
/// verdict, an unsplit cofactor) is reported in the result types instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidArgument(String),
    Parse(String),
    DegenerateMap,
    DegreeTooSmall(usize),
    InseparableMap,
    /// `d^n` exceeded the degree budget; `max_level` is the largest level that fits.
    Budget { requested: usize, max_level: usize },
    /// The preimage polynomial at `level` has a repeated root; level 0 means
    /// alpha lies in the computed postcritical set.
    AlphaPostcritical { level: usize, gcd: String },
    /// The base point has a finite backward orbit.
    Exceptional { support: String },
    /// The starting point is preperiodic (`tail` steps then a cycle of `period`).
    Preperiodic { tail: usize, period: usize },
    LineNotInvariant { residual: String },
    ArityMismatch { left: usize, right: usize },
}

impl Error {
    /// Short machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse(_) => "parse",
            Error::DegenerateMap => "degenerate-map",
            Error::DegreeTooSmall(_) => "degree-too-small",
            Error::InseparableMap => "inseparable-map",
            Error::Budget { .. } => "budget",
            Error::AlphaPostcritical { .. } => "alpha-postcritical",
            Error::Exceptional { .. } => "exceptional-point",
            Error::Preperiodic { .. } => "preperiodic-point",
            Error::LineNotInvariant { .. } => "line-not-invariant",
            Error::ArityMismatch { .. } => "arity-mismatch",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::DegenerateMap => f.write_str("degenerate map: resultant vanishes"),
            Error::DegreeTooSmall(d) => write!(f, "degree too small: {d} (need at least 2)"),
            Error::InseparableMap => f.write_str("inseparable map: Wronskian vanishes identically"),
            Error::Budget { requested, max_level } => write!(
                f,
                "degree budget exceeded at level {requested}; largest admissible level is {max_level}"
            ),
            Error::AlphaPostcritical { level: 0, gcd } => write!(f, "alpha is postcritical: {gcd}"),
            Error::AlphaPostcritical { level, gcd } => write!(
                f,
                "alpha is postcritical at level {level}: preimage polynomial shares factor {gcd} with its derivative; replace alpha by one of its preimages"
            ),
            Error::Exceptional { support } => {
                write!(f, "alpha is exceptional (finite backward orbit {support})")
            }
            Error::Preperiodic { tail, period } => {
                write!(f, "point is preperiodic: tail {tail}, period {period}")
            }
            Error::LineNotInvariant { residual } => {
                write!(f, "line is not invariant: defining form pulls back to {residual}")
            }
            Error::ArityMismatch { left, right } => {
                write!(f, "arity mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for Error {}
