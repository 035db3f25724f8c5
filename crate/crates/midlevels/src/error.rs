use core::fmt;

/// Errors shared across the workspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// Malformed input (wrong length, weight, range, ...).
    InvalidArgument(&'static str),
    /// Structurally valid input outside an operation's domain, e.g. asking
    /// for the next vertex at the last vertex of a path.
    Domain(&'static str),
    /// A view shrank below its minimum length.
    Underflow(&'static str),
    /// A brute-force oracle was asked for more than its configured bound.
    ResourceLimit(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Underflow(msg) => write!(f, "underflow: {msg}"),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
