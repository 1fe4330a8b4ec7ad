use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by graph parsing, solvers, enumeration and export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A graph file failed to parse; carries the 1-based line number.
    Parse { line: usize, kind: ParseErrorKind },
    /// A lambda spec string or lambda/graph size mismatch.
    Lambda(String),
    /// Arc mask contract violation (double remove, restore of a present arc).
    Mask(String),
    /// An arc sequence does not form a simple path in the graph.
    Path(String),
    /// Integer overflow while accumulating costs or objective values.
    Overflow,
    /// An instance exceeds a brute-force or export size gate.
    SizeGate(String),
    /// Any other invalid input (bad epsilon, bad k, infeasible generator spec, ...).
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedLine(String),
    DuplicateDirective(&'static str),
    MissingDirective(&'static str),
    VertexOutOfRange(usize),
    NegativeCost,
    SourceEqualsSink,
    ArcCountMismatch { declared: usize, found: usize },
    ArcBeforeHeader,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, kind } => write!(f, "parse error at line {line}: {kind}"),
            Error::Lambda(msg) => write!(f, "invalid lambda: {msg}"),
            Error::Mask(msg) => write!(f, "arc mask violation: {msg}"),
            Error::Path(msg) => write!(f, "invalid path: {msg}"),
            Error::Overflow => write!(f, "integer overflow while accumulating costs"),
            Error::SizeGate(msg) => write!(f, "size gate refused instance: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MalformedLine(what) => write!(f, "malformed line ({what})"),
            ParseErrorKind::DuplicateDirective(d) => write!(f, "duplicate `{d}` directive"),
            ParseErrorKind::MissingDirective(d) => write!(f, "missing `{d}` directive"),
            ParseErrorKind::VertexOutOfRange(v) => write!(f, "vertex id {v} out of range"),
            ParseErrorKind::NegativeCost => write!(f, "negative arc cost"),
            ParseErrorKind::SourceEqualsSink => write!(f, "source equals sink"),
            ParseErrorKind::ArcCountMismatch { declared, found } => {
                write!(f, "arc count mismatch: header declares {declared}, file lists {found}")
            }
            ParseErrorKind::ArcBeforeHeader => write!(f, "arc line before the `p` header"),
        }
    }
}

impl std::error::Error for Error {}
