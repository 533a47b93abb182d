use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Error raised by the detection pipeline operations.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An operation received an empty collection it cannot work with.
    EmptyInput(&'static str),
    /// A packet statistic violates its domain (zero sent, lost > sent,
    /// threshold outside [0, 1]).
    InvalidStats(String),
    /// A packet timing record has receive_time earlier than send_time.
    InvalidTiming(String),
    /// Fusion found devices that the index table does not map.
    UnmappedDevices {
        components: Vec<String>,
        ips: Vec<String>,
    },
    /// A record or matrix has the wrong width or length.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// Not enough rows to fit the requested model.
    InsufficientData(&'static str),
    /// A reduction target or tuning parameter is outside its legal range.
    InvalidConfig(String),
    /// A class label lies outside the expected `0..classes` range.
    LabelOutOfRange { index: usize, label: u32, classes: usize },
    /// A class required by the operation has no samples.
    MissingClass(u32),
    /// A per-class curve was requested for a class the data cannot define.
    UndefinedClass(String),
    /// A one-hot vector is not one-hot, or probabilities are malformed.
    InvalidDistribution(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::InvalidStats(msg) => write!(f, "invalid packet statistics: {msg}"),
            Error::InvalidTiming(msg) => write!(f, "invalid packet timing: {msg}"),
            Error::UnmappedDevices { components, ips } => {
                write!(f, "index table does not map")?;
                if !components.is_empty() {
                    write!(f, " components {components:?}")?;
                }
                if !ips.is_empty() {
                    if !components.is_empty() {
                        write!(f, " and")?;
                    }
                    write!(f, " ips {ips:?}")?;
                }
                Ok(())
            }
            Error::ShapeMismatch {
                what,
                expected,
                got,
            } => write!(f, "shape mismatch for {what}: expected {expected}, got {got}"),
            Error::InsufficientData(what) => write!(f, "insufficient data: {what}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::LabelOutOfRange {
                index,
                label,
                classes,
            } => write!(
                f,
                "label {label} at record {index} is outside the {classes} known classes"
            ),
            Error::MissingClass(class) => {
                write!(f, "class {class} has no samples but the operation requires it")
            }
            Error::UndefinedClass(msg) => write!(f, "undefined class: {msg}"),
            Error::InvalidDistribution(msg) => write!(f, "invalid distribution: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
