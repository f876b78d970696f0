//! Error type shared by the kernel layers.

use alloc::string::String;
use core::fmt;

/// Errors produced by ring construction, polynomial arithmetic, the Gröbner
/// engine and the model builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    /// Ring construction rejected the variable table.
    BadRing(String),
    /// Two operands live in different rings.
    RingMismatch,
    /// A prime-field domain was built from a bad modulus.
    BadModulus(String),
    /// Division by zero, or inversion of a non-unit in a prime field.
    DivisionByZero,
    /// A coefficient denominator is divisible by the field characteristic.
    CharacteristicClash(String),
    /// Variable lookup failed.
    UnknownVariable(String),
    /// An evaluation point left a variable unassigned.
    UnassignedVariable(String),
    /// Out-of-range argument (minor size, chart index, instance parameter).
    OutOfRange(String),
    /// The instance is pi-modular and the requested chart family excludes it.
    PiModular { n: usize, k: usize },
    /// A resource guard tripped; the computation was aborted, never truncated.
    GuardTripped(String),
    /// Text-format parse failure.
    Parse(String),
    /// Invalid operation request (e.g. dropping "pi", unit-ideal dimension).
    Invalid(String),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::BadRing(m) => write!(f, "bad ring: {m}"),
            KernelError::RingMismatch => write!(f, "operands belong to different rings"),
            KernelError::BadModulus(m) => write!(f, "bad modulus: {m}"),
            KernelError::DivisionByZero => write!(f, "division by zero"),
            KernelError::CharacteristicClash(m) => write!(f, "characteristic clash: {m}"),
            KernelError::UnknownVariable(v) => write!(f, "unknown variable: {v}"),
            KernelError::UnassignedVariable(v) => write!(f, "unassigned variable: {v}"),
            KernelError::OutOfRange(m) => write!(f, "out of range: {m}"),
            KernelError::PiModular { n, k } => {
                write!(f, "instance (n={n}, k={k}) is pi-modular; chart excluded")
            }
            KernelError::GuardTripped(m) => write!(f, "guard tripped: {m}"),
            KernelError::Parse(m) => write!(f, "parse error: {m}"),
            KernelError::Invalid(m) => write!(f, "invalid operation: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KernelError {}
