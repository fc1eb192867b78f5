use thiserror::Error;

use crate::scalar::Scalar;

/// Which rational kernel hit a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    G,
    F,
    H,
    Rational,
}

impl std::fmt::Display for KernelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            KernelKind::G => "g",
            KernelKind::F => "f",
            KernelKind::H => "h",
            KernelKind::Rational => "rational function",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {kind} at ({left}, {right})")]
    Pole {
        kind: KernelKind,
        left: Scalar,
        right: Scalar,
    },
    #[error("could not sample {wanted} generic parameters after {attempts} attempts")]
    Exhaustion { wanted: usize, attempts: usize },
    #[error("invalid partition constraint: {0}")]
    Constraint(String),
    #[error("determinant variant undefined: {0}")]
    VariantUndefined(String),
    #[error("cardinality mismatch: {0}")]
    Cardinality(String),
    #[error("degenerate interpolation: {0}")]
    Degenerate(String),
    #[error("weight oracle lacks capability: {0}")]
    Capability(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn pole(kind: KernelKind, left: &Scalar, right: &Scalar) -> Self {
        Error::Pole {
            kind,
            left: left.clone(),
            right: right.clone(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
