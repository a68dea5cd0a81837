use thiserror::Error;

use crate::geometry::Violation;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("{what} = {value} is outside the supported range {range}")]
    Range { what: &'static str, value: usize, range: &'static str },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension { context: &'static str, expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("symmetry conflict at R[{}][{}][{}][{}]: completion gives {existing}, input gives {given}", .indices[0], .indices[1], .indices[2], .indices[3])]
    SymmetryConflict { indices: [usize; 4], existing: String, given: String },

    #[error("curvature tensor fails its identities: {}", format_violations(.0))]
    InvalidTensor(Vec<Violation>),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("truncation: {context} needs x-order {needed} but the jet carries only {available}")]
    Truncation { context: String, needed: u8, available: u8 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn format_violations(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(5).map(ToString::to_string).collect();
    if v.len() > 5 {
        format!("{} (and {} more)", shown.join("; "), v.len() - 5)
    } else {
        shown.join("; ")
    }
}

impl EngineError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            EngineError::Truncation { .. } | EngineError::Contract(_) | EngineError::Integrity(_) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            EngineError::Range { .. } => "range",
            EngineError::Dimension { .. } => "dimension",
            EngineError::Parse(_) => "parse",
            EngineError::SymmetryConflict { .. } => "symmetry-conflict",
            EngineError::InvalidTensor(v) => {
                if v.iter().all(Violation::is_bianchi) {
                    "bianchi-violation"
                } else {
                    "symmetry-violation"
                }
            }
            EngineError::Unsupported(_) => "unsupported",
            EngineError::Truncation { .. } => "truncation",
            EngineError::Contract(_) => "contract",
            EngineError::Integrity(_) => "integrity",
            EngineError::Io { .. } => "io",
        }
    }
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;
