//! Kernelization outcomes shared by the minimization and maximization
//! pipelines.

use thiserror::Error;

use crate::hypergraph::HypergraphError;
use crate::relational::{FiniteStructure, ValidationIssue};
use crate::spec::SpecError;

/// How a kernelization run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A reduced instance with the same answer at the same parameter.
    Reduced,
    /// The instance is a no-instance; the output instance forces NO.
    TrivialNo,
    /// The instance is a yes-instance; the output instance forces YES.
    TrivialYes,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Reduced => "REDUCED",
            Verdict::TrivialNo => "TRIVIAL_NO",
            Verdict::TrivialYes => "TRIVIAL_YES",
        };
        write!(f, "{s}")
    }
}

/// Machine-readable reason code for the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// Normal reduction via sunflower edge or disjunct deletion.
    SunflowerReduction,
    /// A specialized formula contains an empty clause.
    EmptyClauseWitness,
    /// The number of witnessed universal tuples meets the yes threshold.
    ThresholdMet,
    /// The parameter exceeds the number of universal tuples.
    ParameterExceedsTupleSpace,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::SunflowerReduction => "sunflower-reduction",
            Reason::EmptyClauseWitness => "empty-clause-witness",
            Reason::ThresholdMet => "threshold-met",
            Reason::ParameterExceedsTupleSpace => "parameter-exceeds-tuple-space",
        }
    }
}

/// Size statistics of one kernelization run. Edge counts are the hitting-set
/// edges for minimization and the total disjunct counts for maximization;
/// they stay unset on paths that never build those objects.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub atoms_before: usize,
    pub atoms_after: usize,
    pub tuples_before: usize,
    pub tuples_after: usize,
    pub edges_before: Option<usize>,
    pub edges_after: Option<usize>,
}

/// The result instance together with the verdict and statistics. Trivial
/// verdicts still carry a valid instance of the same problem whose answer at
/// `k` is forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutcome {
    pub structure: FiniteStructure,
    pub k: usize,
    pub verdict: Verdict,
    pub reason: Reason,
    pub stats: KernelStats,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("specification mentions no solution literal in its matrix (s = 0)")]
    DegenerateSpec,
    #[error("expected a {expected} specification, got {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid specification: {0}")]
    Spec(#[from] SpecError),
    #[error("invalid instance: {}", format_issues(.0))]
    Validation(Vec<ValidationIssue>),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

fn format_issues(issues: &[ValidationIssue]) -> String {
    issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; ")
}
