//! Problem specifications: the first-order fragment describing a
//! minimization problem (universally quantified CNF, positive in the
//! solution symbol) or a maximization problem (existential DNF), plus the
//! parser for the textual format and the built-in catalog.

mod catalog;
mod parse;

pub use catalog::{builtin_names, builtin_spec};
pub use parse::{parse_spec, ParseError};

use crate::relational::Vocabulary;
use thiserror::Error;

/// Which optimization class the specification belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Minimize |S| subject to a universally quantified CNF positive in S.
    MinF,
    /// Maximize the number of tuples for which an existential DNF holds.
    MaxNp,
    /// MaxNp without the existential quantifier block.
    MaxSnp,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::MinF => "minf",
            ProblemKind::MaxNp => "maxnp",
            ProblemKind::MaxSnp => "maxsnp",
        }
    }
}

/// A possibly negated atomic formula over variables.
///
/// Field order gives the canonical literal order: symbol, then sign
/// (positive first), then arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub symbol: String,
    pub negated: bool,
    pub args: Vec<String>,
}

impl Literal {
    pub fn new(symbol: impl Into<String>, negated: bool, args: Vec<String>) -> Self {
        Literal { symbol: symbol.into(), negated, args }
    }

    fn render(&self) -> String {
        let neg = if self.negated { "!" } else { "" };
        format!("{neg}{}({})", self.symbol, self.args.join(","))
    }
}

fn canonicalize(literals: &mut Vec<Literal>) {
    literals.sort();
    literals.dedup();
}

/// A disjunction of literals, one conjunct of a CNF matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        canonicalize(&mut literals);
        Clause { literals }
    }
}

/// A conjunction of literals, one disjunct of a DNF matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disjunct {
    pub literals: Vec<Literal>,
}

impl Disjunct {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        canonicalize(&mut literals);
        Disjunct { literals }
    }
}

/// The quantifier-free matrix of a specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrix {
    Cnf(Vec<Clause>),
    Dnf(Vec<Disjunct>),
}

/// Maximum number of solution-literal occurrences in any clause or disjunct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccurrenceBound {
    pub s: usize,
}

impl OccurrenceBound {
    /// A bound of zero means the matrix never mentions a solution symbol;
    /// the kernelizers reject such specifications.
    pub fn is_degenerate(self) -> bool {
        self.s == 0
    }
}

/// A fully parsed and validated problem specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: String,
    pub kind: ProblemKind,
    pub vocabulary: Vocabulary,
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    pub matrix: Matrix,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("{0}")]
    Vocabulary(#[from] crate::relational::RelationalError),
    #[error("variable `{var}` is not declared")]
    UndeclaredVariable { var: String },
    #[error("symbol `{symbol}` is not declared")]
    UndeclaredSymbol { symbol: String },
    #[error("literal `{symbol}` expects {expected} arguments, got {got}")]
    LiteralArity { symbol: String, expected: usize, got: usize },
    #[error("solution symbol `{symbol}` occurs negated in a minf matrix")]
    NegatedSolution { symbol: String },
    #[error("kind {kind} does not allow existential variables")]
    UnexpectedExistential { kind: String },
    #[error("kind {kind} requires a {expected} matrix")]
    MatrixKindMismatch { kind: String, expected: String },
    #[error("minf requires exactly one solution symbol, got {got}")]
    SolutionSymbolCount { got: usize },
    #[error("variable `{var}` declared twice")]
    DuplicateVariable { var: String },
    #[error("unknown builtin specification `{name}`")]
    UnknownBuiltin { name: String },
}

impl ProblemSpec {
    /// Number of universally quantified variables.
    pub fn x_arity(&self) -> usize {
        self.x_vars.len()
    }

    /// Number of existentially quantified variables (zero unless maxnp).
    pub fn y_arity(&self) -> usize {
        self.y_vars.len()
    }

    /// The single solution symbol of a minf specification.
    pub fn single_solution_symbol(&self) -> &crate::relational::RelationSymbol {
        &self.vocabulary.solution_symbols[0]
    }

    /// Checks every structural invariant of the specification.
    pub fn validate(&self) -> Result<(), SpecError> {
        self.vocabulary.check()?;
        let mut vars = std::collections::HashSet::new();
        for v in self.x_vars.iter().chain(&self.y_vars) {
            if !vars.insert(v.as_str()) {
                return Err(SpecError::DuplicateVariable { var: v.clone() });
            }
        }
        match self.kind {
            ProblemKind::MinF => {
                if !self.y_vars.is_empty() {
                    return Err(SpecError::UnexpectedExistential { kind: "minf".into() });
                }
                if self.vocabulary.solution_symbols.len() != 1 {
                    return Err(SpecError::SolutionSymbolCount {
                        got: self.vocabulary.solution_symbols.len(),
                    });
                }
                if !matches!(self.matrix, Matrix::Cnf(_)) {
                    return Err(SpecError::MatrixKindMismatch {
                        kind: "minf".into(),
                        expected: "cnf".into(),
                    });
                }
            }
            ProblemKind::MaxNp | ProblemKind::MaxSnp => {
                if self.kind == ProblemKind::MaxSnp && !self.y_vars.is_empty() {
                    return Err(SpecError::UnexpectedExistential { kind: "maxsnp".into() });
                }
                if !matches!(self.matrix, Matrix::Dnf(_)) {
                    return Err(SpecError::MatrixKindMismatch {
                        kind: self.kind.as_str().into(),
                        expected: "dnf".into(),
                    });
                }
            }
        }
        for literal in self.all_literals() {
            let symbol = match self.vocabulary.input(&literal.symbol) {
                Some(sym) => sym,
                None => match self.vocabulary.solution(&literal.symbol) {
                    Some(sym) => {
                        if self.kind == ProblemKind::MinF && literal.negated {
                            return Err(SpecError::NegatedSolution {
                                symbol: literal.symbol.clone(),
                            });
                        }
                        sym
                    }
                    None => {
                        return Err(SpecError::UndeclaredSymbol { symbol: literal.symbol.clone() })
                    }
                },
            };
            if literal.args.len() != symbol.arity {
                return Err(SpecError::LiteralArity {
                    symbol: literal.symbol.clone(),
                    expected: symbol.arity,
                    got: literal.args.len(),
                });
            }
            for arg in &literal.args {
                if !vars.contains(arg.as_str()) {
                    return Err(SpecError::UndeclaredVariable { var: arg.clone() });
                }
            }
        }
        Ok(())
    }

    fn all_literals(&self) -> Box<dyn Iterator<Item = &Literal> + '_> {
        match &self.matrix {
            Matrix::Cnf(clauses) => Box::new(clauses.iter().flat_map(|c| c.literals.iter())),
            Matrix::Dnf(disjuncts) => Box::new(disjuncts.iter().flat_map(|d| d.literals.iter())),
        }
    }

    /// Maximum number of solution-symbol literal occurrences per clause or
    /// disjunct, counted with multiplicity.
    pub fn solution_occurrence_bound(&self) -> OccurrenceBound {
        let count = |lits: &[Literal]| {
            lits.iter().filter(|l| self.vocabulary.is_solution(&l.symbol)).count()
        };
        let s = match &self.matrix {
            Matrix::Cnf(clauses) => clauses.iter().map(|c| count(&c.literals)).max(),
            Matrix::Dnf(disjuncts) => disjuncts.iter().map(|d| count(&d.literals)).max(),
        }
        .unwrap_or(0);
        OccurrenceBound { s }
    }

    /// Canonical textual form; `parse_spec` inverts it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("problem {}\n", self.name));
        out.push_str(&format!("kind {}\n", self.kind.as_str()));
        let syms = |list: &[crate::relational::RelationSymbol]| {
            list.iter().map(|s| format!("{}/{}", s.name, s.arity)).collect::<Vec<_>>().join(" ")
        };
        out.push_str(&format!("input {}\n", syms(&self.vocabulary.input_symbols)));
        out.push_str(&format!("solution {}\n", syms(&self.vocabulary.solution_symbols)));
        out.push_str(&format!("forall {}\n", self.x_vars.join(" ")));
        if !self.y_vars.is_empty() {
            out.push_str(&format!("exists {}\n", self.y_vars.join(" ")));
        }
        match &self.matrix {
            Matrix::Cnf(clauses) => {
                out.push_str("cnf\n");
                for c in clauses {
                    let line =
                        c.literals.iter().map(Literal::render).collect::<Vec<_>>().join(" | ");
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            Matrix::Dnf(disjuncts) => {
                out.push_str("dnf\n");
                for d in disjuncts {
                    let line =
                        d.literals.iter().map(Literal::render).collect::<Vec<_>>().join(" & ");
                    out.push_str(&line);
                    out.push('\n');
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurrence_bound_examples() {
        let vc = builtin_spec("vertex-cover").unwrap();
        assert_eq!(vc.solution_occurrence_bound().s, 2);
        let ms = builtin_spec("max-sat").unwrap();
        assert_eq!(ms.solution_occurrence_bound().s, 1);
    }

    #[test]
    fn occurrence_bound_matches_recount() {
        for name in builtin_names() {
            let spec = builtin_spec(name).unwrap();
            let recount = match &spec.matrix {
                Matrix::Cnf(cs) => cs
                    .iter()
                    .map(|c| {
                        c.literals
                            .iter()
                            .filter(|l| {
                                spec.vocabulary.solution_symbols.iter().any(|s| s.name == l.symbol)
                            })
                            .count()
                    })
                    .max()
                    .unwrap_or(0),
                Matrix::Dnf(ds) => ds
                    .iter()
                    .map(|d| {
                        d.literals
                            .iter()
                            .filter(|l| {
                                spec.vocabulary.solution_symbols.iter().any(|s| s.name == l.symbol)
                            })
                            .count()
                    })
                    .max()
                    .unwrap_or(0),
            };
            assert_eq!(spec.solution_occurrence_bound().s, recount, "bound mismatch for {name}");
        }
    }

    #[test]
    fn degenerate_bound_flagged() {
        let text = "problem deg\nkind minf\ninput E/2\nsolution S/1\nforall u\ncnf\nE(u,u)\n";
        let spec = parse_spec(text).unwrap();
        let bound = spec.solution_occurrence_bound();
        assert_eq!(bound.s, 0);
        assert!(bound.is_degenerate());
    }

    #[test]
    fn minf_matrix_stays_positive_in_solution() {
        for name in ["vertex-cover", "hitting-set-2", "hitting-set-3"] {
            let spec = builtin_spec(name).unwrap();
            for lit in spec.all_literals() {
                if spec.vocabulary.is_solution(&lit.symbol) {
                    assert!(!lit.negated, "negated solution literal in {name}");
                }
            }
        }
    }
}
