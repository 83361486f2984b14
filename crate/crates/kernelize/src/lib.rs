//! Kernelization engine for syntactically specified optimization problems.
//!
//! Takes a problem specification (a universally quantified CNF positive in
//! the solution symbol for minimization, or an existential DNF for
//! maximization), a finite relational structure, and a parameter k, and
//! produces an equivalent instance whose size is polynomial in k. Both
//! reductions rest on repeatedly finding sunflowers and deleting petals,
//! which never shrinks clauses or disjuncts and therefore keeps the output
//! an instance of the same problem.
//!
//! Brute-force oracles provide independent ground truth at desk scale; the
//! `cli` module exposes the pipeline, file formats, and seeded instance
//! generators.

pub mod cli;
pub mod gen;
pub mod ground;
pub mod hypergraph;
pub mod instance;
pub mod maxnp;
pub mod minf;
pub mod oracle;
pub mod outcome;
pub mod relational;
pub mod spec;

pub use maxnp::kernelize;
pub use outcome::{KernelError, KernelOutcome, KernelStats, Reason, Verdict};
pub use relational::{FiniteStructure, Tuple, Vocabulary};
pub use spec::{parse_spec, ProblemKind, ProblemSpec};
