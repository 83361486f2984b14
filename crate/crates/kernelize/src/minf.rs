//! Kernelization pipeline for minimization specifications: ground every
//! universal tuple, collect the distinct ground clauses as a hypergraph over
//! solution-atom tuples, kernelize that hitting-set instance by sunflower
//! edge deletion, then restrict the structure to the components of one
//! selected origin tuple per surviving clause.

use std::collections::{BTreeSet, HashSet};

use indexmap::IndexMap;

use crate::ground::specialize_min;
use crate::hypergraph::{kernelize_hitting_set, Hypergraph};
use crate::outcome::{KernelError, KernelOutcome, KernelStats, Reason, Verdict};
use crate::relational::{validate_structure, Atom, FiniteStructure, Tuple};
use crate::spec::{ProblemKind, ProblemSpec};

/// The ground-clause hypergraph of an instance, with edge provenance.
#[derive(Debug, Clone)]
pub struct PhiResult {
    /// One edge per distinct nonempty ground clause; vertices are the
    /// solution-atom tuples occurring in the clauses.
    pub hypergraph: Hypergraph<Tuple>,
    /// For each edge, the universal tuples whose specialization produced the
    /// clause, in enumeration order.
    origins: IndexMap<BTreeSet<Tuple>, Vec<Tuple>>,
    /// First universal tuple whose specialization has an empty clause; its
    /// clauses are omitted from the hypergraph.
    pub no_instance_witness: Option<Tuple>,
}

impl PhiResult {
    pub fn origins(&self, edge: &BTreeSet<Tuple>) -> Option<&[Tuple]> {
        self.origins.get(edge).map(|v| v.as_slice())
    }

    /// The canonical origin: lexicographically smallest producing tuple.
    pub fn select_origin(&self, edge: &BTreeSet<Tuple>) -> Option<&Tuple> {
        self.origins(edge).and_then(|o| o.first())
    }
}

fn ensure_minf(spec: &ProblemSpec) -> Result<usize, KernelError> {
    if spec.kind != ProblemKind::MinF {
        return Err(KernelError::WrongKind { expected: "minf", found: spec.kind.as_str() });
    }
    spec.validate()?;
    let bound = spec.solution_occurrence_bound();
    if bound.is_degenerate() {
        return Err(KernelError::DegenerateSpec);
    }
    Ok(bound.s)
}

/// Builds the ground-clause hypergraph. Duplicate clauses across universal
/// tuples merge into one edge with merged origins. If any specialization
/// yields an empty clause, the witness is recorded and that tuple
/// contributes no edges.
pub fn build_phi(spec: &ProblemSpec, structure: &FiniteStructure) -> Result<PhiResult, KernelError> {
    ensure_minf(spec)?;
    let mut hypergraph = Hypergraph::new();
    let mut origins: IndexMap<BTreeSet<Tuple>, Vec<Tuple>> = IndexMap::new();
    let mut witness = None;
    for x in structure.enumerate_tuples(spec.x_arity()) {
        let cnf = specialize_min(spec, structure, &x);
        if cnf.has_empty_clause() {
            if witness.is_none() {
                witness = Some(x);
            }
            continue;
        }
        for clause in cnf.clauses {
            hypergraph.add_edge(clause.iter().cloned());
            origins.entry(clause.into_iter().collect()).or_default().push(x.clone());
        }
    }
    Ok(PhiResult { hypergraph, origins, no_instance_witness: witness })
}

/// Full kernelization for a minimization instance at parameter `k`.
pub fn kernelize_min(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
) -> Result<KernelOutcome, KernelError> {
    let s = ensure_minf(spec)?;
    let issues = validate_structure(structure, &spec.vocabulary);
    if !issues.is_empty() {
        return Err(KernelError::Validation(issues));
    }

    let phi = build_phi(spec, structure)?;
    let mut stats = KernelStats {
        atoms_before: structure.atom_count(),
        tuples_before: structure.tuple_count(),
        edges_before: Some(phi.hypergraph.edge_count()),
        ..KernelStats::default()
    };

    if let Some(witness) = &phi.no_instance_witness {
        // restricting to the witness components preserves the evaluation
        // that produced the empty clause, so the output forces NO at any k
        let keep: HashSet<Atom> = witness.iter().cloned().collect();
        let reduced = structure.restrict(&keep).expect("witness components are atoms");
        stats.atoms_after = reduced.atom_count();
        stats.tuples_after = reduced.tuple_count();
        return Ok(KernelOutcome {
            structure: reduced,
            k,
            verdict: Verdict::TrivialNo,
            reason: Reason::EmptyClauseWitness,
            stats,
        });
    }

    let kept = kernelize_hitting_set(&phi.hypergraph, k, s)?;
    stats.edges_after = Some(kept.edge_count());

    let mut keep: HashSet<Atom> = HashSet::new();
    for edge in kept.edge_sets() {
        let origin = phi
            .select_origin(&edge)
            .ok_or_else(|| KernelError::Contract("kernel edge without origin".into()))?;
        keep.extend(origin.iter().cloned());
    }
    let reduced = structure.restrict(&keep).expect("origins are atoms of the structure");
    stats.atoms_after = reduced.atom_count();
    stats.tuples_after = reduced.tuple_count();
    Ok(KernelOutcome {
        structure: reduced,
        k,
        verdict: Verdict::Reduced,
        reason: Reason::SunflowerReduction,
        stats,
    })
}
