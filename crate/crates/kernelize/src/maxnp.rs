//! Kernelization pipeline for maximization specifications.
//!
//! Three stages: a threshold test (enough witnessed universal tuples force a
//! yes-instance outright), a per-tuple reduction of the disjunct sets by
//! sunflower deletion that preserves satisfiability under every small
//! partial assignment, and the restriction of the structure to the kept
//! tuples' components. Specifications without existential variables skip
//! the disjunct machinery entirely.

use std::collections::HashSet;

use indexmap::IndexMap;

use crate::ground::{compute_disjunct_set, compute_x_set, compute_y_set, DisjunctSet, GroundDisjunct, GroundLiteral};
use crate::hypergraph::{hitting_set_edge_bound, Hypergraph};
use crate::outcome::{KernelError, KernelOutcome, KernelStats, Reason, Verdict};
use crate::relational::{validate_structure, Atom, FiniteStructure, Tuple};
use crate::spec::{ProblemKind, ProblemSpec};

/// The reduced disjunct set of one universal tuple: a subset that agrees
/// with the full set on satisfiability under every partial assignment of at
/// most s*k literals, plus one selected witness per kept disjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDisjunctSet {
    disjuncts: Vec<GroundDisjunct>,
    witnesses: IndexMap<GroundDisjunct, Tuple>,
}

impl ReducedDisjunctSet {
    pub fn len(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn disjuncts(&self) -> impl Iterator<Item = &GroundDisjunct> {
        self.disjuncts.iter()
    }

    /// The witness selected for a kept disjunct.
    pub fn witness(&self, disjunct: &GroundDisjunct) -> Option<&Tuple> {
        self.witnesses.get(disjunct)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Tuple> {
        self.witnesses.values()
    }
}

/// (s*k+1)^s * s! * s, the disjunct budget of the reduction.
pub fn disjunct_bound(s: usize, k: usize) -> u128 {
    hitting_set_edge_bound(s.saturating_mul(k), s)
}

/// Shrinks a disjunct set below the budget by repeatedly finding a sunflower
/// of cardinality s*k+2 among the nonempty disjuncts (treated as literal
/// sets) and deleting one petal. Empty disjuncts are never deleted and never
/// searched: they are satisfiable under every partial assignment, which also
/// makes any deletion safe while one is present.
pub fn compute_d_star(
    set: &DisjunctSet,
    s: usize,
    k: usize,
) -> Result<ReducedDisjunctSet, KernelError> {
    for d in set.disjuncts() {
        if d.len() > s {
            return Err(KernelError::Contract(format!(
                "disjunct {d} has {} literals, above the occurrence bound {s}",
                d.len()
            )));
        }
    }
    let bound = disjunct_bound(s, k);
    let cardinality = s.saturating_mul(k) + 2;
    let mut kept: Vec<GroundDisjunct> = set.disjuncts().cloned().collect();
    let has_empty = kept.iter().any(|d| d.is_empty());

    while kept.len() as u128 > bound {
        let mut hypergraph: Hypergraph<GroundLiteral> = Hypergraph::new();
        for d in kept.iter().filter(|d| !d.is_empty()) {
            hypergraph.add_edge(d.literals().iter().cloned());
        }
        let victim: Vec<GroundLiteral> = match hypergraph.find_sunflower(cardinality)? {
            Some(sunflower) => {
                let petal = sunflower.petals.iter().max().expect("sunflower has petals");
                petal.iter().cloned().collect()
            }
            None if has_empty => {
                // with the empty disjunct kept, both sides of the
                // small-assignment property stay satisfiable no matter what
                // else is deleted, so fall back to deleting the
                // lexicographically largest nonempty disjunct
                kept.iter()
                    .filter(|d| !d.is_empty())
                    .max()
                    .expect("over budget, so a nonempty disjunct exists")
                    .literals()
                    .to_vec()
            }
            None => {
                return Err(KernelError::Contract(format!(
                    "sunflower of cardinality {cardinality} not found among {} disjuncts over bound {bound}",
                    kept.len()
                )))
            }
        };
        let pos = kept
            .iter()
            .position(|d| d.literals() == victim.as_slice())
            .expect("petal corresponds to a kept disjunct");
        kept.remove(pos);
    }

    let mut witnesses = IndexMap::new();
    for d in &kept {
        let witness = set
            .first_witness(d)
            .ok_or_else(|| KernelError::Contract(format!("kept disjunct {d} has no producer")))?;
        witnesses.insert(d.clone(), witness.clone());
    }
    Ok(ReducedDisjunctSet { disjuncts: kept, witnesses })
}

fn ensure_max(spec: &ProblemSpec) -> Result<usize, KernelError> {
    if spec.kind == ProblemKind::MinF {
        return Err(KernelError::WrongKind { expected: "maxnp or maxsnp", found: "minf" });
    }
    spec.validate()?;
    let bound = spec.solution_occurrence_bound();
    if bound.is_degenerate() {
        return Err(KernelError::DegenerateSpec);
    }
    Ok(bound.s)
}

fn validated(spec: &ProblemSpec, structure: &FiniteStructure) -> Result<(), KernelError> {
    let issues = validate_structure(structure, &spec.vocabulary);
    if issues.is_empty() {
        Ok(())
    } else {
        Err(KernelError::Validation(issues))
    }
}

/// k * 2^s, the witnessed-tuple count that forces a yes-instance.
fn yes_threshold(k: usize, s: usize) -> u128 {
    if s >= 127 {
        return u128::MAX;
    }
    (k as u128).saturating_mul(1u128 << s)
}

/// If enough universal tuples are witnessed, emits a certified yes-instance:
/// the restriction to the components of exactly k * 2^s witnessed tuples and
/// one existential witness each. Restriction preserves those tuples'
/// groundings, so the threshold still holds on the output.
pub fn threshold_check(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
) -> Result<Option<KernelOutcome>, KernelError> {
    let s = ensure_max(spec)?;
    validated(spec, structure)?;
    let x_set = compute_x_set(spec, structure);
    let need = yes_threshold(k, s);
    if (x_set.len() as u128) < need {
        return Ok(None);
    }
    let mut keep: HashSet<Atom> = HashSet::new();
    for x in x_set.iter().take(need as usize) {
        keep.extend(x.iter().cloned());
        if spec.y_arity() > 0 {
            let ys = compute_y_set(spec, structure, x);
            let y = ys.iter().next().expect("witnessed tuple has an existential witness");
            keep.extend(y.iter().cloned());
        }
    }
    let reduced = structure.restrict(&keep).expect("kept components are atoms");
    let stats = KernelStats {
        atoms_before: structure.atom_count(),
        atoms_after: reduced.atom_count(),
        tuples_before: structure.tuple_count(),
        tuples_after: reduced.tuple_count(),
        edges_before: None,
        edges_after: None,
    };
    Ok(Some(KernelOutcome {
        structure: reduced,
        k,
        verdict: Verdict::TrivialYes,
        reason: Reason::ThresholdMet,
        stats,
    }))
}

fn trivial_no(spec: &ProblemSpec, structure: &FiniteStructure, k: usize) -> KernelOutcome {
    let _ = spec;
    let reduced = structure.restrict(&HashSet::new()).expect("empty restriction");
    KernelOutcome {
        structure: reduced,
        k,
        verdict: Verdict::TrivialNo,
        reason: Reason::ParameterExceedsTupleSpace,
        stats: KernelStats {
            atoms_before: structure.atom_count(),
            atoms_after: 0,
            tuples_before: structure.tuple_count(),
            tuples_after: 0,
            edges_before: None,
            edges_after: None,
        },
    }
}

fn parameter_exceeds_tuples(spec: &ProblemSpec, structure: &FiniteStructure, k: usize) -> bool {
    let mut space: u128 = 1;
    for _ in 0..spec.x_arity() {
        space = space.saturating_mul(structure.atom_count() as u128);
    }
    k as u128 > space
}

/// Full kernelization for a maximization instance at parameter `k`.
pub fn kernelize_max(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
) -> Result<KernelOutcome, KernelError> {
    let s = ensure_max(spec)?;
    validated(spec, structure)?;
    if parameter_exceeds_tuples(spec, structure, k) {
        return Ok(trivial_no(spec, structure, k));
    }
    if let Some(outcome) = threshold_check(spec, structure, k)? {
        return Ok(outcome);
    }

    let x_set = compute_x_set(spec, structure);
    let mut keep: HashSet<Atom> = HashSet::new();
    let mut disjuncts_before = 0;
    let mut disjuncts_after = 0;
    for x in x_set.iter() {
        keep.extend(x.iter().cloned());
        let full = compute_disjunct_set(spec, structure, x);
        let reduced = compute_d_star(&full, s, k)?;
        disjuncts_before += full.len();
        disjuncts_after += reduced.len();
        for y in reduced.witnesses() {
            keep.extend(y.iter().cloned());
        }
    }
    let reduced = structure.restrict(&keep).expect("kept components are atoms");
    let stats = KernelStats {
        atoms_before: structure.atom_count(),
        atoms_after: reduced.atom_count(),
        tuples_before: structure.tuple_count(),
        tuples_after: reduced.tuple_count(),
        edges_before: Some(disjuncts_before),
        edges_after: Some(disjuncts_after),
    };
    Ok(KernelOutcome {
        structure: reduced,
        k,
        verdict: Verdict::Reduced,
        reason: Reason::SunflowerReduction,
        stats,
    })
}

/// Kernelization for specifications without existential variables: after the
/// threshold test, the restriction to the witnessed tuples' components
/// already preserves the answer, so no witness selection is needed.
pub fn kernelize_maxsnp(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
) -> Result<KernelOutcome, KernelError> {
    if spec.kind != ProblemKind::MaxSnp {
        return Err(KernelError::WrongKind { expected: "maxsnp", found: spec.kind.as_str() });
    }
    let _ = ensure_max(spec)?;
    validated(spec, structure)?;
    if parameter_exceeds_tuples(spec, structure, k) {
        return Ok(trivial_no(spec, structure, k));
    }
    if let Some(outcome) = threshold_check(spec, structure, k)? {
        return Ok(outcome);
    }

    let x_set = compute_x_set(spec, structure);
    let mut keep: HashSet<Atom> = HashSet::new();
    for x in x_set.iter() {
        keep.extend(x.iter().cloned());
    }
    let reduced = structure.restrict(&keep).expect("kept components are atoms");
    let stats = KernelStats {
        atoms_before: structure.atom_count(),
        atoms_after: reduced.atom_count(),
        tuples_before: structure.tuple_count(),
        tuples_after: reduced.tuple_count(),
        edges_before: None,
        edges_after: None,
    };
    Ok(KernelOutcome {
        structure: reduced,
        k,
        verdict: Verdict::Reduced,
        reason: Reason::SunflowerReduction,
        stats,
    })
}

/// Dispatches on the specification kind.
pub fn kernelize(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
) -> Result<KernelOutcome, KernelError> {
    match spec.kind {
        ProblemKind::MinF => crate::minf::kernelize_min(spec, structure, k),
        ProblemKind::MaxNp => kernelize_max(spec, structure, k),
        ProblemKind::MaxSnp => kernelize_maxsnp(spec, structure, k),
    }
}
