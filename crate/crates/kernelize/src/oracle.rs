//! Brute-force ground truth at desk scale.
//!
//! The oracles evaluate the original matrix directly against structures and
//! solution assignments; they never go through the grounding or kernel
//! pipeline, so they serve as an independent check of both. Budgets make
//! the oracles refuse oversized inputs instead of silently truncating.

use std::collections::HashMap;
use std::hash::Hash;

use itertools::Itertools;
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::outcome::{KernelOutcome, Verdict};
use crate::relational::{Atom, FiniteStructure, SolutionAssignment, Tuple};
use crate::spec::{Matrix, ProblemKind, ProblemSpec};

/// Enumeration limits. Exceeding any limit is an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest universe (atoms, or hypergraph vertices) accepted.
    pub max_universe: usize,
    /// Largest number of candidate assignments enumerated.
    pub max_assignment_space: u128,
    /// Hard cap on enumerated candidates across one call.
    pub max_candidates: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_universe: 6, max_assignment_space: 1 << 20, max_candidates: 1 << 24 }
    }
}

impl OracleBudget {
    pub fn unbounded() -> Self {
        OracleBudget {
            max_universe: usize::MAX,
            max_assignment_space: u128::MAX,
            max_candidates: u128::MAX,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: {what}")]
    BudgetExceeded { what: String },
}

fn budget_err(what: impl Into<String>) -> OracleError {
    OracleError::BudgetExceeded { what: what.into() }
}

/// Outcome of an exact minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinOptimum {
    Feasible(usize),
    Infeasible,
}

impl std::fmt::Display for MinOptimum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinOptimum::Feasible(w) => write!(f, "{w}"),
            MinOptimum::Infeasible => write!(f, "infeasible"),
        }
    }
}

/// A decision answer for the standard parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Answer::Yes => write!(f, "YES"),
            Answer::No => write!(f, "NO"),
        }
    }
}

fn literal_holds(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    assignment: &SolutionAssignment,
    binding: &HashMap<&str, &Atom>,
    literal: &crate::spec::Literal,
) -> bool {
    let tuple: Tuple = literal.args.iter().map(|v| (*binding[v.as_str()]).clone()).collect();
    let member = if spec.vocabulary.is_solution(&literal.symbol) {
        assignment.contains(&literal.symbol, &tuple)
    } else {
        structure.extent_contains(&literal.symbol, &tuple)
    };
    member != literal.negated
}

/// Direct evaluation of the minimization matrix at one universal tuple.
pub fn evaluate_min_at(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    assignment: &SolutionAssignment,
    x: &[Atom],
) -> bool {
    let Matrix::Cnf(clauses) = &spec.matrix else {
        panic!("evaluate_min_at requires a cnf matrix");
    };
    let binding: HashMap<&str, &Atom> =
        spec.x_vars.iter().zip(x).map(|(v, a)| (v.as_str(), a)).collect();
    clauses.iter().all(|clause| {
        clause.literals.iter().any(|l| literal_holds(spec, structure, assignment, &binding, l))
    })
}

/// Whether the assignment satisfies the matrix at every universal tuple.
pub fn satisfies_min(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    assignment: &SolutionAssignment,
) -> bool {
    structure.enumerate_tuples(spec.x_arity()).all(|x| evaluate_min_at(spec, structure, assignment, &x))
}

/// Direct evaluation of the maximization matrix at one tuple pair.
pub fn evaluate_max_at(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    assignment: &SolutionAssignment,
    x: &[Atom],
    y: &[Atom],
) -> bool {
    let Matrix::Dnf(disjuncts) = &spec.matrix else {
        panic!("evaluate_max_at requires a dnf matrix");
    };
    let binding: HashMap<&str, &Atom> = spec
        .x_vars
        .iter()
        .zip(x)
        .chain(spec.y_vars.iter().zip(y))
        .map(|(v, a)| (v.as_str(), a))
        .collect();
    disjuncts.iter().any(|d| {
        d.literals.iter().all(|l| literal_holds(spec, structure, assignment, &binding, l))
    })
}

/// Number of universal tuples for which some existential witness satisfies
/// the matrix under the assignment.
pub fn satisfied_x_count(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    assignment: &SolutionAssignment,
) -> usize {
    structure
        .enumerate_tuples(spec.x_arity())
        .filter(|x| {
            structure
                .enumerate_tuples(spec.y_arity())
                .any(|y| evaluate_max_at(spec, structure, assignment, x, &y))
        })
        .count()
}

fn check_universe(structure: &FiniteStructure, budget: &OracleBudget) -> Result<(), OracleError> {
    if structure.atom_count() > budget.max_universe {
        return Err(budget_err(format!(
            "universe of {} atoms exceeds limit {}",
            structure.atom_count(),
            budget.max_universe
        )));
    }
    Ok(())
}

fn checked_space(n_ground_atoms: usize, budget: &OracleBudget) -> Result<u128, OracleError> {
    if n_ground_atoms >= 127 {
        return Err(budget_err(format!("2^{n_ground_atoms} candidate assignments")));
    }
    let space = 1u128 << n_ground_atoms;
    if space > budget.max_assignment_space || space > budget.max_candidates {
        return Err(budget_err(format!("2^{n_ground_atoms} candidate assignments")));
    }
    Ok(space)
}

/// Exact optimum of a minimization problem by subset enumeration in
/// increasing cardinality. Infeasible exactly when no assignment satisfies
/// the formula, i.e. when some specialized formula has an empty clause.
pub fn exact_opt_min(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    budget: &OracleBudget,
) -> Result<MinOptimum, OracleError> {
    assert_eq!(spec.kind, ProblemKind::MinF, "exact_opt_min requires a minf spec");
    check_universe(structure, budget)?;
    let symbol = spec.single_solution_symbol().clone();
    let ground: Vec<Tuple> = structure.enumerate_tuples(symbol.arity).collect();
    checked_space(ground.len(), budget)?;

    for size in 0..=ground.len() {
        for subset in ground.iter().combinations(size) {
            let mut assignment = SolutionAssignment::new();
            for tuple in subset {
                assignment.insert(&symbol.name, tuple.clone());
            }
            if satisfies_min(spec, structure, &assignment) {
                return Ok(MinOptimum::Feasible(size));
            }
        }
    }
    Ok(MinOptimum::Infeasible)
}

/// Exact optimum of a maximization problem by exhausting all solution
/// assignments.
pub fn exact_opt_max(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    budget: &OracleBudget,
) -> Result<usize, OracleError> {
    assert!(
        matches!(spec.kind, ProblemKind::MaxNp | ProblemKind::MaxSnp),
        "exact_opt_max requires a max spec"
    );
    check_universe(structure, budget)?;
    let mut ground: Vec<(String, Tuple)> = Vec::new();
    for symbol in &spec.vocabulary.solution_symbols {
        for tuple in structure.enumerate_tuples(symbol.arity) {
            ground.push((symbol.name.clone(), tuple));
        }
    }
    let space = checked_space(ground.len(), budget)?;

    let x_space = structure.enumerate_tuples(spec.x_arity()).count();
    let mut best = 0;
    for mask in 0..space {
        let mut assignment = SolutionAssignment::new();
        for (i, (symbol, tuple)) in ground.iter().enumerate() {
            if mask >> i & 1 == 1 {
                assignment.insert(symbol, tuple.clone());
            }
        }
        best = best.max(satisfied_x_count(spec, structure, &assignment));
        if best == x_space {
            break;
        }
    }
    Ok(best)
}

/// Exact minimum hitting set size by subset enumeration; infeasible exactly
/// when the hypergraph has an empty edge.
pub fn exact_min_hitting_set<V: Clone + Eq + Hash + Ord>(
    h: &Hypergraph<V>,
    budget: &OracleBudget,
) -> Result<MinOptimum, OracleError> {
    if h.has_empty_edge() {
        return Ok(MinOptimum::Infeasible);
    }
    // the subset space is the binding limit here, not the universe cap
    checked_space(h.vertex_count(), budget)?;
    let edges = h.edge_sets();
    let vertices: Vec<&V> = h.vertices().iter().collect();
    for size in 0..=vertices.len() {
        for subset in vertices.iter().combinations(size) {
            let hits_all = edges
                .iter()
                .all(|edge| subset.iter().any(|v| edge.contains(**v)));
            if hits_all {
                return Ok(MinOptimum::Feasible(size));
            }
        }
    }
    Ok(MinOptimum::Infeasible)
}

/// Decides the standard parameterization: optimum at most k for
/// minimization, at least k for maximization.
pub fn decide(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    k: usize,
    budget: &OracleBudget,
) -> Result<Answer, OracleError> {
    let yes = match spec.kind {
        ProblemKind::MinF => match exact_opt_min(spec, structure, budget)? {
            MinOptimum::Feasible(opt) => opt <= k,
            MinOptimum::Infeasible => false,
        },
        ProblemKind::MaxNp | ProblemKind::MaxSnp => exact_opt_max(spec, structure, budget)? >= k,
    };
    Ok(if yes { Answer::Yes } else { Answer::No })
}

/// Compares the decision on the original instance against the kernel
/// outcome. Trivial verdicts must also match the decision on the input.
pub fn check_kernel_equivalence(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    outcome: &KernelOutcome,
    k: usize,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    if outcome.k != k {
        return Ok(false);
    }
    let on_input = decide(spec, structure, k, budget)?;
    let on_kernel = decide(spec, &outcome.structure, k, budget)?;
    let forced_ok = match outcome.verdict {
        Verdict::TrivialNo => on_input == Answer::No,
        Verdict::TrivialYes => on_input == Answer::Yes,
        Verdict::Reduced => true,
    };
    Ok(forced_ok && on_input == on_kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{builtin_spec, parse_spec};

    fn tup(parts: &[&str]) -> Tuple {
        parts.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> FiniteStructure {
        let mut s = FiniteStructure::new(vec!["a".into(), "b".into(), "c".into()]);
        s.add_relation(
            "E",
            [
                tup(&["a", "b"]),
                tup(&["b", "a"]),
                tup(&["a", "c"]),
                tup(&["c", "a"]),
                tup(&["b", "c"]),
                tup(&["c", "b"]),
            ],
        );
        s
    }

    fn max_sat_example() -> FiniteStructure {
        let mut s = FiniteStructure::new(vec!["c1".into(), "c2".into(), "v1".into()]);
        s.add_relation("P", [tup(&["v1", "c1"])]);
        s.add_relation("N", [tup(&["v1", "c2"])]);
        s
    }

    #[test]
    fn vertex_cover_on_triangle_is_two() {
        let spec = builtin_spec("vertex-cover").unwrap();
        let opt = exact_opt_min(&spec, &triangle(), &OracleBudget::default()).unwrap();
        assert_eq!(opt, MinOptimum::Feasible(2));
    }

    #[test]
    fn vertex_cover_on_edgeless_graph_is_zero() {
        let spec = builtin_spec("vertex-cover").unwrap();
        let s = FiniteStructure::new(vec!["a".into(), "b".into()]);
        let opt = exact_opt_min(&spec, &s, &OracleBudget::default()).unwrap();
        assert_eq!(opt, MinOptimum::Feasible(0));
    }

    #[test]
    fn loop_demand_on_loopless_structure_is_infeasible() {
        let spec =
            parse_spec("problem loops\nkind minf\ninput E/2\nsolution S/1\nforall u\ncnf\nE(u,u)\n")
                .unwrap();
        let opt = exact_opt_min(&spec, &triangle(), &OracleBudget::default()).unwrap();
        assert_eq!(opt, MinOptimum::Infeasible);
    }

    #[test]
    fn max_sat_example_optimum_is_one() {
        let spec = builtin_spec("max-sat").unwrap();
        let opt = exact_opt_max(&spec, &max_sat_example(), &OracleBudget::default()).unwrap();
        assert_eq!(opt, 1);
    }

    #[test]
    fn max_cut_on_k3_counts_ordered_tuples() {
        // best cut separates one vertex: 2 cut edges, each counted in both
        // orientations by the ordered-tuple optimum
        let spec = builtin_spec("max-cut").unwrap();
        let opt = exact_opt_max(&spec, &triangle(), &OracleBudget::default()).unwrap();
        assert_eq!(opt, 4);
    }

    #[test]
    fn max_on_empty_structure_is_zero() {
        let spec = builtin_spec("max-cut").unwrap();
        let s = FiniteStructure::new(vec![]);
        assert_eq!(exact_opt_max(&spec, &s, &OracleBudget::default()).unwrap(), 0);
    }

    #[test]
    fn hitting_set_examples() {
        let budget = OracleBudget::default();
        let mut k3 = Hypergraph::new();
        k3.add_edge(["a", "b"]);
        k3.add_edge(["a", "c"]);
        k3.add_edge(["b", "c"]);
        assert_eq!(exact_min_hitting_set(&k3, &budget).unwrap(), MinOptimum::Feasible(2));

        let mut singles = Hypergraph::new();
        for v in 1..=5u32 {
            singles.add_edge([v]);
        }
        assert_eq!(exact_min_hitting_set(&singles, &budget).unwrap(), MinOptimum::Feasible(5));

        let empty = Hypergraph::<u32>::new();
        assert_eq!(exact_min_hitting_set(&empty, &budget).unwrap(), MinOptimum::Feasible(0));

        let mut with_empty_edge = Hypergraph::<u32>::new();
        with_empty_edge.add_edge([]);
        assert_eq!(exact_min_hitting_set(&with_empty_edge, &budget).unwrap(), MinOptimum::Infeasible);
    }

    #[test]
    fn decide_examples() {
        let budget = OracleBudget::default();
        let vc = builtin_spec("vertex-cover").unwrap();
        assert_eq!(decide(&vc, &triangle(), 2, &budget).unwrap(), Answer::Yes);
        assert_eq!(decide(&vc, &triangle(), 1, &budget).unwrap(), Answer::No);

        let ms = builtin_spec("max-sat").unwrap();
        assert_eq!(decide(&ms, &max_sat_example(), 1, &budget).unwrap(), Answer::Yes);
        assert_eq!(decide(&ms, &max_sat_example(), 2, &budget).unwrap(), Answer::No);
    }

    #[test]
    fn decide_is_monotone_in_k() {
        let budget = OracleBudget::default();
        let vc = builtin_spec("vertex-cover").unwrap();
        let s = triangle();
        let mut seen_yes = false;
        for k in 0..=3 {
            let ans = decide(&vc, &s, k, &budget).unwrap();
            if seen_yes {
                assert_eq!(ans, Answer::Yes, "minf decide must stay YES once YES");
            }
            seen_yes |= ans == Answer::Yes;
        }
        let mc = builtin_spec("max-cut").unwrap();
        let mut seen_no = false;
        for k in 0..=6 {
            let ans = decide(&mc, &s, k, &budget).unwrap();
            if seen_no {
                assert_eq!(ans, Answer::No, "max decide must stay NO once NO");
            }
            seen_no |= ans == Answer::No;
        }
    }

    #[test]
    fn budget_refuses_large_universes() {
        let spec = builtin_spec("vertex-cover").unwrap();
        let atoms: Vec<Atom> = (0..10).map(|i| format!("v{i}")).collect();
        let s = FiniteStructure::new(atoms);
        assert!(matches!(
            exact_opt_min(&spec, &s, &OracleBudget::default()),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(exact_opt_min(&spec, &s, &OracleBudget::unbounded()).is_ok());
    }

    #[test]
    fn adding_edges_never_decreases_vertex_cover() {
        let spec = builtin_spec("vertex-cover").unwrap();
        let budget = OracleBudget::default();
        let mut s = FiniteStructure::new(vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        s.add_relation("E", [tup(&["a", "b"]), tup(&["b", "a"])]);
        let mut prev = 0;
        for (u, v) in [("b", "c"), ("c", "d"), ("a", "c")] {
            let MinOptimum::Feasible(before) = exact_opt_min(&spec, &s, &budget).unwrap() else {
                panic!("vertex cover is always feasible");
            };
            assert!(before >= prev);
            prev = before;
            s.add_relation("E", [tup(&[u, v]), tup(&[v, u])]);
        }
    }
}
