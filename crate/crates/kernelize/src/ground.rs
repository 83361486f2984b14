//! Grounding: specializing the matrix at concrete tuples.
//!
//! Input literals are evaluated against the structure and eliminated; what
//! remains is a formula over ground solution atoms only. For CNF matrices
//! false literals are dropped and clauses with a true literal disappear; for
//! DNF matrices true literals are dropped and disjuncts with a false literal
//! disappear, as do disjuncts with contradicting solution literals. Empty
//! disjuncts are kept: they are satisfied by definition.

use std::collections::HashMap;

use indexmap::IndexMap;
use thiserror::Error;

use crate::relational::{format_tuple, Atom, FiniteStructure, SolutionAssignment, Tuple, TupleSet};
use crate::spec::{Matrix, ProblemKind, ProblemSpec};

/// A possibly negated solution atom over concrete atoms.
///
/// Field order gives the canonical literal order (symbol, sign, arguments).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLiteral {
    pub symbol: String,
    pub negated: bool,
    pub args: Tuple,
}

impl GroundLiteral {
    pub fn new(symbol: impl Into<String>, negated: bool, args: Tuple) -> Self {
        GroundLiteral { symbol: symbol.into(), negated, args }
    }

    pub fn negation(&self) -> GroundLiteral {
        GroundLiteral { symbol: self.symbol.clone(), negated: !self.negated, args: self.args.clone() }
    }
}

impl std::fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let neg = if self.negated { "!" } else { "" };
        write!(f, "{neg}{}({})", self.symbol, self.args.join(","))
    }
}

/// Ground CNF over positive solution atoms of the single minimization
/// solution symbol. Every clause is a deduplicated set of argument tuples,
/// sorted in canonical atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundCnf {
    pub clauses: Vec<Vec<Tuple>>,
}

impl GroundCnf {
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Satisfaction under an assignment to `symbol`.
    pub fn satisfied_by(&self, assignment: &SolutionAssignment, symbol: &str) -> bool {
        self.clauses.iter().all(|clause| clause.iter().any(|z| assignment.contains(symbol, z)))
    }
}

/// A conjunction of ground solution literals. Construction removes duplicate
/// literals, sorts them canonically, and rejects internally contradictory
/// sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundDisjunct {
    literals: Vec<GroundLiteral>,
}

impl GroundDisjunct {
    /// Returns `None` when a literal and its negation co-occur.
    pub fn new(mut literals: Vec<GroundLiteral>) -> Option<Self> {
        literals.sort();
        literals.dedup();
        for lit in &literals {
            let negated = lit.negation();
            if literals.binary_search(&negated).is_ok() {
                return None;
            }
        }
        Some(GroundDisjunct { literals })
    }

    pub fn empty() -> Self {
        GroundDisjunct { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[GroundLiteral] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn satisfied_by(&self, assignment: &SolutionAssignment) -> bool {
        self.literals.iter().all(|l| assignment.contains(&l.symbol, &l.args) != l.negated)
    }
}

impl std::fmt::Display for GroundDisjunct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body = self.literals.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" & ");
        write!(f, "{{{body}}}")
    }
}

/// Ground DNF: a deduplicated set of ground disjuncts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundDnf {
    pub disjuncts: Vec<GroundDisjunct>,
}

impl GroundDnf {
    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn satisfied_by(&self, assignment: &SolutionAssignment) -> bool {
        self.disjuncts.iter().any(|d| d.satisfied_by(assignment))
    }
}

/// All disjuncts a tuple can produce across its existential witnesses,
/// with the witnesses that produced each disjunct in enumeration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DisjunctSet {
    entries: IndexMap<GroundDisjunct, Vec<Tuple>>,
}

impl DisjunctSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, disjunct: GroundDisjunct, witness: Tuple) {
        let produced = self.entries.entry(disjunct).or_default();
        if !produced.contains(&witness) {
            produced.push(witness);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn disjuncts(&self) -> impl Iterator<Item = &GroundDisjunct> {
        self.entries.keys()
    }

    pub fn producers(&self, disjunct: &GroundDisjunct) -> Option<&[Tuple]> {
        self.entries.get(disjunct).map(|v| v.as_slice())
    }

    /// The canonical witness: the first producer in enumeration order.
    pub fn first_witness(&self, disjunct: &GroundDisjunct) -> Option<&Tuple> {
        self.producers(disjunct).and_then(|p| p.first())
    }
}

/// A consistent set of ground literals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    literals: Vec<GroundLiteral>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("partial assignment contains both {literal} and its negation")]
pub struct InconsistentAssignment {
    pub literal: GroundLiteral,
}

impl PartialAssignment {
    pub fn new(mut literals: Vec<GroundLiteral>) -> Result<Self, InconsistentAssignment> {
        literals.sort();
        literals.dedup();
        for lit in &literals {
            if literals.binary_search(&lit.negation()).is_ok() {
                return Err(InconsistentAssignment { literal: lit.clone() });
            }
        }
        Ok(PartialAssignment { literals })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn literals(&self) -> &[GroundLiteral] {
        &self.literals
    }
}

/// A disjunct is satisfiable under a partial assignment iff the assignment
/// contradicts none of its literals; the union then extends to a full
/// assignment. The empty disjunct is satisfiable under every assignment.
pub fn satisfiable_under(disjunct: &GroundDisjunct, partial: &PartialAssignment) -> bool {
    disjunct.literals.iter().all(|l| partial.literals.binary_search(&l.negation()).is_err())
}

fn binding<'a>(
    spec: &'a ProblemSpec,
    x: &'a [Atom],
    y: &'a [Atom],
) -> HashMap<&'a str, &'a Atom> {
    debug_assert_eq!(x.len(), spec.x_arity());
    debug_assert_eq!(y.len(), spec.y_arity());
    spec.x_vars
        .iter()
        .zip(x)
        .chain(spec.y_vars.iter().zip(y))
        .map(|(v, a)| (v.as_str(), a))
        .collect()
}

fn ground_args(args: &[String], binding: &HashMap<&str, &Atom>) -> Tuple {
    args.iter().map(|v| (*binding[v.as_str()]).clone()).collect()
}

/// Specializes a minimization matrix at a concrete tuple, producing ground
/// CNF over positive solution atoms. Equivalent to the original matrix at
/// that tuple for every assignment.
pub fn specialize_min(spec: &ProblemSpec, structure: &FiniteStructure, x: &[Atom]) -> GroundCnf {
    let Matrix::Cnf(clauses) = &spec.matrix else {
        panic!("specialize_min requires a cnf matrix");
    };
    let binding = binding(spec, x, &[]);
    let mut out: Vec<Vec<Tuple>> = Vec::new();
    'clauses: for clause in clauses {
        let mut atoms: Vec<Tuple> = Vec::new();
        for literal in &clause.literals {
            let args = ground_args(&literal.args, &binding);
            if spec.vocabulary.is_solution(&literal.symbol) {
                // positive by the minf invariant
                if !atoms.contains(&args) {
                    atoms.push(args);
                }
            } else if structure.extent_contains(&literal.symbol, &args) != literal.negated {
                // true input literal satisfies the whole clause
                continue 'clauses;
            }
        }
        atoms.sort_by_key(|t| structure.tuple_key(t));
        if !out.contains(&atoms) {
            out.push(atoms);
        }
    }
    GroundCnf { clauses: out }
}

/// Specializes a maximization matrix at a concrete tuple pair, producing
/// ground DNF over solution literals.
pub fn specialize_max(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    x: &[Atom],
    y: &[Atom],
) -> GroundDnf {
    let Matrix::Dnf(disjuncts) = &spec.matrix else {
        panic!("specialize_max requires a dnf matrix");
    };
    let binding = binding(spec, x, y);
    let mut out: Vec<GroundDisjunct> = Vec::new();
    'disjuncts: for disjunct in disjuncts {
        let mut literals = Vec::new();
        for literal in &disjunct.literals {
            let args = ground_args(&literal.args, &binding);
            if spec.vocabulary.is_solution(&literal.symbol) {
                literals.push(GroundLiteral::new(literal.symbol.clone(), literal.negated, args));
            } else if structure.extent_contains(&literal.symbol, &args) == literal.negated {
                // false input literal kills the disjunct
                continue 'disjuncts;
            }
        }
        if let Some(ground) = GroundDisjunct::new(literals) {
            if !out.contains(&ground) {
                out.push(ground);
            }
        }
    }
    GroundDnf { disjuncts: out }
}

/// The tuples for which some existential witness leaves a satisfiable (i.e.
/// surviving) disjunct. A surviving disjunct is always satisfiable in
/// isolation because contradictory ones were removed.
pub fn compute_x_set(spec: &ProblemSpec, structure: &FiniteStructure) -> TupleSet {
    let mut out = TupleSet::new(spec.x_arity());
    for x in structure.enumerate_tuples(spec.x_arity()) {
        let witnessed = structure
            .enumerate_tuples(spec.y_arity())
            .any(|y| !specialize_max(spec, structure, &x, &y).is_empty());
        if witnessed {
            out.insert(x);
        }
    }
    out
}

/// The existential witnesses whose ground DNF at `x` is nonempty.
pub fn compute_y_set(spec: &ProblemSpec, structure: &FiniteStructure, x: &[Atom]) -> TupleSet {
    let mut out = TupleSet::new(spec.y_arity());
    for y in structure.enumerate_tuples(spec.y_arity()) {
        if !specialize_max(spec, structure, x, &y).is_empty() {
            out.insert(y);
        }
    }
    out
}

/// The union of all disjuncts over the witnesses of `x`, with provenance.
pub fn compute_disjunct_set(
    spec: &ProblemSpec,
    structure: &FiniteStructure,
    x: &[Atom],
) -> DisjunctSet {
    let mut out = DisjunctSet::new();
    for y in structure.enumerate_tuples(spec.y_arity()) {
        for disjunct in specialize_max(spec, structure, x, &y).disjuncts {
            out.insert(disjunct, y.clone());
        }
    }
    out
}

/// Renders ground CNF for diagnostics.
pub fn format_cnf(cnf: &GroundCnf, symbol: &str) -> String {
    if cnf.clauses.is_empty() {
        return "(satisfied)".to_string();
    }
    cnf.clauses
        .iter()
        .map(|clause| {
            if clause.is_empty() {
                "(empty clause)".to_string()
            } else {
                clause
                    .iter()
                    .map(|z| format!("{symbol}({})", z.join(",")))
                    .collect::<Vec<_>>()
                    .join(" | ")
            }
        })
        .collect::<Vec<_>>()
        .join("  &  ")
}

/// Renders a tuple list for diagnostics.
pub fn format_tuples<'a>(tuples: impl Iterator<Item = &'a Tuple>) -> String {
    let parts: Vec<String> = tuples.map(|t| format_tuple(t)).collect();
    if parts.is_empty() {
        "(none)".to_string()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{builtin_spec, parse_spec};

    fn atom(s: &str) -> Atom {
        s.to_string()
    }

    fn tup(parts: &[&str]) -> Tuple {
        parts.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> FiniteStructure {
        let mut s = FiniteStructure::new(vec![atom("a"), atom("b"), atom("c")]);
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
        let mut s = FiniteStructure::new(vec![atom("c1"), atom("c2"), atom("v1")]);
        s.add_relation("P", [tup(&["v1", "c1"])]);
        s.add_relation("N", [tup(&["v1", "c2"])]);
        s
    }

    #[test]
    fn specialize_min_on_triangle() {
        let spec = builtin_spec("vertex-cover").unwrap();
        let s = triangle();
        let cnf = specialize_min(&spec, &s, &tup(&["a", "b"]));
        assert_eq!(cnf.clauses, vec![vec![tup(&["a"]), tup(&["b"])]]);

        let cnf = specialize_min(&spec, &s, &tup(&["a", "a"]));
        assert!(cnf.clauses.is_empty());
        assert!(!cnf.has_empty_clause());
    }

    #[test]
    fn specialize_min_empty_clause() {
        let spec =
            parse_spec("problem loops\nkind minf\ninput E/2\nsolution S/1\nforall u\ncnf\nE(u,u)\n")
                .unwrap();
        let s = triangle(); // no loops
        let cnf = specialize_min(&spec, &s, &tup(&["a"]));
        assert!(cnf.has_empty_clause());
    }

    #[test]
    fn specialize_max_on_max_sat() {
        let spec = builtin_spec("max-sat").unwrap();
        let s = max_sat_example();
        let dnf = specialize_max(&spec, &s, &tup(&["c1"]), &tup(&["v1"]));
        assert_eq!(dnf.disjuncts.len(), 1);
        assert_eq!(
            dnf.disjuncts[0].literals(),
            &[GroundLiteral::new("T", false, tup(&["v1"]))]
        );

        let dnf = specialize_max(&spec, &s, &tup(&["c1"]), &tup(&["c2"]));
        assert!(dnf.is_empty());
    }

    #[test]
    fn contradictory_disjunct_removed() {
        let spec = parse_spec(
            "problem contra\nkind maxsnp\ninput E/1\nsolution T/1\nforall u\ndnf\nE(u) & T(u) & !T(u)\n",
        )
        .unwrap();
        let mut s = FiniteStructure::new(vec![atom("a")]);
        s.add_relation("E", [tup(&["a"])]);
        let dnf = specialize_max(&spec, &s, &tup(&["a"]), &[]);
        assert!(dnf.is_empty());
    }

    #[test]
    fn x_set_on_max_sat() {
        let spec = builtin_spec("max-sat").unwrap();
        let s = max_sat_example();
        let xs = compute_x_set(&spec, &s);
        assert_eq!(xs.len(), 2);
        assert!(xs.contains(&tup(&["c1"])));
        assert!(xs.contains(&tup(&["c2"])));
        assert!(!xs.contains(&tup(&["v1"])));

        let empty = FiniteStructure::new(vec![atom("c1"), atom("v1")]);
        assert!(compute_x_set(&spec, &empty).is_empty());
    }

    #[test]
    fn x_set_on_max_cut_k3() {
        let spec = builtin_spec("max-cut").unwrap();
        let s = triangle();
        let xs = compute_x_set(&spec, &s);
        assert_eq!(xs.len(), 6);
        assert!(!xs.contains(&tup(&["a", "a"])));
    }

    #[test]
    fn y_and_disjunct_sets_on_max_sat() {
        let spec = builtin_spec("max-sat").unwrap();
        let s = max_sat_example();
        let ys = compute_y_set(&spec, &s, &tup(&["c1"]));
        assert_eq!(ys.len(), 1);
        assert!(ys.contains(&tup(&["v1"])));

        let ds = compute_disjunct_set(&spec, &s, &tup(&["c1"]));
        assert_eq!(ds.len(), 1);
        let d = ds.disjuncts().next().unwrap();
        assert_eq!(d.literals(), &[GroundLiteral::new("T", false, tup(&["v1"]))]);
        assert_eq!(ds.first_witness(d), Some(&tup(&["v1"])));

        assert!(compute_y_set(&spec, &s, &tup(&["v1"])).is_empty());
        assert!(compute_disjunct_set(&spec, &s, &tup(&["v1"])).is_empty());
    }

    #[test]
    fn empty_disjuncts_are_retained() {
        // all input literals true at (a,a) leaves an empty disjunct
        let spec = parse_spec(
            "problem taut\nkind maxsnp\ninput E/2\nsolution T/1\nforall u v\ndnf\nE(u,v)\nE(u,v) & T(u)\n",
        )
        .unwrap();
        let mut s = FiniteStructure::new(vec![atom("a")]);
        s.add_relation("E", [tup(&["a", "a"])]);
        let ds = compute_disjunct_set(&spec, &s, &tup(&["a", "a"]));
        assert!(ds.disjuncts().any(|d| d.is_empty()));
    }

    #[test]
    fn satisfiable_under_examples() {
        let t = GroundLiteral::new("T", false, tup(&["v1"]));
        let not_t = t.negation();
        let d = GroundDisjunct::new(vec![t.clone()]).unwrap();
        assert!(satisfiable_under(&d, &PartialAssignment::new(vec![t.clone()]).unwrap()));
        assert!(!satisfiable_under(&d, &PartialAssignment::new(vec![not_t.clone()]).unwrap()));
        assert!(satisfiable_under(
            &GroundDisjunct::empty(),
            &PartialAssignment::new(vec![not_t]).unwrap()
        ));
    }

    #[test]
    fn partial_assignment_rejects_contradiction() {
        let t = GroundLiteral::new("T", false, tup(&["v1"]));
        assert!(PartialAssignment::new(vec![t.clone(), t.negation()]).is_err());
    }

    #[test]
    fn x_membership_iff_disjuncts_nonempty() {
        let spec = builtin_spec("max-sat").unwrap();
        let s = max_sat_example();
        let xs = compute_x_set(&spec, &s);
        for x in s.enumerate_tuples(spec.x_arity()) {
            let d = compute_disjunct_set(&spec, &s, &x);
            assert_eq!(xs.contains(&x), !d.is_empty());
        }
    }

    #[test]
    fn disjunct_cardinality_bounded_by_occurrences() {
        let spec = builtin_spec("max-cut").unwrap();
        let bound = spec.solution_occurrence_bound().s;
        let s = triangle();
        for x in s.enumerate_tuples(spec.x_arity()) {
            for d in compute_disjunct_set(&spec, &s, &x).disjuncts() {
                assert!(d.len() <= bound);
                assert!(satisfiable_under(d, &PartialAssignment::empty()));
            }
        }
    }
}
