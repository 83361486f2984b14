//! Finite relational structures: universes of named atoms plus the extents
//! of their input relations.
//!
//! Atoms are opaque strings. The canonical atom order is the declaration
//! order of the instance, never a sorted order, so that kernel outputs are
//! reproducible independently of atom naming. Extents keep set semantics
//! with deterministic (insertion) iteration order.

use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;
use thiserror::Error;

/// An element of the universe.
pub type Atom = String;
/// A fixed-arity tuple of atoms.
pub type Tuple = Vec<Atom>;

/// A relation symbol together with its arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

impl RelationSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        RelationSymbol { name: name.into(), arity }
    }
}

/// Input and solution relation symbols of a problem, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub input_symbols: Vec<RelationSymbol>,
    pub solution_symbols: Vec<RelationSymbol>,
}

impl Vocabulary {
    pub fn input(&self, name: &str) -> Option<&RelationSymbol> {
        self.input_symbols.iter().find(|s| s.name == name)
    }

    pub fn solution(&self, name: &str) -> Option<&RelationSymbol> {
        self.solution_symbols.iter().find(|s| s.name == name)
    }

    pub fn is_solution(&self, name: &str) -> bool {
        self.solution(name).is_some()
    }

    /// Largest arity among the input symbols.
    pub fn max_input_arity(&self) -> usize {
        self.input_symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// Checks symbol-level invariants: unique names and arities of at least one.
    pub fn check(&self) -> Result<(), RelationalError> {
        let mut seen = HashSet::new();
        for sym in self.input_symbols.iter().chain(&self.solution_symbols) {
            if sym.arity == 0 {
                return Err(RelationalError::ZeroArity { symbol: sym.name.clone() });
            }
            if !seen.insert(sym.name.clone()) {
                return Err(RelationalError::DuplicateSymbol { symbol: sym.name.clone() });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationalError {
    #[error("relation symbol `{symbol}` declared with arity 0")]
    ZeroArity { symbol: String },
    #[error("relation symbol `{symbol}` declared twice")]
    DuplicateSymbol { symbol: String },
    #[error("atom `{atom}` is not part of the structure")]
    UnknownAtom { atom: String },
}

/// A single issue found by [`validate_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    DuplicateAtom { atom: String },
    UnknownRelation { relation: String },
    ArityMismatch { relation: String, expected: usize, tuple: Tuple },
    UndeclaredAtom { relation: String, atom: String },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::DuplicateAtom { atom } => write!(f, "atom `{atom}` declared twice"),
            ValidationIssue::UnknownRelation { relation } => {
                write!(f, "relation `{relation}` is not an input symbol of the vocabulary")
            }
            ValidationIssue::ArityMismatch { relation, expected, tuple } => write!(
                f,
                "tuple {} has wrong arity for `{relation}/{expected}`",
                format_tuple(tuple)
            ),
            ValidationIssue::UndeclaredAtom { relation, atom } => {
                write!(f, "tuple of `{relation}` mentions undeclared atom `{atom}`")
            }
        }
    }
}

/// Renders a tuple as `(a,b)`.
pub fn format_tuple(tuple: &[Atom]) -> String {
    format!("({})", tuple.join(","))
}

/// A finite structure: an ordered universe of atoms and one tuple set per
/// input relation. Construction is permissive; [`validate_structure`] is the
/// gate that establishes well-formedness against a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
    extents: Vec<Extent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Extent {
    symbol: String,
    tuples: IndexSet<Tuple>,
}

impl FiniteStructure {
    pub fn new(atoms: Vec<Atom>) -> Self {
        let mut index = HashMap::new();
        for (i, a) in atoms.iter().enumerate() {
            // first occurrence wins; duplicates surface via validate_structure
            index.entry(a.clone()).or_insert(i);
        }
        FiniteStructure { atoms, index, extents: Vec::new() }
    }

    /// Adds tuples to a relation, creating it if absent. Set semantics:
    /// duplicates are dropped, first-insertion order is kept.
    pub fn add_relation<I>(&mut self, symbol: impl Into<String>, tuples: I)
    where
        I: IntoIterator<Item = Tuple>,
    {
        let symbol = symbol.into();
        let extent = match self.extents.iter_mut().find(|e| e.symbol == symbol) {
            Some(e) => e,
            None => {
                self.extents.push(Extent { symbol, tuples: IndexSet::new() });
                self.extents.last_mut().unwrap()
            }
        };
        for t in tuples {
            extent.tuples.insert(t);
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn has_atom(&self, atom: &str) -> bool {
        self.index.contains_key(atom)
    }

    /// Relation names in declaration order.
    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.extents.iter().map(|e| e.symbol.as_str())
    }

    pub fn extent(&self, symbol: &str) -> Option<&IndexSet<Tuple>> {
        self.extents.iter().find(|e| e.symbol == symbol).map(|e| &e.tuples)
    }

    /// Membership test; a missing relation behaves as an empty extent.
    pub fn extent_contains(&self, symbol: &str, tuple: &[Atom]) -> bool {
        self.extent(symbol).is_some_and(|ts| ts.contains(tuple))
    }

    /// Total number of tuples across all extents.
    pub fn tuple_count(&self) -> usize {
        self.extents.iter().map(|e| e.tuples.len()).sum()
    }

    /// Canonical sort key of a tuple: component positions in atom order.
    /// Components not in the universe compare last.
    pub fn tuple_key(&self, tuple: &[Atom]) -> Vec<usize> {
        tuple.iter().map(|a| self.atom_index(a).unwrap_or(usize::MAX)).collect()
    }

    /// All tuples over the universe with the given arity, in lexicographic
    /// canonical order. Arity 0 yields exactly the empty tuple, also over an
    /// empty universe.
    pub fn enumerate_tuples(&self, arity: usize) -> TupleIter<'_> {
        TupleIter { atoms: &self.atoms, odometer: vec![0; arity], done: arity > 0 && self.atoms.is_empty() }
    }

    /// Restriction to a subset of the universe: surviving atoms keep their
    /// order, every extent is intersected with `keep^arity`.
    pub fn restrict(&self, keep: &HashSet<Atom>) -> Result<FiniteStructure, RelationalError> {
        for atom in keep {
            if !self.has_atom(atom) {
                return Err(RelationalError::UnknownAtom { atom: atom.clone() });
            }
        }
        let atoms: Vec<Atom> = self.atoms.iter().filter(|a| keep.contains(*a)).cloned().collect();
        let mut restricted = FiniteStructure::new(atoms);
        for extent in &self.extents {
            let kept = extent
                .tuples
                .iter()
                .filter(|t| t.iter().all(|a| keep.contains(a)))
                .cloned();
            restricted.add_relation(extent.symbol.clone(), kept);
        }
        Ok(restricted)
    }
}

/// Lexicographic enumeration of all atom tuples of a fixed arity.
pub struct TupleIter<'a> {
    atoms: &'a [Atom],
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for TupleIter<'_> {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.done {
            return None;
        }
        let tuple: Tuple = self.odometer.iter().map(|&i| self.atoms[i].clone()).collect();
        // advance rightmost position
        let mut pos = self.odometer.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.atoms.len() {
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(tuple)
    }
}

/// One set of tuples of uniform arity, e.g. the value sets of the tuple
/// selections computed by the grounding stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSet {
    arity: usize,
    tuples: Vec<Tuple>,
    seen: HashSet<Tuple>,
}

impl TupleSet {
    pub fn new(arity: usize) -> Self {
        TupleSet { arity, tuples: Vec::new(), seen: HashSet::new() }
    }

    pub fn insert(&mut self, tuple: Tuple) -> bool {
        assert_eq!(tuple.len(), self.arity, "tuple arity mismatch");
        if self.seen.insert(tuple.clone()) {
            self.tuples.push(tuple);
            true
        } else {
            false
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[Atom]) -> bool {
        self.seen.contains(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Tuple> {
        self.tuples.iter()
    }
}

/// An assignment to the solution symbols: one tuple set per symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionAssignment {
    relations: Vec<(String, HashSet<Tuple>)>,
}

impl SolutionAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: &str, tuple: Tuple) {
        match self.relations.iter_mut().find(|(s, _)| s == symbol) {
            Some((_, set)) => {
                set.insert(tuple);
            }
            None => {
                self.relations.push((symbol.to_string(), HashSet::from([tuple])));
            }
        }
    }

    pub fn contains(&self, symbol: &str, tuple: &[Atom]) -> bool {
        self.relations
            .iter()
            .find(|(s, _)| s == symbol)
            .is_some_and(|(_, set)| set.contains(tuple))
    }

    /// Total weight; for a single-symbol minimization problem this is |S|.
    pub fn weight(&self) -> usize {
        self.relations.iter().map(|(_, set)| set.len()).sum()
    }
}

/// Reports arity mismatches, undeclared atoms, duplicate atom names, and
/// relations that are not input symbols. An empty report means the structure
/// is a well-formed instance for the vocabulary.
pub fn validate_structure(structure: &FiniteStructure, vocab: &Vocabulary) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut seen = HashSet::new();
    for atom in &structure.atoms {
        if !seen.insert(atom) {
            issues.push(ValidationIssue::DuplicateAtom { atom: atom.clone() });
        }
    }
    for extent in &structure.extents {
        let Some(symbol) = vocab.input(&extent.symbol) else {
            issues.push(ValidationIssue::UnknownRelation { relation: extent.symbol.clone() });
            continue;
        };
        for tuple in &extent.tuples {
            if tuple.len() != symbol.arity {
                issues.push(ValidationIssue::ArityMismatch {
                    relation: extent.symbol.clone(),
                    expected: symbol.arity,
                    tuple: tuple.clone(),
                });
                continue;
            }
            for atom in tuple {
                if !structure.has_atom(atom) {
                    issues.push(ValidationIssue::UndeclaredAtom {
                        relation: extent.symbol.clone(),
                        atom: atom.clone(),
                    });
                }
            }
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn triangle() -> FiniteStructure {
        let mut s = FiniteStructure::new(atoms(&["a", "b", "c"]));
        s.add_relation(
            "E",
            [
                vec!["a".into(), "b".into()],
                vec!["b".into(), "a".into()],
                vec!["a".into(), "c".into()],
                vec!["c".into(), "a".into()],
                vec!["b".into(), "c".into()],
                vec!["c".into(), "b".into()],
            ],
        );
        s
    }

    fn graph_vocab() -> Vocabulary {
        Vocabulary {
            input_symbols: vec![RelationSymbol::new("E", 2)],
            solution_symbols: vec![RelationSymbol::new("S", 1)],
        }
    }

    #[test]
    fn enumerate_arity_one() {
        let s = FiniteStructure::new(atoms(&["a", "b"]));
        let out: Vec<Tuple> = s.enumerate_tuples(1).collect();
        assert_eq!(out, vec![vec!["a".to_string()], vec!["b".to_string()]]);
    }

    #[test]
    fn enumerate_arity_two_lexicographic() {
        let s = FiniteStructure::new(atoms(&["a", "b"]));
        let out: Vec<String> = s.enumerate_tuples(2).map(|t| t.join("")).collect();
        assert_eq!(out, vec!["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn enumerate_arity_zero_is_single_empty_tuple() {
        let s = FiniteStructure::new(atoms(&["a"]));
        let out: Vec<Tuple> = s.enumerate_tuples(0).collect();
        assert_eq!(out, vec![Vec::<Atom>::new()]);
        // also over the empty universe
        let empty = FiniteStructure::new(vec![]);
        assert_eq!(empty.enumerate_tuples(0).count(), 1);
        assert_eq!(empty.enumerate_tuples(2).count(), 0);
    }

    #[test]
    fn restrict_triangle_to_pair() {
        let s = triangle();
        let keep: HashSet<Atom> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let r = s.restrict(&keep).unwrap();
        assert_eq!(r.atoms(), &["a".to_string(), "b".to_string()]);
        let e = r.extent("E").unwrap();
        assert_eq!(e.len(), 2);
        assert!(r.extent_contains("E", &["a".into(), "b".into()]));
        assert!(r.extent_contains("E", &["b".into(), "a".into()]));
    }

    #[test]
    fn restrict_identity_and_empty() {
        let s = triangle();
        let all: HashSet<Atom> = s.atoms().iter().cloned().collect();
        assert_eq!(s.restrict(&all).unwrap(), s);
        let none = s.restrict(&HashSet::new()).unwrap();
        assert_eq!(none.atom_count(), 0);
        assert_eq!(none.tuple_count(), 0);
    }

    #[test]
    fn restrict_unknown_atom_errors() {
        let s = triangle();
        let keep: HashSet<Atom> = ["z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(s.restrict(&keep), Err(RelationalError::UnknownAtom { atom: "z".into() }));
    }

    #[test]
    fn validate_ok_and_errors() {
        let vocab = graph_vocab();
        assert!(validate_structure(&triangle(), &vocab).is_empty());

        let mut bad = FiniteStructure::new(atoms(&["a", "b", "c"]));
        bad.add_relation("E", [vec!["a".into(), "b".into(), "c".into()]]);
        let issues = validate_structure(&bad, &vocab);
        assert!(matches!(issues[0], ValidationIssue::ArityMismatch { .. }));

        let dup = FiniteStructure::new(atoms(&["a", "a"]));
        let issues = validate_structure(&dup, &vocab);
        assert!(matches!(issues[0], ValidationIssue::DuplicateAtom { .. }));

        let mut undeclared = FiniteStructure::new(atoms(&["a"]));
        undeclared.add_relation("E", [vec!["a".into(), "z".into()]]);
        let issues = validate_structure(&undeclared, &vocab);
        assert!(matches!(issues[0], ValidationIssue::UndeclaredAtom { .. }));

        let mut unknown = FiniteStructure::new(atoms(&["a"]));
        unknown.add_relation("F", [vec!["a".into()]]);
        let issues = validate_structure(&unknown, &vocab);
        assert!(matches!(issues[0], ValidationIssue::UnknownRelation { .. }));
    }

    #[test]
    fn restriction_preserves_membership() {
        let s = triangle();
        let keep: HashSet<Atom> = ["a", "c"].iter().map(|s| s.to_string()).collect();
        let r = s.restrict(&keep).unwrap();
        for t in s.enumerate_tuples(2) {
            if t.iter().all(|a| keep.contains(a)) {
                assert_eq!(s.extent_contains("E", &t), r.extent_contains("E", &t));
            }
        }
        // restriction is idempotent
        assert_eq!(r.restrict(&keep).unwrap(), r);
    }
}
