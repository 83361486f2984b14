//! Seeded random instance generators for the catalog problems.
//!
//! All randomness flows from one u64 seed through a fixed draw order, so
//! identical flags produce byte-identical instance files.
//!
//! Distributions:
//! - `vertex-cover`, `max-cut`: each unordered vertex pair becomes an edge
//!   with the given probability; edges are stored symmetrized (both
//!   orientations).
//! - `hitting-set-2` / `hitting-set-3`: each unordered pair / triple becomes
//!   one edge tuple (ascending component order) with the given probability.
//! - `max-sat`: the universe splits into clauses c1..cm and variables
//!   v1..vp with m = ceil(2n/3); each (variable, clause) pair occurs
//!   positively with probability p/2, else negatively with probability p/2.
//! - `max-2sat`: each unordered variable pair becomes one binary clause with
//!   the given probability, with its sign pattern drawn uniformly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::relational::{FiniteStructure, Tuple};

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub problem: String,
    pub size: usize,
    pub density: f64,
    pub seed: u64,
    pub k: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown generator problem `{0}`")]
    UnknownProblem(String),
    #[error("density must lie in [0, 1]")]
    BadDensity,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Generates a seeded random structure for a catalog problem.
pub fn generate(config: &GenConfig) -> Result<FiniteStructure, GenError> {
    if !(0.0..=1.0).contains(&config.density) {
        return Err(GenError::BadDensity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.size;
    let p = config.density;
    match config.problem.as_str() {
        "vertex-cover" | "max-cut" => {
            let atoms = names("v", n);
            let mut edges: Vec<Tuple> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        edges.push(vec![atoms[i].clone(), atoms[j].clone()]);
                        edges.push(vec![atoms[j].clone(), atoms[i].clone()]);
                    }
                }
            }
            let mut s = FiniteStructure::new(atoms);
            s.add_relation("E", edges);
            Ok(s)
        }
        "hitting-set-2" => {
            let atoms = names("v", n);
            let mut edges: Vec<Tuple> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        edges.push(vec![atoms[i].clone(), atoms[j].clone()]);
                    }
                }
            }
            let mut s = FiniteStructure::new(atoms);
            s.add_relation("E", edges);
            Ok(s)
        }
        "hitting-set-3" => {
            let atoms = names("v", n);
            let mut edges: Vec<Tuple> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for l in j + 1..n {
                        if rng.random_bool(p) {
                            edges.push(vec![atoms[i].clone(), atoms[j].clone(), atoms[l].clone()]);
                        }
                    }
                }
            }
            let mut s = FiniteStructure::new(atoms);
            s.add_relation("E", edges);
            Ok(s)
        }
        "max-sat" => {
            let clauses = (2 * n).div_ceil(3).min(n);
            let vars = n - clauses;
            let mut atoms = names("c", clauses);
            atoms.extend(names("v", vars));
            let mut pos: Vec<Tuple> = Vec::new();
            let mut neg: Vec<Tuple> = Vec::new();
            for v in 0..vars {
                for c in 0..clauses {
                    if rng.random_bool(p / 2.0) {
                        pos.push(vec![format!("v{}", v + 1), format!("c{}", c + 1)]);
                    } else if rng.random_bool(p / 2.0) {
                        neg.push(vec![format!("v{}", v + 1), format!("c{}", c + 1)]);
                    }
                }
            }
            let mut s = FiniteStructure::new(atoms);
            s.add_relation("P", pos);
            s.add_relation("N", neg);
            Ok(s)
        }
        "max-2sat" => {
            let atoms = names("v", n);
            let mut pp: Vec<Tuple> = Vec::new();
            let mut pn: Vec<Tuple> = Vec::new();
            let mut nn: Vec<Tuple> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        let pair = vec![atoms[i].clone(), atoms[j].clone()];
                        match rng.random_range(0..3) {
                            0 => pp.push(pair),
                            1 => pn.push(pair),
                            _ => nn.push(pair),
                        }
                    }
                }
            }
            let mut s = FiniteStructure::new(atoms);
            s.add_relation("PP", pp);
            s.add_relation("PN", pn);
            s.add_relation("NN", nn);
            Ok(s)
        }
        other => Err(GenError::UnknownProblem(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relational::validate_structure;
    use crate::spec::builtin_spec;

    fn config(problem: &str, size: usize, density: f64, seed: u64) -> GenConfig {
        GenConfig { problem: problem.into(), size, density, seed, k: 1 }
    }

    #[test]
    fn full_density_gives_complete_graph() {
        let s = generate(&config("vertex-cover", 3, 1.0, 7)).unwrap();
        assert_eq!(s.atom_count(), 3);
        assert_eq!(s.extent("E").unwrap().len(), 6);
    }

    #[test]
    fn same_seed_same_structure() {
        for problem in ["vertex-cover", "hitting-set-3", "max-sat", "max-2sat"] {
            let a = generate(&config(problem, 5, 0.5, 42)).unwrap();
            let b = generate(&config(problem, 5, 0.5, 42)).unwrap();
            assert_eq!(a, b, "{problem} not reproducible");
            let c = generate(&config(problem, 5, 0.5, 43)).unwrap();
            let _ = c; // different seed may or may not differ; only determinism is contractual
        }
    }

    #[test]
    fn generated_instances_validate() {
        for (problem, spec) in [
            ("vertex-cover", "vertex-cover"),
            ("hitting-set-2", "hitting-set-2"),
            ("hitting-set-3", "hitting-set-3"),
            ("max-sat", "max-sat"),
            ("max-cut", "max-cut"),
            ("max-2sat", "max-2sat"),
        ] {
            let spec = builtin_spec(spec).unwrap();
            for seed in 0..5 {
                let s = generate(&config(problem, 4, 0.6, seed)).unwrap();
                assert!(
                    validate_structure(&s, &spec.vocabulary).is_empty(),
                    "invalid {problem} instance"
                );
            }
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        assert_eq!(generate(&config("nope", 3, 0.5, 1)), Err(GenError::UnknownProblem("nope".into())));
        assert_eq!(generate(&config("max-cut", 3, 1.5, 1)), Err(GenError::BadDensity));
    }
}
