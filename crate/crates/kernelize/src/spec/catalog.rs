//! Built-in problem specifications.
//!
//! Each entry is stored as source text in the same format accepted from
//! files, so the catalog exercises the parser and round-trips by
//! construction.

use super::{parse_spec, ProblemSpec, SpecError};

const VERTEX_COVER: &str = "\
problem vertex-cover
kind minf
input E/2
solution S/1
forall u v
cnf
!E(u,v) | S(u) | S(v)
";

const HITTING_SET_2: &str = "\
problem hitting-set-2
kind minf
input E/2
solution S/1
forall u v
cnf
!E(u,v) | S(u) | S(v)
";

const HITTING_SET_3: &str = "\
problem hitting-set-3
kind minf
input E/3
solution S/1
forall u v w
cnf
!E(u,v,w) | S(u) | S(v) | S(w)
";

// Clauses and variables share one universe; P(x,c) says variable x occurs
// positively in clause c, N(x,c) says it occurs negated.
const MAX_SAT: &str = "\
problem max-sat
kind maxnp
input P/2 N/2
solution T/1
forall c
exists x
dnf
P(x,c) & T(x)
N(x,c) & !T(x)
";

const MAX_CUT: &str = "\
problem max-cut
kind maxsnp
input E/2
solution S/1
forall u v
dnf
E(u,v) & S(u) & !S(v)
E(u,v) & !S(u) & S(v)
";

// One tuple per binary clause; the relation encodes the sign pattern.
// PP(x,y) is the clause x or y, PN(x,y) is x or not y, NN(x,y) is
// not x or not y.
const MAX_2SAT: &str = "\
problem max-2sat
kind maxsnp
input PP/2 PN/2 NN/2
solution T/1
forall u v
dnf
PP(u,v) & T(u)
PP(u,v) & T(v)
PN(u,v) & T(u)
PN(u,v) & !T(v)
NN(u,v) & !T(u)
NN(u,v) & !T(v)
";

const CATALOG: &[(&str, &str)] = &[
    ("vertex-cover", VERTEX_COVER),
    ("hitting-set-2", HITTING_SET_2),
    ("hitting-set-3", HITTING_SET_3),
    ("max-sat", MAX_SAT),
    ("max-cut", MAX_CUT),
    ("max-2sat", MAX_2SAT),
];

/// Names of all built-in specifications.
pub fn builtin_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

/// Returns the built-in specification with the given name.
pub fn builtin_spec(name: &str) -> Result<ProblemSpec, SpecError> {
    let Some((_, text)) = CATALOG.iter().find(|(n, _)| *n == name) else {
        return Err(SpecError::UnknownBuiltin { name: name.to_string() });
    };
    Ok(parse_spec(text).expect("catalog specs parse"))
}
