//! The instance file format.
//!
//! ```text
//! structure
//! atoms a b c
//! rel E: (a,b) (b,a)
//! k 2
//! end
//! ```
//!
//! Whitespace-separated, newline-terminated lines, no tabs; `#` starts a
//! comment. Sections appear in this fixed order; `atoms` may list no names
//! and a `rel` line may list no tuples. The writer is canonical: rendering
//! a parsed instance reproduces it byte for byte.

use thiserror::Error;

use crate::relational::{format_tuple, FiniteStructure, Tuple};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct InstanceParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> InstanceParseError {
    InstanceParseError { line, msg: msg.into() }
}

/// Parses an instance file into a structure and its parameter.
pub fn parse_instance(text: &str) -> Result<(FiniteStructure, usize), InstanceParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim_end();
            if content.trim().is_empty() {
                None
            } else {
                Some((i + 1, content))
            }
        })
        .collect();
    let mut pos = 0;
    let mut take = || -> Result<(usize, &str), InstanceParseError> {
        let item = lines.get(pos).copied().ok_or_else(|| {
            err(lines.last().map(|(n, _)| *n).unwrap_or(1), "unexpected end of instance")
        })?;
        pos += 1;
        Ok(item)
    };

    let (n, line) = take()?;
    if line.trim() != "structure" {
        return Err(err(n, "expected `structure` header"));
    }

    let (n, line) = take()?;
    let rest = line
        .trim()
        .strip_prefix("atoms")
        .ok_or_else(|| err(n, "expected `atoms` section"))?;
    let atoms: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
    let mut structure = FiniteStructure::new(atoms);

    let mut k = None;
    loop {
        let (n, line) = take()?;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("rel ") {
            let Some((name, tuples)) = rest.split_once(':') else {
                return Err(err(n, "expected `rel Name: tuples...`"));
            };
            let name = name.trim();
            if name.is_empty() {
                return Err(err(n, "relation name is empty"));
            }
            let mut parsed: Vec<Tuple> = Vec::new();
            for token in tuples.split_whitespace() {
                parsed.push(parse_tuple(n, token)?);
            }
            structure.add_relation(name, parsed);
        } else if let Some(rest) = trimmed.strip_prefix("k ") {
            let value: usize =
                rest.trim().parse().map_err(|_| err(n, format!("invalid parameter `{rest}`")))?;
            k = Some(value);
            break;
        } else {
            return Err(err(n, format!("expected `rel` or `k` line, got `{trimmed}`")));
        }
    }

    let (n, line) = take()?;
    if line.trim() != "end" {
        return Err(err(n, "expected `end`"));
    }
    if pos < lines.len() {
        return Err(err(lines[pos].0, "content after `end`"));
    }
    Ok((structure, k.expect("k parsed before end")))
}

fn parse_tuple(line: usize, token: &str) -> Result<Tuple, InstanceParseError> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected `(a,b)` tuple, got `{token}`")))?;
    let parts: Vec<String> = inner.split(',').map(|p| p.trim().to_string()).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(err(line, format!("empty component in tuple `{token}`")));
    }
    Ok(parts)
}

/// Canonical writer; inverse of [`parse_instance`].
pub fn render_instance(structure: &FiniteStructure, k: usize) -> String {
    let mut out = String::from("structure\n");
    if structure.atoms().is_empty() {
        out.push_str("atoms\n");
    } else {
        out.push_str(&format!("atoms {}\n", structure.atoms().join(" ")));
    }
    for name in structure.relation_names() {
        let tuples = structure.extent(name).expect("named relation exists");
        let rendered: Vec<String> = tuples.iter().map(|t| format_tuple(t)).collect();
        if rendered.is_empty() {
            out.push_str(&format!("rel {name}:\n"));
        } else {
            out.push_str(&format!("rel {name}: {}\n", rendered.join(" ")));
        }
    }
    out.push_str(&format!("k {k}\n"));
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "\
structure
atoms a b c
rel E: (a,b) (b,a) (a,c) (c,a) (b,c) (c,b)
k 2
end
";

    #[test]
    fn round_trip_is_byte_identical() {
        let (structure, k) = parse_instance(TRIANGLE).unwrap();
        assert_eq!(k, 2);
        assert_eq!(structure.atom_count(), 3);
        assert_eq!(structure.tuple_count(), 6);
        assert_eq!(render_instance(&structure, k), TRIANGLE);
    }

    #[test]
    fn empty_sections_round_trip() {
        let text = "structure\natoms\nrel E:\nk 0\nend\n";
        let (structure, k) = parse_instance(text).unwrap();
        assert_eq!(structure.atom_count(), 0);
        assert_eq!(structure.extent("E").unwrap().len(), 0);
        assert_eq!(render_instance(&structure, k), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# instance\nstructure\n\natoms a  # universe\nrel E: (a,a)\nk 1\nend\n";
        let (structure, _) = parse_instance(text).unwrap();
        assert!(structure.extent_contains("E", &["a".into(), "a".into()]));
    }

    #[test]
    fn malformed_inputs_report_lines() {
        let e = parse_instance("structure\natoms a\nrel E (a,a)\nk 1\nend\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance("structure\natoms a\nk x\nend\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance("atoms a\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_instance("structure\natoms a\nrel E: a,a\nk 1\nend\n").unwrap_err();
        assert!(e.msg.contains("tuple"));
        let e = parse_instance("structure\natoms a\nk 1\nend\njunk\n").unwrap_err();
        assert!(e.msg.contains("after `end`"));
    }

    #[test]
    fn missing_k_is_an_error() {
        let e = parse_instance("structure\natoms a\nrel E: (a,a)\nend\n").unwrap_err();
        assert!(e.msg.contains("expected `rel` or `k`"));
    }
}
