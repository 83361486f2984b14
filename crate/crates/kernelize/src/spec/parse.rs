//! Line-oriented parser for the specification format.
//!
//! ```text
//! problem vertex-cover
//! kind minf
//! input E/2
//! solution S/1
//! forall u v
//! cnf
//! !E(u,v) | S(u) | S(v)
//! ```
//!
//! Sections appear in this fixed order; `exists` is optional and only legal
//! for kind `maxnp`. `#` starts a comment. Clause literals are joined by
//! `|`, disjunct literals by `&`, negation is a `!` prefix.

use thiserror::Error;

use super::{Clause, Disjunct, Literal, Matrix, ProblemKind, ProblemSpec, SpecError};
use crate::relational::{RelationSymbol, Vocabulary};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                None
            } else {
                Some(Line { number: i + 1, text: content })
            }
        })
        .collect()
}

fn is_ident(token: &str) -> bool {
    let mut chars = token.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses one section header line of the form `keyword rest...`, returning
/// the rest. Errors mention the expected keyword.
fn expect_keyword<'a>(line: &Line<'a>, keyword: &str) -> Result<&'a str, ParseError> {
    let trimmed = line.text.trim_start();
    let col = line.text.len() - trimmed.len() + 1;
    match trimmed.split_once(char::is_whitespace) {
        Some((head, rest)) if head == keyword => Ok(rest),
        None if trimmed == keyword => Ok(""),
        _ => Err(ParseError::new(line.number, col, format!("expected `{keyword}` section"))),
    }
}

fn parse_symbol_list(line: &Line<'_>, rest: &str, section: &str) -> Result<Vec<RelationSymbol>, ParseError> {
    let mut symbols = Vec::new();
    for token in rest.split_whitespace() {
        let col = offset_of(line.text, token);
        let Some((name, arity)) = token.split_once('/') else {
            return Err(ParseError::new(
                line.number,
                col,
                format!("expected `Name/arity` in `{section}` section, got `{token}`"),
            ));
        };
        if !is_ident(name) {
            return Err(ParseError::new(line.number, col, format!("invalid symbol name `{name}`")));
        }
        let arity: usize = arity.parse().map_err(|_| {
            ParseError::new(line.number, col, format!("invalid arity in `{token}`"))
        })?;
        if arity == 0 {
            return Err(ParseError::new(
                line.number,
                col,
                format!("relation `{name}` declared with arity 0; arities must be at least 1"),
            ));
        }
        symbols.push(RelationSymbol::new(name, arity));
    }
    if symbols.is_empty() {
        return Err(ParseError::new(
            line.number,
            1,
            format!("`{section}` section declares no symbols"),
        ));
    }
    Ok(symbols)
}

fn parse_var_list(line: &Line<'_>, rest: &str, section: &str) -> Result<Vec<String>, ParseError> {
    let mut vars = Vec::new();
    for token in rest.split_whitespace() {
        if !is_ident(token) {
            let col = offset_of(line.text, token);
            return Err(ParseError::new(line.number, col, format!("invalid variable `{token}`")));
        }
        vars.push(token.to_string());
    }
    if vars.is_empty() {
        return Err(ParseError::new(
            line.number,
            1,
            format!("`{section}` section declares no variables"),
        ));
    }
    Ok(vars)
}

/// Byte offset (1-based column) of a token inside its line; approximate when
/// the token occurs more than once.
fn offset_of(line: &str, token: &str) -> usize {
    line.find(token).map(|i| i + 1).unwrap_or(1)
}

fn parse_literal(line: &Line<'_>, text: &str) -> Result<Literal, ParseError> {
    let trimmed = text.trim();
    let col = offset_of(line.text, trimmed);
    let err = |msg: String| ParseError::new(line.number, col, msg);
    let (negated, body) = match trimmed.strip_prefix('!') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, trimmed),
    };
    let Some((name, args)) = body.split_once('(') else {
        return Err(err(format!("expected literal `Name(args)`, got `{trimmed}`")));
    };
    if !is_ident(name) {
        return Err(err(format!("invalid symbol name `{name}`")));
    }
    let Some(args) = args.strip_suffix(')') else {
        return Err(err(format!("missing `)` in literal `{trimmed}`")));
    };
    let mut parsed = Vec::new();
    for arg in args.split(',') {
        let arg = arg.trim();
        if !is_ident(arg) {
            return Err(err(format!("invalid argument `{arg}` in literal `{trimmed}`")));
        }
        parsed.push(arg.to_string());
    }
    Ok(Literal::new(name, negated, parsed))
}

fn parse_literal_line(
    line: &Line<'_>,
    separator: char,
) -> Result<Vec<Literal>, ParseError> {
    let mut literals = Vec::new();
    for part in line.text.split(separator) {
        if part.trim().is_empty() {
            return Err(ParseError::new(
                line.number,
                offset_of(line.text, part.trim()),
                format!("empty literal around `{separator}`"),
            ));
        }
        literals.push(parse_literal(line, part)?);
    }
    Ok(literals)
}

/// Parses a full specification. Total: every failure is reported as a
/// [`ParseError`] with line and column, and all structural invariants of
/// [`ProblemSpec`] hold on success.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, ParseError> {
    let lines = significant_lines(text);
    let mut pos = 0;
    let mut next = || -> Result<&Line<'_>, ParseError> {
        let line = lines.get(pos).ok_or_else(|| {
            let last = lines.last().map(|l| l.number).unwrap_or(1);
            ParseError::new(last, 1, "unexpected end of specification")
        })?;
        pos += 1;
        Ok(line)
    };

    let line = next()?;
    let name = expect_keyword(line, "problem")?.trim().to_string();
    if !is_ident(&name) {
        return Err(ParseError::new(line.number, 1, format!("invalid problem name `{name}`")));
    }

    let line = next()?;
    let kind = match expect_keyword(line, "kind")?.trim() {
        "minf" => ProblemKind::MinF,
        "maxnp" => ProblemKind::MaxNp,
        "maxsnp" => ProblemKind::MaxSnp,
        other => {
            return Err(ParseError::new(
                line.number,
                offset_of(line.text, other),
                format!("unknown kind `{other}`; expected minf, maxnp, or maxsnp"),
            ))
        }
    };

    let line = next()?;
    let rest = expect_keyword(line, "input")?;
    let input_symbols = parse_symbol_list(line, rest, "input")?;

    let line = next()?;
    let rest = expect_keyword(line, "solution")?;
    let solution_symbols = parse_symbol_list(line, rest, "solution")?;

    let line = next()?;
    let rest = expect_keyword(line, "forall")?;
    let x_vars = parse_var_list(line, rest, "forall")?;

    let mut y_vars = Vec::new();
    let line = next()?;
    let (matrix_line, matrix_header) = if let Ok(rest) = expect_keyword(line, "exists") {
        if kind != ProblemKind::MaxNp {
            return Err(ParseError::new(
                line.number,
                1,
                format!("`exists` section is not allowed for kind {}", kind.as_str()),
            ));
        }
        y_vars = parse_var_list(line, rest, "exists")?;
        let line = next()?;
        (line.number, line.text.trim())
    } else {
        (line.number, line.text.trim())
    };

    let expect_cnf = kind == ProblemKind::MinF;
    match (matrix_header, expect_cnf) {
        ("cnf", true) | ("dnf", false) => {}
        ("cnf", false) | ("dnf", true) => {
            return Err(ParseError::new(
                matrix_line,
                1,
                format!(
                    "kind {} requires a {} matrix",
                    kind.as_str(),
                    if expect_cnf { "cnf" } else { "dnf" }
                ),
            ))
        }
        (other, _) => {
            return Err(ParseError::new(
                matrix_line,
                1,
                format!("expected `cnf` or `dnf` section, got `{other}`"),
            ))
        }
    }

    let separator = if expect_cnf { '|' } else { '&' };
    let mut clause_lines = Vec::new();
    while pos < lines.len() {
        let line = &lines[pos];
        pos += 1;
        clause_lines.push((line.number, parse_literal_line(line, separator)?));
    }
    if clause_lines.is_empty() {
        let last = lines.last().map(|l| l.number).unwrap_or(1);
        return Err(ParseError::new(last, 1, "matrix has no clauses"));
    }

    let matrix = if expect_cnf {
        let mut clauses = Vec::new();
        for (_, lits) in clause_lines {
            let clause = Clause::new(lits);
            if !clauses.contains(&clause) {
                clauses.push(clause);
            }
        }
        Matrix::Cnf(clauses)
    } else {
        let mut disjuncts = Vec::new();
        for (_, lits) in clause_lines {
            let disjunct = Disjunct::new(lits);
            if !disjuncts.contains(&disjunct) {
                disjuncts.push(disjunct);
            }
        }
        Matrix::Dnf(disjuncts)
    };

    let spec = ProblemSpec {
        name,
        kind,
        vocabulary: Vocabulary { input_symbols, solution_symbols },
        x_vars,
        y_vars,
        matrix,
    };
    spec.validate().map_err(|e| semantic_error(&spec, e, &lines))?;
    Ok(spec)
}

/// Maps a semantic validation failure back to the best-matching source line.
fn semantic_error(spec: &ProblemSpec, err: SpecError, lines: &[Line<'_>]) -> ParseError {
    let needle = match &err {
        SpecError::UndeclaredVariable { var } => Some(var.clone()),
        SpecError::UndeclaredSymbol { symbol }
        | SpecError::LiteralArity { symbol, .. }
        | SpecError::NegatedSolution { symbol } => Some(symbol.clone()),
        _ => None,
    };
    let _ = spec;
    if let Some(needle) = needle {
        for line in lines {
            if let Some(i) = line.text.find(needle.as_str()) {
                return ParseError::new(line.number, i + 1, err.to_string());
            }
        }
    }
    ParseError::new(lines.first().map(|l| l.number).unwrap_or(1), 1, err.to_string())
}
