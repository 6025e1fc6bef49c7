//! Map files: an optional `vars:` header followed by the components, one
//! per line or separated by `;`. Blank lines and `#` comments are ignored.
//!
//! ```text
//! # a triangular map
//! vars: X, Y
//! X + Y^2; Y
//! ```
//!
//! Without a header the variables are `X, Y` for two components and
//! `X1 .. Xm` otherwise; `X1, X2` are accepted as aliases when `m = 2`.

use polyaut_core::{default_var_names, PolyMap, Polynomial};

use crate::error::FormatError;
use crate::parse::{parse_polynomial, ParseError, VarTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedMap {
    /// Names used when printing.
    pub variables: Vec<String>,
    pub map: PolyMap,
}

impl ParsedMap {
    /// The map with the default variable names for its arity.
    pub fn with_default_names(map: PolyMap) -> Self {
        ParsedMap { variables: default_var_names(map.arity()), map }
    }

    /// Renders the map back into map-file syntax.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        if self.variables != default_var_names(self.map.arity()) {
            out.push_str(&format!("vars: {}\n", self.variables.join(", ")));
        }
        for c in self.map.components() {
            out.push_str(&c.display_with(&self.variables).to_string());
            out.push('\n');
        }
        out
    }

    pub fn display_poly(&self, p: &Polynomial) -> String {
        p.display_with(&self.variables).to_string()
    }

    pub fn display_map(&self, m: &PolyMap) -> String {
        m.display_with(&self.variables).to_string()
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a header line's variable list.
fn parse_vars(list: &str, line: usize) -> Result<Vec<String>, FormatError> {
    let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    for (i, n) in names.iter().enumerate() {
        if !is_identifier(n) {
            return Err(FormatError::syntax(line, format!("bad variable name '{n}'")));
        }
        if names[..i].contains(n) {
            return Err(FormatError::syntax(line, format!("duplicate variable '{n}'")));
        }
    }
    Ok(names)
}

pub fn parse_map(text: &str) -> Result<ParsedMap, FormatError> {
    let mut header: Option<Vec<String>> = None;
    // (line number, char offset of the segment within its line, text)
    let mut segments: Vec<(usize, usize, &str)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        if let Some(list) = body.trim_start().strip_prefix("vars:") {
            if header.is_some() || !segments.is_empty() {
                return Err(FormatError::syntax(line, "the vars header must come first"));
            }
            header = Some(parse_vars(list, line)?);
            continue;
        }
        let mut offset = 0;
        for seg in body.split(';') {
            if !seg.trim().is_empty() {
                segments.push((line, offset, seg));
            }
            offset += seg.chars().count() + 1;
        }
    }
    if segments.is_empty() {
        return Err(FormatError::Invalid("map has no components".into()));
    }
    let m = segments.len();
    let (table, variables) = match header {
        Some(names) => {
            if names.len() != m {
                return Err(FormatError::Invalid(format!(
                    "{} variables declared but {} components given",
                    names.len(),
                    m
                )));
            }
            (VarTable::new(&names), names)
        }
        None => (VarTable::standard(m), default_var_names(m)),
    };
    let mut comps = Vec::with_capacity(m);
    for (line, offset, seg) in segments {
        let p = parse_polynomial(seg, &table).map_err(|e| FormatError::Parse {
            line,
            error: ParseError { kind: e.kind, column: e.column + offset },
        })?;
        comps.push(p);
    }
    Ok(ParsedMap { variables, map: PolyMap::new(comps)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_and_multi_line_agree() {
        let a = parse_map("X + Y^2; Y").unwrap();
        let b = parse_map("# comment\nX + Y^2\n\nY   # second\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.variables, ["X", "Y"]);
        assert_eq!(a.map.to_string(), "X + Y^2; Y");
    }

    #[test]
    fn header_names() {
        let p = parse_map("vars: a, b, c\na + b*c; b; c").unwrap();
        assert_eq!(p.map.arity(), 3);
        assert_eq!(p.display_map(&p.map), "a + b*c; b; c");
        assert_eq!(parse_map(&p.to_file_string()).unwrap(), p);
    }

    #[test]
    fn default_names_for_three() {
        let p = parse_map("X1 + X2*X3\nX2\nX3").unwrap();
        assert_eq!(p.variables, ["X1", "X2", "X3"]);
        assert!(parse_map("X + Y; Y; X3").is_err());
    }

    #[test]
    fn errors() {
        let e = parse_map("X; Y + Z").unwrap_err();
        assert_eq!(e.to_string(), "line 1: unknown identifier Z at column 8");
        assert!(matches!(parse_map("vars: X, Y\nX"), Err(FormatError::Invalid(_))));
        assert!(matches!(parse_map("X\nvars: X"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_map("vars: X, X\nX; X"), Err(FormatError::Syntax { .. })));
        assert!(parse_map("  \n# nothing").is_err());
    }
}
