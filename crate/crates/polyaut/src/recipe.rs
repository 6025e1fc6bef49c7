//! Text form of [`TameRecipe`]s.
//!
//! ```text
//! recipe 2 7
//! triangular 1 Y^2
//! affine 1 1 0 1 0 -2
//! end
//! ```
//!
//! `recipe <m> <seed>` opens a block. `triangular <i> <h>` adds `h` to the
//! 1-based component `i`; `affine` lists the `m*m` matrix entries row by row
//! followed by the `m` translation entries. Polynomials use the default
//! variable names. Blank lines and `#` comments are ignored.

use polyaut_core::corpus::{ElementaryStep, TameRecipe};
use polyaut_core::Rational;

use crate::error::FormatError;
use crate::parse::{parse_polynomial, VarTable};

pub fn format_recipe(recipe: &TameRecipe) -> String {
    let mut out = format!("recipe {} {}\n", recipe.arity, recipe.seed);
    for step in &recipe.steps {
        match step {
            ElementaryStep::Triangular { target, h } => {
                out.push_str(&format!("triangular {} {}\n", target + 1, h));
            }
            ElementaryStep::AffineUnit { matrix, translation } => {
                out.push_str("affine");
                for v in matrix.iter().chain(translation) {
                    out.push_str(&format!(" {v}"));
                }
                out.push('\n');
            }
        }
    }
    out.push_str("end\n");
    out
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational, FormatError> {
    tok.parse::<Rational>()
        .ok()
        .filter(|_| !tok.contains('+'))
        .ok_or_else(|| FormatError::syntax(line, format!("bad rational '{tok}'")))
}

/// Parses every recipe block in `text`.
pub fn parse_recipes(text: &str) -> Result<Vec<TameRecipe>, FormatError> {
    let mut out = Vec::new();
    let mut open: Option<(TameRecipe, VarTable)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match (word, open.as_mut()) {
            ("recipe", None) => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [m, seed] = fields[..] else {
                    return Err(FormatError::syntax(line, "expected 'recipe <m> <seed>'"));
                };
                let arity: usize = m
                    .parse()
                    .ok()
                    .filter(|&m| m > 0)
                    .ok_or_else(|| FormatError::syntax(line, format!("bad arity '{m}'")))?;
                let seed: u64 =
                    seed.parse().map_err(|_| FormatError::syntax(line, format!("bad seed '{seed}'")))?;
                open = Some((TameRecipe { arity, steps: Vec::new(), seed }, VarTable::standard(arity)));
            }
            ("recipe", Some(_)) => return Err(FormatError::syntax(line, "missing 'end'")),
            ("end", Some(_)) if rest.is_empty() => out.push(open.take().expect("open block").0),
            ("triangular", Some((recipe, table))) => {
                let (idx, poly) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| FormatError::syntax(line, "expected 'triangular <i> <h>'"))?;
                let target = idx
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| (1..=recipe.arity).contains(&i))
                    .ok_or_else(|| FormatError::syntax(line, format!("bad component index '{idx}'")))?
                    - 1;
                let h = parse_polynomial(poly, table)
                    .map_err(|error| FormatError::Parse { line, error })?;
                let step = ElementaryStep::Triangular { target, h };
                step.validate(recipe.arity)?;
                recipe.steps.push(step);
            }
            ("affine", Some((recipe, _))) => {
                let m = recipe.arity;
                let values = rest
                    .split_whitespace()
                    .map(|t| parse_rational(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                if values.len() != m * m + m {
                    return Err(FormatError::syntax(
                        line,
                        format!("affine step needs {} numbers, got {}", m * m + m, values.len()),
                    ));
                }
                let mut matrix = values;
                let translation = matrix.split_off(m * m);
                let step = ElementaryStep::AffineUnit { matrix, translation };
                step.validate(m)?;
                recipe.steps.push(step);
            }
            _ => return Err(FormatError::syntax(line, format!("unexpected '{body}'"))),
        }
    }
    if open.is_some() {
        return Err(FormatError::Invalid("unterminated recipe block".into()));
    }
    Ok(out)
}
