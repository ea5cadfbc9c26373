//! Derivation files:
//!
//! ```text
//! # constants: a, b
//! D(x) = 0
//! D(y) = a*x
//! D(z) = 1 + y
//! ```
//!
//! One `D(var) = poly` line per fiber variable; the optional `# constants:`
//! header declares the coefficient block. Other `#` lines are comments.

use super::Derivation;
use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;

struct Line<'a> {
    number: usize,
    var: &'a str,
    rhs: &'a str,
    rhs_column: usize,
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

fn split(text: &str) -> Result<(Vec<String>, Vec<Line<'_>>)> {
    let mut constants = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(list) = comment.trim().strip_prefix("constants:") {
                constants.extend(
                    list.split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                );
            }
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(syntax(number, 1, "expected `D(var) = polynomial`"));
        };
        let lhs = raw[..eq].trim();
        let var = lhs
            .strip_prefix("D(")
            .and_then(|s| s.strip_suffix(')'))
            .map(str::trim)
            .ok_or_else(|| syntax(number, 1, "left-hand side must be `D(var)`"))?;
        lines.push(Line {
            number,
            var,
            rhs: &raw[eq + 1..],
            rhs_column: eq + 2,
        });
    }
    Ok((constants, lines))
}

fn parse_rhs(line: &Line<'_>, ctx: &VarContext) -> Result<Polynomial> {
    parse_polynomial(line.rhs, ctx).map_err(|e| match e {
        Error::Syntax { line: l, column, message } => Error::Syntax {
            line: line.number + l - 1,
            column: if l == 1 { column + line.rhs_column - 1 } else { column },
            message,
        },
        other => other,
    })
}

/// Parses a derivation file; the context is the declared constants followed
/// by the fiber variables in the order of their `D(..)` lines.
pub fn parse_derivation(text: &str) -> Result<Derivation> {
    let (constants, lines) = split(text)?;
    let mut names = constants.clone();
    for l in &lines {
        if names.iter().any(|n| n == l.var) {
            return Err(syntax(l.number, 1, &format!("`{}` declared twice", l.var)));
        }
        names.push(l.var.to_string());
    }
    let ctx = VarContext::with_coefficients(&names, constants.len())?;
    let images = lines.iter().map(|l| parse_rhs(l, &ctx)).collect::<Result<Vec<_>>>()?;
    Derivation::new(&ctx, images)
}

/// Parses a derivation file against a given context; unlisted fiber
/// variables are sent to zero.
pub fn parse_derivation_in(text: &str, ctx: &VarContext) -> Result<Derivation> {
    let (_, lines) = split(text)?;
    let mut assignments = Vec::new();
    for l in &lines {
        assignments.push((l.var, parse_rhs(l, ctx)?));
    }
    Derivation::from_assignments(ctx, &assignments)
}
