use std::path::Path;

use venlab::derivation::{parse_derivation, Derivation};
use venlab::parse::{infer_context, parse_polynomial, split_top_level};
use venlab::{Polynomial, VarContext};

use crate::commands::Failure;
use crate::Global;

/// The context for `texts`: `--vars` when given, otherwise the identifiers
/// in order of appearance. `--constants` (plus `extra_constants`) go first.
pub fn context_for(global: &Global, texts: &[&str], extra_constants: &[&str]) -> Result<VarContext, Failure> {
    let mut constants: Vec<&str> = global.constants.iter().map(String::as_str).collect();
    for c in extra_constants {
        if !constants.contains(c) {
            constants.push(c);
        }
    }
    match &global.vars {
        Some(vars) => {
            let mut names: Vec<&str> = constants.clone();
            for v in vars {
                if !names.contains(&v.as_str()) {
                    names.push(v);
                }
            }
            Ok(VarContext::with_coefficients(&names, constants.len())?)
        }
        None => Ok(infer_context(texts, &constants)?),
    }
}

pub fn poly(text: &str, ctx: &VarContext) -> Result<Polynomial, Failure> {
    parse_polynomial(text, ctx).map_err(|e| Failure::input(format!("in `{text}`: {e}")))
}

pub fn list(text: &str, ctx: &VarContext) -> Result<Vec<Polynomial>, Failure> {
    split_top_level(text).into_iter().map(|p| poly(p, ctx)).collect()
}

/// `name = value` pairs separated by top-level commas.
pub fn assignments(parts: &[&str]) -> Result<Vec<(String, String)>, Failure> {
    parts
        .iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("expected `name = value`, got `{p}`")))?;
            Ok((name.trim().to_string(), value.trim().to_string()))
        })
        .collect()
}

pub fn split(text: &str) -> Vec<&str> {
    split_top_level(text)
}

pub fn derivation(path: &Path) -> Result<Derivation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_derivation(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}
