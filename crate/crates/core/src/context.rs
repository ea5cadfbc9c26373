//! Named variable contexts.
//!
//! A context is an ordered list of distinct identifiers. A prefix of the list,
//! the coefficient block, names the variables of the base ring `R`; the rest
//! are the fiber variables a derivation acts on.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Identifiers starting with this prefix are reserved for generated variables
/// (shift variables, tags, inverted variables) and rejected in user input.
pub const RESERVED_PREFIX: &str = "_";

#[derive(Clone)]
pub struct VarContext(Arc<Inner>);

#[derive(PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    coefficient_block: usize,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_reserved(name: &str) -> bool {
    name.starts_with(RESERVED_PREFIX)
}

impl VarContext {
    /// A context with no coefficient block.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::with_coefficients(names, 0)
    }

    /// A context whose first `coefficient_block` names are base-ring variables.
    pub fn with_coefficients<S: AsRef<str>>(names: &[S], coefficient_block: usize) -> Result<Self> {
        if let Some(bad) = names.iter().map(AsRef::as_ref).find(|n| is_reserved(n)) {
            return Err(Error::ReservedName(bad.to_string()));
        }
        Self::build(names, coefficient_block)
    }

    /// Like [`VarContext::with_coefficients`] but accepts reserved names.
    pub(crate) fn internal<S: AsRef<str>>(names: &[S], coefficient_block: usize) -> Result<Self> {
        Self::build(names, coefficient_block)
    }

    fn build<S: AsRef<str>>(names: &[S], coefficient_block: usize) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable `{name}`")));
            }
        }
        if coefficient_block > names.len() {
            return Err(Error::InvalidContext(format!(
                "coefficient block of size {coefficient_block} exceeds {} variables",
                names.len()
            )));
        }
        Ok(VarContext(Arc::new(Inner {
            names,
            coefficient_block,
        })))
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn coefficient_block(&self) -> usize {
        self.0.coefficient_block
    }

    pub fn is_coefficient(&self, index: usize) -> bool {
        index < self.0.coefficient_block
    }

    pub fn coefficient_names(&self) -> &[String] {
        &self.0.names[..self.0.coefficient_block]
    }

    /// Indices of the non-coefficient variables.
    pub fn fiber_indices(&self) -> std::ops::Range<usize> {
        self.0.coefficient_block..self.0.names.len()
    }

    /// The same names with a different coefficient block.
    pub fn with_block(&self, coefficient_block: usize) -> Result<Self> {
        Self::build(&self.0.names, coefficient_block)
    }

    /// A name not present in this context, built from `stem`.
    pub(crate) fn fresh_name(&self, stem: &str) -> String {
        let mut candidate = stem.to_string();
        let mut k = 0;
        while self.index_of(&candidate).is_some() {
            k += 1;
            candidate = format!("{stem}{k}");
        }
        candidate
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext({:?}", self.0.names)?;
        if self.0.coefficient_block > 0 {
            write!(f, ", coefficients: {}", self.0.coefficient_block)?;
        }
        write!(f, ")")
    }
}
