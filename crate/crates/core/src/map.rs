//! Ring homomorphisms between polynomial rings, given by variable images.

use std::fmt;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    source: VarContext,
    target: VarContext,
    images: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source: &VarContext, target: &VarContext, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::Arity {
                expected: source.arity(),
                got: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|p| p.context() != target) {
            return Err(Error::ContextMismatch(format!(
                "image in {:?}, expected {:?}",
                bad.context().names(),
                target.names()
            )));
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ctx: &VarContext) -> Self {
        let images = (0..ctx.arity()).map(|i| Polynomial::var_at(ctx, i)).collect();
        PolyMap {
            source: ctx.clone(),
            target: ctx.clone(),
            images,
        }
    }

    /// Maps the named variables as given; every other source variable goes to
    /// the target variable of the same name.
    pub fn from_assignments(
        source: &VarContext,
        target: &VarContext,
        assignments: &[(&str, Polynomial)],
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(source.arity());
        for name in source.names() {
            match assignments.iter().find(|(n, _)| n == name) {
                Some((_, p)) => images.push(p.clone()),
                None => images.push(Polynomial::var(target, name)?),
            }
        }
        for (n, _) in assignments {
            source.require(n)?;
        }
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &VarContext {
        &self.source
    }

    pub fn target(&self) -> &VarContext {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &Polynomial {
        &self.images[index]
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        substitute(f, self)
    }

    /// `next ∘ self`: first apply `self`, then `next`.
    pub fn then(&self, next: &PolyMap) -> Result<PolyMap> {
        if self.target != next.source {
            return Err(Error::ContextMismatch("maps do not compose".into()));
        }
        let images = self
            .images
            .iter()
            .map(|p| next.apply(p))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(&self.source, &next.target, images)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == PolyMap::identity(&self.source)
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .names()
            .iter()
            .zip(&self.images)
            .map(|(n, p)| format!("{n} -> {p}"))
            .collect();
        write!(f, "PolyMap({})", parts.join(", "))
    }
}

/// Image of `f` under the ring homomorphism induced by `map`.
pub fn substitute(f: &Polynomial, map: &PolyMap) -> Result<Polynomial> {
    if f.context() != &map.source {
        return Err(Error::ContextMismatch(format!(
            "polynomial in {:?}, map from {:?}",
            f.context().names(),
            map.source.names()
        )));
    }
    let n = map.source.arity();
    // powers[i][k] = images[i]^k, filled lazily
    let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&map.target)]; n];
    let mut out = Polynomial::zero(&map.target);
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(&map.target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap() * &map.images[i];
                powers[i].push(next);
            }
            t = &t * &powers[i][e as usize];
        }
        out.absorb(t);
    }
    Ok(out)
}
