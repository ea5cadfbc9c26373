//! Derivations of `R[x₁..xₙ]`, where `R` is generated by the coefficient block.

mod exp;
mod shift;
mod text;

pub use exp::{dixmier_map, dixmier_projection, exp_automorphism, exp_series, Slice};
pub use shift::{taylor_operator, ShiftModel};
pub use text::{parse_derivation, parse_derivation_in};

use std::fmt;

use serde::Serialize;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Default iteration cap for [`Derivation::certify_nilpotent`].
pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

/// An `R`-derivation, given by the images of the fiber variables.
/// Coefficient variables are constants: `D(c) = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: VarContext,
    images: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Certified,
    Undetermined,
}

/// Per fiber variable, the least `n` with `Dⁿ(var) = 0`, if found within the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    pub variables: Vec<String>,
    pub indices: Vec<Option<u32>>,
    pub status: CertificateStatus,
    pub cap: u32,
}

impl Derivation {
    pub fn new(ctx: &VarContext, images: Vec<Polynomial>) -> Result<Self> {
        let fiber = ctx.arity() - ctx.coefficient_block();
        if images.len() != fiber {
            return Err(Error::Arity {
                expected: fiber,
                got: images.len(),
            });
        }
        if images.iter().any(|p| p.context() != ctx) {
            return Err(Error::ContextMismatch("derivation images".into()));
        }
        Ok(Derivation {
            ctx: ctx.clone(),
            images,
        })
    }

    /// Unlisted fiber variables are sent to zero.
    pub fn from_assignments(ctx: &VarContext, assignments: &[(&str, Polynomial)]) -> Result<Self> {
        let mut images: Vec<Polynomial> = ctx.fiber_indices().map(|_| Polynomial::zero(ctx)).collect();
        for (name, p) in assignments {
            let i = ctx.require(name)?;
            if ctx.is_coefficient(i) {
                return Err(Error::Invalid(format!("`{name}` is a constant of the base ring")));
            }
            images[i - ctx.coefficient_block()] = p.embed(ctx)?;
        }
        Self::new(ctx, images)
    }

    /// `∂/∂name`.
    pub fn partial(ctx: &VarContext, name: &str) -> Result<Self> {
        Self::from_assignments(ctx, &[(name, Polynomial::one(ctx))])
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    /// `D(var)` for any context variable.
    pub fn image(&self, index: usize) -> Polynomial {
        if self.ctx.is_coefficient(index) {
            Polynomial::zero(&self.ctx)
        } else {
            self.images[index - self.ctx.coefficient_block()].clone()
        }
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Leibniz extension: `D(f) = Σ ∂f/∂xᵢ · D(xᵢ)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch("derivation applied outside its ring".into()));
        }
        let mut out = Polynomial::zero(&self.ctx);
        for (k, i) in self.ctx.fiber_indices().enumerate() {
            if self.images[k].is_zero() || !f.depends_on(i) {
                continue;
            }
            out.absorb(&f.partial_at(i) * &self.images[k]);
        }
        Ok(out)
    }

    pub fn apply_n(&self, f: &Polynomial, n: u32) -> Result<Polynomial> {
        let mut g = f.clone();
        for _ in 0..n {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// Semi-decision of local nilpotency: every fiber variable must die within
    /// `cap` applications. By the Leibniz rule that suffices for the whole
    /// ring; failure to find the indices is reported as undetermined, never
    /// as "not nilpotent".
    pub fn certify_nilpotent(&self, cap: u32) -> NilpotencyCertificate {
        let mut indices = Vec::new();
        for i in self.ctx.fiber_indices() {
            let mut g = Polynomial::var_at(&self.ctx, i);
            let mut found = None;
            for n in 1..=cap {
                g = self.apply(&g).expect("same context");
                if g.is_zero() {
                    found = Some(n);
                    break;
                }
            }
            indices.push(found);
        }
        let status = if indices.iter().all(Option::is_some) {
            CertificateStatus::Certified
        } else {
            CertificateStatus::Undetermined
        };
        NilpotencyCertificate {
            variables: self.ctx.fiber_indices().map(|i| self.ctx.name(i).to_string()).collect(),
            indices,
            status,
            cap,
        }
    }

    /// Certifies with [`DEFAULT_NILPOTENCY_CAP`].
    pub fn certify(&self) -> Result<CertifiedDerivation> {
        CertifiedDerivation::new(self.clone(), DEFAULT_NILPOTENCY_CAP)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.coefficient_block() > 0 {
            writeln!(f, "# constants: {}", self.ctx.coefficient_names().join(", "))?;
        }
        for (k, i) in self.ctx.fiber_indices().enumerate() {
            writeln!(f, "D({}) = {}", self.ctx.name(i), self.images[k])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A derivation together with a certificate of local nilpotency.
#[derive(Clone, Debug)]
pub struct CertifiedDerivation {
    derivation: Derivation,
    certificate: NilpotencyCertificate,
}

impl CertifiedDerivation {
    pub fn new(derivation: Derivation, cap: u32) -> Result<Self> {
        let certificate = derivation.certify_nilpotent(cap);
        if certificate.status != CertificateStatus::Certified {
            return Err(Error::NotCertified);
        }
        Ok(CertifiedDerivation {
            derivation,
            certificate,
        })
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn certificate(&self) -> &NilpotencyCertificate {
        &self.certificate
    }

    pub fn context(&self) -> &VarContext {
        self.derivation.context()
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.derivation.apply(f)
    }

    /// An `N` with `Dᴺ(f) = 0`: for a monomial `∏ xᵢ^aᵢ`, `Σ aᵢ(nᵢ − 1) + 1`.
    pub fn vanishing_bound(&self, f: &Polynomial) -> u32 {
        let cb = self.context().coefficient_block();
        f.terms()
            .map(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .skip(cb)
                    .map(|(i, &a)| a * (self.certificate.indices[i - cb].unwrap() - 1))
                    .sum::<u32>()
                    + 1
            })
            .max()
            .unwrap_or(0)
    }
}
