//! Ideal membership and subalgebra membership by tag-variable elimination.

use super::basis::{buchberger, Budget, GroebnerBasis};
use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

/// `f ∈ (gens)`, decided with a grevlex basis.
pub fn ideal_member(f: &Polynomial, gens: &[Polynomial], budget: Budget) -> Result<bool> {
    let gb = buchberger(gens, MonomialOrder::GrevLex, budget)?;
    gb.contains(&f.embed(gb.context())?)
}

/// Outcome of a subalgebra membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `witness` lives in [`SubalgebraDecider::witness_context`]: one variable
    /// per generator, the coefficient variables and, when a variable is
    /// inverted, its inverse.
    Member { witness: Polynomial },
    NotMember,
    Undetermined { reason: String },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn witness(&self) -> Option<&Polynomial> {
        match self {
            Membership::Member { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Decides membership in `R[g₁..gₘ]` (optionally `R[1/x][g₁..gₘ]`), where `R`
/// is generated by the coefficient block of the context.
///
/// The ideal `(T₁ − g₁, …, Tₘ − gₘ, x·x_inv − 1)` lives in a ring whose fiber
/// variables form the top block of an elimination order. Its Gröbner basis is
/// computed once; `f` is a member exactly when its normal form involves only
/// tags, coefficient variables and `x_inv`, and that normal form expresses
/// `f` in the generators.
#[derive(Clone, Debug)]
pub struct SubalgebraDecider {
    source: VarContext,
    gens: Vec<Polynomial>,
    invert: Option<usize>,
    extended: VarContext,
    witness_ctx: VarContext,
    /// position in `extended` of each witness variable
    witness_slots: Vec<usize>,
    gb: GroebnerBasis,
}

impl SubalgebraDecider {
    pub fn new(gens: &[Polynomial], invert: Option<&str>, budget: Budget) -> Result<Self> {
        let labels: Vec<String> = (1..=gens.len()).map(|i| format!("_g{i}")).collect();
        Self::with_labels(gens, invert, &labels, budget)
    }

    /// Like [`SubalgebraDecider::new`] with readable names for the generator
    /// variables of the witness context.
    pub fn with_labels<S: AsRef<str>>(
        gens: &[Polynomial],
        invert: Option<&str>,
        labels: &[S],
        budget: Budget,
    ) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::Invalid("empty generator list".into()));
        };
        if labels.len() != gens.len() {
            return Err(Error::Arity {
                expected: gens.len(),
                got: labels.len(),
            });
        }
        let source = first.context().clone();
        if gens.iter().any(|g| g.context() != &source) {
            return Err(Error::ContextMismatch("generators in different contexts".into()));
        }
        let invert = match invert {
            None => None,
            Some(name) => {
                let i = source.require(name)?;
                if !source.is_coefficient(i) {
                    return Err(Error::Invalid(format!(
                        "inverted variable `{name}` must belong to the coefficient block"
                    )));
                }
                Some(i)
            }
        };

        let fiber: Vec<String> = source.fiber_indices().map(|i| source.name(i).to_string()).collect();
        let coeffs: Vec<String> = source.coefficient_names().to_vec();
        let mut ext_names = fiber.clone();
        let mut tag_names = Vec::new();
        for i in 0..gens.len() {
            let probe = VarContext::internal(&ext_names, 0)?;
            let t = probe.fresh_name(&format!("_t{}", i + 1));
            ext_names.push(t.clone());
            tag_names.push(t);
        }
        ext_names.extend(coeffs.iter().cloned());
        let inv_name = invert.map(|i| {
            let probe = VarContext::internal(&ext_names, 0).expect("valid names");
            probe.fresh_name(&format!("_inv_{}", source.name(i)))
        });
        if let Some(n) = &inv_name {
            ext_names.push(n.clone());
        }
        let extended = VarContext::internal(&ext_names, 0)?;

        let mut witness_names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        witness_names.extend(coeffs.iter().cloned());
        if let Some(i) = invert {
            let probe = VarContext::internal(&witness_names, 0)?;
            witness_names.push(probe.fresh_name(&format!("{}_inv", source.name(i))));
        }
        let witness_ctx = VarContext::internal(&witness_names, labels.len() + coeffs.len())?;
        let mut witness_slots: Vec<usize> = tag_names
            .iter()
            .chain(coeffs.iter())
            .map(|n| extended.index_of(n).unwrap())
            .collect();
        if let Some(n) = &inv_name {
            witness_slots.push(extended.index_of(n).unwrap());
        }

        let mut ideal = Vec::with_capacity(gens.len() + 1);
        for (g, t) in gens.iter().zip(&tag_names) {
            ideal.push(&Polynomial::var(&extended, t)? - &g.embed(&extended)?);
        }
        if let (Some(i), Some(n)) = (invert, &inv_name) {
            let x = Polynomial::var(&extended, source.name(i))?;
            let xi = Polynomial::var(&extended, n)?;
            ideal.push(&(&x * &xi) - &Polynomial::one(&extended));
        }
        let order = MonomialOrder::Elimination { split: fiber.len() };
        let gb = buchberger(&ideal, order, budget)?;
        Ok(SubalgebraDecider {
            source,
            gens: gens.to_vec(),
            invert,
            extended,
            witness_ctx,
            witness_slots,
            gb,
        })
    }

    pub fn witness_context(&self) -> &VarContext {
        &self.witness_ctx
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn decide(&self, f: &Polynomial) -> Result<Membership> {
        if f.context() != &self.source {
            return Err(Error::ContextMismatch("query outside the generators' context".into()));
        }
        let nf = self.gb.normal_form(&f.embed(&self.extended)?)?;
        let fiber = self.source.arity() - self.source.coefficient_block();
        if (0..fiber).any(|i| nf.depends_on(i)) {
            return Ok(Membership::NotMember);
        }
        let witness = Polynomial::from_terms(
            &self.witness_ctx,
            nf.terms().map(|(m, c)| {
                let e: Vec<u32> = self.witness_slots.iter().map(|&s| m.exponents()[s]).collect();
                (Monomial::from_exponents(e), c.clone())
            }),
        );
        Ok(Membership::Member { witness })
    }

    /// Substitutes the generators (and `x` for the inverse, after clearing
    /// denominators) into `witness` and compares with `f`.
    pub fn revalidate(&self, f: &Polynomial, witness: &Polynomial) -> Result<bool> {
        if witness.context() != &self.witness_ctx || f.context() != &self.source {
            return Err(Error::ContextMismatch("revalidation inputs".into()));
        }
        let m = self.gens.len();
        let nc = self.source.coefficient_block();
        let mut images: Vec<Polynomial> = self.gens.clone();
        for i in 0..nc {
            images.push(Polynomial::var_at(&self.source, i));
        }
        let Some(x) = self.invert else {
            let map = PolyMap::new(&self.witness_ctx, &self.source, images)?;
            return Ok(map.apply(witness)? == *f);
        };
        let inv = m + nc;
        let k = witness.degree_in(inv).unwrap_or(0);
        let cleared = Polynomial::from_terms(
            &self.witness_ctx,
            witness.terms().map(|(mono, c)| {
                let e = mono.exponents()[inv];
                (mono.with_exponent(inv, k - e), c.clone())
            }),
        );
        images.push(Polynomial::var_at(&self.source, x));
        let map = PolyMap::new(&self.witness_ctx, &self.source, images)?;
        let xk = Polynomial::var_at(&self.source, x).pow(k);
        Ok(map.apply(&cleared)? == &xk * f)
    }
}

/// One-shot subalgebra membership; budget exhaustion becomes `Undetermined`.
pub fn subalgebra_member(
    f: &Polynomial,
    gens: &[Polynomial],
    invert: Option<&str>,
    budget: Budget,
) -> Result<Membership> {
    match SubalgebraDecider::new(gens, invert, budget) {
        Ok(d) => d.decide(f),
        Err(Error::Budget(reason)) => Ok(Membership::Undetermined { reason }),
        Err(e) => Err(e),
    }
}
