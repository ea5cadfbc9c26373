//! The free local model of the Taylor operators: for `f(t₁..tₙ)` and fresh
//! shift variables `e₁..eₙ`, `d_r(f) = (Σ eᵢ∂/∂tᵢ)ʳ f` and
//! `exp(d₁) = Σ d_r/r!` sends `f` to `f(t + e)`.

use super::{CertifiedDerivation, Derivation};
use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::inverse_factorial;

#[derive(Clone, Debug)]
pub struct ShiftModel {
    base: VarContext,
    extended: VarContext,
    shifted: Vec<usize>,
    shift_names: Vec<String>,
    operator: CertifiedDerivation,
}

impl ShiftModel {
    /// Shifts every fiber variable of `base`, with shift variables `_e1, _e2, …`.
    pub fn new(base: &VarContext) -> Result<Self> {
        let vars: Vec<usize> = base.fiber_indices().collect();
        Self::over(base, &vars, "_e")
    }

    /// Shifts the given variables with fresh variables `{stem}1, {stem}2, …`.
    /// `stem` must carry the reserved prefix.
    pub fn over(base: &VarContext, vars: &[usize], stem: &str) -> Result<Self> {
        if !crate::context::is_reserved(stem) {
            return Err(Error::Invalid(format!("shift stem `{stem}` must be reserved")));
        }
        let mut names = base.names().to_vec();
        let mut shift_names = Vec::new();
        for k in 1..=vars.len() {
            let probe = VarContext::internal(&names, 0)?;
            let n = probe.fresh_name(&format!("{stem}{k}"));
            names.push(n.clone());
            shift_names.push(n);
        }
        let extended = VarContext::internal(&names, base.coefficient_block())?;
        let mut images: Vec<Polynomial> = extended.fiber_indices().map(|_| Polynomial::zero(&extended)).collect();
        let cb = extended.coefficient_block();
        for (&t, e) in vars.iter().zip(&shift_names) {
            if base.is_coefficient(t) {
                return Err(Error::Invalid(format!("cannot shift constant `{}`", base.name(t))));
            }
            images[t - cb] = Polynomial::var(&extended, e)?;
        }
        let operator = CertifiedDerivation::new(Derivation::new(&extended, images)?, 2)?;
        Ok(ShiftModel {
            base: base.clone(),
            extended,
            shifted: vars.to_vec(),
            shift_names,
            operator,
        })
    }

    pub fn base(&self) -> &VarContext {
        &self.base
    }

    pub fn extended(&self) -> &VarContext {
        &self.extended
    }

    pub fn shift_names(&self) -> &[String] {
        &self.shift_names
    }

    pub fn shifted_variables(&self) -> &[usize] {
        &self.shifted
    }

    /// The derivation `Σ eᵢ·∂/∂tᵢ` on the extended ring.
    pub fn operator(&self) -> &CertifiedDerivation {
        &self.operator
    }

    fn lift(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.context() == &self.extended {
            return Ok(f.clone());
        }
        f.embed(&self.extended)
    }

    /// `d_r(f)`: the order-`r` Taylor term, `r!` times the degree-`r` part in `e`.
    pub fn taylor_term(&self, f: &Polynomial, r: u32) -> Result<Polynomial> {
        self.operator.derivation().apply_n(&self.lift(f)?, r)
    }

    /// `Σ_r d_r(f)/r!`.
    pub fn exp_shift(&self, f: &Polynomial) -> Result<Polynomial> {
        let g = self.lift(f)?;
        let mut acc = Polynomial::zero(&self.extended);
        let mut term = g;
        let mut r = 0;
        while !term.is_zero() {
            acc.add_scaled(&term, &inverse_factorial(r));
            term = self.operator.apply(&term)?;
            r += 1;
        }
        Ok(acc)
    }

    /// Sets every shift variable to zero.
    pub fn counit(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut g = self.lift(f)?;
        for n in &self.shift_names {
            g = g.specialize(self.extended.require(n)?, &crate::rational::int(0));
        }
        g.embed(&self.base)
    }
}

/// `d_r(f)` in the free model `model`.
pub fn taylor_operator(model: &ShiftModel, f: &Polynomial, r: u32) -> Result<Polynomial> {
    model.taylor_term(f, r)
}
