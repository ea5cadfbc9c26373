use super::CertifiedDerivation;
use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::poly::Polynomial;
use crate::rational::inverse_factorial;

/// `Σ_r tʳ·Dʳ(f)/r!`. Finite because `D` is locally nilpotent. No kernel
/// condition is imposed on `t`; see [`exp_automorphism`] for the checked form.
pub fn exp_series(d: &CertifiedDerivation, t: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if t.context() != d.context() || f.context() != d.context() {
        return Err(Error::ContextMismatch("exponential series".into()));
    }
    let bound = d.vanishing_bound(f);
    let mut acc = Polynomial::zero(d.context());
    let mut term = f.clone();
    let mut t_power = Polynomial::one(d.context());
    for r in 0..=bound {
        if term.is_zero() {
            break;
        }
        acc.add_scaled(&(&t_power * &term), &inverse_factorial(r));
        term = d.apply(&term)?;
        t_power = &t_power * t;
    }
    debug_assert!(term.is_zero(), "vanishing bound too small");
    Ok(acc)
}

/// The automorphism `exp(t·D)`, `f ↦ Σ tʳDʳ(f)/r!`, for `t ∈ Ker D`.
/// Its inverse is `exp(−t·D)`.
pub fn exp_automorphism(d: &CertifiedDerivation, t: &Polynomial) -> Result<PolyMap> {
    let t = t.embed(d.context())?;
    if !d.apply(&t)?.is_zero() {
        return Err(Error::NotInKernel(t.to_string()));
    }
    let ctx = d.context();
    let images = (0..ctx.arity())
        .map(|i| exp_series(d, &t, &Polynomial::var_at(ctx, i)))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(ctx, ctx, images)
}

/// An element `s` with `D(s) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    s: Polynomial,
}

impl Slice {
    pub fn new(d: &CertifiedDerivation, s: &Polynomial) -> Result<Self> {
        let s = s.embed(d.context())?;
        let ds = d.apply(&s)?;
        if !ds.is_one() {
            return Err(Error::InvalidSlice(ds.to_string()));
        }
        Ok(Slice { s })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.s
    }
}

/// `π(f) = Σ_r (−s)ʳ·Dʳ(f)/r!`, the retraction onto `Ker D` with `π(s) = 0`.
pub fn dixmier_projection(d: &CertifiedDerivation, slice: &Slice, f: &Polynomial) -> Result<Polynomial> {
    exp_series(d, &-slice.polynomial(), f)
}

/// `π` as a ring endomorphism, from its values on the variables.
pub fn dixmier_map(d: &CertifiedDerivation, slice: &Slice) -> Result<PolyMap> {
    let ctx = d.context();
    let images = (0..ctx.arity())
        .map(|i| dixmier_projection(d, slice, &Polynomial::var_at(ctx, i)))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(ctx, ctx, images)
}
