//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::rational::Rational;

/// Total degree, with the zero polynomial at negative infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

/// A polynomial in a named variable context. No stored coefficient is zero.
#[derive(Clone)]
pub struct Polynomial {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.arity()), c)
    }

    pub fn monomial(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.arity(), ctx.arity(), "monomial arity does not match context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self> {
        Ok(Self::var_at(ctx, ctx.require(name)?))
    }

    pub fn var_at(ctx: &VarContext, index: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.arity(), index), Rational::one())
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Largest exponent of variable `index`, `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[index]).max()
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[index] > 0)
    }

    /// Indices of variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.arity()).filter(|&i| self.depends_on(i)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Terms sorted from largest to smallest in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.ctx.names(),
                other.ctx.names()
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub(crate) fn absorb(&mut self, other: Polynomial) {
        assert!(self.ctx == other.ctx, "context mismatch in absorb");
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert!(self.ctx == other.ctx, "context mismatch in add_scaled");
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    /// Divides by a monomial when every term is divisible by it.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(m.quotient_of(n)?, c.clone());
        }
        Some(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial_at(self.ctx.require(name)?))
    }

    pub fn partial_at(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e > 0 {
                out.add_term(m.with_exponent(index, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Sets variable `index` to the constant `value`, staying in the same context.
    pub fn specialize(&self, index: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            let factor = num_traits::pow::pow(value.clone(), e as usize);
            out.add_term(m.with_exponent(index, 0), c * factor);
        }
        out
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ctx.arity() {
            return Err(Error::Arity {
                expected: self.ctx.arity(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in another context by variable name.
    /// Only variables that actually occur must exist in `target`.
    pub fn embed(&self, target: &VarContext) -> Result<Polynomial> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let mut slots = Vec::with_capacity(self.ctx.arity());
        for i in 0..self.ctx.arity() {
            slots.push(target.index_of(self.ctx.name(i)));
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = slots[i].ok_or_else(|| Error::UnknownVariable(self.ctx.name(i).to_string()))?;
                e[j] = k;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    /// Makes the leading coefficient (in `order`) equal to one.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn fmt_term(f: &mut fmt::Formatter<'_>, ctx: &VarContext, m: &Monomial, c: &Rational) -> fmt::Result {
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    ctx.name(i).to_string()
                } else {
                    format!("{}^{}", ctx.name(i), e)
                }
            })
            .collect();
        if factors.is_empty() {
            return write!(f, "{c}");
        }
        if !c.is_one() {
            write!(f, "{c}*")?;
        }
        write!(f, "{}", factors.join("*"))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

struct InOrder<'a>(&'a Polynomial, MonomialOrder);

impl fmt::Display for InOrder<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let InOrder(p, order) = *self;
        if p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", c.abs())?;
            } else if c.abs().is_one() {
                Polynomial::fmt_term(f, &p.ctx, m, &Rational::one())?;
            } else {
                Polynomial::fmt_term(f, &p.ctx, m, &c.abs())?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Prints with terms in `order`, largest first.
    pub fn to_string_in(&self, order: MonomialOrder) -> String {
        InOrder(self, order).to_string()
    }
}

/// Canonical form: graded reverse lexicographic, largest term first.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        InOrder(self, MonomialOrder::GrevLex).fmt(f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect("polynomial context mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$call(&rhs).expect("polynomial context mismatch")
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$call(rhs).expect("polynomial context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ctx() -> VarContext {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    fn v(c: &VarContext, n: &str) -> Polynomial {
        Polynomial::var(c, n).unwrap()
    }

    #[test]
    fn addition_cancels_exactly() {
        let c = ctx();
        let one = Polynomial::one(&c);
        let x = v(&c, "x");
        assert_eq!(&(&x + &one) + &(&x - &one), x.scale(&int(2)));
        assert_eq!(&x + &Polynomial::zero(&c), x);
        let half = x.scale(&frac(1, 2));
        let third = x.scale(&frac(1, 3));
        assert_eq!(&half + &third, x.scale(&frac(5, 6)));
    }

    #[test]
    fn product_difference_of_squares() {
        let c = ctx();
        let (x, y) = (v(&c, "x"), v(&c, "y"));
        assert_eq!(&(&y + &x) * &(&y - &x), &y.pow(2) - &x.pow(2));
        assert_eq!(&x * &Polynomial::one(&c), x);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = v(&ctx(), "x");
        let b = v(&VarContext::new(&["x"]).unwrap(), "x");
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn zero_has_negative_infinite_degree() {
        let c = ctx();
        assert_eq!(Polynomial::zero(&c).total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(v(&c, "x").pow(3).total_degree(), Degree::Finite(3));
    }

    #[test]
    fn partial_derivatives() {
        let c = ctx();
        let z = v(&c, "z");
        let x = v(&c, "x");
        // lambda = z^2 + r z + s with r, s free of z
        let lambda = &(&z.pow(2) + &(&x * &z)) + &x.pow(2);
        assert_eq!(lambda.partial("z").unwrap(), &z.scale(&int(2)) + &x);
        assert_eq!(Polynomial::constant(&c, int(7)).partial("z").unwrap(), Polynomial::zero(&c));
        assert!(matches!(lambda.partial("w"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn canonical_printing_is_grevlex() {
        let c = ctx();
        let (x, y, z) = (v(&c, "x"), v(&c, "y"), v(&c, "z"));
        let f = &(&(&x * &z) - &y.pow(2)) + &(&Polynomial::constant(&c, frac(-1, 2)) + &z.pow(3));
        assert_eq!(f.to_string(), "z^3 - y^2 + x*z - 1/2");
        assert_eq!((-&x).scale(&int(3)).to_string(), "-3*x");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
    }

    #[test]
    fn specialize_and_evaluate() {
        let c = ctx();
        let (x, y) = (v(&c, "x"), v(&c, "y"));
        let f = &(&x * &y) + &x.pow(2);
        assert_eq!(f.specialize(0, &int(2)), &y.scale(&int(2)) + &Polynomial::constant(&c, int(4)));
        assert_eq!(f.evaluate(&[int(1), int(2), int(0)]).unwrap(), int(3));
    }

    #[test]
    fn embed_by_name() {
        let small = VarContext::new(&["y"]).unwrap();
        let big = ctx();
        let y = v(&small, "y");
        assert_eq!(y.embed(&big).unwrap(), v(&big, "y"));
        assert!(v(&big, "x").embed(&small).is_err());
    }
}
