//! Term vectors kept sorted in decreasing order for a fixed monomial order.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::context::VarContext;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::rational::Rational;

pub(crate) type Terms = Vec<(Monomial, Rational)>;

pub(crate) fn from_poly(p: &Polynomial, order: MonomialOrder) -> Terms {
    p.sorted_terms(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

pub(crate) fn to_poly(ctx: &VarContext, terms: &[(Monomial, Rational)]) -> Polynomial {
    Polynomial::from_terms(ctx, terms.iter().cloned())
}

pub(crate) fn make_monic(terms: &mut Terms) {
    if let Some((_, lc)) = terms.first() {
        let inv = lc.recip();
        for (_, c) in terms.iter_mut() {
            *c *= &inv;
        }
    }
}

/// `p - c * shift * g`, both inputs sorted; the result is sorted.
pub(crate) fn sub_mul(
    p: &[(Monomial, Rational)],
    g: &[(Monomial, Rational)],
    c: &Rational,
    shift: &Monomial,
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut shifted: Option<(Monomial, Rational)> = g.first().map(|(m, d)| (m.mul(shift), d * c));
    while i < p.len() || shifted.is_some() {
        let take = match (&shifted, p.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some((sm, _)), Some((pm, _))) => order.cmp(pm, sm),
        };
        match take {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (sm, sc) = shifted.take().unwrap();
                out.push((sm, -sc));
                j += 1;
                shifted = g.get(j).map(|(m, d)| (m.mul(shift), d * c));
            }
            Ordering::Equal => {
                let (sm, sc) = shifted.take().unwrap();
                let v = &p[i].1 - sc;
                if !v.is_zero() {
                    out.push((sm, v));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|(m, d)| (m.mul(shift), d * c));
            }
        }
    }
    out
}
