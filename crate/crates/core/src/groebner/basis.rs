use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::sorted::{from_poly, make_monic, sub_mul, to_poly, Terms};
use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

/// Caps on Buchberger's algorithm. Exceeding any of them aborts with
/// [`Error::Budget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_basis: usize,
    pub max_degree: u64,
    pub max_reduction_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 5000,
            max_degree: 40,
            max_reduction_steps: 20_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_basis: usize::MAX,
            max_degree: u64::MAX,
            max_reduction_steps: u64::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_considered: u64,
    pub pairs_skipped: u64,
    pub reduction_steps: u64,
    pub peak_basis: usize,
}

#[derive(Clone, Debug)]
struct Element {
    terms: Terms,
}

impl Element {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Full reduction of `f` modulo the elements; counts top-reduction steps.
fn reduce(
    f: Terms,
    basis: &[&Element],
    order: MonomialOrder,
    steps: &mut u64,
    max_steps: u64,
) -> Result<Terms> {
    let mut p = f;
    let mut start = 0;
    let mut rem: Terms = Vec::new();
    while start < p.len() {
        let (lm, lc) = &p[start];
        let divisor = basis.iter().find(|g| g.lm().divides(lm));
        match divisor {
            Some(g) => {
                let shift = g.lm().quotient_of(lm).expect("divides");
                let c = lc / &g.terms[0].1;
                p = sub_mul(&p[start + 1..], &g.terms[1..], &c, &shift, order);
                start = 0;
                *steps += 1;
                if *steps > max_steps {
                    return Err(Error::Budget(format!(
                        "more than {max_steps} reduction steps"
                    )));
                }
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

fn s_polynomial(a: &Element, b: &Element, order: MonomialOrder) -> Terms {
    let lcm = a.lm().lcm(b.lm());
    let sa = a.lm().quotient_of(&lcm).unwrap();
    let sb = b.lm().quotient_of(&lcm).unwrap();
    let lhs: Terms = a.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&sa), c.clone()))
        .collect();
    let one = crate::rational::int(1);
    sub_mul(&lhs, &b.terms[1..], &one, &sb, order)
}

/// A reduced Gröbner basis: monic, no leading monomial divides a term of
/// another element, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: VarContext,
    order: MonomialOrder,
    elements: Vec<Element>,
    generators: Vec<Polynomial>,
    stats: GroebnerStats,
}

/// Serialized form of a basis: order descriptor, variables, canonical strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDescriptor {
    pub order: String,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// S-pairs are processed in increasing `(deg lcm, i, j)`; pairs with coprime
/// leading monomials and pairs covered by the chain criterion are skipped.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("empty generator list".into()));
    };
    let ctx = first.context().clone();
    if gens.iter().any(|g| g.context() != &ctx) {
        return Err(Error::ContextMismatch("generators in different contexts".into()));
    }
    let mut stats = GroebnerStats::default();
    let mut basis: Vec<Element> = Vec::new();
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending_ids: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Element>,
                   pending: &mut BTreeSet<(u64, usize, usize)>,
                   pending_ids: &mut HashSet<(usize, usize)>,
                   mut terms: Terms,
                   stats: &mut GroebnerStats|
     -> Result<()> {
        make_monic(&mut terms);
        let degree = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if degree > budget.max_degree {
            return Err(Error::Budget(format!(
                "basis element of degree {degree} exceeds cap {}",
                budget.max_degree
            )));
        }
        if basis.len() >= budget.max_basis {
            return Err(Error::Budget(format!(
                "basis grew beyond {} elements",
                budget.max_basis
            )));
        }
        let new = Element { terms };
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let d = g.lm().lcm(new.lm()).degree();
            pending.insert((d, i, j));
            pending_ids.insert((i, j));
        }
        basis.push(new);
        stats.peak_basis = stats.peak_basis.max(basis.len());
        Ok(())
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let terms = from_poly(g, order);
        let current: Vec<&Element> = basis.iter().collect();
        let r = reduce(terms, &current, order, &mut stats.reduction_steps, budget.max_reduction_steps)?;
        if !r.is_empty() {
            add(&mut basis, &mut pending, &mut pending_ids, r, &mut stats)?;
        }
    }

    while let Some(key) = pending.pop_first() {
        let (_, i, j) = key;
        pending_ids.remove(&(i, j));
        stats.pairs_considered += 1;
        let (a, b) = (&basis[i], &basis[j]);
        if a.lm().is_coprime(b.lm()) {
            stats.pairs_skipped += 1;
            continue;
        }
        let lcm = a.lm().lcm(b.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending_ids.contains(&(i.min(k), i.max(k)))
                && !pending_ids.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            stats.pairs_skipped += 1;
            continue;
        }
        let s = s_polynomial(a, b, order);
        let current: Vec<&Element> = basis.iter().collect();
        let r = reduce(s, &current, order, &mut stats.reduction_steps, budget.max_reduction_steps)?;
        if !r.is_empty() {
            add(&mut basis, &mut pending, &mut pending_ids, r, &mut stats)?;
        }
    }

    let elements = interreduce(basis, order, &mut stats)?;
    let generators = elements.iter().map(|e| to_poly(&ctx, &e.terms)).collect();
    Ok(GroebnerBasis {
        ctx,
        order,
        elements,
        generators,
        stats,
    })
}

fn interreduce(basis: Vec<Element>, order: MonomialOrder, stats: &mut GroebnerStats) -> Result<Vec<Element>> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Element> = Vec::new();
    for e in sorted {
        if !minimal.iter().any(|m| m.lm().divides(e.lm())) {
            minimal.push(e);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (k, e) in minimal.iter().enumerate() {
        let others: Vec<&Element> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e)
            .collect();
        let mut terms = vec![e.terms[0].clone()];
        let tail = reduce(e.terms[1..].to_vec(), &others, order, &mut stats.reduction_steps, u64::MAX)?;
        terms.extend(tail);
        out.push(Element { terms });
    }
    Ok(out)
}

impl GroebnerBasis {
    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch("normal form outside the basis context".into()));
        }
        let refs: Vec<&Element> = self.elements.iter().collect();
        let mut steps = 0;
        let r = reduce(from_poly(f, self.order), &refs, self.order, &mut steps, u64::MAX)?;
        Ok(to_poly(&self.ctx, &r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks Buchberger's criterion directly: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&Element> = self.elements.iter().collect();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], self.order);
                let mut steps = 0;
                match reduce(s, &refs, self.order, &mut steps, u64::MAX) {
                    Ok(r) if r.is_empty() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// No leading monomial divides any term of another element; all monic.
    pub fn satisfies_reducedness(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, e)| {
            e.terms[0].1 == crate::rational::int(1)
                && self.elements.iter().enumerate().all(|(j, other)| {
                    i == j || !e.terms.iter().any(|(m, _)| other.lm().divides(m))
                })
        })
    }

    pub fn descriptor(&self) -> BasisDescriptor {
        BasisDescriptor {
            order: self.order.to_string(),
            variables: self.ctx.names().to_vec(),
            generators: self.generators.iter().map(|g| g.to_string_in(self.order)).collect(),
        }
    }
}

/// Remainder of `f` modulo the basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_list, parse_polynomial};

    fn basis_strings(gens: &str, vars: &[&str], order: MonomialOrder) -> Vec<String> {
        let ctx = VarContext::new(vars).unwrap();
        let gens = parse_list(gens, &ctx).unwrap();
        buchberger(&gens, order, Budget::default())
            .unwrap()
            .generators()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn principal_and_divisible_generators() {
        assert_eq!(basis_strings("x - 1", &["x"], MonomialOrder::GrevLex), ["x - 1"]);
        assert_eq!(basis_strings("x^2, x^3", &["x"], MonomialOrder::GrevLex), ["x^2"]);
    }

    #[test]
    fn lex_basis_of_xy_minus_one() {
        // printed in grevlex, so x - y appears as "x - y"; y^2 - 1 first (smaller lm in lex)
        assert_eq!(
            basis_strings("x*y - 1, y^2 - 1", &["x", "y"], MonomialOrder::Lex),
            ["y^2 - 1", "x - y"]
        );
    }

    #[test]
    fn one_step_division() {
        let ctx = VarContext::new(&["x", "y"]).unwrap();
        let gb = buchberger(&[parse_polynomial("x*y - 1", &ctx).unwrap()], MonomialOrder::GrevLex, Budget::default()).unwrap();
        let f = parse_polynomial("x^2*y", &ctx).unwrap();
        assert_eq!(gb.normal_form(&f).unwrap().to_string(), "x");
        let nf = gb.normal_form(&f).unwrap();
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn empty_generators_are_rejected() {
        assert!(buchberger(&[], MonomialOrder::Lex, Budget::default()).is_err());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let ctx = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = parse_list("x^3 - y*z, y^3 - x*z, z^3 - x*y + 1", &ctx).unwrap();
        let tiny = Budget {
            max_basis: 3,
            ..Budget::default()
        };
        assert!(matches!(buchberger(&gens, MonomialOrder::Lex, tiny), Err(Error::Budget(_))));
    }

    #[test]
    fn computed_bases_are_reduced_and_closed() {
        let ctx = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = parse_list("x^2 + y*z - 1, x*y - z^2, y^3 - x*z + 2", &ctx).unwrap();
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Elimination { split: 1 }] {
            let gb = buchberger(&gens, order, Budget::default()).unwrap();
            assert!(gb.satisfies_buchberger_criterion());
            assert!(gb.satisfies_reducedness());
            for g in &gens {
                assert!(gb.contains(g).unwrap());
            }
        }
    }
}
