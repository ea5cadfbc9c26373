//! Random inputs and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use venlab::rational::int;
use venlab::{Monomial, PolyMap, Polynomial, Rational, VarContext};

pub const SEED: u64 = 0x5eed_2024;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn context(n: usize) -> VarContext {
    let names = ["x", "y", "z", "u", "t"];
    VarContext::new(&names[..n]).unwrap()
}

/// Raw term list: exponent vector (trimmed to the arity on use), numerator, denominator.
pub type RawTerms = Vec<(Vec<u32>, i64, i64)>;

pub fn build(ctx: &VarContext, raw: &RawTerms, max_degree: u32) -> Polynomial {
    let n = ctx.arity();
    let terms = raw.iter().map(|(e, num, den)| {
        let mut e: Vec<u32> = e.iter().copied().take(n).collect();
        e.resize(n, 0);
        // clip to the degree bound by dropping exponents from the right
        let mut total: u32 = e.iter().sum();
        for x in e.iter_mut().rev() {
            while total > max_degree && *x > 0 {
                *x -= 1;
                total -= 1;
            }
        }
        (Monomial::from_exponents(e), Rational::new((*num).into(), (*den).into()))
    });
    Polynomial::from_terms(ctx, terms)
}

pub fn raw_terms(max_degree: u32, max_terms: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, 5), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
}

pub fn random_poly<R: Rng>(rng: &mut R, ctx: &VarContext, max_degree: u32, max_terms: usize, bound: i64) -> Polynomial {
    let n = ctx.arity();
    let count = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..count {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        terms.push((Monomial::from_exponents(e), int(c)));
    }
    Polynomial::from_terms(ctx, terms)
}

/// Reference evaluation straight from the term list.
pub fn eval(f: &Polynomial, point: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m.exponents()) {
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

pub fn monomials_up_to(n: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    let mut frontier = out.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            // only raise variables at or after the last nonzero one: each monomial once
            let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in start..n {
                let mut e = m.clone();
                e[v] += 1;
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

type Key = (u32, Vec<u32>);
type Vector = BTreeMap<Key, Rational>;

fn key(e: &[u32]) -> Key {
    (e.iter().sum(), e.to_vec())
}

/// Row echelon form over ℚ with distinct leading keys.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<Key, Vector>,
}

impl Echelon {
    pub fn reduce(&self, mut v: Vector) -> Vector {
        let mut upper: Option<Key> = None;
        loop {
            let next = match &upper {
                None => v.keys().next_back().cloned(),
                Some(u) => v.range(..u.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(p) = self.pivots.get(&k) {
                let factor = v[&k].clone();
                for (pk, pc) in p {
                    let entry = v.entry(pk.clone()).or_insert_with(Rational::zero);
                    *entry -= &factor * pc;
                    if entry.is_zero() {
                        v.remove(pk);
                    }
                }
            }
            upper = Some(k);
        }
        v
    }

    pub fn insert(&mut self, v: Vector) {
        let v = self.reduce(v);
        if let Some((k, c)) = v.iter().next_back() {
            let inv = c.recip();
            let k = k.clone();
            let normalized = v.into_iter().map(|(k, c)| (k, c * &inv)).collect();
            self.pivots.insert(k, normalized);
        }
    }

    pub fn contains(&self, v: Vector) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn to_vector(f: &Polynomial, shift: &[u32]) -> Vector {
    f.terms()
        .map(|(m, c)| {
            let e: Vec<u32> = m.exponents().iter().zip(shift).map(|(a, b)| a + b).collect();
            (key(&e), c.clone())
        })
        .collect()
}

/// `f ∈ (gens)` decided by exact linear algebra: is `f` in the ℚ-span of
/// `m·g` over all generators `g` and monomials `m` of degree at most
/// `deg f + extra`? Sound for membership; complete once the bound covers
/// the cofactor degrees.
pub fn brute_force_member(f: &Polynomial, gens: &[Polynomial], extra: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.context().arity();
    let bound = match f.total_degree() {
        venlab::Degree::Finite(d) => d as u32 + extra,
        venlab::Degree::NegInfinity => extra,
    };
    let shifts = monomials_up_to(n, bound);
    let mut span = Echelon::default();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for m in &shifts {
            span.insert(to_vector(g, m));
        }
    }
    span.contains(to_vector(f, &vec![0; n]))
}

pub struct Instance {
    pub gens: Vec<Polynomial>,
    pub f: Polynomial,
    pub constructed_member: bool,
}

/// Small random ideal in at most three variables with generators of degree
/// at most three, and a candidate `f` that is a known member half the time.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = [1, 2, 2, 3, 3, 3][rng.gen_range(0..6)];
    let ctx = context(n);
    let k = rng.gen_range(1..=n.max(2));
    let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(rng, &ctx, 3, 4, 5)).collect();
    let constructed_member = rng.gen_bool(0.5);
    let f = if constructed_member {
        let mut f = Polynomial::zero(&ctx);
        for g in &gens {
            f = &f + &(&random_poly(rng, &ctx, 2, 3, 4) * g);
        }
        f
    } else {
        random_poly(rng, &ctx, 3, 4, 5)
    };
    Instance { gens, f, constructed_member }
}

/// Exact Taylor-model laws for `f, g` over `base`: `(name, holds)` pairs.
pub fn taylor_laws(f: &Polynomial, g: &Polynomial) -> Vec<(&'static str, bool)> {
    use venlab::derivation::ShiftModel;
    let base = f.context();
    let first = ShiftModel::new(base).unwrap();
    let ext = first.extended();
    // oracle: direct substitution tᵢ ↦ tᵢ + eᵢ
    let shifted: Vec<Polynomial> = (0..base.arity())
        .map(|i| {
            let t = Polynomial::var_at(ext, i);
            match first.shifted_variables().iter().position(|&v| v == i) {
                Some(k) => &t + &Polynomial::var(ext, &first.shift_names()[k]).unwrap(),
                None => t,
            }
        })
        .collect();
    let direct = PolyMap::new(base, ext, shifted).unwrap();
    let ef = first.exp_shift(f).unwrap();
    let eg = first.exp_shift(g).unwrap();
    let substitution = ef == direct.apply(f).unwrap();
    let multiplicative = first.exp_shift(&(f * g)).unwrap() == &ef * &eg;
    let counit = first.counit(&ef).unwrap() == *f;

    // shifting again by independent e′ equals one shift by e + e′
    let second = ShiftModel::over(ext, first.shifted_variables(), "_f").unwrap();
    let ext2 = second.extended();
    let twice = second.exp_shift(&ef).unwrap();
    let summed: Vec<Polynomial> = (0..base.arity())
        .map(|i| {
            let t = Polynomial::var_at(ext2, i);
            match first.shifted_variables().iter().position(|&v| v == i) {
                Some(k) => {
                    let e = Polynomial::var(ext2, &first.shift_names()[k]).unwrap();
                    let e2 = Polynomial::var(ext2, &second.shift_names()[k]).unwrap();
                    &(&t + &e) + &e2
                }
                None => t,
            }
        })
        .collect();
    let once = PolyMap::new(base, ext2, summed).unwrap().apply(f).unwrap();
    let coassociative = twice == once;
    vec![
        ("substitution", substitution),
        ("multiplicative", multiplicative),
        ("coassociative", coassociative),
        ("counit", counit),
    ]
}

/// Dixmier-projection laws on a certified derivation with slice `s`,
/// probed with the random polynomials `f, g`.
pub fn dixmier_laws(d: &venlab::derivation::CertifiedDerivation, s: &Polynomial, f: &Polynomial, g: &Polynomial) -> Vec<(&'static str, bool)> {
    use venlab::derivation::{dixmier_map, dixmier_projection, Slice};
    let slice = Slice::new(d, s).unwrap();
    let pi = |p: &Polynomial| dixmier_projection(d, &slice, p).unwrap();
    let (pf, pg) = (pi(f), pi(g));
    let map = dixmier_map(d, &slice).unwrap();
    vec![
        ("kernel", d.apply(&pf).unwrap().is_zero() && d.apply(&pg).unwrap().is_zero()),
        ("idempotent", pi(&pf) == pf),
        ("slice_to_zero", pi(s).is_zero()),
        ("multiplicative", pi(&(f * g)) == &pf * &pg),
        ("series_matches_map", map.apply(f).unwrap() == pf),
    ]
}

/// Property-test configuration with a fixed seed unless `PROPTEST_RNG_SEED` is set.
pub fn config(cases: u32) -> ProptestConfig {
    use proptest::test_runner::RngSeed;
    let base = ProptestConfig::default();
    let rng_seed = match base.rng_seed {
        RngSeed::Random => RngSeed::Fixed(SEED),
        fixed => fixed,
    };
    ProptestConfig { cases, rng_seed, ..base }
}

/// `v₁, v₂, v₃, b₁` and the generic spec `r = x, s = 1, Q = V + W`.
pub fn five_specs() -> Vec<venlab::venereau::VenereauSpec> {
    use venlab::venereau::{family, Family, VenereauSpec};
    vec![
        family(&Family::Venereau { n: 1 }).unwrap(),
        family(&Family::Venereau { n: 2 }).unwrap(),
        family(&Family::Venereau { n: 3 }).unwrap(),
        family(&Family::BhatwadekarDutta { n: 1 }).unwrap(),
        VenereauSpec::parse("generic", "x", "1", "V + W").unwrap(),
    ]
}

/// `x^k·f` with every `x·x_inv` cancelled; `k` must cover the `x_inv` degree.
pub fn clear_inverse(f: &Polynomial, k: u32) -> Polynomial {
    let ctx = f.context();
    let (ix, iinv) = (ctx.require("x").unwrap(), ctx.require("x_inv").unwrap());
    let terms = f.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        let j = e[iinv];
        e[iinv] = 0;
        e[ix] += k - j;
        (venlab::Monomial::from_exponents(e), c.clone())
    });
    Polynomial::from_terms(ctx, terms)
}

/// Independent re-substitution of localized witnesses: `x^k·witness` with
/// `(h, v, w, x)` substituted must equal `x^k` times the variable.
pub fn localized_witnesses_resubstitute(spec: &venlab::venereau::VenereauSpec, w: &venlab::venereau::LocalizedWitnesses) -> bool {
    let ctx = spec.context();
    let wctx = &w.context;
    let iinv = wctx.require("x_inv").unwrap();
    ["y", "z", "u"].iter().zip(w.as_array()).all(|(name, witness)| {
        let k = witness.degree_in(iinv).unwrap_or(0);
        let mut images = spec.system().to_vec();
        images.push(Polynomial::var(ctx, "x").unwrap());
        images.push(Polynomial::zero(ctx));
        let back = PolyMap::new(wctx, ctx, images).unwrap().apply(&clear_inverse(witness, k)).unwrap();
        let xk = Polynomial::var(ctx, "x").unwrap().pow(k);
        back == &xk * &Polynomial::var(ctx, name).unwrap()
    })
}
