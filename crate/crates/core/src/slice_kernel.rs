//! Kernels of locally nilpotent `R`-derivations of `R[x, y, z]` with a slice.
//!
//! With a slice `s`, the Dixmier projection `π` maps `R[x, y, z]` onto
//! `B = Ker D` and `B[s] = R[x, y, z]`, so `B = R[π(x), π(y), π(z)]`. The
//! pipeline computes the three images, confirms `B[s] = R[x, y, z]` by
//! subalgebra membership, and then looks for two of the images that already
//! generate `B` and are algebraically independent, exhibiting `B` as a
//! polynomial ring in two variables over `R`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::context::VarContext;
use crate::derivation::{dixmier_projection, CertifiedDerivation, Derivation, Slice, DEFAULT_NILPOTENCY_CAP};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Membership, SubalgebraDecider};
use crate::jacobian::{jacobian_det, jacobian_has_rank};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{frac, int, Rational};
use crate::report::{CheckReport, Verdict};

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Clone, Debug)]
pub struct SliceKernelResult {
    pub derivation: CertifiedDerivation,
    pub slice: Slice,
    /// `π(x), π(y), π(z)` for the three fiber variables, in context order.
    pub kernel_generators: Vec<Polynomial>,
    /// Indices into `kernel_generators` of a certified generating pair.
    pub two_generator_subset: Option<(usize, usize)>,
    /// `D(π(g)) = 0` for the three images and `π(s) = 0`.
    pub annihilation: Verdict,
    /// `x, y, z ∈ R[π(x), π(y), π(z), s]`.
    pub generation: Verdict,
    pub generation_witnesses: Vec<Option<Polynomial>>,
    pub polynomial_ring: Option<Verdict>,
    pub pair_witness: Option<Polynomial>,
}

impl SliceKernelResult {
    pub fn fiber_names(&self) -> Vec<&str> {
        let ctx = self.derivation.context();
        ctx.fiber_indices().map(|i| ctx.name(i)).collect()
    }

    pub fn verdict(&self) -> Verdict {
        let mut all = vec![self.annihilation, self.generation];
        all.extend(self.polynomial_ring);
        Verdict::worst(all)
    }

    pub fn to_report(&self, subject: &str) -> CheckReport {
        let names = self.fiber_names();
        let mut generators = serde_json::Map::new();
        for (n, g) in names.iter().zip(&self.kernel_generators) {
            generators.insert(format!("pi({n})"), Value::String(g.to_string()));
        }
        let mut generation = serde_json::Map::new();
        for (n, w) in names.iter().zip(&self.generation_witnesses) {
            generation.insert(n.to_string(), w.as_ref().map_or(Value::Null, |p| Value::String(p.to_string())));
        }
        let mut report = CheckReport::new("kernel", subject, self.verdict())
            .witness("slice", self.slice.polynomial().to_string())
            .witness("kernel_generators", Value::Object(generators))
            .witness("generation", Value::Object(generation))
            .witness("annihilation", json!(self.annihilation))
            .witness("generation_verdict", json!(self.generation))
            .witness("nilpotency_indices", json!(self.derivation.certificate().indices));
        if let Some(v) = self.polynomial_ring {
            report = report.witness("polynomial_ring", json!(v));
        }
        if let Some((i, j)) = self.two_generator_subset {
            report = report.witness("pair", json!([format!("pi({})", names[i]), format!("pi({})", names[j])]));
        }
        if let Some(w) = &self.pair_witness {
            report = report.witness("third_in_pair", w.to_string());
        }
        report
    }
}

fn require_three_fiber_variables(ctx: &VarContext) -> Result<()> {
    let fiber = ctx.arity() - ctx.coefficient_block();
    if fiber != 3 {
        return Err(Error::Arity { expected: 3, got: fiber });
    }
    Ok(())
}

/// Kernel generators `π(x), π(y), π(z)` and the check `B[s] = R[x, y, z]`.
pub fn kernel_from_slice(d: &Derivation, s: &Polynomial, budget: Budget) -> Result<SliceKernelResult> {
    let ctx = d.context().clone();
    require_three_fiber_variables(&ctx)?;
    let certified = CertifiedDerivation::new(d.clone(), DEFAULT_NILPOTENCY_CAP)?;
    let slice = Slice::new(&certified, s)?;
    let images = ctx
        .fiber_indices()
        .map(|i| dixmier_projection(&certified, &slice, &Polynomial::var_at(&ctx, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut annihilated = true;
    for g in &images {
        annihilated &= certified.apply(g)?.is_zero();
    }
    annihilated &= dixmier_projection(&certified, &slice, slice.polynomial())?.is_zero();
    let annihilation = if annihilated { Verdict::Pass } else { Verdict::Fail };

    let mut gens = images.clone();
    gens.push(slice.polynomial().clone());
    let labels: Vec<String> = ctx
        .fiber_indices()
        .map(|i| format!("pi_{}", ctx.name(i)))
        .chain(std::iter::once("s".to_string()))
        .collect();
    let (generation, generation_witnesses) = match SubalgebraDecider::with_labels(&gens, None, &labels, budget) {
        Ok(decider) => {
            let mut verdicts = Vec::new();
            let mut witnesses = Vec::new();
            for i in ctx.fiber_indices() {
                let target = Polynomial::var_at(&ctx, i);
                match decider.decide(&target)? {
                    Membership::Member { witness } => {
                        let ok = decider.revalidate(&target, &witness)?;
                        verdicts.push(if ok { Verdict::Pass } else { Verdict::Fail });
                        witnesses.push(Some(witness));
                    }
                    Membership::NotMember => {
                        verdicts.push(Verdict::Fail);
                        witnesses.push(None);
                    }
                    Membership::Undetermined { .. } => {
                        verdicts.push(Verdict::Undetermined);
                        witnesses.push(None);
                    }
                }
            }
            (Verdict::worst(verdicts), witnesses)
        }
        Err(Error::Budget(_)) => (Verdict::Undetermined, vec![None; 3]),
        Err(e) => return Err(e),
    };

    Ok(SliceKernelResult {
        derivation: certified,
        slice,
        kernel_generators: images,
        two_generator_subset: None,
        annihilation,
        generation,
        generation_witnesses,
        polynomial_ring: None,
        pair_witness: None,
    })
}

/// Searches the three pairs of kernel generators for one that generates the
/// kernel over `R` and has a Jacobian of rank 2. A miss is `Undetermined`:
/// a generating pair always exists but need not be among these three.
pub fn certify_polynomial_ring(result: &SliceKernelResult, budget: Budget) -> Result<SliceKernelResult> {
    let mut out = result.clone();
    out.two_generator_subset = None;
    out.pair_witness = None;
    out.polynomial_ring = Some(Verdict::Undetermined);
    if result.generation != Verdict::Pass || result.annihilation != Verdict::Pass {
        return Ok(out);
    }
    let names = result.fiber_names();
    let ctx = result.derivation.context();
    for (i, j) in PAIRS {
        let pair = [result.kernel_generators[i].clone(), result.kernel_generators[j].clone()];
        if !jacobian_has_rank(&pair, &names, 2)? {
            continue;
        }
        let third = 3 - i - j;
        let labels = [format!("pi_{}", names[i]), format!("pi_{}", names[j])];
        let decider = match SubalgebraDecider::with_labels(&pair, None, &labels, budget) {
            Ok(d) => d,
            Err(Error::Budget(_)) => continue,
            Err(e) => return Err(e),
        };
        let target = &result.kernel_generators[third];
        debug_assert_eq!(target.context(), ctx);
        if let Membership::Member { witness } = decider.decide(target)? {
            if decider.revalidate(target, &witness)? {
                out.two_generator_subset = Some((i, j));
                out.pair_witness = Some(witness);
                out.polynomial_ring = Some(Verdict::Pass);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// `det ∂(g₁, g₂, s)/∂(x, y, z)` must be a nonzero rational: the units of
/// `R = ℚ[coefficients]`.
pub fn stably_free_shadow(g1: &Polynomial, g2: &Polynomial, s: &Polynomial, subject: &str) -> Result<CheckReport> {
    let ctx = g1.context();
    require_three_fiber_variables(ctx)?;
    let names: Vec<&str> = ctx.fiber_indices().map(|i| ctx.name(i)).collect();
    let det = jacobian_det(&[g1.clone(), g2.clone(), s.clone()], &names)?;
    let unit = det.as_constant().is_some_and(|c| !num_traits::Zero::is_zero(&c));
    let verdict = if unit { Verdict::Pass } else { Verdict::Fail };
    Ok(CheckReport::new("stably_free_shadow", subject, verdict).witness("determinant", det.to_string()))
}

/// The shadow check for a result with a certified pair; `Undetermined` without one.
pub fn check_stably_free_shadow(result: &SliceKernelResult, subject: &str) -> Result<CheckReport> {
    match result.two_generator_subset {
        Some((i, j)) => stably_free_shadow(
            &result.kernel_generators[i],
            &result.kernel_generators[j],
            result.slice.polynomial(),
            subject,
        ),
        None => Ok(CheckReport::new("stably_free_shadow", subject, Verdict::Undetermined)
            .witness("reason", "no certified pair")),
    }
}

/// Shape of random triangular instances.
#[derive(Clone, Copy, Debug)]
pub struct TriangularParams {
    /// Total degree of the random parts of `D(σ₁)`, `D(σ₂)`.
    pub degree: u32,
    /// Coefficients are drawn from `−bound..=bound`.
    pub coefficient_bound: i64,
}

impl Default for TriangularParams {
    fn default() -> Self {
        TriangularParams {
            degree: 2,
            coefficient_bound: 3,
        }
    }
}

/// `ℚ[a, b][x, y, z]`.
pub fn default_context() -> VarContext {
    VarContext::with_coefficients(&["a", "b", "x", "y", "z"], 2).expect("static context")
}

fn random_poly<R: Rng>(rng: &mut R, ctx: &VarContext, vars: &[usize], degree: u32, bound: i64) -> Polynomial {
    let mut monomials = vec![vec![0u32; ctx.arity()]];
    for _ in 0..degree {
        let mut next = monomials.clone();
        for m in &monomials {
            for &v in vars {
                let mut e = m.clone();
                e[v] += 1;
                if !next.contains(&e) {
                    next.push(e);
                }
            }
        }
        monomials = next;
    }
    let terms = monomials.into_iter().filter_map(|e| {
        if rng.gen_bool(0.4) {
            Some((Monomial::from_exponents(e), int(rng.gen_range(-bound..=bound))))
        } else {
            None
        }
    });
    Polynomial::from_terms(ctx, terms)
}

/// A random triangular LND with a slice: for a random ordering `σ` of the
/// fiber variables, `D(σ₀) = c ≠ 0`, `D(σ₁) ∈ R[σ₀]`, `D(σ₂) ∈ R[σ₀, σ₁]`,
/// and `s = σ₀/c + k` with `k ∈ R`.
pub fn random_triangular_instance<R: Rng>(rng: &mut R, params: TriangularParams) -> (Derivation, Polynomial) {
    let ctx = default_context();
    let mut order: Vec<usize> = ctx.fiber_indices().collect();
    order.shuffle(rng);
    let coeffs: Vec<usize> = (0..ctx.coefficient_block()).collect();
    let units = [int(1), int(-1), int(2), frac(1, 2), frac(-3, 2)];
    let c: Rational = units[rng.gen_range(0..units.len())].clone();

    let mut images = vec![Polynomial::zero(&ctx); 3];
    let cb = ctx.coefficient_block();
    images[order[0] - cb] = Polynomial::constant(&ctx, c.clone());
    let mut vars1 = coeffs.clone();
    vars1.push(order[0]);
    images[order[1] - cb] = random_poly(rng, &ctx, &vars1, params.degree, params.coefficient_bound);
    let mut vars2 = vars1.clone();
    vars2.push(order[1]);
    images[order[2] - cb] = random_poly(rng, &ctx, &vars2, params.degree, params.coefficient_bound);
    let d = Derivation::new(&ctx, images).expect("images in context");

    let k = random_poly(rng, &ctx, &coeffs, 1, params.coefficient_bound);
    let s = &Polynomial::var_at(&ctx, order[0]).scale(&c.recip()) + &k;
    (d, s)
}

/// Instance `index` of the battery seeded by `seed`; reproducible for a fixed build.
pub fn seeded_instance(seed: u64, index: u64) -> (Derivation, Polynomial) {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index);
    random_triangular_instance(&mut rng, TriangularParams::default())
}
