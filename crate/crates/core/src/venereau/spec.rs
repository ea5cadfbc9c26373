use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::rational::int;

/// How `w` is built from `p` and `∂λ/∂z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WConvention {
    /// `w = x²u − x·(∂λ/∂z)·p − y·p²`, the image of `x²u` under the
    /// exponential of the triangular derivation `z ↦ y, u ↦ −∂λ/∂z` at `p/x`.
    #[default]
    Scaled,
    /// `w = x²u − 2·(∂λ/∂z)·p − y·p²`. Does not give a coordinate system over
    /// `k[x]ₓ`; kept as a negative control.
    AsPrinted,
}

/// The ring `k[x][y, z, u]`, with `x` as the coefficient variable.
pub fn spec_context() -> VarContext {
    VarContext::with_coefficients(&["x", "y", "z", "u"], 1).expect("static context")
}

/// The ring `k[x][V, W]` in which `Q` is written.
pub fn q_context() -> VarContext {
    VarContext::with_coefficients(&["x", "V", "W"], 1).expect("static context")
}

/// Data `(r, s, Q)` and the derived `λ, p, v, w, h`.
#[derive(Clone, Debug)]
pub struct VenereauSpec {
    name: String,
    convention: WConvention,
    r: Polynomial,
    s: Polynomial,
    q: Polynomial,
    lambda: Polynomial,
    p: Polynomial,
    v: Polynomial,
    w: Polynomial,
    h: Polynomial,
}

fn only_x(f: &Polynomial, ctx: &VarContext, what: &str) -> Result<Polynomial> {
    let g = f
        .embed(ctx)
        .map_err(|_| Error::Invalid(format!("{what} must be a polynomial in x")))?;
    if (1..ctx.arity()).any(|i| g.depends_on(i)) {
        return Err(Error::Invalid(format!("{what} must be a polynomial in x")));
    }
    Ok(g)
}

impl VenereauSpec {
    pub fn build(name: &str, r: &Polynomial, s: &Polynomial, q: &Polynomial) -> Result<Self> {
        Self::build_with(name, r, s, q, WConvention::Scaled)
    }

    pub fn build_with(
        name: &str,
        r: &Polynomial,
        s: &Polynomial,
        q: &Polynomial,
        convention: WConvention,
    ) -> Result<Self> {
        let ctx = spec_context();
        let qctx = q_context();
        let r = only_x(r, &ctx, "r")?;
        let s = only_x(s, &ctx, "s")?;
        let q = q
            .embed(&qctx)
            .map_err(|_| Error::Invalid("Q must be a polynomial in x, V, W".into()))?;
        let var = |n: &str| Polynomial::var(&ctx, n).expect("spec variable");
        let (x, y, z, u) = (var("x"), var("y"), var("z"), var("u"));

        let lambda = &(&z.pow(2) + &(&r * &z)) + &s;
        let p = &(&y * &u) + &lambda;
        let v = &(&x * &z) + &(&y * &p);
        let dlambda = lambda.partial("z")?;
        let factor = match convention {
            WConvention::Scaled => x.clone(),
            WConvention::AsPrinted => Polynomial::constant(&ctx, int(2)),
        };
        let w = &(&(&x.pow(2) * &u) - &(&(&factor * &dlambda) * &p)) - &(&y * &p.pow(2));
        let h = &y + &(&x * &Self::eval_q(&q, &x, &v, &w)?);
        Ok(VenereauSpec {
            name: name.to_string(),
            convention,
            r,
            s,
            q,
            lambda,
            p,
            v,
            w,
            h,
        })
    }

    /// Parses `r`, `s` (in `x`) and `Q` (in `x, V, W`).
    pub fn parse(name: &str, r: &str, s: &str, q: &str) -> Result<Self> {
        let xctx = VarContext::new(&["x"])?;
        Self::build(
            name,
            &parse_polynomial(r, &xctx)?,
            &parse_polynomial(s, &xctx)?,
            &parse_polynomial(q, &q_context())?,
        )
    }

    fn eval_q(q: &Polynomial, x: &Polynomial, v: &Polynomial, w: &Polynomial) -> Result<Polynomial> {
        let map = PolyMap::new(&q_context(), x.context(), vec![x.clone(), v.clone(), w.clone()])?;
        map.apply(q)
    }

    /// Recomputes every derived polynomial from `(r, s, Q)` and compares.
    pub fn reproduces_definitions(&self) -> bool {
        match Self::build_with(&self.name, &self.r, &self.s, &self.q, self.convention) {
            Ok(fresh) => {
                fresh.lambda == self.lambda
                    && fresh.p == self.p
                    && fresh.v == self.v
                    && fresh.w == self.w
                    && fresh.h == self.h
            }
            Err(_) => false,
        }
    }

    /// Replaces `h`; used to build negative controls.
    pub fn with_h(mut self, h: Polynomial) -> Result<Self> {
        self.h = h.embed(&spec_context())?;
        self.name = format!("{}[h corrupted]", self.name);
        Ok(self)
    }

    /// Replaces `w`; used to build negative controls.
    pub fn with_w(mut self, w: Polynomial) -> Result<Self> {
        self.w = w.embed(&spec_context())?;
        self.name = format!("{}[w corrupted]", self.name);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &VarContext {
        self.h.context()
    }

    pub fn convention(&self) -> WConvention {
        self.convention
    }

    pub fn r(&self) -> &Polynomial {
        &self.r
    }

    pub fn s(&self) -> &Polynomial {
        &self.s
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn lambda(&self) -> &Polynomial {
        &self.lambda
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn v(&self) -> &Polynomial {
        &self.v
    }

    pub fn w(&self) -> &Polynomial {
        &self.w
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    /// `(h, v, w)`, the candidate coordinate system over `k[x]ₓ`.
    pub fn system(&self) -> [Polynomial; 3] {
        [self.h.clone(), self.v.clone(), self.w.clone()]
    }
}
