use super::spec::{q_context, VenereauSpec, WConvention};
use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::context::VarContext;

/// Named families of Vénéreau-type polynomials.
#[derive(Clone, Debug)]
pub enum Family {
    /// `vₙ = y + xⁿ(xz + y(yu + z²))`.
    Venereau { n: u32 },
    /// `bₙ = y + xⁿ(xz + y(yu + z² + z))`.
    BhatwadekarDutta { n: u32 },
    /// `y + xⁿ·v` for `λ = z² + r(x)z + s(x)`.
    DaigleFreudenburg { n: u32, r: Polynomial, s: Polynomial },
    /// `y + x²·Q(x, v, w) + x³·v·Q₂(x, v², w)` with `λ = z²`.
    Lewis { q: Polynomial, q2: Polynomial },
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("family index n must be at least 1".into()));
    }
    Ok(())
}

fn x_power_v(n: u32) -> Polynomial {
    let qctx = q_context();
    let x = Polynomial::var(&qctx, "x").unwrap();
    &x.pow(n - 1) * &Polynomial::var(&qctx, "V").unwrap()
}

/// Builds the spec of a family member.
pub fn family(which: &Family) -> Result<VenereauSpec> {
    family_with(which, WConvention::Scaled)
}

/// [`family`] with an explicit convention for `w`.
pub fn family_with(which: &Family, convention: WConvention) -> Result<VenereauSpec> {
    let xctx = VarContext::new(&["x"])?;
    let zero = Polynomial::zero(&xctx);
    let one = Polynomial::one(&xctx);
    match which {
        Family::Venereau { n } => {
            check_n(*n)?;
            VenereauSpec::build_with(&format!("v{n}"), &zero, &zero, &x_power_v(*n), convention)
        }
        Family::BhatwadekarDutta { n } => {
            check_n(*n)?;
            VenereauSpec::build_with(&format!("b{n}"), &one, &zero, &x_power_v(*n), convention)
        }
        Family::DaigleFreudenburg { n, r, s } => {
            check_n(*n)?;
            VenereauSpec::build_with(&format!("df{n}"), r, s, &x_power_v(*n), convention)
        }
        Family::Lewis { q, q2 } => {
            let qctx = q_context();
            let q = q.embed(&qctx).map_err(|_| Error::Invalid("Q must be in x, V, W".into()))?;
            let q2 = q2.embed(&qctx).map_err(|_| Error::Invalid("Q2 must be in x, V, W".into()))?;
            let var = |n: &str| Polynomial::var(&qctx, n).unwrap();
            let (x, vv, ww) = (var("x"), var("V"), var("W"));
            let squared = PolyMap::new(&qctx, &qctx, vec![x.clone(), vv.pow(2), ww])?;
            // h = y + x·(x·Q + x²·V·Q₂(x, V², W))
            let total = &(&x * &q) + &(&(&x.pow(2) * &vv) * &squared.apply(&q2)?);
            VenereauSpec::build_with("lewis", &zero, &zero, &total, convention)
        }
    }
}

impl Family {
    /// Resolves a family by its command-line name.
    pub fn from_name(name: &str, n: Option<u32>, r: &str, s: &str, q: &str, q2: &str) -> Result<Self> {
        let xctx = VarContext::new(&["x"])?;
        let need_n = || n.ok_or_else(|| Error::Invalid(format!("family `{name}` needs --n")));
        match name {
            "venereau" => Ok(Family::Venereau { n: need_n()? }),
            "bhatwadekar-dutta" => Ok(Family::BhatwadekarDutta { n: need_n()? }),
            "daigle-freudenburg" => Ok(Family::DaigleFreudenburg {
                n: need_n()?,
                r: parse_polynomial(r, &xctx)?,
                s: parse_polynomial(s, &xctx)?,
            }),
            "lewis" => Ok(Family::Lewis {
                q: parse_polynomial(q, &q_context())?,
                q2: parse_polynomial(q2, &q_context())?,
            }),
            other => Err(Error::Invalid(format!("unknown family `{other}`"))),
        }
    }
}
