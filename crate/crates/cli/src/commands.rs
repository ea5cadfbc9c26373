use std::collections::BTreeMap;

use serde_json::{json, Value};
use venlab::derivation::{
    dixmier_projection, exp_automorphism, CertificateStatus, CertifiedDerivation, Derivation, Slice,
};
use venlab::groebner::{buchberger, Budget, GroebnerBasis, Membership, SubalgebraDecider};
use venlab::report::{CheckReport, Verdict};
use venlab::slice_kernel::{certify_polynomial_ring, check_stably_free_shadow, kernel_from_slice, seeded_instance};
use venlab::venereau::{
    check_fibers, check_jacobian, check_localized, check_residual, default_fiber_samples, family_with, q_context,
    Family, VenereauSpec, WConvention,
};
use venlab::{Error, PolyMap, Polynomial, Rational, VarContext};

use crate::input;
use crate::{Cli, Command, GroebnerCommand, Global, LndCommand, MemberCommand, PolyCommand, SpecArgs, VenereauCommand};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::usage(message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget(_) | Error::NotCertified => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Poly(c) => poly(g, c),
        Command::Groebner(GroebnerCommand::Basis { gens }) => groebner_basis(g, gens),
        Command::Member(c) => member(g, c),
        Command::Lnd(c) => lnd(g, c),
        Command::Venereau(c) => venereau(g, c),
    }
}

fn emit_reports(reports: &[CheckReport]) -> Outcome {
    for r in reports {
        println!("{}", r.to_json_line());
    }
    let verdict = Verdict::worst(reports.iter().map(|r| r.verdict));
    Ok(verdict.exit_code() as u8)
}

fn emit_value(g: &Global, f: &Polynomial) -> Outcome {
    if g.json {
        println!("{}", json!({ "value": f.to_string_in(g.order) }));
    } else {
        println!("{}", f.to_string_in(g.order));
    }
    Ok(0)
}

fn emit_images(g: &Global, names: &[&str], images: &[Polynomial]) -> Outcome {
    if g.json {
        let map: BTreeMap<&str, String> = names.iter().copied().zip(images.iter().map(|p| p.to_string_in(g.order))).collect();
        println!("{}", json!({ "images": map }));
    } else {
        for (n, p) in names.iter().zip(images) {
            println!("{n} -> {}", p.to_string_in(g.order));
        }
    }
    Ok(0)
}

fn poly(g: &Global, c: &PolyCommand) -> Outcome {
    match c {
        PolyCommand::Eval { f, at } => {
            let at: Vec<&str> = at.iter().map(String::as_str).collect();
            let pairs = input::assignments(&at)?;
            let mut texts = vec![f.as_str()];
            texts.extend(pairs.iter().map(|(n, _)| n.as_str()));
            let ctx = input::context_for(g, &texts, &[])?;
            let mut value = input::poly(f, &ctx)?;
            for (name, v) in &pairs {
                let q: Rational = v.parse().map_err(|_| Failure::usage(format!("`{v}` is not a rational")))?;
                value = value.specialize(ctx.require(name)?, &q);
            }
            emit_value(g, &value)
        }
        PolyCommand::Diff { f, var } => {
            let ctx = input::context_for(g, &[f, var], &[])?;
            emit_value(g, &input::poly(f, &ctx)?.partial(var)?)
        }
        PolyCommand::Compose { f, map } => {
            let pairs = input::assignments(&input::split(map))?;
            let mut texts = vec![f.as_str()];
            for (n, v) in &pairs {
                texts.push(n);
                texts.push(v);
            }
            let ctx = input::context_for(g, &texts, &[])?;
            let images = pairs
                .iter()
                .map(|(n, v)| Ok((n.as_str(), input::poly(v, &ctx)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let m = PolyMap::from_assignments(&ctx, &ctx, &images)?;
            emit_value(g, &m.apply(&input::poly(f, &ctx)?)?)
        }
        PolyCommand::Print { f } => {
            let ctx = input::context_for(g, &[f], &[])?;
            emit_value(g, &input::poly(f, &ctx)?)
        }
    }
}

fn basis_or_undetermined(gens: &[Polynomial], g: &Global) -> Result<Result<GroebnerBasis, String>, Failure> {
    match buchberger(gens, g.order, g.budget()) {
        Ok(gb) => Ok(Ok(gb)),
        Err(Error::Budget(reason)) => Ok(Err(reason)),
        Err(e) => Err(e.into()),
    }
}

fn groebner_basis(g: &Global, gens: &str) -> Outcome {
    let ctx = input::context_for(g, &input::split(gens), &[])?;
    let gens = input::list(gens, &ctx)?;
    let gb = match basis_or_undetermined(&gens, g)? {
        Ok(gb) => gb,
        Err(reason) => {
            eprintln!("venlab: budget exhausted: {reason}");
            return Ok(Verdict::Undetermined.exit_code() as u8);
        }
    };
    if g.json || g.emit_basis {
        println!("{}", serde_json::to_string(&gb.descriptor()).expect("descriptor serializes"));
    } else {
        for p in gb.generators() {
            println!("{}", p.to_string_in(g.order));
        }
    }
    Ok(0)
}

fn budget_stats(report: CheckReport, b: Budget) -> CheckReport {
    report
        .stat("budget_max_degree", b.max_degree)
        .stat("budget_max_basis", b.max_basis as u64)
}

fn member(g: &Global, c: &MemberCommand) -> Outcome {
    match c {
        MemberCommand::Ideal { f, gens } => {
            let mut texts = vec![f.as_str()];
            texts.extend(input::split(gens));
            let ctx = input::context_for(g, &texts, &[])?;
            let target = input::poly(f, &ctx)?;
            let gens = input::list(gens, &ctx)?;
            let subject = target.to_string();
            let report = match basis_or_undetermined(&gens, g)? {
                Err(reason) => CheckReport::new("ideal_member", &subject, Verdict::Undetermined).witness("reason", reason),
                Ok(gb) => {
                    let nf = gb.normal_form(&target)?;
                    let verdict = if nf.is_zero() { Verdict::Pass } else { Verdict::Fail };
                    let mut r = CheckReport::new("ideal_member", &subject, verdict)
                        .witness("normal_form", nf.to_string_in(g.order))
                        .stat("basis_size", gb.generators().len() as u64);
                    if g.emit_basis {
                        r = r.witness("basis", serde_json::to_value(gb.descriptor()).unwrap());
                    }
                    r
                }
            };
            emit_reports(&[budget_stats(report, g.budget())])
        }
        MemberCommand::Subalgebra { f, gens, invert } => {
            let mut texts = vec![f.as_str()];
            texts.extend(input::split(gens));
            let extra: Vec<&str> = invert.iter().map(String::as_str).collect();
            let ctx = input::context_for(g, &texts, &extra)?;
            let target = input::poly(f, &ctx)?;
            let gens = input::list(gens, &ctx)?;
            let subject = target.to_string();
            let decider = match SubalgebraDecider::new(&gens, invert.as_deref(), g.budget()) {
                Ok(d) => d,
                Err(Error::Budget(reason)) => {
                    let r = CheckReport::new("subalgebra_member", &subject, Verdict::Undetermined).witness("reason", reason);
                    return emit_reports(&[budget_stats(r, g.budget())]);
                }
                Err(e) => return Err(e.into()),
            };
            let mut report = match decider.decide(&target)? {
                Membership::Member { witness } => {
                    let ok = decider.revalidate(&target, &witness)?;
                    let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                    CheckReport::new("subalgebra_member", &subject, verdict)
                        .witness("expression", witness.to_string())
                        .witness("revalidated", ok)
                }
                Membership::NotMember => CheckReport::new("subalgebra_member", &subject, Verdict::Fail),
                Membership::Undetermined { reason } => {
                    CheckReport::new("subalgebra_member", &subject, Verdict::Undetermined).witness("reason", reason)
                }
            };
            let labels: Vec<Value> = decider
                .witness_context()
                .names()
                .iter()
                .zip(decider.generators())
                .map(|(l, p)| json!([l, p.to_string()]))
                .collect();
            report = report
                .witness("generators", Value::Array(labels))
                .stat("basis_size", decider.basis().generators().len() as u64);
            if g.emit_basis {
                report = report.witness("basis", serde_json::to_value(decider.basis().descriptor()).unwrap());
            }
            emit_reports(&[budget_stats(report, g.budget())])
        }
    }
}

fn certified(d: Derivation, cap: u32) -> Result<CertifiedDerivation, Failure> {
    CertifiedDerivation::new(d, cap).map_err(|_| Failure {
        code: 2,
        message: format!("derivation not certified locally nilpotent within {cap} iterations"),
    })
}

fn fiber_names(ctx: &VarContext) -> Vec<&str> {
    ctx.fiber_indices().map(|i| ctx.name(i)).collect()
}

fn lnd(g: &Global, c: &LndCommand) -> Outcome {
    match c {
        LndCommand::Apply { d, f, times } => {
            let der = input::derivation(&d.derivation)?;
            let f = input::poly(f, der.context())?;
            emit_value(g, &der.apply_n(&f, *times)?)
        }
        LndCommand::Nilpotent { d } => {
            let der = input::derivation(&d.derivation)?;
            let cert = der.certify_nilpotent(d.cap);
            let verdict = match cert.status {
                CertificateStatus::Certified => Verdict::Pass,
                CertificateStatus::Undetermined => Verdict::Undetermined,
            };
            let indices: serde_json::Map<String, Value> = cert
                .variables
                .iter()
                .zip(&cert.indices)
                .map(|(v, n)| (v.clone(), n.map_or(Value::Null, Value::from)))
                .collect();
            let report = CheckReport::new("nilpotent", &d.derivation.display().to_string(), verdict)
                .witness("indices", Value::Object(indices))
                .stat("cap", d.cap);
            emit_reports(&[report])
        }
        LndCommand::Exp { d, t, f } => {
            let der = certified(input::derivation(&d.derivation)?, d.cap)?;
            let ctx = der.context().clone();
            let map = exp_automorphism(&der, &input::poly(t, &ctx)?)?;
            match f {
                Some(f) => emit_value(g, &map.apply(&input::poly(f, &ctx)?)?),
                None => {
                    let images: Vec<Polynomial> = ctx.fiber_indices().map(|i| map.image(i).clone()).collect();
                    emit_images(g, &fiber_names(&ctx), &images)
                }
            }
        }
        LndCommand::Dixmier { d, slice, f } => {
            let der = certified(input::derivation(&d.derivation)?, d.cap)?;
            let ctx = der.context().clone();
            let slice = Slice::new(&der, &input::poly(slice, &ctx)?)?;
            match f {
                Some(f) => emit_value(g, &dixmier_projection(&der, &slice, &input::poly(f, &ctx)?)?),
                None => {
                    let images = ctx
                        .fiber_indices()
                        .map(|i| dixmier_projection(&der, &slice, &Polynomial::var_at(&ctx, i)))
                        .collect::<Result<Vec<_>, _>>()?;
                    emit_images(g, &fiber_names(&ctx), &images)
                }
            }
        }
        LndCommand::Kernel { derivation, slice, random } => {
            let budget = g.budget();
            let run = |d: &Derivation, s: &Polynomial, subject: &str| -> Result<Vec<CheckReport>, Failure> {
                let result = certify_polynomial_ring(&kernel_from_slice(d, s, budget)?, budget)?;
                Ok(vec![result.to_report(subject), check_stably_free_shadow(&result, subject)?])
            };
            let mut reports = Vec::new();
            match (random, derivation, slice) {
                (Some(n), _, _) => {
                    for i in 0..u64::from(*n) {
                        let (d, s) = seeded_instance(g.seed, i);
                        let subject = format!("random-{}-{i}", g.seed);
                        let mut rs = run(&d, &s, &subject)?;
                        rs[0] = rs[0].clone().witness("derivation", d.to_string());
                        reports.extend(rs);
                    }
                }
                (None, Some(path), Some(slice)) => {
                    let d = input::derivation(path)?;
                    let s = input::poly(slice, d.context())?;
                    reports = run(&d, &s, &path.display().to_string())?;
                }
                _ => return Err(Failure::usage("lnd kernel needs --derivation and --slice, or --random")),
            }
            emit_reports(&reports)
        }
    }
}

fn convention(spec: &SpecArgs) -> WConvention {
    match spec.w_convention.as_str() {
        "printed" => WConvention::AsPrinted,
        _ => WConvention::Scaled,
    }
}

fn build_spec(spec: &SpecArgs) -> Result<VenereauSpec, Failure> {
    match &spec.family {
        Some(name) => {
            let which = Family::from_name(name, spec.n, &spec.r, &spec.s, &spec.q, &spec.q2)?;
            Ok(family_with(&which, convention(spec))?)
        }
        None => {
            let xctx = VarContext::new(&["x"])?;
            let r = input::poly(&spec.r, &xctx)?;
            let s = input::poly(&spec.s, &xctx)?;
            let q = input::poly(&spec.q, &q_context())?;
            Ok(VenereauSpec::build_with("custom", &r, &s, &q, convention(spec))?)
        }
    }
}

fn emit_spec(g: &Global, spec: &VenereauSpec) -> Outcome {
    let fields = [
        ("r", spec.r()),
        ("s", spec.s()),
        ("Q", spec.q()),
        ("lambda", spec.lambda()),
        ("p", spec.p()),
        ("v", spec.v()),
        ("w", spec.w()),
        ("h", spec.h()),
    ];
    if g.json {
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), spec.name().into());
        for (k, p) in fields {
            obj.insert(k.into(), p.to_string_in(g.order).into());
        }
        println!("{}", Value::Object(obj));
    } else {
        println!("# {}", spec.name());
        for (k, p) in fields {
            println!("{k} = {}", p.to_string_in(g.order));
        }
    }
    Ok(0)
}

fn samples(texts: &[String]) -> Result<Vec<(Rational, Rational)>, Failure> {
    if texts.is_empty() {
        return Ok(default_fiber_samples());
    }
    texts
        .iter()
        .map(|t| {
            let (c, d) = t
                .split_once(':')
                .ok_or_else(|| Failure::usage(format!("sample `{t}` is not of the form c:d")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<Rational>()
                    .map_err(|_| Failure::usage(format!("`{s}` is not a rational")))
            };
            Ok((parse(c)?, parse(d)?))
        })
        .collect()
}

fn venereau(g: &Global, c: &VenereauCommand) -> Outcome {
    match c {
        VenereauCommand::Build { spec } => {
            if spec.family.is_some() {
                return Err(Failure::usage("use `venereau family` for named families"));
            }
            emit_spec(g, &build_spec(spec)?)
        }
        VenereauCommand::Family { spec } => {
            if spec.family.is_none() {
                return Err(Failure::usage("`venereau family` needs --family"));
            }
            emit_spec(g, &build_spec(spec)?)
        }
        VenereauCommand::Verify { spec, checks, samples: pts } => {
            let spec = build_spec(spec)?;
            let want = |name: &str| checks.iter().any(|c| c == name);
            let points = samples(pts)?;
            let mut reports = Vec::new();
            if want("residual") {
                reports.push(check_residual(&spec)?);
            }
            let localized = if want("localized") || want("fibers") {
                Some(check_localized(&spec, g.budget())?)
            } else {
                None
            };
            if want("localized") {
                reports.push(localized.as_ref().unwrap().report.clone());
            }
            if want("jacobian") {
                reports.push(check_jacobian(&spec)?);
            }
            if want("fibers") {
                reports.push(check_fibers(&spec, &points, localized.as_ref().unwrap())?);
            }
            emit_reports(&reports)
        }
    }
}
