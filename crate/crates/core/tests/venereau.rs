mod common;

use std::path::PathBuf;

use common::five_specs;
use venlab::groebner::Budget;
use venlab::jacobian::jacobian_det;
use venlab::parse::parse_polynomial;
use venlab::rational::int;
use venlab::report::{CheckReport, Verdict};
use venlab::venereau::{
    check_fibers, check_jacobian, check_localized, check_residual, default_fiber_samples, family, q_context, spec_context,
    Family, VenereauSpec, WConvention,
};
use venlab::{PolyMap, Polynomial, Rational, VarContext};

fn p(ctx: &VarContext, s: &str) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

/// Frozen `(c, m)` with `det ∂(h, v, w)/∂(y, z, u) = c·xᵐ`.
const JACOBIAN_GOLDEN: [(&str, &str, u64); 5] =
    [("v1", "1", 3), ("v2", "1", 3), ("v3", "1", 3), ("b1", "1", 3), ("generic", "1", 3)];

#[test]
fn jacobian_golden_values() {
    for (spec, (name, c, m)) in five_specs().iter().zip(JACOBIAN_GOLDEN) {
        let report = check_jacobian(spec).unwrap();
        assert_eq!(report.subject, name);
        assert_eq!(report.verdict, Verdict::Pass, "{name}: {:?}", report.witnesses);
        assert_eq!(report.witnesses["c"], c);
        assert_eq!(report.witnesses["m"], m);
    }
}

#[test]
fn identity_and_triangular_jacobians() {
    let ctx = spec_context();
    let vars = ["y", "z", "u"];
    assert_eq!(jacobian_det(&[p(&ctx, "y"), p(&ctx, "z"), p(&ctx, "u")], &vars).unwrap(), p(&ctx, "1"));
    assert_eq!(jacobian_det(&[p(&ctx, "y + x*z"), p(&ctx, "z"), p(&ctx, "u")], &vars).unwrap(), p(&ctx, "1"));
    assert!(jacobian_det(&[p(&ctx, "y"), p(&ctx, "z")], &vars).is_err());
}

#[test]
fn residual_identity_and_its_witness() {
    let specs = five_specs();
    for spec in &specs {
        assert_eq!(check_residual(spec).unwrap().verdict, Verdict::Pass, "{}", spec.name());
    }
    let ctx = spec_context();
    let v1 = &specs[0];
    assert_eq!(*v1.h(), p(&ctx, "y + x*(x*z + y*(y*u + z^2))"));
    let report = check_residual(v1).unwrap();
    let quotient = report.witnesses["h_minus_y_over_x"].as_str().unwrap();
    assert_eq!(p(&ctx, quotient), p(&ctx, "x*z + y*(y*u + z^2)"));
}

#[test]
fn family_members_match_their_closed_forms() {
    let ctx = spec_context();
    let v3 = family(&Family::Venereau { n: 3 }).unwrap();
    assert_eq!(*v3.h(), p(&ctx, "y + x^3*(x*z + y*(y*u + z^2))"));
    let b2 = family(&Family::BhatwadekarDutta { n: 2 }).unwrap();
    assert_eq!(*b2.h(), p(&ctx, "y + x^2*(x*z + y*(y*u + z^2 + z))"));
    let lewis = family(&Family::Lewis { q: p(&q_context(), "V"), q2: Polynomial::zero(&q_context()) }).unwrap();
    assert_eq!(*lewis.h(), &p(&ctx, "y") + &(&p(&ctx, "x^2") * lewis.v()));
    assert!(family(&Family::Venereau { n: 0 }).is_err());
    for spec in [&v3, &b2, &lewis] {
        assert!(spec.reproduces_definitions());
        assert_eq!(check_residual(spec).unwrap().verdict, Verdict::Pass);
    }
}

#[test]
fn localized_witnesses_reproduce_the_variables() {
    for spec in five_specs() {
        let check = check_localized(&spec, Budget::default()).unwrap();
        assert_eq!(check.report.verdict, Verdict::Pass, "{}", spec.name());
        let w = check.witnesses.unwrap();
        let wctx = &w.context;
        assert!(common::localized_witnesses_resubstitute(&spec, &w), "{}", spec.name());
        // the y witness is the rearranged definition y = h − x·Q(x, v, w)
        let q_in_witness = PolyMap::new(
            &q_context(),
            wctx,
            vec![p(wctx, "x"), p(wctx, "v"), p(wctx, "w")],
        )
        .unwrap()
        .apply(spec.q())
        .unwrap();
        assert_eq!(w.y, &p(wctx, "h") - &(&p(wctx, "x") * &q_in_witness));
    }
}

#[test]
fn localized_pass_implies_jacobian_pass() {
    let mut specs = five_specs();
    specs.push(family(&Family::BhatwadekarDutta { n: 2 }).unwrap());
    specs.push(VenereauSpec::parse("df", "x^2 - 1", "x", "x*V").unwrap());
    for spec in specs {
        let localized = check_localized(&spec, Budget::default()).unwrap().report.verdict;
        if localized == Verdict::Pass {
            assert_eq!(check_jacobian(&spec).unwrap().verdict, Verdict::Pass, "{}", spec.name());
        }
    }
}

#[test]
fn corrupted_specs_fail() {
    let ctx = spec_context();
    let v1 = family(&Family::Venereau { n: 1 }).unwrap();
    let bad_h = v1.clone().with_h(p(&ctx, "y + z")).unwrap();
    assert_eq!(check_residual(&bad_h).unwrap().verdict, Verdict::Fail);
    let bad_w = v1.clone().with_w(v1.w() + &p(&ctx, "y^2*z")).unwrap();
    assert_eq!(check_jacobian(&bad_w).unwrap().verdict, Verdict::Fail);
    assert_ne!(check_localized(&bad_w, Budget::default()).unwrap().report.verdict, Verdict::Pass);
}

#[test]
fn printed_w_convention_is_not_a_coordinate_system() {
    let xctx = VarContext::new(&["x"]).unwrap();
    let zero = Polynomial::zero(&xctx);
    let q = p(&q_context(), "V");
    let printed = VenereauSpec::build_with("v1-printed", &zero, &zero, &q, WConvention::AsPrinted).unwrap();
    assert_eq!(*printed.w(), p(&spec_context(), "x^2*u - 4*z*(y*u + z^2) - y*(y*u + z^2)^2"));
    assert_eq!(check_jacobian(&printed).unwrap().verdict, Verdict::Fail);
    assert_ne!(check_localized(&printed, Budget::default()).unwrap().report.verdict, Verdict::Pass);
    // the residual identity does not see w
    assert_eq!(check_residual(&printed).unwrap().verdict, Verdict::Pass);
}

fn samples(points: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
    points.iter().map(|&(c, d)| (int(c), int(d))).collect()
}

#[test]
fn fibers_of_v1() {
    let v1 = family(&Family::Venereau { n: 1 }).unwrap();
    let localized = check_localized(&v1, Budget::default()).unwrap();
    let report = check_fibers(&v1, &samples(&[(0, 0), (0, 1), (1, 0), (2, 1)]), &localized).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    let entries = report.witnesses["samples"].as_array().unwrap();
    assert_eq!(entries[0]["method"], "residual");
    assert_eq!(entries[0]["eliminated"], "y");
    assert_eq!(entries[2]["method"], "localized witnesses");
    let all = check_fibers(&v1, &default_fiber_samples(), &localized).unwrap();
    assert_eq!(all.verdict, Verdict::Pass);
}

#[test]
fn starved_budget_propagates_to_fibers() {
    let v1 = family(&Family::Venereau { n: 1 }).unwrap();
    let starved = Budget { max_basis: 2, max_degree: 3, max_reduction_steps: 50 };
    let localized = check_localized(&v1, starved).unwrap();
    assert_eq!(localized.report.verdict, Verdict::Undetermined);
    let report = check_fibers(&v1, &samples(&[(0, 0), (1, 0)]), &localized).unwrap();
    assert_eq!(report.verdict, Verdict::Undetermined);
    let entries = report.witnesses["samples"].as_array().unwrap();
    assert_eq!(entries[0]["verdict"], "pass");
    assert_eq!(entries[1]["verdict"], "undetermined");
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/v1")
}

fn spec_reports(spec: &VenereauSpec) -> Vec<CheckReport> {
    let localized = check_localized(spec, Budget::default()).unwrap();
    vec![
        check_residual(spec).unwrap(),
        localized.report.clone(),
        check_jacobian(spec).unwrap(),
        check_fibers(spec, &default_fiber_samples(), &localized).unwrap(),
    ]
}

/// Reports for the named families are frozen under `tests/data/v1`.
/// Set `VENLAB_BLESS=1` to rewrite them.
#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("VENLAB_BLESS").is_some();
    let mut specs = five_specs();
    specs.push(family(&Family::BhatwadekarDutta { n: 2 }).unwrap());
    for spec in specs {
        let text: String = spec_reports(&spec).iter().map(|r| r.to_json_line() + "\n").collect();
        let path = golden_dir().join(format!("{}.jsonl", spec.name()));
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {path:?}"));
        assert_eq!(text, expected, "{} drifted from {path:?}", spec.name());
    }
}
