mod common;

use common::{brute_force_member, context, random_instance, random_poly, rng};
use proptest::prelude::*;
use rand::Rng;
use venlab::groebner::{buchberger, ideal_member, normal_form, subalgebra_member, Budget, Membership, SubalgebraDecider};
use venlab::parse::parse_polynomial;
use venlab::rational::int;
use venlab::{MonomialOrder, Polynomial, VarContext};

#[test]
fn normal_form_agrees_with_linear_algebra_oracle() {
    let mut r = rng(1);
    for case in 0..60 {
        let inst = random_instance(&mut r);
        let gb = buchberger(&inst.gens, MonomialOrder::GrevLex, Budget::default()).unwrap();
        let by_nf = gb.contains(&inst.f).unwrap();
        assert_eq!(by_nf, brute_force_member(&inst.f, &inst.gens, 6), "case {case}: {:?} in {:?}", inst.f, inst.gens);
        if inst.constructed_member {
            assert!(by_nf);
        }
        let nf = gb.normal_form(&inst.f).unwrap();
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
    }
}

#[test]
fn bases_satisfy_buchberger_criterion_and_reducedness() {
    let mut r = rng(2);
    for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Elimination { split: 1 }] {
        for _ in 0..20 {
            let inst = random_instance(&mut r);
            let gb = buchberger(&inst.gens, order, Budget::default()).unwrap();
            assert!(gb.satisfies_buchberger_criterion());
            assert!(gb.satisfies_reducedness());
            for g in &inst.gens {
                assert!(gb.normal_form(g).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn basis_generates_the_same_ideal() {
    // each basis element is a combination of the input, checked independently
    let mut r = rng(3);
    for _ in 0..25 {
        let inst = random_instance(&mut r);
        let gb = buchberger(&inst.gens, MonomialOrder::Lex, Budget::default()).unwrap();
        for g in gb.generators() {
            assert!(brute_force_member(g, &inst.gens, 6), "{g:?} from {:?}", inst.gens);
        }
    }
}

#[test]
fn elimination_keeps_normal_forms_in_the_lower_block() {
    let mut r = rng(4);
    let ctx = context(4);
    for _ in 0..20 {
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut r, &ctx, 2, 4, 4)).collect();
        let split = r.gen_range(1..=2);
        let gb = match buchberger(&gens, MonomialOrder::Elimination { split }, Budget::default()) {
            Ok(gb) => gb,
            Err(_) => continue,
        };
        // inputs in the lower variables only
        let lower = VarContext::new(&ctx.names()[split..]).unwrap();
        let f = random_poly(&mut r, &lower, 3, 5, 5).embed(&ctx).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        for v in 0..split {
            assert!(!nf.depends_on(v), "{nf:?} mentions an eliminated variable");
        }
    }
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn normal_form_is_linear(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r);
        let ctx = inst.f.context().clone();
        let g = random_poly(&mut r, &ctx, 3, 4, 5);
        let gb = buchberger(&inst.gens, MonomialOrder::GrevLex, Budget::default()).unwrap();
        let nf = |p: &Polynomial| normal_form(p, &gb).unwrap();
        let combo = &inst.f.scale(&int(a)) + &g.scale(&int(b));
        prop_assert_eq!(nf(&combo), &nf(&inst.f).scale(&int(a)) + &nf(&g).scale(&int(b)));
    }

    #[test]
    fn subalgebra_witnesses_revalidate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = context(2);
        let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut r, &ctx, 2, 3, 3)).collect();
        // a polynomial expression in the generators
        let mut f = Polynomial::constant(&ctx, int(r.gen_range(-3..=3)));
        for _ in 0..2 {
            let g = &gens[r.gen_range(0..2)];
            let h = &gens[r.gen_range(0..2)];
            f = &f + &(&g.scale(&int(r.gen_range(-3..=3))) * h);
        }
        let budget = Budget { max_basis: 400, max_degree: 16, max_reduction_steps: 400_000 };
        let decider = match SubalgebraDecider::new(&gens, None, budget) {
            Ok(d) => d,
            Err(_) => return Ok(()),
        };
        match decider.decide(&f).unwrap() {
            Membership::Member { witness } => prop_assert!(decider.revalidate(&f, &witness).unwrap()),
            other => prop_assert!(false, "expected membership, got {:?}", other),
        }
        let g = random_poly(&mut r, &ctx, 2, 3, 3);
        if let Membership::Member { witness } = decider.decide(&g).unwrap() {
            prop_assert!(decider.revalidate(&g, &witness).unwrap());
        }
    }
}

fn p(ctx: &VarContext, s: &str) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

#[test]
fn ideal_membership_examples() {
    let ctx = VarContext::new(&["x", "y", "x_inv"]).unwrap();
    let b = Budget::default();
    assert!(ideal_member(&p(&ctx, "x^2 - 1"), &[p(&ctx, "x - 1")], b).unwrap());
    assert!(!ideal_member(&p(&ctx, "1"), &[p(&ctx, "x"), p(&ctx, "y")], b).unwrap());
    assert!(ideal_member(&p(&ctx, "1"), &[p(&ctx, "x*x_inv - 1"), p(&ctx, "x")], b).unwrap());
}

#[test]
fn lex_example_basis() {
    let ctx = context(2);
    let gb = buchberger(&[p(&ctx, "x*y - 1"), p(&ctx, "y^2 - 1")], MonomialOrder::Lex, Budget::default()).unwrap();
    assert_eq!(gb.descriptor().generators, vec!["y^2 - 1", "x - y"]);
    assert_eq!(gb.descriptor().order, "lex");
    // the oracle agrees on both generators
    for g in gb.generators() {
        assert!(brute_force_member(g, &[p(&ctx, "x*y - 1"), p(&ctx, "y^2 - 1")], 4));
    }
}

#[test]
fn subalgebra_examples() {
    let ctx = VarContext::new(&["z"]).unwrap();
    let gens = [p(&ctx, "z^2"), p(&ctx, "z^3")];
    let b = Budget::default();
    assert_eq!(subalgebra_member(&p(&ctx, "z"), &gens, None, b).unwrap(), Membership::NotMember);
    assert!(subalgebra_member(&p(&ctx, "z^5"), &gens, None, b).unwrap().is_member());
}
