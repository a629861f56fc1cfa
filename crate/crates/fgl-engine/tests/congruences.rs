use ehh2_core::field::CoeffRing;
use ehh2_core::ring::{from_text, to_text};
use ehh2_core::{Poly, QuotientContext};
use fgl_engine::checks::*;
use fgl_engine::{solve_right_units, verify_congruence, w1, FglError, FormalGroupLaw, RightUnits, SigmaModel};
use proptest::prelude::*;
use std::sync::OnceLock;

struct Fixture {
    law: FormalGroupLaw,
    units: RightUnits,
    model: SigmaModel,
}

fn fx() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let law = FormalGroupLaw::new(3, 81).unwrap();
        let units = solve_right_units(&law, 4).unwrap();
        let model = SigmaModel::new(&units, 12).unwrap();
        Fixture { law, units, model }
    })
}

#[test]
fn right_unit_closed_forms() {
    let f = fx();
    for o in [right_unit_v1(&f.units), right_unit_v2(&f.units), right_unit_v3(&f.units)] {
        let o = o.unwrap();
        assert!(o.passed, "{}: {}", o.name, o.residual);
    }
}

#[test]
fn right_unit_v1_by_hand() {
    // at degree p the relation reads η_R(v1) x^p = v1 x^p
    let law = FormalGroupLaw::new(3, 3).unwrap();
    let units = solve_right_units(&law, 1).unwrap();
    assert_eq!(to_text(units.ctx(), units.eta(1).unwrap()), "1 * v1^1");
}

#[test]
fn right_unit_relation_has_zero_residual() {
    let f = fx();
    let o = right_unit_residual(&f.units, &f.law).unwrap();
    assert!(o.passed, "{}", o.residual);
}

#[test]
fn cap_too_small_for_generator() {
    let law = FormalGroupLaw::new(3, 27).unwrap();
    match solve_right_units(&law, 4) {
        Err(FglError::InsufficientCap { needed, .. }) => assert_eq!(needed, 81),
        other => panic!("{other:?}"),
    }
    let units = solve_right_units(&law, 3).unwrap();
    assert!(units.eta(4).is_err());
}

#[test]
fn t2_frobenius() {
    let o = t2_frobenius_congruence(&fx().units).unwrap();
    assert!(o.passed, "{}", o.residual);
}

#[test]
fn formal_sums_collapse() {
    let f = fx();
    let o = formal_sum_reduction(&f.law, &f.units).unwrap();
    assert!(o.passed, "{}", o.residual);
}

#[test]
fn t1_relation_and_expansion() {
    let f = fx();
    let a = t1_relation(&f.units, &f.model).unwrap();
    assert!(a.passed, "{}", a.residual);
    let b = t1_expansion(&f.model).unwrap();
    assert!(b.passed, "{}", b.residual);
}

#[test]
fn v2_powers() {
    let f = fx();
    for s in [1, 2, 4, 5, 7, 8, 10, -1, -2, 3, 9] {
        let o = v2_power_expansion(&f.model, s).unwrap();
        assert!(o.passed, "s = {s}: {}", o.residual);
    }
}

#[test]
fn model_t1_is_fixed_and_divisible() {
    let f = fx();
    let m = &f.model;
    assert!(m.ctx().valuation(m.t1()).unwrap() >= 1);
    let low = to_text(m.ctx(), &m.ctx().truncate_below(m.t1(), 5));
    assert_eq!(low, "1 * v1^1 v2^-3 t2^3");
}

#[test]
fn insufficient_truncation() {
    let f = fx();
    let small = SigmaModel::new(&f.units, 6).unwrap();
    assert!(matches!(t1_expansion(&small), Err(FglError::InsufficientTruncation { needed: 9, .. })));
    assert!(matches!(v2_power_expansion(&small, 1), Err(FglError::InsufficientTruncation { needed: 12, .. })));
}

fn xyz() -> QuotientContext<ehh2_core::PrimeField> {
    let table = fgl_engine::bp::bp_table(5, 0, 0, &["x", "y", "z"]).unwrap();
    QuotientContext::plain(ehh2_core::PrimeField::new(5).unwrap(), table)
}

#[test]
fn w1_binomial_case() {
    let ctx = xyz();
    let x = ctx.var("x").unwrap();
    let y = ctx.var("y").unwrap();
    assert!(w1(&ctx, &x, &Poly::zero(), &Poly::zero()).unwrap().is_zero());
    // −(1/5)Σ C(5,i) x^i y^{5−i} = −(x^4y + 2x^3y^2 + 2x^2y^3 + xy^4)
    let expect =
        from_text(&ctx, "4 * x^4 y^1 + 3 * x^3 y^2 + 3 * x^2 y^3 + 4 * x^1 y^4").unwrap();
    assert_eq!(w1(&ctx, &x, &y, &Poly::zero()).unwrap(), expect);
}

#[test]
fn identical_inputs_congruent() {
    let ctx = xyz();
    let x = ctx.var("x").unwrap();
    let r = verify_congruence(&ctx, &x, &x).unwrap();
    assert!(r.equal);
    assert_eq!(r.residual, "0");
    assert_eq!(r.residual_valuation, None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn w1_symmetric(a in prop::collection::vec(0i64..5, 3), b in prop::collection::vec(0i64..5, 3), c in prop::collection::vec(0i64..5, 3)) {
        let ctx = xyz();
        let lin = |k: &[i64]| {
            let parts: Vec<Poly<u32>> = ["x", "y", "z"].iter().zip(k)
                .map(|(n, c)| ctx.scale(&ctx.var(n).unwrap(), &ctx.ring().from_i64(*c))).collect();
            ctx.sum(parts.iter())
        };
        let (a, b, c) = (lin(&a), lin(&b), lin(&c));
        let base = w1(&ctx, &a, &b, &c).unwrap();
        for (p, q, r) in [(&a, &c, &b), (&b, &a, &c), (&b, &c, &a), (&c, &a, &b), (&c, &b, &a)] {
            prop_assert_eq!(&w1(&ctx, p, q, r).unwrap(), &base);
        }
    }
}
