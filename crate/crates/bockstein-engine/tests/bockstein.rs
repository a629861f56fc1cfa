use bockstein_engine::*;
use fgl_engine::{solve_right_units, FormalGroupLaw, RightUnits, SigmaModel};
use hopf_cobar::{
    cohomology_window, group_action_invariants, CobarContext, CohomologyTable, GaloisConvention, SignConvention,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn units() -> &'static RightUnits {
    static U: OnceLock<RightUnits> = OnceLock::new();
    U.get_or_init(|| solve_right_units(&FormalGroupLaw::new(3, 27).unwrap(), 3).unwrap())
}

/// deep enough for k = 3
fn model() -> &'static SigmaModel {
    static M: OnceLock<SigmaModel> = OnceLock::new();
    M.get_or_init(|| SigmaModel::new(units(), required_truncation(3, 3)).unwrap())
}

fn cobar() -> &'static CobarContext {
    static C: OnceLock<CobarContext> = OnceLock::new();
    C.get_or_init(|| CobarContext::new(3, 2, SignConvention::Standard).unwrap())
}

fn e1() -> &'static CohomologyTable {
    static T: OnceLock<CohomologyTable> = OnceLock::new();
    T.get_or_init(|| {
        let raw = cohomology_window(cobar(), 3, -320, 320).unwrap();
        group_action_invariants(&raw, cobar(), GaloisConvention::Coefficients).unwrap()
    })
}

fn full_run() -> &'static BocksteinRun {
    static R: OnceLock<BocksteinRun> = OnceLock::new();
    R.get_or_init(|| run_bockstein(model(), e1(), -20, 20, 3).unwrap())
}

#[test]
fn b_exponent_examples() {
    assert_eq!(b_exponent(5, 0, 3).unwrap(), 4);
    assert_eq!(b_exponent(1, 1, 3).unwrap(), -1);
    assert_eq!(b_exponent(1, 2, 3).unwrap(), -4);
    assert!(matches!(b_exponent(6, 1, 3), Err(BocksteinError::Parameter(_))));
}

#[test]
fn n_t_spot_values() {
    assert_eq!(n_t_closed_form(0, 3).unwrap(), 4);
    assert_eq!(n_t_closed_form(-1, 3).unwrap(), 16);
    assert_eq!(n_t_closed_form(-4, 3).unwrap(), 52);
    assert_eq!(n_t_closed_form(-13, 3).unwrap(), 160);
    assert_eq!(representations(-1, 3), vec![(1, 1)]);
    assert_eq!(representations(-4, 3), vec![(1, 2)]);
    assert!(n_t_closed_form(0, 4).is_err());
}

/// brute force over a box of (s, i), independent of the closed form
fn oracle_representations(t: i64, p: i64) -> Vec<(i64, u32)> {
    let mut out = vec![];
    for i in 1..=8u32 {
        let pi = p.pow(i);
        let tail: i64 = (0..i).map(|j| p.pow(j)).sum();
        for s in -2000..=2000i64 {
            if s % p != 0 && (s - 1) * pi - tail == t {
                out.push((s, i));
            }
        }
    }
    out
}

#[test]
fn representations_agree_with_brute_force() {
    for t in -200..=200 {
        for p in [3i64, 5] {
            let want = oracle_representations(t, p);
            assert_eq!(representations(t, p as u32), want, "t = {t}, p = {p}");
            if (t + 1).rem_euclid(p) == 0 {
                assert_eq!(want.len(), 1, "t = {t}, p = {p}");
            } else {
                assert!(want.is_empty());
            }
        }
    }
}

#[test]
fn lift_records_follow_the_pattern() {
    for k in 0..=2 {
        for s in [1, -1, 2, -2, 4] {
            let lift = build_z_lift(model(), s, k).unwrap();
            let r = &lift.record;
            assert_eq!(r.page, geometric(3, k) * 4, "s = {s}, k = {k}");
            assert_eq!(r.target_exponent, b_exponent(s, k, 3).unwrap());
            assert_eq!(r.source_exponent, s * 3i64.pow(k));
            assert_ne!(r.unit, 0);
            assert!(r.matches_formulas(3));
        }
    }
}

#[test]
fn lift_reduces_to_the_v2_power() {
    let ctx = model().ctx();
    for (s, k) in [(1, 1), (-2, 2), (4, 3)] {
        let lift = build_z_lift(model(), s, k).unwrap();
        let base = lift.z.filter(|m| ctx.weight(m) == 0);
        assert_eq!(base, ctx.mono(&[("v2", (s * 3i64.pow(k)) as i32)]).unwrap());
        assert_eq!(lift.corrections.len(), k as usize);
    }
}

#[test]
fn z3_differential_has_valuation_16() {
    let lift = build_z_lift(model(), 1, 1).unwrap();
    assert_eq!(lift.record.page, 16);
    assert_eq!(lift.record.target_exponent, -1);
    // frozen: z_3 = v2^3 − 2 v1^8 v2
    assert_eq!(lift.corrections, vec![(8, 1, 2)]);
    assert_eq!(lift.record.unit, 2);
}

#[test]
fn k3_pages_and_targets() {
    for (s, target) in [(1, -13), (2, 14)] {
        let r = build_z_lift(model(), s, 3).unwrap().record;
        assert_eq!((r.page, r.target_exponent), (160, target));
    }
}

#[test]
fn plain_v2_powers_have_the_first_differential() {
    let ctx = model().ctx();
    for s in [1, 2, 4, 5, -1, -2, -5] {
        let z = ctx.mono(&[("v2", s)]).unwrap();
        match leading_differential(model(), &z).unwrap() {
            LeadingOutcome::Differential(r) => {
                assert_eq!((r.page, r.target_exponent), (4, s as i64 - 1));
                // d(v2^s) = s v1^{p+1} v2^{s−1} (g − g^p) + ⋯
                assert_eq!(r.unit as i64, (-(s as i64)).rem_euclid(3));
            }
            other => panic!("v2^{s}: {other:?}"),
        }
    }
}

#[test]
fn exponent_one_mod_p_gives_the_displayed_leading_term() {
    // b + 2 ≡ 1 mod p: d(v2^{b+2}) = v2^{b+1} v1^{1+p} (g^{p²} − g^p) + ⋯, and g^{p²} = g
    let ctx = model().ctx();
    for e in [1, 4, 7, -2, -5] {
        let z = ctx.mono(&[("v2", e)]).unwrap();
        let LeadingOutcome::Differential(r) = leading_differential(model(), &z).unwrap() else { panic!() };
        assert_eq!(r.target_exponent, e as i64 - 1);
        assert_eq!(r.page, 4);
        assert_eq!(r.unit, 2, "coefficient of g^p − g is −1");
    }
}

#[test]
fn unit_is_permanent() {
    let ctx = model().ctx();
    assert_eq!(leading_differential(model(), &ctx.one()).unwrap(), LeadingOutcome::Permanent { depth: 165 });
}

#[test]
fn insufficient_truncation_names_the_requirement() {
    let shallow = SigmaModel::new(units(), 37).unwrap();
    match build_z_lift(&shallow, 1, 2) {
        Err(BocksteinError::InsufficientTruncation { needed, have }) => assert_eq!((needed, have), (57, 37)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(build_z_lift(&shallow, 3, 1), Err(BocksteinError::Parameter(_))));
}

#[test]
fn target_class_is_a_cocycle() {
    assert!(target_is_cocycle(cobar().hopf()));
}

#[test]
fn window_modules_have_the_expected_shape() {
    let run = full_run();
    assert!(run.unresolved.is_empty(), "{:?}", run.unresolved);
    let (h0, h1, h2) = (&run.modules[&0], &run.modules[&1], &run.modules[&2]);
    assert_eq!((h0.free_rank(), h1.free_rank(), h2.free_rank()), (1, 1, 0));
    assert!(h0.torsion.is_empty());
    assert_eq!(h1.torsion.len(), 41);
    assert_eq!(h2.torsion.len(), 41);
    assert_eq!(h1.exponent_of(0), Some(4));
    assert_eq!(h1.exponent_of(-1), Some(16));
    assert_eq!(h1.exponent_of(-4), Some(52));
    assert_eq!(h1.exponent_of(-13), Some(160));
    assert_eq!(h2.exponent_of(14), Some(160));
    assert!(run.differentials.iter().all(|r| r.matches_formulas(3)));
}

#[test]
fn cross_check_passes_on_the_window() {
    let cc = cross_check(full_run()).unwrap();
    assert!(cc.passed);
    assert_eq!(cc.entries.len(), 41);
    assert!(cc.entries.iter().all(|e| e.status == CheckStatus::Match && !e.trail.is_empty()));
}

#[test]
fn small_k_max_is_unresolved_not_mismatch() {
    let run = run_bockstein(model(), e1(), -20, 20, 2).unwrap();
    let flagged: Vec<i64> = run.unresolved.iter().map(|u| u.t).collect();
    assert_eq!(flagged, vec![-13, 14]);
    let cc = cross_check(&run).unwrap();
    assert!(!cc.passed);
    for e in &cc.entries {
        let want = if [-13, 14].contains(&e.t) { CheckStatus::Unresolved } else { CheckStatus::Match };
        assert_eq!(e.status, want, "t = {}", e.t);
    }
}

#[test]
fn empty_window_passes_trivially() {
    let run = run_bockstein(model(), e1(), 1, 0, 3).unwrap();
    let cc = cross_check(&run).unwrap();
    assert!(cc.passed && cc.entries.is_empty());
}

#[test]
fn sparseness_holds_on_the_window() {
    let rep = sparseness(full_run(), e1());
    assert!(rep.degrees_divisible && rep.vanishes_above_two);
}

#[test]
fn degree_minus_one_is_not_finite_type() {
    let small = homotopy_groups(3, -1, -1, -12, 0).unwrap();
    let tors: Vec<(i64, i64)> = small.contributions(-1).iter().filter(|c| c.lifetime.is_some()).map(|c| (c.t, c.j)).collect();
    assert_eq!(tors, vec![(-4, 16), (-1, 4), (0, 0)]);
    assert!(small.contributions(-1).iter().any(|c| c.source == "zeta" && c.j == 0));
    let wide = homotopy_groups(3, -1, -1, -13, 0).unwrap();
    assert!(wide.contributions(-1).iter().any(|c| c.t == -13 && c.j == 52));
    // oracle: 16t + 4j = 0 with 0 ≤ j < n_t
    let want: Vec<i64> = (-40..=0).filter(|&t| -4 * t < n_t_closed_form(t, 3).unwrap()).collect();
    let deep = homotopy_groups(3, -1, -1, -40, 0).unwrap();
    let got: Vec<i64> = deep.contributions(-1).iter().filter(|c| c.lifetime.is_some()).map(|c| c.t).collect();
    assert_eq!(got, want);
    assert_eq!(want, vec![-40, -13, -4, -1, 0]);
}

#[test]
fn degree_zero_and_small_odd_degrees() {
    let ch = homotopy_groups(3, 0, 2, -20, 20).unwrap();
    let zero: Vec<(&str, i64)> = ch.contributions(0).iter().map(|c| (c.source.as_str(), c.j)).collect();
    assert_eq!(zero, vec![("1", 0)]);
    assert!(ch.contributions(1).is_empty());
    assert!(homotopy_groups(3, 1, 0, -5, 5).unwrap().is_empty());
}

#[test]
fn chart_from_engine_matches_closed_form() {
    let engine = homotopy_from_modules(3, &full_run().modules, -80, 80);
    let closed = homotopy_groups(3, -80, 80, -20, 20).unwrap();
    assert_eq!(engine.degrees, closed.degrees);
}

#[test]
fn records_serialize() {
    let r = &full_run().differentials[0];
    let back: DifferentialRecord = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
    assert_eq!(&back, r);
}

proptest! {
    #[test]
    fn n_t_at_targets_is_the_page(s in -500i64..500, k in 0u32..5, pi in 0usize..3) {
        let p = [3u32, 5, 7][pi];
        prop_assume!(s % p as i64 != 0);
        let b = b_exponent(s, k, p).unwrap();
        prop_assert_eq!(n_t_closed_form(b, p).unwrap(), page(k, p));
    }

    #[test]
    fn representation_is_unique(t in -100_000i64..100_000, pi in 0usize..3) {
        let p = [3u32, 5, 7][pi];
        let reps = representations(t, p);
        if (t + 1).rem_euclid(p as i64) == 0 {
            prop_assert_eq!(reps.len(), 1);
            let (s, i) = reps[0];
            prop_assert_eq!(b_exponent(s, i, p).unwrap(), t);
        } else {
            prop_assert!(reps.is_empty());
        }
    }

    #[test]
    fn split_exponent_round_trips(m in -100_000i64..100_000) {
        prop_assume!(m != 0);
        let (s, k) = split_exponent(m, 3).unwrap();
        prop_assert!(s % 3 != 0);
        prop_assert_eq!(s * 3i64.pow(k), m);
    }
}
