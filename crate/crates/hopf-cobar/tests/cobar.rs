use hopf_cobar::cohomology::weight_zero;
use hopf_cobar::*;
use ehh2_core::field::CoeffRing;
use ehh2_core::ExtField;
use proptest::prelude::*;
use std::sync::OnceLock;

fn ctx() -> &'static CobarContext {
    static C: OnceLock<CobarContext> = OnceLock::new();
    C.get_or_init(|| CobarContext::new(3, 2, SignConvention::Standard).unwrap())
}

fn raw() -> &'static CohomologyTable {
    static T: OnceLock<CohomologyTable> = OnceLock::new();
    T.get_or_init(|| cohomology_window(ctx(), 3, -96, 96).unwrap())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn t2_is_primitive() {
    let cp = ctx().coproducts();
    assert_eq!(cp.to_text(1).unwrap(), "1 * R2^1 + 1 * L2^1");
}

#[test]
fn t4_coproduct_matches_binomial_oracle() {
    // Δ(t4) = t4⊗1 + 1⊗t4 + t2⊗t2^{p²} − v2 C(t2⊗1, 1⊗t2), C(a,b) = ((a+b)^{p²} − a^{p²} − b^{p²})/p
    let p = 3u64;
    let cp = ctx().coproducts();
    let c = cp.ctx();
    let q = p * p;
    let mut expected = c.add(&c.var("L4").unwrap(), &c.var("R4").unwrap());
    expected = c.add(&expected, &c.mono(&[("L2", 1), ("R2", q as i32)]).unwrap());
    for k in 1..q {
        let coef = (binom(q, k) / p) % p;
        if coef == 0 {
            continue;
        }
        let m = c.mono(&[("v2", 1), ("L2", k as i32), ("R2", (q - k) as i32)]).unwrap();
        expected = c.add(&expected, &c.scale(&m, &c.ring().from_i64(-(coef as i64))));
    }
    assert!(c.sub(cp.delta(2).unwrap(), &expected).is_zero());
}

#[test]
fn degree_zero_coproduct_of_h() {
    let h = ctx().hopf();
    let names: Vec<String> =
        h.delta(h.generator(2)).iter().map(|(l, r, c)| format!("{c} {}|{}", h.name(*l), h.name(*r))).collect();
    assert_eq!(names, ["1 1|h", "1 g|g", "2 g^3|g^6", "2 g^6|g^3", "1 h|1"]);
}

#[test]
fn frobenius_of_primitive_is_primitive() {
    let h = ctx().hopf();
    let g = h.generator(1);
    assert!(h.is_primitive(g));
    assert!(h.is_primitive(h.frobenius(g)));
    assert!(!h.is_primitive(h.generator(2)));
}

#[test]
fn presentation_axioms() {
    let pres = AlgebroidPresentation::new(ctx().coproducts()).unwrap();
    assert_eq!(pres.relation_residuals().unwrap(), vec![0, 0]);
    assert_eq!(pres.axiom_defects().unwrap(), vec![(0, 0, 0), (0, 0, 0)]);
    assert_eq!(ctx().coproducts().counit_residuals(2).unwrap(), (0, 0));
    // g = v2^{-1} t2 has internal degree zero
    let g = pres.degree_zero_generator(1).unwrap();
    assert_eq!(pres.ctx().bidegree(&g).degree(), Some(0));
}

#[test]
fn g_to_the_p_squared_is_g() {
    let h = ctx().hopf();
    let g = h.generator(1);
    let mut x = g;
    for _ in 1..9 {
        x = h.mul(x, g);
    }
    assert_eq!(x, g);
}

#[test]
fn differential_examples() {
    let h = ctx().hopf();
    let sign = SignConvention::Standard;
    assert!(cobar_d(h, &CobarWord::new(0, vec![]), sign).is_empty());
    // v2 = u^{-8} in cohomological degree 0
    assert!(cobar_d(h, &CobarWord::new(-8, vec![]), sign).is_empty());
    assert!(cobar_d(h, &CobarWord::new(0, vec![h.generator(1)]), sign).is_empty());
    assert!(cobar_d(h, &CobarWord::new(0, vec![h.frobenius(h.generator(1))]), sign).is_empty());
    let dh = cobar_d(h, &CobarWord::new(0, vec![h.generator(2)]), sign);
    let mut text: Vec<String> = dh.iter().map(|(w, c)| format!("{c} {}", w.to_text(h))).collect();
    text.sort();
    assert_eq!(text, ["1 [g^3|g^6]", "1 [g^6|g^3]", "2 [g|g]"]);
}

#[test]
fn raw_window_dimensions() {
    let t = raw();
    for s in 0..=3 {
        for tt in -96..=96i64 {
            let want = if tt % 2 == 0 { [1, 2, 1, 0][s] } else { 0 };
            assert_eq!(t.dimension(s, tt), want, "({s}, {tt})");
        }
    }
    assert_eq!(t.field, "F_{p^2}");
}

#[test]
fn invariant_window_is_exterior_on_two_classes() {
    for g in [GaloisConvention::Coefficients, GaloisConvention::Swap] {
        let inv = group_action_invariants(raw(), ctx(), g).unwrap();
        for s in 0..=3 {
            for t in -96..=96i64 {
                let want = if t % 16 == 0 { [1, 2, 1, 0][s] } else { 0 };
                assert_eq!(inv.dimension(s, t), want, "({s}, {t}) {g:?}");
            }
        }
        assert_eq!(inv.field, "F_p");
    }
}

#[test]
fn degree_zero_invariants_follow_weights() {
    assert!(weight_zero(3, 0));
    assert!(weight_zero(3, 16));
    assert!(weight_zero(3, -32));
    // u has internal degree −2 and weight 1
    assert!(!weight_zero(3, -2));
    assert!(!weight_zero(3, 8));
}

#[test]
fn first_cohomology_descends_to_sum_and_difference() {
    let fq = ExtField::quadratic(3).unwrap();
    let classes = raw().classes(1).unwrap();
    let h = ctx().hopf();
    let top = CobarComplex::new(h, 2, SignConvention::Standard);
    let g = top.encode(&[h.generator(1)]);
    let gp = top.encode(&[h.frobenius(h.generator(1))]);
    let coords = |v: &[(usize, u32)]| classes.coordinates(&v.to_vec()).unwrap();
    let sum = coords(&[(g, 1), (gp, 1)]);
    let diff = coords(&[(g, 1), (gp, 2)]);
    let in_fp_span = |fixed: &[Vec<u32>], target: &[u32]| {
        // target ∈ F_p-span of fixed (2-dimensional, so check all p² combinations)
        (0..3u32).any(|a| {
            (0..3u32).any(|b| {
                (0..2).all(|i| {
                    let v = fq.add(&fq.mul(&fq.embed(a), &fixed[0][i]), &fq.mul(&fq.embed(b), &fixed[1][i]));
                    v == fq.embed(target[i])
                })
            })
        })
    };
    let coef = hopf_cobar::cohomology::galois_fixed_classes(ctx(), classes, GaloisConvention::Coefficients).unwrap();
    assert_eq!(coef.len(), 2);
    assert!(in_fp_span(&coef, &sum));
    assert!(in_fp_span(&coef, &diff));
    let swap = hopf_cobar::cohomology::galois_fixed_classes(ctx(), classes, GaloisConvention::Swap).unwrap();
    assert_eq!(swap.len(), 2);
    assert!(in_fp_span(&swap, &sum));
    // under the swap the difference is fixed only after an anti-invariant scalar
    assert!(!in_fp_span(&swap, &diff));
    let w = fq.anti_fixed_unit();
    let scaled: Vec<u32> = diff.iter().map(|c| fq.mul(&w, &fq.embed(*c))).collect();
    let scaled_in = (0..3u32).any(|a| {
        (0..3u32).any(|b| {
            (0..2).all(|i| fq.add(&fq.mul(&fq.embed(a), &swap[0][i]), &fq.mul(&fq.embed(b), &swap[1][i])) == scaled[i])
        })
    });
    assert!(scaled_in);
}

#[test]
fn sign_convention_does_not_change_dimensions() {
    let opp = ctx().with_sign(SignConvention::Opposite);
    let t = cohomology_window(&opp, 3, -32, 32).unwrap();
    for s in 0..=3 {
        for tt in -32..=32i64 {
            assert_eq!(t.dimension(s, tt), raw().dimension(s, tt));
        }
    }
}

#[test]
fn search_reports_are_recorded() {
    let r = &raw().searches;
    assert_eq!(r.iter().map(|x| x.truncated_dim).collect::<Vec<_>>(), [1, 2, 3, 4]);
    assert_eq!(r.iter().map(|x| x.stable_dim).collect::<Vec<_>>(), [1, 2, 1, 0]);
    // degree 2 uses every coboundary of the large complex
    assert_eq!(r[2].columns, r[2].total_columns);
    assert!(r.iter().all(|x| x.dd_checked > 0 || x.s == 0));
}

#[test]
fn representatives_are_cocycles() {
    let h = ctx().hopf();
    let top = CobarComplex::new(h, 2, SignConvention::Standard);
    for s in 0..=3 {
        for rep in raw().classes(s).unwrap().reps() {
            assert!(top.d(rep, s).is_empty());
        }
    }
}

#[test]
fn insufficient_bound_is_named() {
    let small = CobarContext::new(3, 1, SignConvention::Standard).unwrap();
    match cohomology_window(&small, 2, 0, 0) {
        Err(CobarError::InsufficientBound { required, have }) => assert_eq!((required, have), (2, 1)),
        other => panic!("{other:?}"),
    }
    assert_eq!(cohomology_window(&small, 1, 0, 0).unwrap().dimension(1, 0), 2);
    assert!(matches!(ctx().coproducts().delta(3), Err(CobarError::InsufficientBound { .. })));
    assert!(coproducts(3, 9).is_err());
}

#[test]
fn table_serializes() {
    let v = serde_json::to_value(raw()).unwrap();
    let e = &v["entries"][0];
    assert!(e["bidegree"].is_array());
    assert!(e["dimension"].is_number());
    assert!(e["representatives"].is_array());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(word in proptest::collection::vec(1u32..81, 1..3), opposite in any::<bool>()) {
        let sign = if opposite { SignConvention::Opposite } else { SignConvention::Standard };
        let c = CobarComplex::new(ctx().hopf(), 2, sign);
        prop_assert!(c.dd_vanishes(&word));
    }

    #[test]
    fn coassociative_and_counital(b in 0u32..81) {
        let h = ctx().hopf();
        prop_assert_eq!(h.coassociativity_defect(b), 0);
        prop_assert_eq!(h.counit_defect(b), 0);
    }

    #[test]
    fn frobenius_is_a_coalgebra_map(b in 0u32..81) {
        let h = ctx().hopf();
        let mut lhs: Vec<_> = h.delta(h.frobenius(b)).to_vec();
        let mut rhs: Vec<_> = h.delta(b).iter().map(|(l, r, c)| (h.frobenius(*l), h.frobenius(*r), *c)).collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        prop_assert_eq!(lhs, rhs);
    }
}
