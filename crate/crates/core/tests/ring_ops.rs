use ehh2_core::field::{CoeffRing, PrimeField};
use ehh2_core::ring::{from_json, from_text, to_json, to_text, DegreeReport, Mono, Poly, QuotientContext, RingError, Variable, VariableTable};
use proptest::prelude::*;

const P: u32 = 3;

fn table() -> VariableTable {
    let p = P as i64;
    VariableTable::new(vec![
        Variable::new("v1", 2 * (p - 1)),
        Variable::laurent("v2", 2 * (p * p - 1)),
        Variable::new("t1", 2 * (p - 1)),
        Variable::new("t2", 2 * (p * p - 1)),
        Variable::new("r2", 2 * (p * p - 1)),
        Variable::laurent("u", -2),
    ])
    .unwrap()
}

/// t2^{p^2} = v2^{p^2-1}(t2 + r2), r2 of weight p+1, truncated at v1-weight n.
fn sigma_ctx(n: i64) -> QuotientContext<PrimeField> {
    let f = PrimeField::new(P).unwrap();
    let plain = QuotientContext::plain(f, table());
    let pp = (P * P) as i32;
    let rhs = plain.add(&plain.mono(&[("v2", pp - 1), ("t2", 1)]).unwrap(), &plain.mono(&[("v2", pp - 1), ("r2", 1)]).unwrap());
    QuotientContext::builder(f, table()).rule("t2", pp, rhs).weight("r2", P as i32 + 1).truncation(n).build().unwrap()
}

fn plain_ctx() -> QuotientContext<PrimeField> {
    QuotientContext::plain(PrimeField::new(P).unwrap(), table())
}

#[test]
fn relation_rewrites() {
    let ctx = sigma_ctx(8);
    let t = ctx.mono(&[("t2", 9)]).unwrap();
    assert_eq!(to_text(&ctx, &t), "1 * v2^8 t2^1 + 1 * v2^8 r2^1");
    // modulo the weight of r2 only the defining relation remains
    let ctx4 = sigma_ctx(4);
    assert_eq!(ctx4.mono(&[("t2", 9)]).unwrap(), ctx4.mono(&[("v2", 8), ("t2", 1)]).unwrap());
    assert!(ctx.mono(&[("v1", 8), ("t2", 1)]).unwrap().is_zero());
}

#[test]
fn valuations_and_degrees() {
    let ctx = sigma_ctx(40);
    let a = ctx.mono(&[("v1", 1), ("t1", 3)]).unwrap();
    let b = ctx.mono(&[("v1", 3), ("t1", 1)]).unwrap();
    assert_eq!(ctx.valuation(&ctx.mul(&a, &b).unwrap()), Some(4));
    assert_eq!(ctx.valuation(&Poly::zero()), None);
    let g = ctx.mono(&[("v2", -1), ("t2", 1)]).unwrap();
    assert_eq!(ctx.bidegree(&g), DegreeReport::Homogeneous(0));
    assert_eq!(ctx.bidegree(&ctx.var("v2").unwrap()), DegreeReport::Homogeneous(16));
    assert_eq!(ctx.bidegree(&ctx.var("u").unwrap()), DegreeReport::Homogeneous(-2));
    let mixed = ctx.add(&g, &ctx.var("v1").unwrap());
    assert!(matches!(ctx.bidegree(&mixed), DegreeReport::Inhomogeneous(_)));
    // v1^{p+1} g^{p^2} + v1^{2p+2} g
    let x = ctx.add(&ctx.mono(&[("v1", 4), ("v2", -9), ("t2", 9)]).unwrap(), &ctx.mono(&[("v1", 8), ("v2", -1), ("t2", 1)]).unwrap());
    assert_eq!(ctx.valuation(&x), Some(4));
}

#[test]
fn laurent_discipline() {
    let ctx = sigma_ctx(8);
    assert!(matches!(ctx.mono(&[("t1", -1)]), Err(RingError::NegativeExponent(_))));
    assert!(matches!(ctx.mono(&[("w", 1)]), Err(RingError::UnknownVariable(_))));
    let m = Mono::var(1, i32::MAX);
    assert!(matches!(m.mul(&m), Err(RingError::Overflow)));
}

#[test]
fn binomial_expansion_of_right_unit() {
    // v2 -> v2 + v1 t1^p - v1^p t1 applied to v2^s against the binomial sum
    let ctx = sigma_ctx(30);
    let ring = *ctx.ring();
    let img = ctx.from_text_or_panic("1 * v2^1 + 1 * v1^1 t1^3 + 2 * v1^3 t1^1");
    for s in [1i64, 2, 4, 5, 7] {
        let lhs = ctx.apply_hom(&ctx.mono(&[("v2", s as i32)]).unwrap(), &[("v2", img.clone())], 0).unwrap();
        let delta = ctx.from_text_or_panic("1 * v1^1 t1^3 + 2 * v1^3 t1^1");
        let mut rhs = Poly::zero();
        let mut binom: u64 = 1;
        for k in 0..=s {
            let term = ctx
                .mul(&ctx.mono(&[("v2", (s - k) as i32)]).unwrap(), &ctx.pow(&delta, k).unwrap())
                .unwrap();
            rhs = ctx.add(&rhs, &ctx.scale(&term, &ring.from_i64(binom as i64)));
            binom = binom * (s - k) as u64 / (k + 1) as u64;
        }
        assert_eq!(lhs, rhs, "s = {s}");
    }
}

trait FromText {
    fn from_text_or_panic(&self, s: &str) -> Poly<u32>;
}
impl FromText for QuotientContext<PrimeField> {
    fn from_text_or_panic(&self, s: &str) -> Poly<u32> {
        from_text(self, s).unwrap()
    }
}

#[test]
fn square_matches_dense_convolution() {
    // (g^{p^2} - g^p)^2 with g = v2^{-1} t2, no relation applied
    let ctx = plain_ctx();
    let f = ctx.from_text_or_panic("1 * v2^-9 t2^9 + 2 * v2^-3 t2^3");
    let sq = ctx.mul(&f, &f).unwrap();
    // dense oracle on the t2-exponent axis (v2 exponent is forced to be -t2 exponent)
    let mut a = [0i64; 10];
    a[9] = 1;
    a[3] = -1;
    let mut conv = [0i64; 19];
    for i in 0..10 {
        for j in 0..10 {
            conv[i + j] += a[i] * a[j];
        }
    }
    let mut expected = Poly::zero();
    for (e, c) in conv.iter().enumerate() {
        if c.rem_euclid(3) != 0 {
            let m = ctx.mono(&[("v2", -(e as i32)), ("t2", e as i32)]).unwrap();
            expected = ctx.add(&expected, &ctx.scale(&m, &(c.rem_euclid(3) as u32)));
        }
    }
    assert_eq!(sq, expected);
}

#[test]
fn confluence_of_rule_order() {
    // two independent rules; rewrite occurrences in opposite orders by hand
    let f = PrimeField::new(P).unwrap();
    let plain = plain_ctx();
    let rt2 = plain.mono(&[("v2", 8), ("t2", 1)]).unwrap();
    let rt1 = plain.mono(&[("v1", 2), ("t1", 1)]).unwrap();
    let ctx = QuotientContext::builder(f, table()).rule("t2", 9, rt2.clone()).rule("t1", 3, rt1.clone()).build().unwrap();
    let x = plain.mono(&[("t1", 7), ("t2", 20)]).unwrap();
    let step = |poly: &Poly<u32>, var: &str, pw: i32, rhs: &Poly<u32>| -> Poly<u32> {
        let i = table().index(var).unwrap();
        let mut out = Poly::zero();
        for (m, c) in poly.iter() {
            let mut m2 = *m;
            let mut term = plain.monomial(Mono::ONE, *c).unwrap();
            while m2.0[i] >= pw {
                m2.0[i] -= pw;
                term = plain.mul(&term, rhs).unwrap();
            }
            out = plain.add(&out, &plain.mul_term(&term, &m2, &1).unwrap());
        }
        out
    };
    let mut a = x.clone();
    let mut b = x.clone();
    for _ in 0..4 {
        a = step(&step(&a, "t1", 3, &rt1), "t2", 9, &rt2);
        b = step(&step(&b, "t2", 9, &rt2), "t1", 3, &rt1);
    }
    assert_eq!(a, b);
    assert_eq!(ctx.normalize(&x).unwrap(), a);
}

#[test]
fn nonterminating_rule_rejected() {
    let f = PrimeField::new(P).unwrap();
    let plain = plain_ctx();
    let bad = plain.mono(&[("t2", 9)]).unwrap();
    assert!(QuotientContext::builder(f, table()).rule("t2", 9, bad).build().is_err());
    // t2 -> ... t1 ... and t1 -> ... t2 ...: cycle
    let r1 = plain.mono(&[("t1", 1), ("v2", 1)]).unwrap();
    let r2 = plain.mono(&[("t2", 1), ("v2", -1)]).unwrap();
    assert!(QuotientContext::builder(f, table()).rule("t2", 2, plain.mul(&r1, &plain.mono(&[("v2", 1)]).unwrap()).unwrap()).rule("t1", 2, plain.mul(&r2, &plain.mono(&[("v1", 2)]).unwrap()).unwrap()).build().is_err());
}

fn arb_poly() -> impl Strategy<Value = Vec<(u32, [i32; 6])>> {
    prop::collection::vec(
        (1u32..3, (0i32..4, -3i32..4, 0i32..3, 0i32..12, 0i32..2, -2i32..3)).prop_map(|(c, e)| (c, [e.0, e.1, e.2, e.3, e.4, e.5])),
        0..6,
    )
}

fn build(ctx: &QuotientContext<PrimeField>, raw: &[(u32, [i32; 6])]) -> Poly<u32> {
    let mut acc = rustc_hash::FxHashMap::default();
    for (c, e) in raw {
        let mut m = Mono::ONE;
        m.0[..6].copy_from_slice(e);
        acc.entry(m).and_modify(|x: &mut u32| *x = (*x + c) % P).or_insert(*c);
    }
    ctx.normalize(&Poly::from_map(acc)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_idempotent(raw in arb_poly()) {
        let ctx = sigma_ctx(12);
        let f = build(&ctx, &raw);
        prop_assert_eq!(ctx.normalize(&f).unwrap(), f);
    }

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let ctx = sigma_ctx(12);
        let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        let ab_c = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = ctx.mul(&a, &ctx.add(&b, &c)).unwrap();
        let rhs = ctx.add(&ctx.mul(&a, &b).unwrap(), &ctx.mul(&a, &c).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ctx.mul(&a, &ctx.one()).unwrap(), a);
    }

    #[test]
    fn hom_is_multiplicative(a in arb_poly(), b in arb_poly()) {
        let ctx = sigma_ctx(12);
        let (a, b) = (build(&ctx, &a), build(&ctx, &b));
        // compatible with the t2 relation: only t1 and u move
        let img = from_text(&ctx, "1 * t1^1 + 1 * v1^1").unwrap();
        let h = |x: &Poly<u32>| ctx.apply_hom(x, &[("t1", img.clone()), ("u", ctx.scale(&ctx.var("u").unwrap(), &2))], 0).unwrap();
        prop_assert_eq!(h(&ctx.mul(&a, &b).unwrap()), ctx.mul(&h(&a), &h(&b)).unwrap());
    }

    #[test]
    fn degree_additive(a in arb_poly(), b in arb_poly()) {
        let ctx = sigma_ctx(12);
        let (a, b) = (build(&ctx, &a), build(&ctx, &b));
        if let (Some(da), Some(db)) = (ctx.bidegree(&a).degree(), ctx.bidegree(&b).degree()) {
            let ab = ctx.mul(&a, &b).unwrap();
            if !ab.is_zero() {
                prop_assert_eq!(ctx.bidegree(&ab), DegreeReport::Homogeneous(da + db));
            }
        }
        for (m, _) in a.iter() {
            let single = ctx.monomial(*m, 1).unwrap();
            let d = ctx.vars().internal_degree(m);
            prop_assert_eq!(ctx.bidegree(&single).degree().unwrap_or(d), d);
        }
    }

    #[test]
    fn text_and_json_round_trip(raw in arb_poly()) {
        let ctx = sigma_ctx(12);
        let f = build(&ctx, &raw);
        prop_assert_eq!(from_text(&ctx, &to_text(&ctx, &f)).unwrap(), f.clone());
        let js = serde_json::to_string(&to_json(&ctx, &f)).unwrap();
        let back: Vec<_> = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(from_json(&ctx, &back).unwrap(), f);
    }

    #[test]
    fn inverse_of_units(raw in arb_poly(), s in -5i64..6) {
        let ctx = sigma_ctx(12);
        let delta = build(&ctx, &raw).filter(|m| ctx.weight(m) > 0 && m.0[5] == 0);
        let unit = ctx.add(&ctx.mono(&[("v2", 1)]).unwrap(), &ctx.mul(&delta, &ctx.mono(&[("v2", 1)]).unwrap()).unwrap());
        let unit = ctx.filter_degree(&unit, 16);
        let inv = ctx.pow(&unit, -1).unwrap();
        prop_assert_eq!(ctx.mul(&unit, &inv).unwrap(), ctx.one());
        let ps = ctx.pow(&unit, s).unwrap();
        let mut naive = ctx.one();
        let base = if s < 0 { inv.clone() } else { unit.clone() };
        for _ in 0..s.abs() { naive = ctx.mul(&naive, &base).unwrap(); }
        prop_assert_eq!(ps, naive);
    }
}

trait DegreeFilter {
    fn filter_degree(&self, f: &Poly<u32>, d: i64) -> Poly<u32>;
}
impl DegreeFilter for QuotientContext<PrimeField> {
    fn filter_degree(&self, f: &Poly<u32>, d: i64) -> Poly<u32> {
        f.filter(|m| self.vars().internal_degree(m) == d)
    }
}

#[test]
fn frobenius_is_pth_power() {
    let ctx = sigma_ctx(20);
    let f = from_text(&ctx, "1 * v2^1 + 1 * v1^1 t1^3 + 2 * v1^3 t1^1 + 1 * t2^5").unwrap();
    let mut naive = ctx.one();
    for _ in 0..3 {
        naive = ctx.mul(&naive, &f).unwrap();
    }
    assert_eq!(ctx.frobenius(&f, 1).unwrap(), naive);
}
