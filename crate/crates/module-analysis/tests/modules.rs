use bockstein_engine::{n_t_closed_form, v2_degree, FpV1Module, FreeGenerator, TorsionGenerator};
use module_analysis::*;
use proptest::prelude::*;

/// H^s of the answer over a t-window, exponents from the closed form
fn answer(s: usize, p: u32, tmin: i64, tmax: i64) -> FpV1Module {
    let mut m = FpV1Module::default();
    let free = |name: &str| FreeGenerator { name: name.into(), s, t: 0, internal_degree: 0 };
    match s {
        0 => m.free.push(free("1")),
        1 => m.free.push(free("zeta")),
        _ => {}
    }
    if s > 0 {
        for t in tmin..=tmax {
            m.torsion.push(TorsionGenerator {
                name: if s == 1 { format!("c_{t}") } else { format!("c_{t} zeta") },
                s,
                t,
                internal_degree: v2_degree(p, t),
                exponent: n_t_closed_form(t, p).unwrap(),
            });
        }
    }
    m
}

#[test]
fn polynomial_ring_is_one_free_generator() {
    let m = CompleteFpNuModule::new(4, vec![Family::single("1", 0, None)]).unwrap();
    let d = decompose(&m).unwrap();
    assert_eq!(d.free_shifts, vec![0]);
    assert!(d.torsion.is_empty());
    assert_eq!(d.free_rank, Some(1));
    assert_eq!((0..20).map(|x| m.dimension(x).unwrap()).collect::<Vec<_>>()[..9], [1, 0, 0, 0, 1, 0, 0, 0, 1]);
}

#[test]
fn two_truncated_copies_in_one_degree() {
    let m = CompleteFpNuModule::new(
        4,
        vec![Family::single("a", 6, Some(3)), Family::single("b", 6, Some(3))],
    )
    .unwrap();
    let d = decompose(&m).unwrap();
    assert_eq!(d.torsion, vec![(6, 3), (6, 3)]);
    assert_eq!(d.free_rank, Some(0));
    assert_eq!(m.dimension(14), Some(2));
    assert_eq!(m.dimension(18), Some(0));
}

#[test]
fn first_cohomology_decomposes_as_zeta_plus_torsion() {
    let m = from_fpv1(&answer(1, 3, -20, 20), 3).unwrap();
    let d = decompose(&m).unwrap();
    assert_eq!(d.free_shifts, vec![0]);
    assert_eq!(d.torsion.len(), 41);
    assert!(d.torsion.contains(&(v2_degree(3, -4), 52)));
    assert!(d.torsion.contains(&(0, 4)));
    assert_eq!(essentially_finite_rank(&m).unwrap(), FiniteRank { finite: true, rank: Some(1) });
}

#[test]
fn zeroth_cohomology_has_rank_one() {
    let m = from_fpv1(&answer(0, 3, -20, 20), 3).unwrap();
    assert_eq!(essentially_finite_rank(&m).unwrap(), FiniteRank { finite: true, rank: Some(1) });
}

#[test]
fn infinite_free_family_is_not_finite_rank() {
    let fam = Family { name: "x".into(), start: 0, step: 8, count: None, exponents: Exponents::Free };
    let m = CompleteFpNuModule::new(4, vec![fam]).unwrap();
    assert_eq!(essentially_finite_rank(&m).unwrap(), FiniteRank { finite: false, rank: None });
    assert_eq!(m.dimension(16), Some(3));
    let down = Family { name: "y".into(), start: 0, step: -8, count: None, exponents: Exponents::Free };
    let m = CompleteFpNuModule::new(4, vec![down]).unwrap();
    assert_eq!(m.dimension(0), None);
    assert_eq!(m.dimension(2), Some(0));
}

#[test]
fn contract_violations_are_rejected() {
    let bad = Family { name: "z".into(), start: 0, step: 0, count: None, exponents: Exponents::Free };
    assert!(matches!(CompleteFpNuModule::new(4, vec![bad]), Err(ModuleError::Contract(_))));
    assert!(CompleteFpNuModule::new(3, vec![]).is_err());
    assert!(CompleteFpNuModule::new(4, vec![Family::single("w", 0, Some(0))]).is_err());
}

#[test]
fn every_shift_has_a_failing_level() {
    let h2 = answer(2, 3, -20, 20);
    let rep = bc_shift_obstruction(&h2, -20..=20, 3, -50..=50, 1..=40).unwrap();
    assert_eq!(rep.entries.len(), 101);
    assert!(rep.not_found.is_empty());
    assert!(rep.entries.iter().all(|e| e.failing_k.is_some()));
}

/// direct search with the degree equation 16t = 6 + 4k − c and n_t ≥ k
fn oracle(c: i64, k: u32) -> bool {
    let d = 6 + 4 * k as i64 - c;
    d % 16 == 0 && n_t_closed_form(d / 16, 3).unwrap() >= k as i64
}

#[test]
fn obstruction_matches_direct_search() {
    let h2 = answer(2, 3, -20, 20);
    let rep = bc_shift_obstruction(&h2, -20..=20, 3, -50..=50, 1..=40).unwrap();
    for e in &rep.entries {
        let want: Vec<u32> = (1..=40).filter(|&k| oracle(e.c, k)).collect();
        assert_eq!(e.satisfied_k, want, "c = {}", e.c);
    }
    let get = |c: i64| rep.entries.iter().find(|e| e.c == c).unwrap();
    // frozen
    assert_eq!(get(-50).failing_k, Some(1));
    assert_eq!(get(10).failing_k, Some(2));
    assert_eq!(get(10).satisfied_k, vec![1, 9, 21]);
    assert_eq!(get(-2).satisfied_k, vec![2, 6, 18]);
}

#[test]
fn level_one_is_often_satisfied() {
    let h2 = answer(2, 3, -20, 20);
    let rep = bc_shift_obstruction(&h2, -20..=20, 3, -50..=50, 1..=1).unwrap();
    let ok: Vec<i64> = rep.entries.iter().filter(|e| e.failing_k.is_none()).map(|e| e.c).collect();
    assert_eq!(ok, vec![-38, -22, -6, 10, 26, 42]);
    assert_eq!(rep.not_found, ok);
}

#[test]
#[allow(clippy::reversed_empty_ranges)]
fn empty_shift_range_is_empty() {
    let h2 = answer(2, 3, -20, 20);
    let rep = bc_shift_obstruction(&h2, -20..=20, 3, 1..=0, 1..=40).unwrap();
    assert!(rep.entries.is_empty());
}

#[test]
fn narrow_window_is_an_error() {
    let h2 = answer(2, 3, -2, 2);
    assert!(matches!(
        bc_shift_obstruction(&h2, -2..=2, 3, -50..=50, 1..=40),
        Err(ModuleError::InsufficientWindow { .. })
    ));
}

fn family() -> impl Strategy<Value = Family> {
    (
        -40i64..40,
        -12i64..12,
        prop_oneof![Just(None), (1u64..6).prop_map(Some)],
        prop_oneof![Just(Exponents::Free), prop::collection::vec(1i64..6, 1..4).prop_map(Exponents::Periodic)],
    )
        .prop_filter("finite per degree", |(_, step, count, _)| *step != 0 || count.is_some())
        .prop_map(|(start, step, count, exponents)| Family { name: "f".into(), start, step, count, exponents })
}

proptest! {
    #[test]
    fn recombination_reproduces_dimensions(fams in prop::collection::vec(family(), 0..5)) {
        let m = CompleteFpNuModule::new(4, fams).unwrap();
        let back = decompose(&m).unwrap().recombine();
        for d in -60..60 {
            prop_assert_eq!(m.dimension(d), back.dimension(d));
            prop_assert_eq!(m.generators_in(d), back.generators_in(d));
        }
    }

    #[test]
    fn finite_rank_ignores_torsion(fams in prop::collection::vec(family(), 0..5), extra in prop::collection::vec(family(), 0..4)) {
        let base = CompleteFpNuModule::new(4, fams.clone()).unwrap();
        let mut more = fams;
        more.extend(extra.into_iter().filter(|f| !f.is_free()));
        let more = CompleteFpNuModule::new(4, more).unwrap();
        prop_assert_eq!(essentially_finite_rank(&base).unwrap(), essentially_finite_rank(&more).unwrap());
    }

    #[test]
    fn failing_levels_are_stable_under_enlarging(c in -50i64..50, k1 in 1u32..20, extra in 0u32..20) {
        let h2 = answer(2, 3, -20, 20);
        let a = bc_shift_obstruction(&h2, -20..=20, 3, c..=c, 1..=k1).unwrap();
        let b = bc_shift_obstruction(&h2, -20..=20, 3, c..=c, 1..=k1 + extra).unwrap();
        if let Some(k) = a.entries[0].failing_k {
            prop_assert_eq!(b.entries[0].failing_k, Some(k));
        }
    }
}
