//! Verification suites. Each check names the statement it tests and the
//! residual it observed.

use crate::session::Session;
use crate::CliError;
use bockstein_engine::{
    build_z_lift, cross_check, homotopy_from_modules, n_t_closed_form, sparseness, target_is_cocycle, CheckStatus,
};
use fgl_engine::checks::{self, CheckOutcome};
use hopf_cobar::AlgebroidPresentation;
use module_analysis::{bc_shift_obstruction, essentially_finite_rank, from_fpv1, FiniteRank};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub residual: String,
}

impl Check {
    fn new(suite: &str, name: &str, statement: &str, passed: bool, residual: impl Into<String>) -> Self {
        Check {
            suite: suite.into(),
            name: name.into(),
            statement: statement.into(),
            passed,
            residual: residual.into(),
        }
    }

    fn from_outcome(suite: &str, o: CheckOutcome) -> Self {
        let residual = if o.passed { "0".to_string() } else { o.residual };
        Check { suite: suite.into(), name: o.name, statement: o.detail, passed: o.passed, residual }
    }
}

pub const SUITES: [&str; 5] = ["fgl", "congruence", "cobar", "bockstein", "analysis"];

pub fn run_suite(s: &Session, suite: &str) -> Result<Vec<Check>, CliError> {
    match suite {
        "fgl" => fgl_suite(s),
        "congruence" => congruence_suite(s),
        "cobar" => cobar_suite(s),
        "bockstein" => bockstein_suite(s),
        "analysis" => analysis_suite(s),
        other => Err(CliError::Usage(format!("unknown suite {other}; expected one of {}", SUITES.join(", ")))),
    }
}

pub fn fgl_suite(s: &Session) -> Result<Vec<Check>, CliError> {
    let law = s.law()?;
    let r = law.axiom_residuals()?;
    let mut out = vec![Check::new(
        "fgl",
        "law-axioms",
        &format!("F(x,0) = x, F(x,y) = F(y,x), associativity to degree {}", law.cap()),
        r.holds(),
        format!("unit {} commutativity {} associativity {}", r.unit, r.commutativity, r.associativity),
    )];
    let units = s.units()?;
    out.push(Check::from_outcome("fgl", checks::right_unit_residual(units, law)?));
    out.push(Check::from_outcome("fgl", checks::right_unit_v1(units)?));
    out.push(Check::from_outcome("fgl", checks::right_unit_v2(units)?));
    out.push(Check::from_outcome("fgl", checks::right_unit_v3(units)?));
    Ok(out)
}

/// s ∈ {1, …, 10} prime to p.
pub fn expansion_exponents(p: u32) -> Vec<i64> {
    (1..=10).filter(|s| s % p as i64 != 0).collect()
}

pub fn congruence_suite(s: &Session) -> Result<Vec<Check>, CliError> {
    let (law, units, model) = (s.law()?, s.units()?, s.model()?);
    let mut out = vec![
        Check::from_outcome("congruence", checks::t2_frobenius_congruence(units)?),
        Check::from_outcome("congruence", checks::formal_sum_reduction(law, units)?),
        Check::from_outcome("congruence", checks::t1_relation(units, model)?),
        Check::from_outcome("congruence", checks::t1_expansion(model)?),
    ];
    for e in expansion_exponents(s.p()) {
        out.push(Check::from_outcome("congruence", checks::v2_power_expansion(model, e)?));
    }
    Ok(out)
}

/// Invariant dimensions (1, 2, 1, 0) at every v2-power of the internal
/// window [lo, hi], zero elsewhere.
pub fn invariant_dimensions(s: &Session, lo: i64, hi: i64) -> Result<Check, CliError> {
    let e1 = s.e1()?;
    let q = 2 * ((s.p() * s.p()) as i64 - 1);
    let mut bad = vec![];
    let mut powers = 0;
    for t in lo..=hi {
        let dims: Vec<usize> = (0..=3).map(|k| e1.dimension(k, t)).collect();
        let want = if t % q == 0 { vec![1, 2, 1, 0] } else { vec![0; 4] };
        if t % q == 0 {
            powers += 1;
        }
        if dims != want {
            bad.push(format!("t = {t}: {dims:?}"));
        }
    }
    Ok(Check::new(
        "cobar",
        "invariant-window",
        &format!("invariant cohomology has dimensions (1,2,1,0) at each of {powers} v2-powers in internal degrees [{lo}, {hi}]"),
        bad.is_empty(),
        if bad.is_empty() { "0".into() } else { bad.join("; ") },
    ))
}

pub fn cobar_suite(s: &Session) -> Result<Vec<Check>, CliError> {
    let ctx = s.cobar()?;
    let hopf = ctx.hopf();
    let mut out = vec![Check::new(
        "cobar",
        "t2-primitive",
        "Delta(t2) = t2 (x) 1 + 1 (x) t2 mod (p, v1)",
        hopf.is_primitive(hopf.generator(1)),
        ctx.coproducts().to_text(1)?,
    )];
    for k in 1..=hopf.bound() {
        let (l, r) = ctx.coproducts().counit_residuals(k)?;
        let coassoc = hopf.coassociativity_defect(hopf.generator(k));
        out.push(Check::new(
            "cobar",
            &format!("coproduct-t{}", 2 * k),
            &format!("Delta(t{}) is counital and coassociative", 2 * k),
            l == 0 && r == 0 && coassoc == 0,
            format!("counit {l}/{r} coassociativity {coassoc}"),
        ));
    }
    let pres = AlgebroidPresentation::new(ctx.coproducts())?;
    let rel = pres.relation_residuals()?;
    let ax = pres.axiom_defects()?;
    out.push(Check::new(
        "cobar",
        "presentation",
        "t_k^{p^2} relations and Hopf axioms of the presentation over F_{p^2}[u^{+-1}]",
        rel.iter().all(|&x| x == 0) && ax.iter().all(|&(a, b, c)| a + b + c == 0),
        format!("relations {rel:?} axioms {ax:?}"),
    ));
    let (lo, hi) = s.internal_window();
    out.push(invariant_dimensions(s, lo, hi)?);
    Ok(out)
}

pub const LIFT_EXPONENTS: [i64; 5] = [1, -1, 2, -2, 4];

pub fn lift_checks(s: &Session, kmax: u32) -> Result<Vec<Check>, CliError> {
    let p = s.p();
    let mut out = vec![];
    for k in 0..=kmax {
        for &e in &LIFT_EXPONENTS {
            if e % p as i64 == 0 {
                continue;
            }
            let r = build_z_lift(s.model()?, e, k)?.record;
            out.push(Check::new(
                "bockstein",
                &format!("lift[s={e},k={k}]"),
                &format!("d(z_(s p^k)) has page (p^k+...+1)(p+1) and target v2^b(sp^k)(g^p - g) for s = {e}, k = {k}"),
                r.matches_formulas(p),
                format!("page {} target {} unit {}", r.page, r.target_exponent, r.unit),
            ));
        }
    }
    Ok(out)
}

pub fn bockstein_suite(s: &Session) -> Result<Vec<Check>, CliError> {
    let mut out = lift_checks(s, s.cfg.kmax)?;
    out.push(Check::new(
        "bockstein",
        "target-cocycle",
        "g and g^p, hence g^p - g, are cocycles of the degree-zero cobar complex",
        target_is_cocycle(s.cobar()?.hopf()),
        "0",
    ));
    let run = s.run()?;
    let cc = cross_check(run)?;
    let off: Vec<String> = cc
        .entries
        .iter()
        .filter(|e| e.status != CheckStatus::Match)
        .map(|e| format!("t = {}: engine {:?} closed form {}", e.t, e.engine, e.closed_form))
        .chain(run.unresolved.iter().map(|u| format!("unresolved s = {} t = {}: {}", u.s, u.t, u.reason)))
        .collect();
    out.push(Check::new(
        "bockstein",
        "cross-check",
        &format!("torsion exponents of H^1 equal n_t for t in [{}, {}]", run.t_min, run.t_max),
        cc.passed,
        if off.is_empty() { "0".into() } else { off.join("; ") },
    ));
    let ranks: Vec<usize> = (0..=2).map(|i| run.modules[&i].free_rank()).collect();
    out.push(Check::new(
        "bockstein",
        "free-ranks",
        "H^0 = F_p[v1]{1}, H^1 has one free generator zeta, H^2 is torsion",
        ranks == [1, 1, 0],
        format!("{ranks:?}"),
    ));
    let sp = sparseness(run, s.e1()?);
    out.push(Check::new(
        "bockstein",
        "sparseness",
        "H^{s,t} = 0 unless 2(p-1) | t, and H^s = 0 for s >= 3",
        sp.degrees_divisible && sp.vanishes_above_two,
        format!("divisible {} vanishing {}", sp.degrees_divisible, sp.vanishes_above_two),
    ));
    Ok(out)
}

/// v2-exponents t with a contribution v1^j c_t to π_{−1}: j = −t(p+1) < n_t.
pub fn degree_minus_one_family(p: u32, tmin: i64, tmax: i64) -> Result<Vec<i64>, CliError> {
    let mut out = vec![];
    for t in tmin..=tmax.min(0) {
        if -t * (p as i64 + 1) < n_t_closed_form(t, p)? {
            out.push(t);
        }
    }
    Ok(out)
}

pub fn analysis_suite(s: &Session) -> Result<Vec<Check>, CliError> {
    let p = s.p();
    let run = s.run()?;
    let mut out = vec![];
    for i in [0usize, 1] {
        let r = essentially_finite_rank(&from_fpv1(&run.modules[&i], p)?)?;
        out.push(Check::new(
            "analysis",
            &format!("finite-rank-H{i}"),
            &format!("H^{i} is essentially of finite rank, rank 1"),
            r == FiniteRank { finite: true, rank: Some(1) },
            format!("{r:?}"),
        ));
    }
    let chart = homotopy_from_modules(p, &run.modules, -1, -1);
    let got: Vec<i64> = chart.contributions(-1).iter().filter(|c| c.lifetime.is_some()).map(|c| c.t).collect();
    let want = degree_minus_one_family(p, run.t_min, run.t_max)?;
    out.push(Check::new(
        "analysis",
        "degree-minus-one",
        "pi_{-1} collects v1^{-t(p+1)} c_t for every t = -(1+p+...+p^(i-1)) in the window",
        got.len() >= 3 && {
            let mut g = got.clone();
            g.sort_unstable();
            g == want
        },
        format!("torsion contributions from t = {got:?}"),
    ));
    let check = match bc_shift_obstruction(&run.modules[&2], run.t_min..=run.t_max, p, -50..=50, 1..=40) {
        Ok(rep) => Check::new(
            "analysis",
            "duality-shift",
            "no shift c in [-50, 50] admits d_k with v1^(k-1) d_k != 0 for every k <= 40",
            rep.not_found.is_empty(),
            if rep.not_found.is_empty() { "0".into() } else { format!("no failing k for c = {:?}", rep.not_found) },
        ),
        Err(e) => Check::new("analysis", "duality-shift", "shift obstruction search", false, e.to_string()),
    };
    out.push(check);
    Ok(out)
}
