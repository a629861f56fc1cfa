//! Lazily built engine objects shared by the commands of one run.

use crate::config::RunConfig;
use crate::CliError;
use bockstein_engine::{run_bockstein, v2_degree, BocksteinRun};
use fgl_engine::{solve_right_units, FormalGroupLaw, RightUnits, SigmaModel};
use hopf_cobar::{
    cohomology_window, group_action_invariants, CobarContext, CohomologyTable, GaloisConvention, SignConvention,
};
use std::cell::OnceCell;

fn get_or_try<T>(cell: &OnceCell<T>, f: impl FnOnce() -> Result<T, CliError>) -> Result<&T, CliError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

pub struct Session {
    pub cfg: RunConfig,
    law: OnceCell<FormalGroupLaw>,
    units: OnceCell<RightUnits>,
    model: OnceCell<SigmaModel>,
    cobar: OnceCell<CobarContext>,
    raw: OnceCell<CohomologyTable>,
    e1: OnceCell<CohomologyTable>,
    run: OnceCell<BocksteinRun>,
}

impl Session {
    pub fn new(cfg: RunConfig) -> Self {
        Session {
            cfg,
            law: OnceCell::new(),
            units: OnceCell::new(),
            model: OnceCell::new(),
            cobar: OnceCell::new(),
            raw: OnceCell::new(),
            e1: OnceCell::new(),
            run: OnceCell::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.cfg.p
    }

    /// The law at the configured cap.
    pub fn law(&self) -> Result<&FormalGroupLaw, CliError> {
        get_or_try(&self.law, || Ok(FormalGroupLaw::new(self.cfg.p, self.cfg.degree_cap)?))
    }

    /// Right units of every v_k the cap reaches.
    pub fn units(&self) -> Result<&RightUnits, CliError> {
        get_or_try(&self.units, || {
            let law = self.law()?;
            let p = self.cfg.p as i64;
            let mut count = 0;
            while p.pow(count as u32 + 1) <= self.cfg.degree_cap {
                count += 1;
            }
            Ok(solve_right_units(law, count)?)
        })
    }

    pub fn model(&self) -> Result<&SigmaModel, CliError> {
        get_or_try(&self.model, || Ok(SigmaModel::new(self.units()?, self.cfg.trunc)?))
    }

    pub fn cobar(&self) -> Result<&CobarContext, CliError> {
        get_or_try(&self.cobar, || Ok(CobarContext::new(self.cfg.p, 2, SignConvention::Standard)?))
    }

    /// Internal degrees spanned by the v2-window.
    pub fn internal_window(&self) -> (i64, i64) {
        (v2_degree(self.cfg.p, self.cfg.tmin), v2_degree(self.cfg.p, self.cfg.tmax))
    }

    /// Cohomology over F_{p²} on the internal window.
    pub fn raw_table(&self) -> Result<&CohomologyTable, CliError> {
        get_or_try(&self.raw, || {
            let (lo, hi) = self.internal_window();
            Ok(cohomology_window(self.cobar()?, self.cfg.smax, lo, hi)?)
        })
    }

    /// The invariant E_1 table over F_p.
    pub fn e1(&self) -> Result<&CohomologyTable, CliError> {
        get_or_try(&self.e1, || {
            Ok(group_action_invariants(self.raw_table()?, self.cobar()?, GaloisConvention::Coefficients)?)
        })
    }

    pub fn run(&self) -> Result<&BocksteinRun, CliError> {
        get_or_try(&self.run, || {
            Ok(run_bockstein(self.model()?, self.e1()?, self.cfg.tmin, self.cfg.tmax, self.cfg.kmax)?)
        })
    }
}
