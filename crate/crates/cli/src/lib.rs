//! The `ehh2` command line: verification suites, computations, fixtures
//! and charts over the height-two engines.

pub mod chart;
pub mod config;
pub mod document;
mod error;
pub mod fixtures;
pub mod session;
pub mod suite;
pub mod text;

pub use error::CliError;

use clap::{Parser, Subcommand};
use config::{Format, Overrides, RunConfig};
use document::{Document, Target};
use session::Session;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "ehh2", version, about = "Height-two fixed points mod p: verification and computation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// `key = value` file; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suites; exit 1 if any check fails
    Verify {
        /// restrict to these suites (fgl, congruence, cobar, bockstein, analysis)
        #[arg(long)]
        suite: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Formal group law
    Fgl {
        #[command(subcommand)]
        action: FglAction,
    },
    /// Cobar cohomology of the quotient Hopf algebroid
    Cobar {
        #[command(subcommand)]
        action: CobarAction,
    },
    /// The v1-Bockstein spectral sequence
    Bockstein {
        #[command(subcommand)]
        action: BocksteinAction,
    },
    /// Module analysis of the computed cohomology
    Analyze {
        #[command(subcommand)]
        action: AnalyzeAction,
    },
    /// Compute a document: h-star, homotopy or nt-table
    Compute {
        #[arg(long, value_enum)]
        target: Target,
        /// topological degree range for homotopy
        #[arg(long, allow_hyphen_values = true, default_value_t = -20)]
        dmin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 20)]
        dmax: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Render an h-star or homotopy document as SVG
    Chart {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum FglAction {
    /// Coefficients of the law to the degree cap
    Dump {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum CobarAction {
    /// Raw and invariant cohomology on the window
    Cohomology {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum BocksteinAction {
    /// Differentials, E_infinity modules and the closed-form cross-check
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// The torsion exponent n_t from the closed form
    Nt {
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeAction {
    /// Essential finite rank of H^0, H^1, H^2
    Efr {
        #[command(flatten)]
        common: Common,
    },
    /// Duality-shift obstruction; here --kmax bounds the level k, and the
    /// Bockstein page bound comes from the config file
    BcShift {
        #[arg(long, allow_hyphen_values = true, default_value_t = -50)]
        cmin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 50)]
        cmax: i64,
        #[command(flatten)]
        common: Common,
    },
}

/// What a command produced: text for stdout or `--out`, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
    pub out: Option<PathBuf>,
}

fn resolve(common: &Common) -> Result<RunConfig, CliError> {
    let base = match &common.config {
        Some(path) => Overrides::read_file(path)?,
        None => Overrides::default(),
    };
    RunConfig::resolve(&base.merge(common.overrides.clone()))
}

fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => text::render(doc),
        Format::Svg => chart::svg(doc),
    }
}

fn finish(doc: Document, cfg: &RunConfig, default: Format, common: &Common) -> Result<Output, CliError> {
    if let Some(dir) = &cfg.fixtures {
        if doc.kind != "verify" {
            fixtures::pin(&doc, dir)?;
        }
    }
    let text = render(&doc, cfg.format_or(default))?;
    let code = if doc.passed() { 0 } else { 1 };
    Ok(Output { text, code, out: common.out.clone() })
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify { suite, common } => {
            let cfg = resolve(common)?;
            let s = Session::new(cfg.clone());
            finish(document::verify(&s, suite)?, &cfg, Format::Text, common)
        }
        Command::Fgl { action: FglAction::Dump { common } } => {
            let cfg = resolve(common)?;
            finish(document::fgl_dump(&Session::new(cfg.clone()))?, &cfg, Format::Text, common)
        }
        Command::Cobar { action: CobarAction::Cohomology { common } } => {
            let cfg = resolve(common)?;
            finish(document::cobar_cohomology(&Session::new(cfg.clone()))?, &cfg, Format::Text, common)
        }
        Command::Bockstein { action: BocksteinAction::Run { common } } => {
            let cfg = resolve(common)?;
            finish(document::bockstein_run(&Session::new(cfg.clone()))?, &cfg, Format::Json, common)
        }
        Command::Bockstein { action: BocksteinAction::Nt { t, common } } => {
            let cfg = resolve(common)?;
            finish(document::nt_value(&cfg, *t)?, &cfg, Format::Text, common)
        }
        Command::Analyze { action: AnalyzeAction::Efr { common } } => {
            let cfg = resolve(common)?;
            finish(document::analyze_efr(&Session::new(cfg.clone()))?, &cfg, Format::Json, common)
        }
        Command::Analyze { action: AnalyzeAction::BcShift { cmin, cmax, common } } => {
            let levels = common.overrides.kmax.unwrap_or(40);
            let mut pages = common.clone();
            pages.overrides.kmax = None;
            let cfg = resolve(&pages)?;
            let doc = document::analyze_bc(&Session::new(cfg.clone()), *cmin, *cmax, levels)?;
            finish(doc, &cfg, Format::Json, common)
        }
        Command::Compute { target, dmin, dmax, common } => {
            let cfg = resolve(common)?;
            let doc = document::compute(&Session::new(cfg.clone()), *target, *dmin, *dmax)?;
            finish(doc, &cfg, Format::Json, common)
        }
        Command::Chart { input, common } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
            let doc = Document::from_json(&text)?;
            Ok(Output { text: chart::svg(&doc)?, code: 0, out: common.out.clone() })
        }
    }
}
