use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use starlab_core::calogero::SingularOscillator;
use starlab_core::heisenberg::{self, ExtendedStarContext, StarProduct, Voros};
use starlab_core::landau::LandauFunction;
use starlab_core::report::VerificationReport;
use starlab_core::symbol::PhaseSymbol;
use starlab_core::Complex64;

use crate::error::{CliError, CliResult};
use crate::json::{parse_symbol, symbol_to_json};
use crate::render::{render, Format};
use crate::suites::{self, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "starlab", version, about = "Star-product verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Number of sample points (each suite has its own default).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Override the tolerance of every nonzero-tolerance agreement check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl RunArgs {
    fn config(&self) -> CliResult<RunConfig> {
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("--tol {t} must be a finite non-negative number")));
            }
        }
        RunConfig { seed: self.seed, grid: self.grid, tol: self.tol, ..RunConfig::default() }.with_env()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StarKind {
    Voros,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: heisenberg, extended, canonical, su11, calogero, landau or all.
    Verify {
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Star product of two symbols given as canonical JSON files.
    Star {
        #[arg(long, value_enum, default_value_t = StarKind::Voros)]
        kind: StarKind,
        /// Per-mode levels for the extended product, comma separated.
        #[arg(long, value_delimiter = ',')]
        k: Vec<u32>,
        f: PathBuf,
        g: PathBuf,
    },
    /// Table of the extended-product coefficients I_{k,p}.
    Icoeff {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        pmax: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    Su11 {
        #[command(subcommand)]
        action: Su11Action,
    },
    Calogero {
        #[command(subcommand)]
        action: CalogeroAction,
    },
    /// Covariance of an observable under a squeeze flow, or under the cubic
    /// generator with --noncanonical.
    Covariance {
        #[arg(long, default_value = "0.3")]
        xi: String,
        /// Observable as a canonical JSON symbol file (default z̄z).
        #[arg(long)]
        observable: Option<PathBuf>,
        #[arg(long)]
        noncanonical: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    Landau {
        #[command(subcommand)]
        action: LandauAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum Su11Action {
    Verify {
        /// Bargmann indices, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2")]
        k: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CalogeroAction {
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
        eta: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Energies e_n = 2n + e₀.
    Spectrum {
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum LandauAction {
    Verify {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exploratory: the level-k extended product of the polynomial parts of
    /// two functions of level k. No relation is checked.
    Star {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, num_args = 2)]
        l: Vec<i64>,
    },
}

/// Rendered output and whether any entry failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome { text, failed: false }
    }

    fn reports(reports: &[VerificationReport], format: Format) -> Self {
        Outcome { text: render(reports, format), failed: reports.iter().any(|r| !r.passed()) }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

#[derive(Serialize)]
struct IcoeffRow {
    p: u32,
    exact: String,
    float: f64,
    quadrature: f64,
}

#[derive(Serialize)]
struct IcoeffTable {
    k: u32,
    rows: Vec<IcoeffRow>,
}

#[derive(Serialize)]
struct Spectrum {
    eta: f64,
    alpha: f64,
    e0: f64,
    bargmann_index: f64,
    energies: Vec<f64>,
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn parse_complex(s: &str) -> CliResult<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| CliError::Config(format!("{s:?} is not a complex number (e.g. 0.3 or 0.2+0.1i)")))
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Verify { suite, run } => {
            let cfg = run.config()?;
            Ok(Outcome::reports(&suites::run_named(&suite, &cfg)?, run.format))
        }
        Command::Star { kind, k, f, g } => {
            let f = parse_symbol(&read(&f)?)?;
            let g = parse_symbol(&read(&g)?)?;
            let out = match kind {
                StarKind::Voros => Voros.star(&f, &g)?,
                StarKind::Extended => {
                    let kvec = if k.is_empty() { vec![0; f.modes()] } else { k };
                    if kvec.len() != f.modes() {
                        return Err(CliError::Config(format!(
                            "--k has {} entries but the symbols have {} modes",
                            kvec.len(),
                            f.modes()
                        )));
                    }
                    let pmax = f.degree().max(g.degree());
                    ExtendedStarContext::new(kvec, pmax).star(&f, &g)?
                }
            };
            Ok(Outcome::plain(symbol_to_json(&out) + "\n"))
        }
        Command::Icoeff { k, pmax, format } => {
            let mut rows = Vec::new();
            for p in 0..=pmax {
                let exact = heisenberg::icoeff(k, p);
                rows.push(IcoeffRow {
                    p,
                    exact: exact.to_string(),
                    float: exact.to_f64().unwrap_or(f64::NAN),
                    quadrature: heisenberg::icoeff_quadrature(k, p, (k + p + 8) as usize)?,
                });
            }
            let text = match format {
                TableFormat::Json => {
                    serde_json::to_string_pretty(&IcoeffTable { k, rows }).expect("table serializes") + "\n"
                }
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).expect("in-memory write");
                    }
                    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
                }
            };
            Ok(Outcome::plain(text))
        }
        Command::Su11 { action: Su11Action::Verify { k, run } } => {
            if let Some(bad) = k.iter().find(|k| !(**k > 0.0)) {
                return Err(CliError::Config(format!("Bargmann index {bad} must be positive")));
            }
            let cfg = run.config()?;
            Ok(Outcome::reports(&[suites::run_su11(&k, &cfg)], run.format))
        }
        Command::Calogero { action: CalogeroAction::Verify { eta, run } } => {
            let cfg = run.config()?;
            Ok(Outcome::reports(&[suites::run_calogero(&eta, &cfg)], run.format))
        }
        Command::Calogero { action: CalogeroAction::Spectrum { eta, n } } => {
            let osc = SingularOscillator::new(eta, 2)?;
            let s = Spectrum {
                eta,
                alpha: osc.alpha(),
                e0: osc.e0(),
                bargmann_index: osc.bargmann_index(),
                energies: osc.spectrum(n),
            };
            Ok(Outcome::plain(serde_json::to_string_pretty(&s).expect("spectrum serializes") + "\n"))
        }
        Command::Covariance { xi, observable, noncanonical, run } => {
            let xi = parse_complex(&xi)?;
            let f = match observable {
                Some(path) => parse_symbol(&read(&path)?)?,
                None => PhaseSymbol::generator(1, 0, true)?.pointwise_mul(&PhaseSymbol::generator(1, 0, false)?)?,
            };
            if f.modes() != 1 {
                return Err(CliError::Config("the covariance command takes single-mode observables".into()));
            }
            let cfg = run.config()?;
            Ok(Outcome::reports(&[suites::run_covariance(xi, &f, noncanonical, &cfg)], run.format))
        }
        Command::Landau { action: LandauAction::Verify { kmax, run } } => {
            let cfg = run.config()?;
            Ok(Outcome::reports(&[suites::run_landau(kmax, &cfg)], run.format))
        }
        Command::Landau { action: LandauAction::Star { k, l } } => {
            let a = LandauFunction::new(k, l[0])?.polynomial_part()?;
            let b = LandauFunction::new(k, l[1])?.polynomial_part()?;
            let pmax = a.degree().max(b.degree());
            let out = ExtendedStarContext::new(vec![k as u32], pmax).star(&a, &b)?;
            Ok(Outcome::plain(symbol_to_json(&out.to_complex()) + "\n"))
        }
    }
}
