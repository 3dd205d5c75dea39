//! Argument definitions and subcommand dispatch.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use supercoh::states::DEFAULT_TAIL_TOL;
use supercoh::{NonGaussianOp, WitnessKind};

use crate::error::CliError;
use crate::eval::{evaluate, BackendChoice, Family, StateSpec, WitnessChoice};
use crate::format::sig12;
use crate::oracle::{run_oracle, OracleSpec, DEFAULT_QUADRATURE_TOL};
use crate::presets::{preset, PRESETS};
use crate::range::{parse_list, parse_number, Range};
use crate::sweep::{check_output, run_sweep, SweepParam, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "supercoh",
    version,
    about = "Higher-order nonclassicality witnesses for cat and squeezed states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one witness at one parameter point
    Witness(WitnessArgs),
    /// Sweep one parameter and write CSV
    Sweep(SweepArgs),
    /// Compare analytic moments against the truncated Fock oracle
    OracleCheck(OracleArgs),
    /// Write the CSV behind a named figure preset
    Figdata(FigdataArgs),
}

fn number(s: &str) -> Result<f64, String> {
    parse_number(s).map_err(|e| e.to_string())
}

fn list(s: &str) -> Result<Vec<f64>, String> {
    parse_list(s).map_err(|e| e.to_string())
}

fn range(s: &str) -> Result<Range, String> {
    Range::parse(s).map_err(|e| e.to_string())
}

fn orders(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid order '{p}'"))
        })
        .collect()
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// State family
    #[arg(long, value_enum)]
    pub state: Family,
    /// Cat amplitude (real, >= 0)
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Cat relative phase; accepts multiples of pi such as 3pi/4
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Squeezed-family |xi| (< 1)
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Squeezed-family phase of xi
    #[arg(long, value_parser = number, allow_hyphen_values = true, default_value = "0")]
    pub theta: f64,
    /// Photons added (applied first)
    #[arg(long = "add", default_value_t = 0)]
    pub added: u32,
    /// Photons subtracted (applied after addition)
    #[arg(long = "sub", default_value_t = 0)]
    pub subtracted: u32,
    /// Truncation tail tolerance for Fock states
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
    /// Fixed Fock dimension instead of the automatic one
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = BackendChoice::Auto)]
    pub backend: BackendChoice,
}

impl StateArgs {
    /// Builds the state; `swept` names a parameter that need not be given.
    fn to_spec(&self, swept: Option<SweepParam>) -> Result<StateSpec, CliError> {
        let need = |v: Option<f64>, name: &str, p: SweepParam| -> Result<f64, CliError> {
            match v {
                Some(v) => Ok(v),
                None if swept == Some(p) => Ok(0.0),
                None => Err(CliError::Invalid(format!(
                    "--{name} is required for --state {}",
                    self.state.as_str()
                ))),
            }
        };
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(CliError::Invalid(format!(
                "tail-tol must be in (0, 1) (got {})",
                self.tail_tol
            )));
        }
        let mut spec = match self.state {
            Family::Cat => StateSpec::cat(
                need(self.alpha, "alpha", SweepParam::Alpha)?,
                need(self.phi, "phi", SweepParam::Phi)?,
            ),
            Family::Squeezed => {
                StateSpec::squeezed(need(self.xi, "xi", SweepParam::Xi)?, self.theta)
            }
        };
        spec.op = NonGaussianOp::new(self.added, self.subtracted)?;
        spec.tail_tol = self.tail_tol;
        spec.nmax = self.nmax;
        spec.backend = self.backend;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub witness: WitnessChoice,
    /// Witness order (l for hoa/hosps/hillery, n for hm); defaults to the lowest valid order
    #[arg(long)]
    pub order: Option<u32>,
    /// Hong-Mandel quadrature angle
    #[arg(long, value_parser = number, allow_hyphen_values = true, default_value = "0")]
    pub angle: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub witness: WitnessChoice,
    /// Comma-separated orders
    #[arg(long, value_parser = orders)]
    pub orders: Option<Vec<u32>>,
    /// Swept parameter
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Inclusive range start:stop:step
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    pub range: Range,
    #[arg(long, value_parser = number, allow_hyphen_values = true, default_value = "0")]
    pub angle: f64,
    /// Output file (stdout if omitted)
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigdataArgs {
    /// Preset name (see --list)
    #[arg(required_unless_present = "list")]
    pub preset: Option<String>,
    /// List presets and exit
    #[arg(long)]
    pub list: bool,
    /// Override the preset's range
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    pub range: Option<Range>,
    /// Override the preset's orders
    #[arg(long, value_parser = orders)]
    pub orders: Option<Vec<u32>>,
    #[arg(long)]
    pub tail_tol: Option<f64>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Largest k and l compared
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Cat amplitudes, comma-separated
    #[arg(long, value_parser = list)]
    pub alphas: Option<Vec<f64>>,
    /// Cat phases, comma-separated (pi expressions allowed)
    #[arg(long, value_parser = list)]
    pub phis: Option<Vec<f64>>,
    #[arg(long, value_parser = list)]
    pub xis: Option<Vec<f64>>,
    #[arg(long, value_parser = list)]
    pub thetas: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
    /// Skip the double-integral oracle (squeezed family)
    #[arg(long)]
    pub no_quadrature: bool,
    #[arg(long, default_value_t = DEFAULT_QUADRATURE_TOL)]
    pub quadrature_tol: f64,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run<O: Write, E: Write>(cli: Cli, out: &mut O, err: &mut E) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch<O: Write, E: Write>(cli: Cli, out: &mut O, err: &mut E) -> Result<i32, CliError> {
    match cli.command {
        Command::Witness(a) => cmd_witness(a, out, err),
        Command::Sweep(a) => {
            let spec = SweepSpec {
                state: a.state.to_spec(Some(a.param))?,
                param: a.param,
                range: a.range,
                witness: a.witness,
                orders: a.orders.unwrap_or_else(|| vec![a.witness.default_order()]),
                angle: a.angle,
                preset: None,
                notes: Vec::new(),
            };
            emit_sweep(&spec, a.out, out, err)
        }
        Command::Figdata(a) => {
            if a.list {
                for (name, what) in PRESETS {
                    writeln!(out, "{name:12} {what}")?;
                }
                return Ok(0);
            }
            let mut spec = preset(a.preset.as_deref().expect("clap enforces preset or --list"))?;
            if let Some(r) = a.range {
                spec.range = r;
                spec.notes
                    .push("range overridden on the command line".into());
            }
            if let Some(o) = a.orders {
                spec.orders = o;
            }
            if let Some(t) = a.tail_tol {
                spec.state.tail_tol = t;
            }
            spec.state.nmax = a.nmax.or(spec.state.nmax);
            emit_sweep(&spec, a.out, out, err)
        }
        Command::OracleCheck(a) => {
            let mut spec = OracleSpec::default_for(a.family);
            let (first, second) = match a.family {
                Family::Cat => (a.alphas, a.phis),
                Family::Squeezed => (a.xis, a.thetas),
            };
            if let Some(v) = first {
                spec.first = v;
            }
            if let Some(v) = second {
                spec.second = v;
            }
            if let Some(k) = a.kmax {
                spec.kmax = k;
            }
            spec.tol = a.tol;
            spec.tail_tol = a.tail_tol;
            spec.quadrature &= !a.no_quadrature;
            spec.quadrature_tol = a.quadrature_tol;
            let report = run_oracle(&spec)?;
            write!(out, "{}", report.render())?;
            match report.worst_violation() {
                None => Ok(0),
                Some(w) => Err(CliError::OracleViolation(w)),
            }
        }
    }
}

fn cmd_witness<O: Write, E: Write>(
    a: WitnessArgs,
    out: &mut O,
    err: &mut E,
) -> Result<i32, CliError> {
    let spec = a.state.to_spec(None)?;
    let order = a.order.unwrap_or_else(|| a.witness.default_order());
    let e = evaluate(&spec, a.witness, order, a.angle)?;
    for w in &e.warnings {
        writeln!(err, "warning: {w}")?;
    }
    let first = &e.results[0];
    let mut line = format!("{} backend={}", first.params, e.backend);
    if let Some(d) = e.fock_dim {
        line.push_str(&format!(" dim={d}"));
    }
    match a.witness {
        WitnessChoice::Hillery2 | WitnessChoice::Hillery => {
            line.push_str(&format!(" witness=HILLERY order={}", first.order));
            for r in &e.results {
                let tag = if r.kind == WitnessKind::Hillery1 {
                    "A1"
                } else {
                    "A2"
                };
                line.push_str(&format!(" {tag}={}", sig12(r.value)));
            }
            for r in &e.results {
                let tag = if r.kind == WitnessKind::Hillery1 {
                    "A1"
                } else {
                    "A2"
                };
                line.push_str(&format!(" nonclassical_{tag}={}", r.nonclassical));
            }
        }
        _ => line.push_str(&format!(
            " witness={} order={} value={} nonclassical={}",
            first.kind,
            first.order,
            sig12(first.value),
            first.nonclassical
        )),
    }
    writeln!(out, "{line}")?;
    Ok(0)
}

fn emit_sweep<O: Write, E: Write>(
    spec: &SweepSpec,
    path: Option<PathBuf>,
    out: &mut O,
    err: &mut E,
) -> Result<i32, CliError> {
    let result = run_sweep(spec)?;
    for w in &result.warnings {
        writeln!(err, "warning: {w}")?;
    }
    match path {
        Some(p) => result.write_csv(BufWriter::new(File::create(&p)?))?,
        None => result.write_csv(&mut *out)?,
    }
    check_output(&result)?;
    Ok(0)
}
