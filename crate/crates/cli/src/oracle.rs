//! Analytic-versus-Fock moment comparison (`oracle-check`).

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use supercoh::moments::{
    cat_moment, squeezed_moment, squeezed_moment_quadrature, QuadratureOptions,
};
use supercoh::states::{cat_fock, squeezed_vacuum_fock, DEFAULT_TAIL_TOL};
use supercoh::{CatParams, Complex64, MomentProvider, SqueezedParams};

use crate::error::CliError;
use crate::eval::Family;
use crate::format::sig12;

/// Largest `k, l` the quadrature oracle is run for.
pub const QUADRATURE_MAX_ORDER: u32 = 3;
pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct OracleSpec {
    pub family: Family,
    pub kmax: u32,
    pub tol: f64,
    /// first grid axis: alpha (cat) or xi (squeezed)
    pub first: Vec<f64>,
    /// second grid axis: phi (cat) or theta (squeezed)
    pub second: Vec<f64>,
    pub tail_tol: f64,
    /// Also compare against the double-integral oracle at theta = 0.
    pub quadrature: bool,
    pub quadrature_tol: f64,
}

impl OracleSpec {
    pub fn cat_default() -> Self {
        Self {
            family: Family::Cat,
            kmax: 5,
            tol: 1e-9,
            first: vec![0.3, 0.7, 1.2, 1.8],
            second: vec![0.0, 1.0, PI / 2.0, PI],
            tail_tol: DEFAULT_TAIL_TOL,
            quadrature: false,
            quadrature_tol: DEFAULT_QUADRATURE_TOL,
        }
    }

    pub fn squeezed_default() -> Self {
        Self {
            family: Family::Squeezed,
            kmax: 4,
            tol: 1e-9,
            first: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            second: vec![0.0, PI / 3.0],
            tail_tol: DEFAULT_TAIL_TOL,
            quadrature: true,
            quadrature_tol: DEFAULT_QUADRATURE_TOL,
        }
    }

    pub fn default_for(family: Family) -> Self {
        match family {
            Family::Cat => Self::cat_default(),
            Family::Squeezed => Self::squeezed_default(),
        }
    }

    fn axis_names(&self) -> (&'static str, &'static str) {
        match self.family {
            Family::Cat => ("alpha", "phi"),
            Family::Squeezed => ("xi", "theta"),
        }
    }
}

/// Worst deviation for one `(k, l)` over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub k: u32,
    pub l: u32,
    pub max_dev: f64,
    pub worst_point: String,
}

/// `dev < tol`; false for NaN.
fn within(dev: f64, tol: f64) -> bool {
    dev < tol
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub family: Family,
    pub tol: f64,
    pub fock: Vec<Deviation>,
    pub quadrature_tol: f64,
    pub quadrature: Vec<Deviation>,
}

impl OracleReport {
    fn violations(&self) -> impl Iterator<Item = (&'static str, &Deviation, f64)> {
        let fock = self
            .fock
            .iter()
            .filter(|d| !within(d.max_dev, self.tol))
            .map(|d| ("fock", d, self.tol));
        let quad = self
            .quadrature
            .iter()
            .filter(|d| !within(d.max_dev, self.quadrature_tol))
            .map(|d| ("quadrature", d, self.quadrature_tol));
        fock.chain(quad)
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }

    /// Largest violation relative to its tolerance, if any.
    pub fn worst_violation(&self) -> Option<String> {
        self.violations()
            .max_by(|a, b| (a.1.max_dev / a.2).total_cmp(&(b.1.max_dev / b.2)))
            .map(|(oracle, d, tol)| {
                format!(
                    "{oracle} oracle, (k,l)=({},{}) deviation {} > tol {} at {}",
                    d.k,
                    d.l,
                    sig12(d.max_dev),
                    sig12(tol),
                    d.worst_point
                )
            })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut table = |title: &str, rows: &[Deviation], tol: f64| {
            writeln!(
                s,
                "# {title} ({} family), tol {}",
                self.family.as_str(),
                sig12(tol)
            )
            .unwrap();
            writeln!(s, "k,l,max_abs_dev,worst_point,ok").unwrap();
            for d in rows {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    d.k,
                    d.l,
                    sig12(d.max_dev),
                    d.worst_point,
                    d.max_dev < tol
                )
                .unwrap();
            }
        };
        table("analytic vs Fock", &self.fock, self.tol);
        if !self.quadrature.is_empty() {
            table(
                "analytic vs double integral, theta=0",
                &self.quadrature,
                self.quadrature_tol,
            );
        }
        match self.worst_violation() {
            None => writeln!(s, "PASS").unwrap(),
            Some(w) => writeln!(s, "FAIL worst offender: {w}").unwrap(),
        }
        s
    }
}

fn fold_max(rows: Vec<Vec<(f64, String)>>, kmax: u32) -> Vec<Deviation> {
    let n = (kmax + 1) as usize;
    (0..n * n)
        .map(|idx| {
            let (k, l) = ((idx / n) as u32, (idx % n) as u32);
            let mut best: Option<&(f64, String)> = None;
            for point in &rows {
                let cand = &point[idx];
                // NaN counts as the worst possible deviation
                let worse = match best {
                    None => true,
                    Some(b) => (cand.0.is_nan() && !b.0.is_nan()) || cand.0 > b.0,
                };
                if worse {
                    best = Some(cand);
                }
            }
            let best = best.expect("grid is non-empty");
            Deviation {
                k,
                l,
                max_dev: best.0,
                worst_point: best.1.clone(),
            }
        })
        .collect()
}

type AnalyticMoment = dyn Fn(u32, u32) -> supercoh::Result<Complex64>;

pub fn run_oracle(spec: &OracleSpec) -> Result<OracleReport, CliError> {
    if spec.first.is_empty() || spec.second.is_empty() {
        return Err(CliError::Invalid("oracle grid must be non-empty".into()));
    }
    if !(within(0.0, spec.tol) && within(0.0, spec.quadrature_tol)) {
        return Err(CliError::Invalid("tolerances must be > 0".into()));
    }
    let max_k = match spec.family {
        Family::Cat => 12,
        Family::Squeezed => supercoh::moments::SQUEEZED_MAX_ORDER / 2,
    };
    if spec.kmax > max_k {
        return Err(CliError::Invalid(format!(
            "kmax must be <= {max_k} (got {})",
            spec.kmax
        )));
    }
    let (n1, n2) = spec.axis_names();
    let grid: Vec<(f64, f64)> = spec
        .first
        .iter()
        .flat_map(|&a| spec.second.iter().map(move |&b| (a, b)))
        .collect();
    // validate every point up front so bad grids exit 2 instead of reading as deviations
    for &(a, b) in &grid {
        match spec.family {
            Family::Cat => CatParams::new(a, b)?.check_defined()?,
            Family::Squeezed => drop(SqueezedParams::new(a, b)?),
        }
    }

    let kmax = spec.kmax;
    let per_point: Vec<Vec<(f64, String)>> = grid
        .par_iter()
        .map(|&(a, b)| -> Result<Vec<(f64, String)>, CliError> {
            let label = format!("{n1}={} {n2}={}", sig12(a), sig12(b));
            let (fock, analytic): (MomentProvider, Box<AnalyticMoment>) = match spec.family {
                Family::Cat => {
                    let p = CatParams::new(a, b)?;
                    (
                        MomentProvider::fock(cat_fock(&p, spec.tail_tol)?)?,
                        Box::new(move |k, l| cat_moment(&p, k, l)),
                    )
                }
                Family::Squeezed => {
                    let p = SqueezedParams::new(a, b)?;
                    (
                        MomentProvider::fock(squeezed_vacuum_fock(&p, spec.tail_tol)?)?,
                        Box::new(move |k, l| squeezed_moment(&p, k, l)),
                    )
                }
            };
            let mut out = Vec::new();
            for k in 0..=kmax {
                for l in 0..=kmax {
                    let dev = (analytic(k, l)? - fock.moment(k, l)?).norm();
                    out.push((dev, label.clone()));
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    let fock = fold_max(per_point, kmax);

    let mut quadrature = Vec::new();
    if spec.quadrature && spec.family == Family::Squeezed {
        let qmax = kmax.min(QUADRATURE_MAX_ORDER);
        let xis: Vec<f64> = spec.first.iter().copied().filter(|&x| x > 0.0).collect();
        let rows: Vec<Vec<(f64, String)>> = xis
            .par_iter()
            .map(|&xi| -> Result<Vec<(f64, String)>, CliError> {
                let p = SqueezedParams::new(xi, 0.0)?;
                let label = format!("xi={} theta=0", sig12(xi));
                let mut out = Vec::new();
                for k in 0..=qmax {
                    for l in 0..=qmax {
                        let q = squeezed_moment_quadrature(xi, k, l, QuadratureOptions::default())?;
                        let dev = (squeezed_moment(&p, k, l)? - q).norm();
                        out.push((dev, label.clone()));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, _>>()?;
        if !rows.is_empty() {
            quadrature = fold_max(rows, qmax);
        }
    }

    Ok(OracleReport {
        family: spec.family,
        tol: spec.tol,
        fock,
        quadrature_tol: spec.quadrature_tol,
        quadrature,
    })
}
