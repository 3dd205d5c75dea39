//! Parameter sweeps and CSV output.

use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use supercoh::{NonGaussianOp, WitnessKind};

use crate::error::CliError;
use crate::eval::{evaluate, Family, StateSpec, WitnessChoice};
use crate::format::sig12;
use crate::range::Range;

pub const CSV_HEADER: &str = "param_name,param_value,witness,order,value,nonclassical";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Alpha,
    Phi,
    Xi,
    Theta,
    /// photons added
    M,
    /// photons subtracted
    Q,
    /// Hong-Mandel quadrature angle
    Angle,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Phi => "phi",
            SweepParam::Xi => "xi",
            SweepParam::Theta => "theta",
            SweepParam::M => "m",
            SweepParam::Q => "q",
            SweepParam::Angle => "angle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub param: SweepParam,
    pub range: Range,
    pub witness: WitnessChoice,
    pub orders: Vec<u32>,
    pub angle: f64,
    /// Preset name and its assumption notes, written as `#` lines.
    pub preset: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub param_name: &'static str,
    pub param_value: f64,
    pub kind: WitnessKind,
    pub order: u32,
    pub value: f64,
    pub nonclassical: bool,
}

impl Row {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.param_name,
            sig12(self.param_value),
            self.kind.as_str(),
            self.order,
            sig12(self.value),
            self.nonclassical
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub comments: Vec<String>,
    pub rows: Vec<Row>,
    pub warnings: Vec<String>,
    pub points: usize,
    pub failed_points: usize,
}

impl SweepOutput {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(out, "{}", r.to_csv())?;
        }
        out.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

impl SweepSpec {
    fn validate(&self) -> Result<(), CliError> {
        if self.orders.is_empty() {
            return Err(CliError::Invalid("at least one order is required".into()));
        }
        for &o in &self.orders {
            self.witness.check_order(o)?;
        }
        let family_ok = match self.param {
            SweepParam::Alpha | SweepParam::Phi => self.state.family == Family::Cat,
            SweepParam::Xi | SweepParam::Theta => self.state.family == Family::Squeezed,
            SweepParam::M | SweepParam::Q | SweepParam::Angle => true,
        };
        if !family_ok {
            return Err(CliError::Invalid(format!(
                "cannot sweep {} for the {} family",
                self.param.as_str(),
                self.state.family.as_str()
            )));
        }
        if self.param == SweepParam::Angle && self.witness != WitnessChoice::Hm {
            return Err(CliError::Invalid(
                "angle sweeps apply to the hm witness only".into(),
            ));
        }
        Ok(())
    }

    /// State and Hong-Mandel angle at swept value `x`.
    fn at(&self, x: f64) -> Result<(StateSpec, f64), CliError> {
        let mut s = self.state.clone();
        let mut angle = self.angle;
        let as_count = |x: f64| -> Result<u32, CliError> {
            if x < 0.0 || x.fract() != 0.0 || x > f64::from(u32::MAX) {
                return Err(CliError::Invalid(format!(
                    "photon number must be a non-negative integer (got {x})"
                )));
            }
            Ok(x as u32)
        };
        match self.param {
            SweepParam::Alpha => s.alpha = x,
            SweepParam::Phi => s.phi = x,
            SweepParam::Xi => s.xi = x,
            SweepParam::Theta => s.theta = x,
            SweepParam::M => s.op = NonGaussianOp::new(as_count(x)?, s.op.subtracted)?,
            SweepParam::Q => s.op = NonGaussianOp::new(s.op.added, as_count(x)?)?,
            SweepParam::Angle => angle = x,
        }
        Ok((s, angle))
    }

    fn header_comments(&self) -> Vec<String> {
        let s = &self.state;
        let fixed = match s.family {
            Family::Cat => format!("state: cat alpha={} phi={}", sig12(s.alpha), sig12(s.phi)),
            Family::Squeezed => format!(
                "state: squeezed xi={} theta={}",
                sig12(s.xi),
                sig12(s.theta)
            ),
        };
        let orders: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        let mut c = vec![
            format!("supercoh {}", env!("CARGO_PKG_VERSION")),
            format!("preset: {}", self.preset.as_deref().unwrap_or("none")),
            format!(
                "{fixed} m={} q={} (swept parameter overrides its fixed value)",
                s.op.added, s.op.subtracted
            ),
            format!(
                "sweep: {} from {} to {} step {}",
                self.param.as_str(),
                sig12(self.range.start),
                sig12(self.range.stop),
                sig12(self.range.step)
            ),
            format!(
                "witness: {} orders={}",
                self.witness.as_str(),
                orders.join(",")
            ),
        ];
        if self.witness == WitnessChoice::Hm {
            c.push(format!("hm quadrature angle: {}", sig12(self.angle)));
        }
        c.extend(self.notes.iter().cloned());
        c
    }
}

/// Runs the sweep; points are evaluated in parallel and assembled in ascending order.
///
/// Points that fail (for example an annihilated state) yield NaN rows and a
/// warning. Returns [`CliError::AllPointsFailed`] only through [`check_output`].
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, CliError> {
    spec.validate()?;
    let xs = spec.range.values();
    let name = spec.param.as_str();

    struct PointOut {
        rows: Vec<Row>,
        warnings: Vec<String>,
        dims: Vec<usize>,
        backend: Option<&'static str>,
        failed: bool,
    }

    let per_point: Vec<PointOut> = xs
        .par_iter()
        .map(|&x| {
            let mut out = PointOut {
                rows: Vec::new(),
                warnings: Vec::new(),
                dims: Vec::new(),
                backend: None,
                failed: false,
            };
            let at = spec.at(x);
            for &order in &spec.orders {
                let eval = at
                    .as_ref()
                    .map_err(|e| e.to_string())
                    .and_then(|(s, angle)| {
                        evaluate(s, spec.witness, order, *angle).map_err(|e| e.to_string())
                    });
                match eval {
                    Ok(e) => {
                        out.warnings.extend(e.warnings);
                        out.dims.extend(e.fock_dim);
                        out.backend = Some(e.backend);
                        out.rows.extend(e.results.into_iter().map(|r| Row {
                            param_name: name,
                            param_value: x,
                            kind: r.kind,
                            order: r.order,
                            value: r.value,
                            nonclassical: r.nonclassical,
                        }));
                    }
                    Err(msg) => {
                        out.failed = true;
                        out.warnings.push(format!(
                            "{name}={}: {} order {order}: {msg}",
                            sig12(x),
                            spec.witness.as_str()
                        ));
                        out.rows.extend(spec.witness.slots(order).into_iter().map(
                            |(kind, order)| Row {
                                param_name: name,
                                param_value: x,
                                kind,
                                order,
                                value: f64::NAN,
                                nonclassical: false,
                            },
                        ));
                    }
                }
            }
            out.warnings.dedup();
            out
        })
        .collect();

    let mut comments = spec.header_comments();
    let dims: Vec<usize> = per_point
        .iter()
        .flat_map(|p| p.dims.iter().copied())
        .collect();
    let backend = per_point.iter().find_map(|p| p.backend).unwrap_or("none");
    let dim_text = match (dims.iter().min(), dims.iter().max()) {
        (Some(lo), Some(hi)) => format!("dim={lo}..{hi}"),
        _ => "dim=n/a".to_string(),
    };
    let nmax = spec
        .state
        .nmax
        .map_or("auto".to_string(), |n| n.to_string());
    comments.push(format!(
        "backend: {backend} truncation: tail_tol={:e} nmax={nmax} {dim_text}",
        spec.state.tail_tol
    ));

    let mut out = SweepOutput {
        comments,
        rows: Vec::new(),
        warnings: Vec::new(),
        points: xs.len(),
        failed_points: 0,
    };
    for p in per_point {
        out.rows.extend(p.rows);
        out.warnings.extend(p.warnings);
        out.failed_points += usize::from(p.failed);
    }
    Ok(out)
}

/// Error when every point of the sweep failed.
pub fn check_output(out: &SweepOutput) -> Result<(), CliError> {
    if out.points > 0 && out.failed_points == out.points {
        return Err(CliError::AllPointsFailed(out.points));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn phi_sweep() -> SweepSpec {
        SweepSpec {
            state: StateSpec::cat(1.0, 0.0),
            param: SweepParam::Phi,
            range: Range::new(0.0, 2.0 * PI - 1e-9, PI / 4.0).unwrap(),
            witness: WitnessChoice::Hoa,
            orders: vec![1],
            angle: 0.0,
            preset: None,
            notes: Vec::new(),
        }
    }

    #[test]
    fn phi_sweep_signs() {
        let out = run_sweep(&phi_sweep()).unwrap();
        assert_eq!(out.rows.len(), 8);
        let at = |phi: f64| {
            out.rows
                .iter()
                .find(|r| (r.param_value - phi).abs() < 1e-12)
                .unwrap()
        };
        assert!(at(PI).value < 0.0 && at(PI).nonclassical);
        assert!(at(0.0).value >= -1e-12);
        assert!(at(PI / 2.0).value >= -1e-12);
        let xs: Vec<f64> = out.rows.iter().map(|r| r.param_value).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn annihilated_point_gives_nan_row() {
        let spec = SweepSpec {
            state: StateSpec::cat(0.0, PI),
            param: SweepParam::Alpha,
            range: Range::new(0.0, 1.0, 0.5).unwrap(),
            witness: WitnessChoice::Hillery2,
            orders: vec![2],
            ..phi_sweep()
        };
        let out = run_sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 6);
        assert!(out.rows[0].value.is_nan() && out.rows[1].value.is_nan());
        assert!(!out.rows[0].nonclassical);
        assert_eq!(out.failed_points, 1);
        assert_eq!(out.warnings.len(), 1);
        assert!(check_output(&out).is_ok());
        assert!(out
            .to_csv_string()
            .contains("alpha,0,HILLERY_1,2,NaN,false"));
    }

    #[test]
    fn all_failed_is_an_error() {
        let spec = SweepSpec {
            state: StateSpec::cat(0.0, PI),
            param: SweepParam::Alpha,
            range: Range::new(0.0, 0.0, 1.0).unwrap(),
            ..phi_sweep()
        };
        let out = run_sweep(&spec).unwrap();
        assert_eq!(check_output(&out).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn invalid_specs() {
        let mut s = phi_sweep();
        s.param = SweepParam::Xi;
        assert_eq!(run_sweep(&s).unwrap_err().exit_code(), 2);
        let mut s = phi_sweep();
        s.orders = vec![9];
        assert_eq!(run_sweep(&s).unwrap_err().exit_code(), 2);
        let mut s = phi_sweep();
        s.param = SweepParam::Angle;
        assert!(run_sweep(&s).is_err());
    }

    #[test]
    fn m_sweep_rejects_fractions() {
        let spec = SweepSpec {
            param: SweepParam::M,
            range: Range::new(0.5, 1.5, 1.0).unwrap(),
            ..phi_sweep()
        };
        let out = run_sweep(&spec).unwrap();
        assert_eq!(out.failed_points, 2);
    }
}
