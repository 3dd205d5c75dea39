//! Single-point evaluation: build the state/provider for a parameter point and run one witness.

use clap::ValueEnum;
use supercoh::moments::Backend;
use supercoh::states::{self, DEFAULT_TAIL_TOL};
use supercoh::witnesses::{
    self, HILLERY_MAX_ORDER, HOA_MAX_ORDER, HONG_MANDEL_MAX_ORDER, HOSPS_MAX_ORDER,
};
use supercoh::{
    CatParams, FockVector, HilleryQuadrature, MomentProvider, NonGaussianOp, ParamPoint,
    SqueezedParams, WitnessKind, WitnessResult,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cat,
    Squeezed,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Cat => "cat",
            Family::Squeezed => "squeezed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessChoice {
    /// higher-order antibunching D(l)
    Hoa,
    /// higher-order sub-Poissonian statistics D_h(l-1)
    Hosps,
    /// Hong-Mandel squeezing of even order n
    Hm,
    /// amplitude-squared (order 2) Hillery witnesses A1, A2 from moments
    Hillery2,
    /// order-l Hillery witnesses by direct Fock evaluation
    Hillery,
}

impl WitnessChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessChoice::Hoa => "hoa",
            WitnessChoice::Hosps => "hosps",
            WitnessChoice::Hm => "hm",
            WitnessChoice::Hillery2 => "hillery2",
            WitnessChoice::Hillery => "hillery",
        }
    }

    pub fn default_order(&self) -> u32 {
        match self {
            WitnessChoice::Hoa => 1,
            _ => 2,
        }
    }

    pub fn check_order(&self, order: u32) -> Result<(), CliError> {
        let ok = match self {
            WitnessChoice::Hoa => (1..=HOA_MAX_ORDER).contains(&order),
            WitnessChoice::Hosps => (2..=HOSPS_MAX_ORDER).contains(&order),
            WitnessChoice::Hm => {
                order.is_multiple_of(2) && (2..=HONG_MANDEL_MAX_ORDER).contains(&order)
            }
            WitnessChoice::Hillery2 => order == 2,
            WitnessChoice::Hillery => (1..=HILLERY_MAX_ORDER).contains(&order),
        };
        if ok {
            return Ok(());
        }
        let allowed = match self {
            WitnessChoice::Hoa => format!("1..={HOA_MAX_ORDER}"),
            WitnessChoice::Hosps => format!("2..={HOSPS_MAX_ORDER}"),
            WitnessChoice::Hm => format!("even, 2..={HONG_MANDEL_MAX_ORDER}"),
            WitnessChoice::Hillery2 => "2".to_string(),
            WitnessChoice::Hillery => format!("1..={HILLERY_MAX_ORDER}"),
        };
        Err(CliError::Invalid(format!(
            "{} order must be {allowed} (got {order})",
            self.as_str()
        )))
    }

    /// `(kind, order)` of every result row this witness produces.
    pub fn slots(&self, order: u32) -> Vec<(WitnessKind, u32)> {
        match self {
            WitnessChoice::Hoa => vec![(WitnessKind::Hoa, order)],
            WitnessChoice::Hosps => vec![(WitnessKind::Hosps, order)],
            WitnessChoice::Hm => vec![(WitnessKind::HongMandel, order)],
            WitnessChoice::Hillery2 => vec![(WitnessKind::Hillery1, 2), (WitnessKind::Hillery2, 2)],
            WitnessChoice::Hillery => {
                vec![
                    (WitnessKind::Hillery1, order),
                    (WitnessKind::Hillery2, order),
                ]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum BackendChoice {
    /// analytic moments for bare states, Fock otherwise
    #[default]
    Auto,
    Analytic,
    Fock,
}

/// A fully specified state: family parameters, photon operations and truncation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    pub alpha: f64,
    pub phi: f64,
    pub xi: f64,
    pub theta: f64,
    pub op: NonGaussianOp,
    pub tail_tol: f64,
    pub nmax: Option<usize>,
    pub backend: BackendChoice,
}

impl StateSpec {
    pub fn cat(alpha: f64, phi: f64) -> Self {
        Self {
            family: Family::Cat,
            alpha,
            phi,
            ..Self::base()
        }
    }

    pub fn squeezed(xi: f64, theta: f64) -> Self {
        Self {
            family: Family::Squeezed,
            xi,
            theta,
            ..Self::base()
        }
    }

    fn base() -> Self {
        Self {
            family: Family::Cat,
            alpha: 0.0,
            phi: 0.0,
            xi: 0.0,
            theta: 0.0,
            op: NonGaussianOp::identity(),
            tail_tol: DEFAULT_TAIL_TOL,
            nmax: None,
            backend: BackendChoice::Auto,
        }
    }

    pub fn with_op(mut self, added: u32, subtracted: u32) -> Self {
        self.op = NonGaussianOp { added, subtracted };
        self
    }

    /// Parameter record carried into results and reports.
    pub fn point(&self) -> ParamPoint {
        let mut p = match self.family {
            Family::Cat => ParamPoint::new()
                .with("alpha", self.alpha)
                .with("phi", self.phi),
            Family::Squeezed => ParamPoint::new()
                .with("xi", self.xi)
                .with("theta", self.theta),
        };
        if !self.op.is_identity() {
            p.set("m", f64::from(self.op.added));
            p.set("q", f64::from(self.op.subtracted));
        }
        p
    }

    fn wants_fock(&self, witness: WitnessChoice) -> Result<bool, CliError> {
        let needs =
            !self.op.is_identity() || self.nmax.is_some() || witness == WitnessChoice::Hillery;
        match self.backend {
            BackendChoice::Fock => Ok(true),
            BackendChoice::Auto => Ok(needs),
            BackendChoice::Analytic if needs => Err(CliError::Invalid(
                "analytic backend covers only bare states without --nmax; photon addition/subtraction and the order-l Hillery witness need --backend fock".into(),
            )),
            BackendChoice::Analytic => Ok(false),
        }
    }

    /// Truncated, normalized Fock vector of the state after photon operations.
    ///
    /// Returns warnings when an `nmax` override discards probability mass.
    pub fn fock_state(&self) -> Result<(FockVector, Vec<String>), CliError> {
        let bare = match self.family {
            Family::Cat => states::cat_fock(&CatParams::new(self.alpha, self.phi)?, self.tail_tol)?,
            Family::Squeezed => states::squeezed_vacuum_fock(
                &SqueezedParams::new(self.xi, self.theta)?,
                self.tail_tol,
            )?,
        };
        let mut warnings = Vec::new();
        let bare = match self.nmax {
            Some(0) => return Err(CliError::Invalid("nmax must be >= 1".into())),
            Some(n) => {
                if n < bare.dim() {
                    let kept = bare.resized(n).norm_sqr() / bare.norm_sqr();
                    warnings.push(format!(
                        "nmax={n} is below the automatic truncation dim {} at {}; discarded probability mass {:e}",
                        bare.dim(),
                        self.point(),
                        (1.0 - kept).max(0.0)
                    ));
                }
                bare.resized(n)
            }
            None => bare,
        };
        Ok((states::apply_non_gaussian(&bare, self.op)?, warnings))
    }
}

/// Results for one parameter point plus any diagnostics.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub results: Vec<WitnessResult>,
    pub warnings: Vec<String>,
    /// Fock dimension used, if the Fock backend was involved.
    pub fock_dim: Option<usize>,
    pub backend: &'static str,
}

/// Evaluates `witness` of `order` at `spec`; `angle` is the Hong-Mandel quadrature angle.
pub fn evaluate(
    spec: &StateSpec,
    witness: WitnessChoice,
    order: u32,
    angle: f64,
) -> Result<Evaluation, CliError> {
    witness.check_order(order)?;
    let point = spec.point();
    let (provider, fock, warnings) = if spec.wants_fock(witness)? {
        let (v, warnings) = spec.fock_state()?;
        let provider = MomentProvider::fock(v.clone())?.with_point(point);
        (provider, Some(v), warnings)
    } else {
        let provider = match spec.family {
            Family::Cat => MomentProvider::cat(CatParams::new(spec.alpha, spec.phi)?)?,
            Family::Squeezed => {
                MomentProvider::squeezed(SqueezedParams::new(spec.xi, spec.theta)?)?
            }
        };
        (provider.with_point(point), None, Vec::new())
    };
    let results = match witness {
        WitnessChoice::Hoa => vec![witnesses::hoa(&provider, order)?],
        WitnessChoice::Hosps => vec![witnesses::hosps(&provider, order)?],
        WitnessChoice::Hm => vec![witnesses::hong_mandel(&provider, order, angle)?],
        WitnessChoice::Hillery2 => {
            let (a1, a2) = witnesses::hillery2(&provider)?;
            vec![a1, a2]
        }
        WitnessChoice::Hillery => {
            let v = fock.as_ref().expect("hillery always uses the Fock state");
            [HilleryQuadrature::First, HilleryQuadrature::Second]
                .into_iter()
                .map(|q| {
                    witnesses::hillery_general(v, order, q).map(|mut r| {
                        r.params = provider.point().clone();
                        r
                    })
                })
                .collect::<supercoh::Result<_>>()?
        }
    };
    let backend = match provider.backend() {
        Backend::FockNumeric(_) => "fock",
        _ => "analytic",
    };
    Ok(Evaluation {
        results,
        warnings,
        fock_dim: fock.map(|v| v.dim()),
        backend,
    })
}
