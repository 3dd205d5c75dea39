//! Named sweeps behind the figure data (`figdata <preset>`).
//!
//! The plotted orders and fixed parameters are not tabulated anywhere, so each
//! preset records its choices as `#` comment lines in the CSV.

use std::f64::consts::PI;

use crate::error::CliError;
use crate::eval::{StateSpec, WitnessChoice};
use crate::range::Range;
use crate::sweep::{SweepParam, SweepSpec};

/// `(name, one-line description)` of every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig1a", "HOA l=1..3 vs alpha, odd cat (phi=pi)"),
    ("fig1b", "HOA l=1..3 vs alpha, cat with phi=3pi/4"),
    ("fig1c", "HOA l=1..3 vs phi, cat with alpha=1"),
    ("fig1d", "HOSPS l=2..4 vs alpha, odd cat (phi=pi)"),
    ("fig1e", "HOSPS l=2..4 vs alpha, cat with phi=3pi/4"),
    ("fig1f", "HOSPS l=2..4 vs phi, cat with alpha=1"),
    ("fig2a", "HOSPS l=2..4 vs xi, squeezed family"),
    ("fig2b", "Hillery A1, A2 vs xi, squeezed family"),
    (
        "fig2c",
        "Hillery A1, A2 vs xi, single-photon-added squeezed family",
    ),
    (
        "fig3a",
        "Hillery A1, A2 vs alpha, single-photon-added Yurke-Stoler cat (phi=pi/2)",
    ),
    (
        "fig3b",
        "Hillery A1, A2 vs phi, single-photon-added cat, alpha=1.5",
    ),
    (
        "fig3c",
        "Hillery A1, A2 vs phi, two-photon-added cat, alpha=1.5",
    ),
    (
        "fig3d",
        "Hillery A1, A2 vs phi, cat with two photons added then one subtracted, alpha=1.5",
    ),
    (
        "fig4a",
        "Hillery A1, A2 vs photons added m=1..6, even cat alpha=1.5",
    ),
    (
        "fig4b",
        "Hillery A1, A2 vs photons added m=1..6 with q=2 subtracted, even cat alpha=1.5",
    ),
    (
        "hm-squeezed",
        "Hong-Mandel n=2,4 vs xi, squeezed family, quadrature angle pi/2",
    ),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

fn range(start: f64, stop: f64, step: f64) -> Range {
    Range::new(start, stop, step).expect("preset ranges are valid")
}

/// Sweep specification for preset `name`.
pub fn preset(name: &str) -> Result<SweepSpec, CliError> {
    let alpha_range = range(0.05, 2.5, 0.05);
    // [0, 2pi) in 5 degree steps
    let phi_range = range(0.0, 2.0 * PI - PI / 72.0, PI / 36.0);
    let xi_range = range(0.02, 0.9, 0.02);

    let base = |state: StateSpec, param, range, witness, orders: Vec<u32>| SweepSpec {
        state,
        param,
        range,
        witness,
        orders,
        angle: 0.0,
        preset: Some(name.to_string()),
        notes: Vec::new(),
    };
    use SweepParam::*;
    use WitnessChoice::*;
    let mut spec = match name {
        "fig1a" => base(
            StateSpec::cat(0.0, PI),
            Alpha,
            alpha_range,
            Hoa,
            vec![1, 2, 3],
        ),
        "fig1b" => base(
            StateSpec::cat(0.0, 0.75 * PI),
            Alpha,
            alpha_range,
            Hoa,
            vec![1, 2, 3],
        ),
        "fig1c" => base(StateSpec::cat(1.0, 0.0), Phi, phi_range, Hoa, vec![1, 2, 3]),
        "fig1d" => base(
            StateSpec::cat(0.0, PI),
            Alpha,
            alpha_range,
            Hosps,
            vec![2, 3, 4],
        ),
        "fig1e" => base(
            StateSpec::cat(0.0, 0.75 * PI),
            Alpha,
            alpha_range,
            Hosps,
            vec![2, 3, 4],
        ),
        "fig1f" => base(
            StateSpec::cat(1.0, 0.0),
            Phi,
            phi_range,
            Hosps,
            vec![2, 3, 4],
        ),
        "fig2a" => base(
            StateSpec::squeezed(0.0, 0.0),
            Xi,
            xi_range,
            Hosps,
            vec![2, 3, 4],
        ),
        "fig2b" => base(
            StateSpec::squeezed(0.0, 0.0),
            Xi,
            xi_range,
            Hillery2,
            vec![2],
        ),
        "fig2c" => base(
            StateSpec::squeezed(0.0, 0.0).with_op(1, 0),
            Xi,
            xi_range,
            Hillery2,
            vec![2],
        ),
        "fig3a" => base(
            StateSpec::cat(0.0, PI / 2.0).with_op(1, 0),
            Alpha,
            alpha_range,
            Hillery2,
            vec![2],
        ),
        "fig3b" => base(
            StateSpec::cat(1.5, 0.0).with_op(1, 0),
            Phi,
            phi_range,
            Hillery2,
            vec![2],
        ),
        "fig3c" => base(
            StateSpec::cat(1.5, 0.0).with_op(2, 0),
            Phi,
            phi_range,
            Hillery2,
            vec![2],
        ),
        "fig3d" => base(
            StateSpec::cat(1.5, 0.0).with_op(2, 1),
            Phi,
            phi_range,
            Hillery2,
            vec![2],
        ),
        "fig4a" => base(
            StateSpec::cat(1.5, 0.0),
            M,
            range(1.0, 6.0, 1.0),
            Hillery2,
            vec![2],
        ),
        "fig4b" => base(
            StateSpec::cat(1.5, 0.0).with_op(0, 2),
            M,
            range(1.0, 6.0, 1.0),
            Hillery2,
            vec![2],
        ),
        "hm-squeezed" => {
            let mut s = base(StateSpec::squeezed(0.0, 0.0), Xi, xi_range, Hm, vec![2, 4]);
            s.angle = PI / 2.0;
            s.notes.push("assumption: quadrature angle pi/2 (the squeezed axis); the hm default elsewhere is 0".into());
            s
        }
        other => {
            let known: Vec<&str> = names().collect();
            return Err(CliError::Invalid(format!(
                "unknown preset '{other}' (known: {})",
                known.join(", ")
            )));
        }
    };
    let orders: Vec<String> = spec.orders.iter().map(u32::to_string).collect();
    spec.notes.push(format!(
        "assumption: plotted orders {} (not stated with the figure)",
        orders.join(",")
    ));
    if name.starts_with("fig3") || name.starts_with("fig4") {
        spec.notes.push(format!(
            "assumption: fixed cat parameters alpha={} phi={} (not stated with the figure)",
            spec.state.alpha, spec.state.phi
        ));
    }
    if name == "fig4a" || name == "fig4b" {
        spec.notes
            .push("expected: the A1 minimum deepens as m grows".into());
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds() {
        for n in names() {
            let s = preset(n).unwrap();
            assert_eq!(s.preset.as_deref(), Some(n));
            assert!(!s.range.values().is_empty());
        }
        assert_eq!(preset("fig9").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn phi_presets_stop_short_of_two_pi() {
        let v = preset("fig1c").unwrap().range.values();
        assert_eq!(v.len(), 72);
        assert!(*v.last().unwrap() < 2.0 * PI - 1e-6);
    }
}
