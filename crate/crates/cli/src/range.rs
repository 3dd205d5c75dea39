//! Parsing of numeric arguments (`pi` multiples allowed) and `start:stop:step` ranges.

use std::f64::consts::PI;

use crate::error::CliError;

/// Parses a float or a multiple/fraction of `pi`: `1.5`, `pi`, `-pi/2`, `2pi`, `3*pi/4`.
pub fn parse_number(s: &str) -> Result<f64, CliError> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || CliError::Invalid(format!("cannot parse number '{s}'"));
    let Some((coef, rest)) = t.split_once("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coef = coef.trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = rest.trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        let d = rest.strip_prefix('/').ok_or_else(bad)?;
        d.trim().parse::<f64>().map_err(|_| bad())?
    };
    Ok(coef * PI / den)
}

/// Comma-separated list of [`parse_number`] values.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_number)
        .collect()
}

/// Inclusive arithmetic range `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, CliError> {
        if step.is_nan() || step <= 0.0 || !step.is_finite() {
            return Err(CliError::Invalid(format!(
                "range step must be > 0 (got {step})"
            )));
        }
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(CliError::Invalid(format!("range {start}:{stop} is empty")));
        }
        Ok(Self { start, stop, step })
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Invalid(format!(
                "range '{s}' must be start:stop:step"
            )));
        }
        Self::new(
            parse_number(parts[0])?,
            parse_number(parts[1])?,
            parse_number(parts[2])?,
        )
    }

    /// `start + i·step` for every `i` that stays within `stop` (up to rounding).
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_with_pi() {
        assert_eq!(parse_number("1.25").unwrap(), 1.25);
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_eq!(parse_number("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_number("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_number("3*pi/4").unwrap(), 0.75 * PI);
        assert!(parse_number("pie").is_err());
        assert!(parse_number("abc").is_err());
        assert_eq!(parse_list("0, pi/2,pi").unwrap(), vec![0.0, PI / 2.0, PI]);
    }

    #[test]
    fn ranges() {
        let r = Range::parse("0:1:0.25").unwrap();
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let r = Range::parse("0:2pi:pi/2").unwrap();
        assert_eq!(r.values().len(), 5);
        assert_eq!(Range::parse("1:6:1").unwrap().values().len(), 6);
        assert!(Range::parse("0:1:0").is_err());
        assert!(Range::parse("1:0:0.1").is_err());
        assert!(Range::parse("0:1").is_err());
    }
}
