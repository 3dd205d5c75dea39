//! Higher-order nonclassicality witnesses over a [`MomentProvider`].
//!
//! Each witness is negative when the corresponding nonclassical feature is
//! present. Order conventions: [`hoa`] with order `l` returns `D(l)` (so `l = 1`
//! compares `⟨a†²a²⟩` with `⟨N⟩²`) and [`hosps`] with order `l` returns `D_h(l-1)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::moments::{MomentProvider, ParamPoint};
use crate::numerics::{binomial, double_factorial, pochhammer, stirling2};

/// A witness value below this counts as nonclassical.
pub const NONCLASSICAL_THRESHOLD: f64 = -1e-12;

/// Largest tolerated imaginary residue, relative to `max(1, |value|)`.
pub const IMAGINARY_TOL: f64 = 1e-10;

pub const HOA_MAX_ORDER: u32 = 8;
pub const HOSPS_MAX_ORDER: u32 = 8;
pub const HONG_MANDEL_MAX_ORDER: u32 = 10;
pub const HILLERY_MAX_ORDER: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Hoa,
    Hosps,
    HongMandel,
    Hillery1,
    Hillery2,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::Hoa => "HOA",
            WitnessKind::Hosps => "HOSPS",
            WitnessKind::HongMandel => "HM_HOS",
            WitnessKind::Hillery1 => "HILLERY_1",
            WitnessKind::Hillery2 => "HILLERY_2",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which amplitude-powered quadrature a Hillery witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilleryQuadrature {
    /// `Y₁ = (a^l + a†^l) / 2`
    First,
    /// `Y₂ = -i (a^l - a†^l) / 2`
    Second,
}

impl HilleryQuadrature {
    fn kind(self) -> WitnessKind {
        match self {
            HilleryQuadrature::First => WitnessKind::Hillery1,
            HilleryQuadrature::Second => WitnessKind::Hillery2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    pub kind: WitnessKind,
    pub order: u32,
    pub value: f64,
    pub nonclassical: bool,
    pub params: ParamPoint,
}

impl WitnessResult {
    pub fn new(kind: WitnessKind, order: u32, value: f64, params: ParamPoint) -> Self {
        Self {
            kind,
            order,
            value,
            nonclassical: value < NONCLASSICAL_THRESHOLD,
            params,
        }
    }
}

/// Real part of `z`, or an error if the imaginary part is not rounding noise.
fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOL * z.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            what: what.to_string(),
            residue: z.im.abs(),
        });
    }
    Ok(z.re)
}

fn check_order(name: &str, order: u32, min: u32, max: u32) -> Result<()> {
    if order < min || order > max {
        return Err(Error::InvalidOrder(format!(
            "{name} order must be in {min}..={max} (got {order})"
        )));
    }
    Ok(())
}

/// `D(k-1) = ⟨a†^k a^k⟩ - ⟨N⟩^k`; zero for `k = 0, 1` under normalized moments.
fn factorial_excess(m: &MomentProvider, k: u32, mean: f64) -> Result<f64> {
    let diag = real_part(m.moment(k, k)?, "factorial moment")?;
    Ok(diag - mean.powi(k as i32))
}

/// Higher-order antibunching `D(l) = ⟨a†^{l+1} a^{l+1}⟩ - ⟨a†a⟩^{l+1}`.
pub fn hoa(m: &MomentProvider, l: u32) -> Result<WitnessResult> {
    check_order("HOA", l, 1, HOA_MAX_ORDER)?;
    let mean = real_part(m.moment(1, 1)?, "<N>")?;
    let value = factorial_excess(m, l + 1, mean)?;
    Ok(WitnessResult::new(
        WitnessKind::Hoa,
        l,
        value,
        m.point().clone(),
    ))
}

/// Higher-order sub-Poissonian statistics `D_h(l-1)`.
///
/// `Σ_{r=0}^{l} Σ_{k=0}^{r} S₂(r,k) C(l,r) (-1)^r D(k-1) ⟨N⟩^{l-r}`.
pub fn hosps(m: &MomentProvider, l: u32) -> Result<WitnessResult> {
    check_order("HOSPS", l, 2, HOSPS_MAX_ORDER)?;
    let mean = real_part(m.moment(1, 1)?, "<N>")?;
    let excess: Vec<f64> = (0..=l)
        .map(|k| factorial_excess(m, k, mean))
        .collect::<Result<_>>()?;
    let mut value = 0.0;
    for r in 0..=l {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let outer = sign * binomial(l, r) as f64 * mean.powi((l - r) as i32);
        let inner: f64 = (0..=r)
            .map(|k| stirling2(r, k) as f64 * excess[k as usize])
            .sum();
        value += outer * inner;
    }
    Ok(WitnessResult::new(
        WitnessKind::Hosps,
        l,
        value,
        m.point().clone(),
    ))
}

/// `⟨(ΔX)^n⟩` for `X = (a + a†)/√2` assembled from normal-ordered moments.
///
/// Uses `(a + a†)^r = Σ_i C(r,2i) (2i-1)!! :(a + a†)^{r-2i}:` with the inner sum
/// running to `⌊r/2⌋`. Valid for even `n`, where `(-1)^r = (-1)^{n-r}`.
pub fn central_quadrature_moment(m: &MomentProvider, n: u32) -> Result<f64> {
    let mean = m.moment(1, 0)? + m.moment(0, 1)?;
    let scale = 2f64.powf(-(n as f64) / 2.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..=n {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let outer = mean.powi((n - r) as i32) * (sign * scale * binomial(n, r) as f64);
        for i in 0..=r / 2 {
            let pairs = double_factorial(2 * i as i32 - 1)? * binomial(r, 2 * i) as f64;
            let rest = r - 2 * i;
            let mut inner = Complex64::new(0.0, 0.0);
            for k in 0..=rest {
                inner += m.moment(k, rest - k)? * binomial(rest, k) as f64;
            }
            acc += outer * inner * pairs;
        }
    }
    real_part(acc, "<(dX)^n>")
}

/// Hong–Mandel higher-order squeezing `S_HM(n)` for the quadrature at `angle`.
///
/// `angle = 0` is `X = (a + a†)/√2`; the rotated quadrature is obtained by
/// evaluating the expansion on `m.rotate(angle)`.
pub fn hong_mandel(m: &MomentProvider, n: u32, angle: f64) -> Result<WitnessResult> {
    check_even_hm_order(n)?;
    let rotated = m.rotate(angle);
    let central = central_quadrature_moment(&rotated, n)?;
    let coherent = pochhammer(0.5, n / 2);
    let mut params = m.point().clone();
    params.set("angle", angle);
    Ok(WitnessResult::new(
        WitnessKind::HongMandel,
        n,
        (central - coherent) / coherent,
        params,
    ))
}

/// Hong–Mandel witness from the direct Fock-space central moment.
pub fn hong_mandel_direct(s: &FockVector, n: u32, angle: f64) -> Result<WitnessResult> {
    check_even_hm_order(n)?;
    let central = s.quadrature_moment(n, angle)?;
    let coherent = pochhammer(0.5, n / 2);
    let params = ParamPoint::new().with("angle", angle);
    Ok(WitnessResult::new(
        WitnessKind::HongMandel,
        n,
        (central - coherent) / coherent,
        params,
    ))
}

fn check_even_hm_order(n: u32) -> Result<()> {
    check_order("Hong-Mandel", n, 2, HONG_MANDEL_MAX_ORDER)?;
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(format!(
            "Hong-Mandel order must be even (got {n})"
        )));
    }
    Ok(())
}

/// Amplitude-squared (Hillery, `l = 2`) witnesses `(𝓐₁, 𝓐₂)` from moments:
///
/// `¼ [±⟨a†⁴⟩ ± ⟨a⁴⟩ + 2⟨a†²a²⟩ ∓ (⟨a†²⟩ ± ⟨a²⟩)²]`, upper sign for `𝓐₁`.
pub fn hillery2(m: &MomentProvider) -> Result<(WitnessResult, WitnessResult)> {
    let h40 = m.moment(4, 0)?;
    let h04 = m.moment(0, 4)?;
    let h22 = m.moment(2, 2)?;
    let h20 = m.moment(2, 0)?;
    let h02 = m.moment(0, 2)?;
    let first = (h40 + h04 + h22 * 2.0 - (h20 + h02).powi(2)) * 0.25;
    let second = (-h40 - h04 + h22 * 2.0 + (h20 - h02).powi(2)) * 0.25;
    let first = real_part(first, "Hillery A1")?;
    let second = real_part(second, "Hillery A2")?;
    Ok((
        WitnessResult::new(WitnessKind::Hillery1, 2, first, m.point().clone()),
        WitnessResult::new(WitnessKind::Hillery2, 2, second, m.point().clone()),
    ))
}

/// Hillery witness of order `l` by direct operator application:
/// `(ΔY_i)² - ½ |⟨[Y₁, Y₂]⟩|`.
pub fn hillery_general(s: &FockVector, l: u32, which: HilleryQuadrature) -> Result<WitnessResult> {
    check_order("Hillery", l, 1, HILLERY_MAX_ORDER)?;
    let (psi, _) = s.normalize()?;
    let lowered = psi.annihilate_n(l as usize);
    let raised = psi.create_n(l as usize);
    let applied = match which {
        HilleryQuadrature::First => lowered.add(&raised).scale(Complex64::new(0.5, 0.0)),
        HilleryQuadrature::Second => lowered
            .add(&raised.scale(Complex64::new(-1.0, 0.0)))
            .scale(Complex64::new(0.0, -0.5)),
    };
    let mean = real_part(psi.inner(&applied), "<Y>")?;
    let variance = applied.norm_sqr() - mean * mean;
    // ⟨[Y₁,Y₂]⟩ = (i/2)(⟨a^l a†^l⟩ - ⟨a†^l a^l⟩)
    let bound = 0.25 * (raised.norm_sqr() - lowered.norm_sqr()).abs();
    Ok(WitnessResult::new(
        which.kind(),
        l,
        variance - bound,
        ParamPoint::new(),
    ))
}
