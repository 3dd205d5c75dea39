//! Constructors for the shifted symmetric cat family, the Gaussian-weighted
//! continuous superposition (squeezed vacuum), and photon addition/subtraction.
//!
//! # Truncation
//!
//! Amplitude magnitudes are generated by ratio recurrences anchored at the most
//! probable level, so no factorials are formed and the relative error per level
//! stays at a few ulps. The basis is cut once the moment-weighted tail
//! `Σ_{n≥N} |c_n|² (n+1)^9` drops below `tail_tol` times the retained mass; that
//! weight bounds the truncation error of every `⟨a†^k a^l⟩` with `k + l ≤ 18`.
//! Four extra levels are then appended so the top of the vector carries
//! negligible weight.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockVector, MAX_DIM};

/// Default truncation tolerance used by the CLI and the acceptance suite.
pub const DEFAULT_TAIL_TOL: f64 = 1e-14;

/// Power of `(n+1)` in the truncation weight; covers moments with `k + l ≤ 18`.
pub const TAIL_WEIGHT_POWER: i32 = 9;

/// Levels appended past the truncation point.
pub const TAIL_PAD: usize = 4;

/// Largest `|ξ|` the squeezed constructor accepts.
pub const MAX_XI: f64 = 1.0 - 1e-6;

/// Largest total number of added plus subtracted photons.
pub const MAX_NON_GAUSSIAN_PHOTONS: u32 = 8;

/// Below this value of the cat normalization `N_m` the state is treated as undefined.
pub const CAT_DEGENERACY_TOL: f64 = 1e-12;

/// Parameters `(α, φ)` of `N_m^{-1/2} (|α⟩ + e^{iφ} |-α⟩)` with real `α ≥ 0`.
///
/// `φ = 0` is the even coherent state, `φ = π/2` the Yurke–Stoler state and
/// `φ = π` the odd coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatParams {
    pub alpha: f64,
    pub phi: f64,
}

impl CatParams {
    pub fn new(alpha: f64, phi: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Domain(format!(
                "alpha must be finite and >= 0 (got {alpha})"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("phi must be finite (got {phi})")));
        }
        Ok(Self { alpha, phi })
    }

    /// `N_m = 2 + 2 e^{-2α²} cos φ`, evaluated without cancellation near `φ = π`.
    pub fn normalization(&self) -> f64 {
        let c = self.phi.cos();
        let decay = (-2.0 * self.alpha * self.alpha).exp_m1();
        2.0 * (1.0 + c) + 2.0 * c * decay
    }

    /// Rejects parameter points where the superposition vanishes (`α = 0, φ = π`).
    pub fn check_defined(&self) -> Result<()> {
        let nm = self.normalization();
        if nm < CAT_DEGENERACY_TOL {
            return Err(Error::AnnihilatedState(format!(
                "cat state undefined at alpha = {}, phi = {}: normalization N_m = {nm:e} (alpha = 0 with phi = pi)",
                self.alpha, self.phi
            )));
        }
        Ok(())
    }
}

/// Parameters `ξ = |ξ| e^{iθ}` of the Gaussian-weighted continuous superposition.
///
/// The state equals the squeezed vacuum with number-basis amplitudes
/// `c_{2m} ∝ ζ^m √((2m)!) / (2^m m!)`, `ζ = |ξ| e^{iθ}`, i.e. `tanh r = |ξ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedParams {
    pub xi_mag: f64,
    pub theta: f64,
}

impl SqueezedParams {
    pub fn new(xi_mag: f64, theta: f64) -> Result<Self> {
        if !xi_mag.is_finite() || xi_mag < 0.0 {
            return Err(Error::Domain(format!(
                "xi must be finite and >= 0 (got {xi_mag})"
            )));
        }
        if xi_mag >= 1.0 {
            return Err(Error::Domain(format!(
                "xi must be < 1 (got {xi_mag}); the normalization C_F diverges at |xi| = 1"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite (got {theta})")));
        }
        Ok(Self { xi_mag, theta })
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::from_polar(self.xi_mag, self.theta)
    }

    /// `⟨a†a⟩ = |ξ|² / (1 - |ξ|²)`.
    pub fn mean_photons(&self) -> f64 {
        let x2 = self.xi_mag * self.xi_mag;
        x2 / (1.0 - x2)
    }

    /// `⟨a²⟩ = ζ / (1 - |ξ|²)`.
    pub fn pair_amplitude(&self) -> Complex64 {
        self.zeta() / (1.0 - self.xi_mag * self.xi_mag)
    }
}

/// Add `added` photons, then subtract `subtracted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NonGaussianOp {
    pub added: u32,
    pub subtracted: u32,
}

impl NonGaussianOp {
    pub fn new(added: u32, subtracted: u32) -> Result<Self> {
        if added + subtracted > MAX_NON_GAUSSIAN_PHOTONS {
            return Err(Error::Domain(format!(
                "added + subtracted photons must be <= {MAX_NON_GAUSSIAN_PHOTONS} (got {added} + {subtracted})"
            )));
        }
        Ok(Self { added, subtracted })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.added == 0 && self.subtracted == 0
    }
}

/// Magnitudes of `α^n / √n!` up to a common factor, cut by the weighted-tail rule.
fn poisson_profile(alpha: f64, tail_tol: f64) -> Result<Vec<f64>> {
    check_tail_tol(tail_tol)?;
    if alpha == 0.0 {
        let mut t = vec![0.0; 1 + TAIL_PAD];
        t[0] = 1.0;
        return Ok(t);
    }
    let a2 = alpha * alpha;
    let mode = a2.floor();
    if mode >= MAX_DIM as f64 {
        return Err(Error::Truncation(format!(
            "alpha = {alpha} needs more than {MAX_DIM} levels"
        )));
    }
    let mode = mode as usize;
    let mut t = vec![0.0; mode + 1];
    t[mode] = 1.0;
    for n in (0..mode).rev() {
        t[n] = t[n + 1] * ((n + 1) as f64).sqrt() / alpha;
    }
    let mut mass: f64 = t.iter().map(|x| x * x).sum();
    let w = TAIL_WEIGHT_POWER;
    let mut n = mode;
    loop {
        let weighted = t[n] * t[n] * ((n + 1) as f64).powi(w);
        // successive weighted terms shrink by a non-increasing ratio beyond the mode
        let ratio = a2 / (n + 1) as f64 * ((n + 2) as f64 / (n + 1) as f64).powi(w);
        if ratio < 1.0 && weighted * ratio / (1.0 - ratio) < tail_tol * mass {
            break;
        }
        if n + 1 + TAIL_PAD >= MAX_DIM {
            return Err(Error::Truncation(format!(
                "alpha = {alpha}: tail tolerance {tail_tol:e} not reached within {MAX_DIM} levels"
            )));
        }
        let next = t[n] * alpha / ((n + 1) as f64).sqrt();
        t.push(next);
        mass += next * next;
        n += 1;
    }
    for _ in 0..TAIL_PAD {
        let last = *t.last().unwrap();
        let n = t.len();
        t.push(last * alpha / (n as f64).sqrt());
    }
    Ok(t)
}

fn check_tail_tol(tail_tol: f64) -> Result<()> {
    if !(tail_tol > 0.0 && tail_tol.is_finite()) {
        return Err(Error::Domain(format!(
            "tail_tol must be positive (got {tail_tol})"
        )));
    }
    Ok(())
}

/// Normalized coherent state `|α⟩` for complex `α`.
pub fn coherent_fock(alpha: Complex64, tail_tol: f64) -> Result<FockVector> {
    let profile = poisson_profile(alpha.norm(), tail_tol)?;
    let arg = alpha.arg();
    let amps = profile
        .iter()
        .enumerate()
        .map(|(n, &t)| Complex64::from_polar(t, n as f64 * arg))
        .collect();
    Ok(FockVector::new(amps).normalize()?.0)
}

/// Normalized `|α, φ⟩` with `c_n ∝ (1 + e^{iφ} (-1)^n) α^n / √n!`.
pub fn cat_fock(p: &CatParams, tail_tol: f64) -> Result<FockVector> {
    p.check_defined()?;
    let profile = poisson_profile(p.alpha, tail_tol)?;
    let (s, c) = p.phi.sin_cos();
    // φ = 0 or π is only representable to within an ulp; such weights are exact zeros
    let snap = |w: Complex64| {
        if w.norm() < 8.0 * f64::EPSILON {
            Complex64::new(0.0, 0.0)
        } else {
            w
        }
    };
    let even = snap(Complex64::new(1.0 + c, s));
    let odd = snap(Complex64::new(1.0 - c, -s));
    let amps = profile
        .iter()
        .enumerate()
        .map(|(n, &t)| if n % 2 == 0 { even * t } else { odd * t })
        .collect();
    Ok(FockVector::new(amps).normalize()?.0)
}

/// Normalized squeezed vacuum, the closed form of the Gaussian-weighted superposition.
pub fn squeezed_vacuum_fock(p: &SqueezedParams, tail_tol: f64) -> Result<FockVector> {
    check_tail_tol(tail_tol)?;
    if p.xi_mag > MAX_XI {
        return Err(Error::Domain(format!(
            "xi must be < 1 (got {}); the constructor accepts |xi| <= {MAX_XI}",
            p.xi_mag
        )));
    }
    let xi = p.xi_mag;
    let x2 = xi * xi;
    let w = TAIL_WEIGHT_POWER;
    // magnitudes of c_{2m}, m = 0, 1, ...
    let mut t = vec![1.0_f64];
    let mut mass = 1.0;
    if xi > 0.0 {
        loop {
            let m = t.len() - 1;
            let n = 2 * m;
            let weighted = t[m] * t[m] * ((n + 1) as f64).powi(w);
            let ratio =
                x2 * (n + 1) as f64 / (n + 2) as f64 * ((n + 3) as f64 / (n + 1) as f64).powi(w);
            if ratio < 1.0 && weighted * ratio / (1.0 - ratio) < tail_tol * mass {
                break;
            }
            if n + 2 + TAIL_PAD >= MAX_DIM {
                return Err(Error::Truncation(format!(
                    "xi = {xi}: tail tolerance {tail_tol:e} not reached within {MAX_DIM} levels"
                )));
            }
            let next = t[m] * xi * ((n + 1) as f64 / (n + 2) as f64).sqrt();
            t.push(next);
            mass += next * next;
        }
    }
    let last_even = 2 * (t.len() - 1);
    let dim = last_even + 1 + TAIL_PAD;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut mag = 0.0;
    for n in (0..dim).step_by(2) {
        let m = n / 2;
        mag = if m < t.len() {
            t[m]
        } else {
            mag * xi * ((n - 1) as f64 / n as f64).sqrt()
        };
        amps[n] = Complex64::from_polar(mag, m as f64 * p.theta);
    }
    Ok(FockVector::new(amps).normalize()?.0)
}

/// Applies `a^q a†^m` and renormalizes.
pub fn apply_non_gaussian(s: &FockVector, op: NonGaussianOp) -> Result<FockVector> {
    if op.is_identity() {
        return Ok(s.normalize()?.0);
    }
    let out = s
        .create_n(op.added as usize)
        .annihilate_n(op.subtracted as usize);
    out.normalize().map(|(v, _)| v).map_err(|_| {
        Error::AnnihilatedState(format!(
            "adding {} and subtracting {} photon(s) annihilates the state",
            op.added, op.subtracted
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn mean_n(v: &FockVector) -> f64 {
        v.mean_number() / v.norm_sqr()
    }

    #[test]
    fn cat_vacuum_limit() {
        let v = cat_fock(&CatParams::new(0.0, 0.0).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        assert!((v.amplitude(0).norm() - 1.0).abs() < 1e-15);
        assert!(v.tail_mass(v.dim() - 1) < 1e-30);
    }

    #[test]
    fn even_cat_has_no_odd_amplitudes() {
        let v = cat_fock(&CatParams::new(1.0, 0.0).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        for n in (1..v.dim()).step_by(2) {
            assert_eq!(v.amplitude(n).norm(), 0.0);
        }
    }

    #[test]
    fn odd_cat_mean_photon_number() {
        let v = cat_fock(&CatParams::new(1.0, PI).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        let coth1 = 1.0 / 1f64.tanh();
        assert!((mean_n(&v) - coth1).abs() < 1e-12);
        assert!((coth1 - 1.313_035_285_499_331).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cat_is_rejected() {
        let p = CatParams::new(0.0, PI).unwrap();
        assert!(matches!(
            cat_fock(&p, DEFAULT_TAIL_TOL),
            Err(Error::AnnihilatedState(_))
        ));
        let p = CatParams::new(1e-9, PI).unwrap();
        assert!(cat_fock(&p, DEFAULT_TAIL_TOL).is_err());
        // small but resolvable odd cat is fine and close to |1⟩
        let p = CatParams::new(1e-3, PI).unwrap();
        let v = cat_fock(&p, DEFAULT_TAIL_TOL).unwrap();
        assert!((v.amplitude(1).norm() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cat_params_validation() {
        assert!(CatParams::new(-0.1, 0.0).is_err());
        assert!(CatParams::new(f64::NAN, 0.0).is_err());
        assert!(CatParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn cat_normalization_matches_closed_form() {
        for &(a, phi) in &[(1.0, 0.0), (0.3, PI), (1.7, FRAC_PI_2), (0.01, PI)] {
            let p = CatParams::new(a, phi).unwrap();
            let direct = 2.0 + 2.0 * (-2.0 * a * a).exp() * phi.cos();
            assert!((p.normalization() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_mean_and_tail() {
        let v = coherent_fock(Complex64::new(1.2, -0.4), DEFAULT_TAIL_TOL).unwrap();
        assert!((mean_n(&v) - 1.6).abs() < 1e-12);
        assert!(v.tail_mass(4) < DEFAULT_TAIL_TOL);
        let a = v.padded(2).moment(0, 1).unwrap();
        assert!((a - Complex64::new(1.2, -0.4)).norm() < 1e-12);
    }

    #[test]
    fn photon_added_coherent_mean_number() {
        for &alpha in &[0.5_f64, 1.0, 1.7] {
            let v = coherent_fock(Complex64::new(alpha, 0.0), DEFAULT_TAIL_TOL).unwrap();
            let added = apply_non_gaussian(&v, NonGaussianOp::new(1, 0).unwrap()).unwrap();
            let a2 = alpha * alpha;
            let expected = (a2 * a2 + 3.0 * a2 + 1.0) / (a2 + 1.0);
            assert!((mean_n(&added) - expected).abs() < 1e-11, "alpha {alpha}");
        }
    }

    #[test]
    fn squeezed_examples() {
        let v = squeezed_vacuum_fock(&SqueezedParams::new(0.0, 0.0).unwrap(), DEFAULT_TAIL_TOL)
            .unwrap();
        assert_eq!(v.amplitude(0), Complex64::new(1.0, 0.0));
        assert_eq!(v.norm_sqr(), 1.0);

        let v = squeezed_vacuum_fock(&SqueezedParams::new(0.5, 0.0).unwrap(), DEFAULT_TAIL_TOL)
            .unwrap()
            .padded(4);
        assert!((v.moment(1, 1).unwrap().re - 1.0 / 3.0).abs() < 1e-12);
        assert!((v.moment(0, 2).unwrap() - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn squeezed_mean_number_across_xi() {
        for i in 1..=9 {
            let xi = i as f64 / 10.0;
            let p = SqueezedParams::new(xi, 0.7).unwrap();
            let v = squeezed_vacuum_fock(&p, DEFAULT_TAIL_TOL).unwrap();
            assert!((mean_n(&v) - p.mean_photons()).abs() < 1e-9, "xi {xi}");
            for n in (1..v.dim()).step_by(2) {
                assert_eq!(v.amplitude(n).norm(), 0.0);
            }
        }
    }

    #[test]
    fn squeezed_domain_guard() {
        assert!(SqueezedParams::new(1.2, 0.0).is_err());
        assert!(SqueezedParams::new(1.0, 0.0).is_err());
        let msg = SqueezedParams::new(1.2, 0.0).unwrap_err().to_string();
        assert!(msg.contains("xi must be < 1"));
        let p = SqueezedParams {
            xi_mag: 1.0 - 1e-7,
            theta: 0.0,
        };
        assert!(squeezed_vacuum_fock(&p, DEFAULT_TAIL_TOL).is_err());
    }

    #[test]
    fn non_gaussian_examples() {
        let vac = FockVector::vacuum();
        let one = apply_non_gaussian(&vac, NonGaussianOp::new(1, 0).unwrap()).unwrap();
        assert!((one.amplitude(1).norm() - 1.0).abs() < 1e-15);
        assert!(matches!(
            apply_non_gaussian(&vac, NonGaussianOp::new(0, 1).unwrap()),
            Err(Error::AnnihilatedState(_))
        ));
        let v = apply_non_gaussian(&vac, NonGaussianOp::new(2, 1).unwrap()).unwrap();
        assert!((v.amplitude(1).norm() - 1.0).abs() < 1e-15);
        assert!(NonGaussianOp::new(5, 4).is_err());
    }

    #[test]
    fn non_gaussian_identity() {
        let v = cat_fock(&CatParams::new(1.3, 0.4).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        let out = apply_non_gaussian(&v, NonGaussianOp::identity()).unwrap();
        for n in 0..v.dim() {
            assert!((out.amplitude(n) - v.amplitude(n)).norm() < 1e-15);
        }
    }
}
