//! Normalized normal-ordered moments `⟨a†^k a^l⟩` behind one interface.
//!
//! A [`MomentProvider`] answers `moment(k, l)` from one of three backends: the
//! closed-form cat expression, the Gaussian (Wick) expression for the squeezed
//! vacuum, or a [`FockVector`]. All backends divide by their raw `(0, 0)` value,
//! so `moment(0, 0)` is exactly one. The cat closed form is unnormalized as
//! written (`(0,0)` gives `N_m`), which is why the division is applied uniformly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::numerics::{binomial, double_factorial};
use crate::states::{CatParams, SqueezedParams};

/// Largest `k` or `l` accepted by [`squeezed_moment`].
pub const SQUEEZED_MAX_ORDER: u32 = 12;

/// Named coordinates of a parameter point, in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamPoint {
    entries: Vec<(String, f64)>,
}

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    /// Inserts or overwrites a coordinate.
    pub fn set(&mut self, name: &str, value: f64) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

/// Raw cat moment for complex `α`, *not* normalized: `(0,0)` returns `N_m`.
pub fn cat_moment_raw(alpha: Complex64, phi: f64, k: u32, l: u32) -> Complex64 {
    let ac = alpha.conj();
    let (ki, li) = (k as i32, l as i32);
    let sign = if (k + l).is_multiple_of(2) { 2.0 } else { 0.0 };
    let direct = ac.powi(ki) * alpha.powi(li) * sign;
    let overlap = (-2.0 * alpha.norm_sqr()).exp();
    let cross = (-ac).powi(ki) * alpha.powi(li) * Complex64::from_polar(1.0, -phi)
        + ac.powi(ki) * (-alpha).powi(li) * Complex64::from_polar(1.0, phi);
    direct + cross * overlap
}

/// Normalized cat moment `⟨α,φ| a†^k a^l |α,φ⟩`.
pub fn cat_moment(p: &CatParams, k: u32, l: u32) -> Result<Complex64> {
    p.check_defined()?;
    if k == 0 && l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(cat_moment_raw(Complex64::new(p.alpha, 0.0), p.phi, k, l) / p.normalization())
}

/// Normalized squeezed-vacuum moment via Wick pairing.
///
/// With `n = ⟨a†a⟩` and `s = ⟨a²⟩`, a normal-ordered product pairs `j` creators
/// with annihilators and the rest among themselves:
/// `Σ_j C(k,j) C(l,j) j! (k-j-1)!! (l-j-1)!! n^j s*^{(k-j)/2} s^{(l-j)/2}`.
pub fn squeezed_moment(p: &SqueezedParams, k: u32, l: u32) -> Result<Complex64> {
    if p.xi_mag >= 1.0 {
        return Err(Error::Domain(format!("xi must be < 1 (got {})", p.xi_mag)));
    }
    if k > SQUEEZED_MAX_ORDER || l > SQUEEZED_MAX_ORDER {
        return Err(Error::InvalidOrder(format!(
            "squeezed moment ({k},{l}) exceeds order {SQUEEZED_MAX_ORDER}"
        )));
    }
    if (k + l) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if k == 0 && l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = p.mean_photons();
    let s = p.pair_amplitude();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut j = k % 2;
    while j <= k.min(l) {
        let pairings = binomial(k, j) as f64
            * binomial(l, j) as f64
            * (1..=j).map(f64::from).product::<f64>()
            * double_factorial((k - j) as i32 - 1)?
            * double_factorial((l - j) as i32 - 1)?;
        let term = s.conj().powi(((k - j) / 2) as i32) * s.powi(((l - j) / 2) as i32);
        acc += term * (pairings * n.powi(j as i32));
        j += 2;
    }
    Ok(acc)
}

/// Options for [`squeezed_moment_quadrature`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    /// Half-width of the integration box in standard deviations.
    pub half_width_sigmas: f64,
    /// Grid points per axis.
    pub points: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            half_width_sigmas: 16.0,
            points: 801,
        }
    }
}

/// Moments of the continuous superposition by direct double integration.
///
/// Evaluates `∬ F(x) F(y) e^{-(x-y)²/2} x^k y^l dx dy` over the real line with the
/// Gaussian weight `F(x) = exp(-(1-ξ) x² / (2ξ))` and divides by the `(0,0)`
/// integral. Only real `ξ ∈ (0, 1)` (θ = 0) is meaningful. The trapezoid rule
/// converges geometrically for these smooth, rapidly decaying integrands.
pub fn squeezed_moment_quadrature(xi: f64, k: u32, l: u32, opts: QuadratureOptions) -> Result<f64> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::Domain(format!(
            "quadrature oracle needs 0 < xi < 1 (got {xi})"
        )));
    }
    let weight_coef = (1.0 - xi) / (2.0 * xi);
    // marginal variance of the bivariate Gaussian integrand
    let sigma = (xi / (1.0 - xi * xi)).sqrt();
    let half = opts.half_width_sigmas * sigma;
    let npts = opts.points.max(3);
    let h = 2.0 * half / (npts - 1) as f64;
    let grid: Vec<f64> = (0..npts).map(|i| -half + i as f64 * h).collect();
    let weight: Vec<f64> = grid.iter().map(|x| (-weight_coef * x * x).exp()).collect();
    let end = |i: usize| if i == 0 || i == npts - 1 { 0.5 } else { 1.0 };

    let (mut num, mut den) = (0.0, 0.0);
    for (i, &x) in grid.iter().enumerate() {
        let xk = x.powi(k as i32) * weight[i] * end(i);
        let x0 = weight[i] * end(i);
        for (j, &y) in grid.iter().enumerate() {
            let kern = (-(x - y) * (x - y) / 2.0).exp() * weight[j] * end(j);
            num += xk * y.powi(l as i32) * kern;
            den += x0 * kern;
        }
    }
    Ok(num / den)
}

/// Source of raw moments behind a [`MomentProvider`].
#[derive(Debug, Clone)]
pub enum Backend {
    AnalyticCat(CatParams),
    AnalyticSqueezed(SqueezedParams),
    FockNumeric(Arc<FockVector>),
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::AnalyticCat(_) => "analytic-cat",
            Backend::AnalyticSqueezed(_) => "analytic-squeezed",
            Backend::FockNumeric(_) => "fock-numeric",
        }
    }
}

/// Memoized, normalized `⟨a†^k a^l⟩` with an optional quadrature rotation.
///
/// Safe to share across threads; concurrent callers may compute the same entry
/// twice but always store the same value.
#[derive(Debug)]
pub struct MomentProvider {
    backend: Backend,
    angle: f64,
    point: ParamPoint,
    /// raw `(0,0)` value of the Fock backend
    fock_norm_sqr: f64,
    cache: RwLock<HashMap<(u32, u32), Complex64>>,
}

impl MomentProvider {
    fn from_backend(backend: Backend, point: ParamPoint, fock_norm_sqr: f64) -> Self {
        Self {
            backend,
            angle: 0.0,
            point,
            fock_norm_sqr,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn cat(p: CatParams) -> Result<Self> {
        p.check_defined()?;
        let point = ParamPoint::new().with("alpha", p.alpha).with("phi", p.phi);
        Ok(Self::from_backend(Backend::AnalyticCat(p), point, 1.0))
    }

    pub fn squeezed(p: SqueezedParams) -> Result<Self> {
        if p.xi_mag >= 1.0 {
            return Err(Error::Domain(format!("xi must be < 1 (got {})", p.xi_mag)));
        }
        let point = ParamPoint::new()
            .with("xi", p.xi_mag)
            .with("theta", p.theta);
        Ok(Self::from_backend(Backend::AnalyticSqueezed(p), point, 1.0))
    }

    pub fn fock(state: FockVector) -> Result<Self> {
        let norm_sqr = state.norm_sqr();
        if norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(Error::AnnihilatedState(
                "moment provider over the zero vector".into(),
            ));
        }
        Ok(Self::from_backend(
            Backend::FockNumeric(Arc::new(state)),
            ParamPoint::new(),
            norm_sqr,
        ))
    }

    /// Replaces the parameter record carried into witness results.
    pub fn with_point(mut self, point: ParamPoint) -> Self {
        self.point = point;
        self
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn point(&self) -> &ParamPoint {
        &self.point
    }

    /// Total rotation applied so far.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Provider for `a → a e^{-i angle}`: `moment'(k,l) = e^{i(k-l) angle} moment(k,l)`.
    pub fn rotate(&self, angle: f64) -> MomentProvider {
        let mut out =
            Self::from_backend(self.backend.clone(), self.point.clone(), self.fock_norm_sqr);
        out.angle = self.angle + angle;
        out
    }

    fn unrotated(&self, k: u32, l: u32) -> Result<Complex64> {
        match &self.backend {
            Backend::AnalyticCat(p) => cat_moment(p, k, l),
            Backend::AnalyticSqueezed(p) => squeezed_moment(p, k, l),
            Backend::FockNumeric(state) => {
                let (k, l) = (k as usize, l as usize);
                let needed = k + l + 1;
                let raw = if state.dim() < needed {
                    // the vector is exactly zero above its last stored level
                    state.resized(needed).moment(k, l)?
                } else {
                    state.moment(k, l)?
                };
                Ok(raw / self.fock_norm_sqr)
            }
        }
    }

    pub fn moment(&self, k: u32, l: u32) -> Result<Complex64> {
        if k == 0 && l == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if let Some(v) = self
            .cache
            .read()
            .expect("moment cache poisoned")
            .get(&(k, l))
        {
            return Ok(*v);
        }
        let mut value = self.unrotated(k, l)?;
        if self.angle != 0.0 && k != l {
            value *= Complex64::from_polar(1.0, (k as f64 - l as f64) * self.angle);
        }
        let mut cache = self.cache.write().expect("moment cache poisoned");
        Ok(*cache.entry((k, l)).or_insert(value))
    }

    /// Real part of `moment(k, k)`.
    pub fn diagonal(&self, k: u32) -> Result<f64> {
        Ok(self.moment(k, k)?.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{cat_fock, squeezed_vacuum_fock, DEFAULT_TAIL_TOL};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn cat_moment_examples() {
        let even = CatParams::new(1.0, 0.0).unwrap();
        let odd = CatParams::new(1.0, PI).unwrap();
        let n_even = cat_moment(&even, 1, 1).unwrap();
        assert!((n_even.re - 1f64.tanh()).abs() < 1e-14);
        assert!((n_even.re - 0.761_594_155_955_764_9).abs() < 1e-12);
        let n_odd = cat_moment(&odd, 1, 1).unwrap();
        assert!((n_odd.re - 1.0 / 1f64.tanh()).abs() < 1e-14);
        for &a in &[0.2, 1.0, 2.5] {
            let p = CatParams::new(a, 0.0).unwrap();
            assert_eq!(cat_moment(&p, 1, 0).unwrap().norm(), 0.0);
        }
        assert!(cat_moment(&CatParams::new(0.0, PI).unwrap(), 1, 1).is_err());
    }

    #[test]
    fn raw_cat_moment_zero_zero_is_normalization() {
        for &(a, phi) in &[(1.0, 0.0), (0.7, 1.0), (1.8, PI)] {
            let p = CatParams::new(a, phi).unwrap();
            let raw = cat_moment_raw(Complex64::new(a, 0.0), phi, 0, 0);
            assert!((raw.re - p.normalization()).abs() < 1e-14);
            assert!(raw.im.abs() < 1e-15);
        }
    }

    #[test]
    fn odd_cat_fourth_factorial_moment() {
        let v = cat_moment(&CatParams::new(1.0, PI).unwrap(), 2, 2).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn squeezed_moment_examples() {
        let p = SqueezedParams::new(0.5, 0.0).unwrap();
        assert!((squeezed_moment(&p, 1, 1).unwrap().re - 1.0 / 3.0).abs() < 1e-15);
        assert!((squeezed_moment(&p, 0, 2).unwrap().re - 2.0 / 3.0).abs() < 1e-15);
        for &x in &[0.0, 0.3, 0.9] {
            let p = SqueezedParams::new(x, 1.1).unwrap();
            assert_eq!(squeezed_moment(&p, 1, 0).unwrap().norm(), 0.0);
            assert_eq!(squeezed_moment(&p, 3, 2).unwrap().norm(), 0.0);
        }
        assert!(squeezed_moment(&p, 13, 1).is_err());
        let bad = SqueezedParams {
            xi_mag: 1.0,
            theta: 0.0,
        };
        assert!(squeezed_moment(&bad, 1, 1).is_err());
    }

    #[test]
    fn squeezed_wick_matches_fock_including_phase() {
        for &(x, th) in &[(0.3, 0.0), (0.6, PI / 3.0), (0.85, 2.0)] {
            let p = SqueezedParams::new(x, th).unwrap();
            let v = squeezed_vacuum_fock(&p, DEFAULT_TAIL_TOL).unwrap();
            let fock = MomentProvider::fock(v).unwrap();
            for k in 0..=5 {
                for l in 0..=5 {
                    let a = squeezed_moment(&p, k, l).unwrap();
                    let b = fock.moment(k, l).unwrap();
                    assert!(
                        (a - b).norm() < 1e-9 * (1.0 + a.norm()),
                        "xi {x} ({k},{l}): {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadrature_oracle_matches_wick() {
        let p = SqueezedParams::new(0.5, 0.0).unwrap();
        let opts = QuadratureOptions::default();
        for (k, l) in [(1, 1), (0, 2), (2, 2), (1, 3)] {
            let q = squeezed_moment_quadrature(0.5, k, l, opts).unwrap();
            let w = squeezed_moment(&p, k, l).unwrap().re;
            assert!((q - w).abs() < 1e-9, "({k},{l}): {q} vs {w}");
        }
        assert!(squeezed_moment_quadrature(0.0, 1, 1, opts).is_err());
    }

    #[test]
    fn provider_normalizes_and_caches() {
        let p = CatParams::new(1.2, 0.3).unwrap();
        let prov = MomentProvider::cat(p).unwrap();
        assert_eq!(prov.moment(0, 0).unwrap(), Complex64::new(1.0, 0.0));
        let first = prov.moment(3, 1).unwrap();
        assert_eq!(prov.moment(3, 1).unwrap(), first);
        assert_eq!(prov.point().get("alpha"), Some(1.2));
        assert_eq!(prov.backend().name(), "analytic-cat");

        let v = cat_fock(&p, DEFAULT_TAIL_TOL)
            .unwrap()
            .scale(Complex64::new(3.0, 0.0));
        let fock = MomentProvider::fock(v).unwrap();
        assert!((fock.moment(3, 1).unwrap() - first).norm() < 1e-10);
        assert!(MomentProvider::fock(FockVector::zero(3)).is_err());
    }

    #[test]
    fn rotation_examples() {
        let p = SqueezedParams::new(0.4, 0.2).unwrap();
        let base = MomentProvider::squeezed(p).unwrap();
        let same = base.rotate(0.0);
        let flipped = base.rotate(PI);
        for k in 0..=4 {
            for l in 0..=4 {
                let m = base.moment(k, l).unwrap();
                assert_eq!(same.moment(k, l).unwrap(), m);
                let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
                assert!((flipped.moment(k, l).unwrap() - m * sign).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rotated_provider_matches_rotated_vector() {
        let p = SqueezedParams::new(0.5, 0.0).unwrap();
        let v = squeezed_vacuum_fock(&p, DEFAULT_TAIL_TOL).unwrap();
        for &angle in &[FRAC_PI_2, 0.37, -1.2] {
            let rotated = MomentProvider::squeezed(p).unwrap().rotate(angle);
            let oracle = MomentProvider::fock(v.rotate_phase(angle)).unwrap();
            for k in 0..=4 {
                for l in 0..=4 {
                    let d = rotated.moment(k, l).unwrap() - oracle.moment(k, l).unwrap();
                    assert!(d.norm() < 1e-10, "angle {angle} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn providers_are_hermitian_and_positive() {
        let providers = [
            MomentProvider::cat(CatParams::new(1.4, 0.9).unwrap()).unwrap(),
            MomentProvider::squeezed(SqueezedParams::new(0.7, 1.0).unwrap()).unwrap(),
            MomentProvider::fock(cat_fock(&CatParams::new(0.8, 2.0).unwrap(), 1e-14).unwrap())
                .unwrap()
                .rotate(0.4),
        ];
        for prov in &providers {
            for k in 0..=6 {
                for l in 0..=6 {
                    let a = prov.moment(k, l).unwrap();
                    let b = prov.moment(l, k).unwrap();
                    assert!((a - b.conj()).norm() < 1e-12 * (1.0 + a.norm()));
                }
            }
            for k in 0..=5 {
                let d = prov.moment(k, k).unwrap();
                assert!(d.re >= 0.0 && d.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn provider_is_shareable_across_threads() {
        let prov =
            Arc::new(MomentProvider::squeezed(SqueezedParams::new(0.6, 0.5).unwrap()).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let prov = Arc::clone(&prov);
                std::thread::spawn(move || {
                    (0..=6)
                        .map(|k| prov.moment(k, 6 - k).unwrap())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
    }

    #[test]
    fn param_point_display() {
        let mut p = ParamPoint::new().with("alpha", 1.0).with("phi", 0.5);
        p.set("alpha", 2.0);
        assert_eq!(p.to_string(), "alpha=2 phi=0.5");
        assert_eq!(p.get("missing"), None);
    }
}
