//! Truncated number-basis state vectors and the operator algebra acting on them.
//!
//! Every analytic moment formula in this crate is checked against the routines
//! here. Operators are applied to vectors directly (`a` shrinks the vector by one
//! level, `a†` grows it by one), so no explicit matrix elements or factorial ratios
//! ever appear and nothing is silently cut off at the top of the basis.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the number of Fock levels any vector may grow to.
pub const MAX_DIM: usize = 1 << 16;

/// Amplitudes `c_n` of a single-mode pure state in the number basis, `n = 0..dim`.
#[derive(Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockVector")
            .field("dim", &self.dim())
            .field("norm", &self.norm())
            .finish()
    }
}

impl FockVector {
    /// Wraps raw amplitudes. An empty sequence is stored as the one-level zero vector.
    pub fn new(mut amps: Vec<Complex64>) -> Self {
        if amps.is_empty() {
            amps.push(Complex64::new(0.0, 0.0));
        }
        Self { amps }
    }

    pub fn from_real(amps: &[f64]) -> Self {
        Self::new(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim.max(1)])
    }

    pub fn vacuum() -> Self {
        Self::number_state(0)
    }

    /// `|n⟩` stored in `n + 1` levels.
    pub fn number_state(n: usize) -> Self {
        let mut v = Self::zero(n + 1);
        v.amps[n] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amps.get(n).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Σ n |c_n|²`, not divided by the norm.
    pub fn mean_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// Probability mass carried by the top `levels` entries.
    pub fn tail_mass(&self, levels: usize) -> f64 {
        let start = self.dim().saturating_sub(levels);
        self.amps[start..].iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`; entries beyond the shorter vector contribute nothing.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// Zero-pads or cuts the vector to exactly `dim` levels.
    pub fn resized(&self, dim: usize) -> FockVector {
        let mut amps = self.amps.clone();
        amps.resize(dim.max(1), Complex64::new(0.0, 0.0));
        FockVector::new(amps)
    }

    pub fn padded(&self, extra: usize) -> FockVector {
        self.resized(self.dim() + extra)
    }

    /// `(a s)_n = √(n+1) s_{n+1}`; one level shorter (never below one level).
    pub fn annihilate(&self) -> FockVector {
        let amps: Vec<Complex64> = (1..self.dim())
            .map(|n| self.amps[n] * (n as f64).sqrt())
            .collect();
        FockVector::new(amps)
    }

    /// `(a† s)_n = √n s_{n-1}`; one level longer.
    pub fn create(&self) -> FockVector {
        let mut amps = Vec::with_capacity(self.dim() + 1);
        amps.push(Complex64::new(0.0, 0.0));
        amps.extend(
            self.amps
                .iter()
                .enumerate()
                .map(|(n, &c)| c * ((n + 1) as f64).sqrt()),
        );
        FockVector::new(amps)
    }

    pub fn annihilate_n(&self, times: usize) -> FockVector {
        (0..times).fold(self.clone(), |v, _| v.annihilate())
    }

    pub fn create_n(&self, times: usize) -> FockVector {
        (0..times).fold(self.clone(), |v, _| v.create())
    }

    /// Returns the unit vector together with the original norm.
    pub fn normalize(&self) -> Result<(FockVector, f64)> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::AnnihilatedState(format!(
                "cannot normalize a vector with norm {norm}"
            )));
        }
        let amps = self.amps.iter().map(|c| c / norm).collect();
        Ok((FockVector::new(amps), norm))
    }

    /// `c_n → c_n e^{-i n angle}`.
    ///
    /// The moments of the result are `e^{i(k-l) angle} ⟨a†^k a^l⟩`, matching
    /// [`MomentProvider::rotate`](crate::moments::MomentProvider::rotate).
    pub fn rotate_phase(&self, angle: f64) -> FockVector {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(n, &c)| c * Complex64::from_polar(1.0, -(n as f64) * angle))
            .collect();
        FockVector::new(amps)
    }

    /// `c_n → e^{i angle} c_n`.
    pub fn with_global_phase(&self, angle: f64) -> FockVector {
        let phase = Complex64::from_polar(1.0, angle);
        FockVector::new(self.amps.iter().map(|&c| c * phase).collect())
    }

    /// `a + b` with the result as long as the longer operand.
    pub fn add(&self, other: &FockVector) -> FockVector {
        let dim = self.dim().max(other.dim());
        let amps = (0..dim)
            .map(|n| self.amplitude(n) + other.amplitude(n))
            .collect();
        FockVector::new(amps)
    }

    pub fn scale(&self, factor: Complex64) -> FockVector {
        FockVector::new(self.amps.iter().map(|&c| c * factor).collect())
    }

    /// `⟨s| a†^k a^l |s⟩` evaluated as `⟨a^k s | a^l s⟩`.
    ///
    /// The vector is taken as given (callers normalize). Fails when `k + l` reaches
    /// the stored dimension; pad with [`padded`](Self::padded) if the vector is
    /// known to be exactly zero above its last level.
    pub fn moment(&self, k: usize, l: usize) -> Result<Complex64> {
        if k + l >= self.dim() {
            return Err(Error::Truncation(format!(
                "moment ({k},{l}) needs more than {} levels",
                self.dim()
            )));
        }
        let left = self.annihilate_n(k);
        let right = self.annihilate_n(l);
        Ok(left.inner(&right))
    }

    /// `X_θ s` with `X_θ = (a e^{-iθ} + a† e^{iθ}) / √2`; one level longer.
    fn apply_quadrature(&self, angle: f64, shift: f64) -> FockVector {
        let down = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, -angle);
        let up = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, angle);
        let dim = self.dim() + 1;
        let amps = (0..dim)
            .map(|n| {
                let mut acc = -self.amplitude(n) * shift;
                if n + 1 < self.dim() {
                    acc += down * ((n + 1) as f64).sqrt() * self.amps[n + 1];
                }
                if n >= 1 {
                    acc += up * (n as f64).sqrt() * self.amps[n - 1];
                }
                acc
            })
            .collect();
        FockVector::new(amps)
    }

    /// Central quadrature moment `⟨(X_θ - ⟨X_θ⟩)^n⟩` by direct operator application.
    ///
    /// The vector grows by one level per application, so the result is exact for
    /// the represented state. Expectations are divided by `⟨s|s⟩`.
    pub fn quadrature_moment(&self, n: u32, angle: f64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidOrder(
                "quadrature moment order must be >= 1".into(),
            ));
        }
        if self.dim() + n as usize > MAX_DIM {
            return Err(Error::Truncation(format!(
                "quadrature moment of order {n} on {} levels exceeds the {MAX_DIM}-level budget",
                self.dim()
            )));
        }
        let norm_sqr = self.norm_sqr();
        if norm_sqr == 0.0 {
            return Err(Error::AnnihilatedState(
                "quadrature moment of the zero vector".into(),
            ));
        }
        let mean = self.inner(&self.apply_quadrature(angle, 0.0)).re / norm_sqr;
        let half = (n / 2) as usize;
        let mut low = self.clone();
        for _ in 0..half {
            low = low.apply_quadrature(angle, mean);
        }
        let value = if n.is_multiple_of(2) {
            low.norm_sqr()
        } else {
            low.inner(&low.apply_quadrature(angle, mean)).re
        };
        Ok(value / norm_sqr)
    }
}
