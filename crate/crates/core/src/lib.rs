//! Higher-order nonclassicality witnesses for superpositions of coherent states.
//!
//! Two state families are covered: the shifted symmetric cat `|α⟩ + e^{iφ}|-α⟩`
//! and the Gaussian-weighted continuous superposition (the squeezed vacuum).
//! Witnesses (higher-order antibunching, sub-Poissonian statistics, Hong–Mandel
//! and Hillery squeezing) are computed from normalized moments `⟨a†^k a^l⟩`,
//! which come either from closed forms or from a truncated Fock-space vector.
//! The Fock route is independent of the closed forms and serves as their oracle.

pub mod error;
pub mod fock;
pub mod moments;
pub mod numerics;
pub mod states;
pub mod witnesses;

pub use error::{Error, Result};
pub use fock::FockVector;
pub use moments::{MomentProvider, ParamPoint};
pub use states::{CatParams, NonGaussianOp, SqueezedParams};
pub use witnesses::{HilleryQuadrature, WitnessKind, WitnessResult};

pub use num_complex::Complex64;
