use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m†| = {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("trace deviates from one by {defect:.3e}")]
    NotUnitTrace { defect: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },
    #[error("state vector is not normalized (deviation {defect:.3e})")]
    NotNormalized { defect: f64 },
    #[error("correlation tensor is not of X form (entry [{mu}][{nu}] = {value:.3e})")]
    NotXForm { mu: usize, nu: usize, value: f64 },
    #[error("parameters violate physicality by {defect:.3e}")]
    Unphysical { defect: f64 },
    #[error("matrix is not a proper orthochronous Lorentz transform (defect {defect:.3e})")]
    NotLorentz { defect: f64 },
    #[error("Minkowski vector is not unit normalized (defect {defect:.3e})")]
    NotMinkowskiUnit { defect: f64 },
    #[error("filter is singular (|det| = {det:.3e})")]
    SingularFilter { det: f64 },
    #[error("filter success probability is numerically zero (trace {trace:.3e})")]
    ZeroSuccessProbability { trace: f64 },
    #[error("boost is singular; no finite filter realizes it")]
    SingularBoost,
    #[error("1 + c = {value:.3e} is not positive; the optimal boost is undefined")]
    DegenerateC { value: f64 },
    #[error("normalization denominator {value:.3e} is not positive")]
    NonPositiveDenominator { value: f64 },
    #[error("boost {alpha:.3e} exceeds the cap {max:.3e}")]
    BoostCapExceeded { alpha: f64, max: f64 },
    #[error("minimization did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("mean photon number must be non-negative (got {n})")]
    NonPositiveN { n: f64 },
    #[error("invalid bath parameter {name} = {value}")]
    InvalidBath { name: &'static str, value: f64 },
    #[error("the X form is not closed under a squeezed bath with psi = {psi}")]
    XFormNotClosed { psi: f64 },
    #[error("time must be non-negative (got {t})")]
    NegativeTime { t: f64 },
    #[error("step dt = {dt} is non-positive or too large for rate {rate} (need dt * rate <= 0.1)")]
    StepTooLarge { dt: f64, rate: f64 },
    #[error("state lost physicality during integration at t = {t} (defect {defect:.3e})")]
    PhysicalityLost { t: f64, defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
