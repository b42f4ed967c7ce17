//! Two-qubit state representations and the functionals on them.
//!
//! Fixed conventions shared by the whole crate:
//! - basis order |++>, |+->, |-+>, |-->, with |+> the excited level,
//! - the first tensor factor is qubit A,
//! - lowering operator sigma = |-><+|,
//! - natural logarithms (entropy in nats).

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian4, eig_hermitian4_full, kron, Mat2, Mat4, C64, ONE, ZERO};

/// |rho_ij - rho_ji*| and |Tr rho - 1| tolerance for validated states.
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Slack allowed on the smallest eigenvalue of a density matrix.
pub const TOL_POSITIVITY: f64 = 1e-10;
/// Off-pattern tolerance for X-form detection.
pub const TOL_XFORM: f64 = 1e-9;
/// Physicality slack for X-state and Bell-diagonal parameters; sits above
/// integrator drift and below any feature of the dynamics.
pub const TOL_PHYSICALITY: f64 = 1e-8;

/// Pauli matrix sigma_mu, mu in 0..=3 (identity, x, y, z).
pub fn pauli(mu: usize) -> Mat2 {
    let i = C64::new(0.0, 1.0);
    match mu {
        0 => Mat2::identity(),
        1 => Mat2([[ZERO, ONE], [ONE, ZERO]]),
        2 => Mat2([[ZERO, -i], [i, ZERO]]),
        3 => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {mu} out of range"),
    }
}

/// Lowering operator |-><+| for a single qubit.
pub fn sigma_minus() -> Mat2 {
    Mat2([[ZERO, ZERO], [ONE, ZERO]])
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat4,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(m: Mat4) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > TOL_ALGEBRAIC {
            return Err(Error::NotHermitian { defect });
        }
        let tr = m.trace();
        let tr_defect = (tr - ONE).norm();
        if tr_defect > TOL_ALGEBRAIC {
            return Err(Error::NotUnitTrace { defect: tr_defect });
        }
        let vals = eig_hermitian4(&m)?;
        if vals[0] < -TOL_POSITIVITY {
            return Err(Error::NotPositive { min_eig: vals[0] });
        }
        Ok(DensityMatrix { m })
    }

    /// Wraps a matrix without validation. The caller asserts validity;
    /// `density_from_correlation` uses this because positivity of an
    /// arbitrary correlation tensor is the caller's concern.
    pub fn new_unchecked(m: Mat4) -> Self {
        DensityMatrix { m }
    }

    /// |phi><phi| for a unit vector (norm within 1e-10 of one).
    pub fn from_pure(phi: &[C64; 4]) -> Result<Self> {
        let norm2: f64 = phi.iter().map(|c| c.norm_sqr()).sum();
        let defect = (norm2.sqrt() - 1.0).abs();
        if defect > 1e-10 {
            return Err(Error::NotNormalized { defect });
        }
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = phi[i] * phi[j].conj() / C64::new(norm2, 0.0);
            }
        }
        Ok(DensityMatrix { m })
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix { m: Mat4::identity().scale_re(0.25) }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    /// Eigenvalues sorted ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        eig_hermitian4(&self.m).expect("density matrix is Hermitian by construction")
    }
}

/// Real Pauli expansion coefficients c[mu][nu] = Tr[rho sigma_mu (x) sigma_nu].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor(pub [[f64; 4]; 4]);

impl CorrelationTensor {
    /// Rescales so that c[0][0] = 1.
    pub fn normalized(&self) -> CorrelationTensor {
        let c00 = self.0[0][0];
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e /= c00;
            }
        }
        out
    }
}

/// rho = (1/4) sum c[mu][nu] sigma_mu (x) sigma_nu.
///
/// Hermitian with trace c[0][0] by construction; positivity is NOT checked
/// here, the caller validates where it matters.
pub fn density_from_correlation(t: &CorrelationTensor) -> DensityMatrix {
    let mut m = Mat4::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let w = t.0[mu][nu];
            if w == 0.0 {
                continue;
            }
            m = m.add(&kron(&pauli(mu), &pauli(nu)).scale_re(w));
        }
    }
    DensityMatrix::new_unchecked(m.scale_re(0.25))
}

/// Inverse of [`density_from_correlation`] via trace orthogonality.
pub fn correlation_from_density(rho: &DensityMatrix) -> CorrelationTensor {
    let mut c = [[0.0f64; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let op = kron(&pauli(mu), &pauli(nu));
            c[mu][nu] = rho.matrix().mul(&op).trace().re;
        }
    }
    CorrelationTensor(c)
}

/// The symmetric X-form family: correlation tensor
/// [[1,0,0,d],[0,a,0,0],[0,0,b,0],[d,0,0,c]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl XStateParams {
    /// Validates physicality (positivity of the two 2x2 blocks of the
    /// X-shaped density matrix) within [`TOL_PHYSICALITY`].
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let x = XStateParams { a, b, c, d };
        let defect = x.physicality_defect();
        if defect > TOL_PHYSICALITY {
            return Err(Error::Unphysical { defect });
        }
        Ok(x)
    }

    pub fn new_unchecked(a: f64, b: f64, c: f64, d: f64) -> Self {
        XStateParams { a, b, c, d }
    }

    /// Largest violation of the physicality inequalities (0 when inside).
    pub fn physicality_defect(&self) -> f64 {
        let XStateParams { a, b, c, d } = *self;
        let mut worst = 0.0f64;
        worst = worst.max(-(1.0 + c));
        worst = worst.max(-(1.0 - c));
        worst = worst.max(4.0 * d * d + (a - b) * (a - b) - (1.0 + c) * (1.0 + c));
        worst = worst.max((a + b).abs() - (1.0 - c));
        worst
    }

    pub fn to_correlation(&self) -> CorrelationTensor {
        let mut c = [[0.0f64; 4]; 4];
        c[0][0] = 1.0;
        c[0][3] = self.d;
        c[3][0] = self.d;
        c[1][1] = self.a;
        c[2][2] = self.b;
        c[3][3] = self.c;
        CorrelationTensor(c)
    }

    /// Embedded density matrix; physical by the construction invariant.
    pub fn to_density(&self) -> DensityMatrix {
        density_from_correlation(&self.to_correlation())
    }
}

/// Reads (a, b, c, d) = (c11, c22, c33, c03) off the correlation tensor,
/// requiring every off-pattern entry below [`TOL_XFORM`].
pub fn extract_x_params(rho: &DensityMatrix) -> Result<XStateParams> {
    let t = correlation_from_density(rho);
    let c = &t.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let on_pattern = matches!((mu, nu), (0, 0) | (0, 3) | (3, 0) | (1, 1) | (2, 2) | (3, 3));
            if !on_pattern && c[mu][nu].abs() > TOL_XFORM {
                return Err(Error::NotXForm { mu, nu, value: c[mu][nu] });
            }
        }
    }
    if (c[0][3] - c[3][0]).abs() > TOL_XFORM {
        return Err(Error::NotXForm { mu: 3, nu: 0, value: c[3][0] });
    }
    Ok(XStateParams::new_unchecked(c[1][1], c[2][2], c[3][3], 0.5 * (c[0][3] + c[3][0])))
}

/// S = -sum rho_i ln rho_i in nats; eigenvalues clipped to [0, 1].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        let l = lambda.clamp(0.0, 1.0);
        if l > 0.0 {
            s -= l * l.ln();
        }
    }
    s.max(0.0)
}

/// Tr[rho^2].
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    m.mul(m).trace().re
}

/// <phi|rho|phi> for a unit vector phi.
pub fn fidelity_pure(rho: &DensityMatrix, phi: &[C64; 4]) -> Result<f64> {
    let norm2: f64 = phi.iter().map(|c| c.norm_sqr()).sum();
    let defect = (norm2.sqrt() - 1.0).abs();
    if defect > 1e-10 {
        return Err(Error::NotNormalized { defect });
    }
    let rv = rho.matrix().mul_vec(phi);
    let mut f = ZERO;
    for i in 0..4 {
        f += phi[i].conj() * rv[i];
    }
    Ok(f.re)
}

/// Eigenvalues of a 4x4 Hermitian matrix, ascending (re-exported kernel).
pub fn eig_hermitian(m: &Mat4) -> Result<[f64; 4]> {
    eig_hermitian4(m)
}

/// Positive square root of a validated density matrix.
pub(crate) fn sqrt_density(rho: &DensityMatrix) -> Mat4 {
    let (vals, vecs) =
        eig_hermitian4_full(rho.matrix()).expect("density matrix is Hermitian by construction");
    crate::linalg::hermitian_function(&vals, &vecs, |x| x.max(0.0).sqrt())
}
