//! Entanglement quantifiers: concurrence in three forms and the
//! partial-transpose test.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian4, kron, Mat4};
use crate::qstate::{pauli, sqrt_density, DensityMatrix, XStateParams, TOL_PHYSICALITY};

/// Bell-diagonal state in (C1, C2, C3) coordinates; the physical set is the
/// tetrahedron with the Bell states at the vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalState {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let s = BellDiagonalState { c1, c2, c3 };
        let min = s.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -TOL_PHYSICALITY {
            return Err(Error::Unphysical { defect: -min });
        }
        Ok(s)
    }

    /// Density-matrix eigenvalues of the standard form.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let BellDiagonalState { c1, c2, c3 } = *self;
        [
            0.25 * (1.0 + c1 - c2 + c3),
            0.25 * (1.0 - c1 + c2 + c3),
            0.25 * (1.0 + c1 + c2 - c3),
            0.25 * (1.0 - c1 - c2 - c3),
        ]
    }

    pub fn to_x(&self) -> XStateParams {
        XStateParams::new_unchecked(self.c1, self.c2, self.c3, 0.0)
    }

    pub fn to_density(&self) -> DensityMatrix {
        self.to_x().to_density()
    }
}

/// Wootters concurrence from the spectrum of R = rho (sy x sy) rho* (sy x sy).
///
/// The eigenvalues of R are obtained as the spectrum of the Hermitian matrix
/// sqrt(rho) rho~ sqrt(rho), which avoids a non-symmetric eigensolver.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let yy = kron(&pauli(2), &pauli(2));
    let rho_tilde = yy.mul(&rho.matrix().conj()).mul(&yy);
    let root = sqrt_density(rho);
    let m = root.mul(&rho_tilde).mul(&root);
    // Hermitize away rounding before the eigensolve.
    let m = m.add(&m.adjoint()).scale_re(0.5);
    let vals = eig_hermitian4(&m).expect("hermitized product");
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for v in vals {
        let s = clipped_sqrt(v);
        sum += s;
        max = max.max(s);
    }
    (2.0 * max - sum).clamp(0.0, 1.0)
}

/// Concurrence of a Bell-diagonal state: max{0, 2 rho_max - 1}.
pub fn concurrence_bell_diagonal(s: &BellDiagonalState) -> f64 {
    let ev = s.eigenvalues();
    let max = ev.into_iter().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = ev.into_iter().sum();
    (2.0 * max - sum).clamp(0.0, 1.0)
}

/// Closed-form concurrence for the symmetric X family.
pub fn concurrence_x_state(x: &XStateParams) -> f64 {
    let XStateParams { a, b, c, d } = *x;
    let r11 = 0.25 * (1.0 + c + 2.0 * d);
    let r44 = 0.25 * (1.0 + c - 2.0 * d);
    let r22 = 0.25 * (1.0 - c);
    let r14 = 0.25 * (a - b);
    let r23 = 0.25 * (a + b);
    let inner = r23.abs() - clipped_sqrt(r11 * r44);
    let outer = r14.abs() - clipped_sqrt(r22 * r22);
    (2.0 * inner.max(outer).max(0.0)).clamp(0.0, 1.0)
}

/// Minimum eigenvalue of the partial transpose over qubit B; negative
/// exactly when the state is entangled (Peres-Horodecki for two qubits).
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let mut pt = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    pt.0[2 * i + j][2 * k + l] = m.0[2 * i + l][2 * k + j];
                }
            }
        }
    }
    let vals = eig_hermitian4(&pt).expect("partial transpose of Hermitian is Hermitian");
    vals[0]
}

fn clipped_sqrt(v: f64) -> f64 {
    if v < 0.0 {
        // Negative arguments within the physicality slack are rounding, not
        // physics; anything larger means the caller skipped validation.
        debug_assert!(v > -TOL_PHYSICALITY, "sqrt argument {v} below clipping range");
        0.0
    } else {
        v.sqrt()
    }
}
