//! Small dense complex matrices and a Hermitian eigensolver.
//!
//! Everything here is sized for the two-qubit problem: 2x2 single-qubit
//! operators, 4x4 two-qubit operators, and a cyclic complex Jacobi
//! eigensolver for 4x4 Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Complex 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// Complex 4x4 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        Mat2([[d0, ZERO], [ZERO, d1]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn conj(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Tensor product a (x) b in the fixed basis order (first factor leftmost).
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat4) -> Mat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat4) -> Mat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat4 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Mat4 {
        self.scale(C64::new(s, 0.0))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for k in 0..4 {
                out[i] += self.0[i][k] * v[k];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of |m - m†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }
}

const HERMITICITY_TOL: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigenvalues of a 4x4 Hermitian matrix, sorted ascending.
pub fn eig_hermitian4(m: &Mat4) -> Result<[f64; 4]> {
    eig_hermitian4_full(m).map(|(vals, _)| vals)
}

/// Eigenvalues (ascending) and the unitary of eigenvector columns.
///
/// Cyclic complex Jacobi rotations; robust at near-degenerate spectra and
/// deterministic for a given input.
pub fn eig_hermitian4_full(m: &Mat4) -> Result<([f64; 4], Mat4)> {
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    // Work on the exactly Hermitian part.
    let mut a = m.add(&m.adjoint()).scale_re(0.5);
    let mut v = Mat4::identity();
    let scale = a.max_abs().max(1.0);
    let off_tol = 1e-15 * scale;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..3 {
            for q in (p + 1)..4 {
                off = off.max(a.0[p][q].norm());
            }
        }
        if off <= off_tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r <= off_tol * 1e-2 {
                    continue;
                }
                let phase = apq / r;
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                // tan(2 theta) = 2 r / (app - aqq), |theta| <= pi/4
                let zeta = (app - aqq) / (2.0 * r);
                let t = if zeta.abs() < 1e300 {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns: A <- A J with J[p][p]=c, J[q][p]=s e^{-i phi},
                // J[p][q]=-s e^{i phi}, J[q][q]=c.
                let (cs, sphase) = (C64::new(c, 0.0), phase.scale(s));
                for k in 0..4 {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * cs + akq * sphase.conj();
                    a.0[k][q] = akq * cs - akp * sphase;
                }
                // Rows: A <- J† A.
                for k in 0..4 {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = apk * cs + aqk * sphase;
                    a.0[q][k] = aqk * cs - apk * sphase.conj();
                }
                // Eigenvector columns follow the column update.
                for k in 0..4 {
                    let vkp = v.0[k][p];
                    let vkq = v.0[k][q];
                    v.0[k][p] = vkp * cs + vkq * sphase.conj();
                    v.0[k][q] = vkq * cs - vkp * sphase;
                }
            }
        }
    }

    let mut pairs: [(f64, usize); 4] = [
        (a.0[0][0].re, 0),
        (a.0[1][1].re, 1),
        (a.0[2][2].re, 2),
        (a.0[3][3].re, 3),
    ];
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let vals = [pairs[0].0, pairs[1].0, pairs[2].0, pairs[3].0];
    let mut vecs = Mat4::zero();
    for (dst, (_, src)) in pairs.iter().enumerate() {
        for k in 0..4 {
            vecs.0[k][dst] = v.0[k][*src];
        }
    }
    Ok((vals, vecs))
}

/// V diag(f(lambda)) V† for a Hermitian matrix given its decomposition.
pub fn hermitian_function(vals: &[f64; 4], vecs: &Mat4, f: impl Fn(f64) -> f64) -> Mat4 {
    let mut out = Mat4::zero();
    for (k, &lambda) in vals.iter().enumerate() {
        let w = f(lambda);
        if w == 0.0 {
            continue;
        }
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += vecs.0[i][k] * vecs.0[j][k].conj() * w;
            }
        }
    }
    out
}
