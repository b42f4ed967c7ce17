//! Seeded random generators for states, filters and unitaries, shared by the
//! validation suite and the tests.

use rand::Rng;

use crate::entanglement::BellDiagonalState;
use crate::linalg::{Mat2, C64};
use crate::qstate::{DensityMatrix, XStateParams};

/// Full-rank random density matrix: a Ginibre product mixed with identity.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let mut g = [[C64::new(0.0, 0.0); 4]; 4];
    for row in g.iter_mut() {
        for e in row.iter_mut() {
            *e = C64::new(standard_normal(rng), standard_normal(rng));
        }
    }
    let mut m = crate::linalg::Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m.0[i][j] += g[i][k] * g[j][k].conj();
            }
        }
    }
    let tr = m.trace().re;
    let m = m.scale_re(0.95 / tr).add(&crate::linalg::Mat4::identity().scale_re(0.05 / 4.0));
    DensityMatrix::new(m.add(&m.adjoint()).scale_re(0.5)).expect("constructed state is valid")
}

/// Random normalized pure state.
pub fn random_pure(rng: &mut impl Rng) -> [C64; 4] {
    let mut v = [C64::new(0.0, 0.0); 4];
    let mut norm2 = 0.0;
    for e in v.iter_mut() {
        *e = C64::new(standard_normal(rng), standard_normal(rng));
        norm2 += e.norm_sqr();
    }
    let inv = 1.0 / norm2.sqrt();
    v.map(|e| e.scale(inv))
}

/// Uniform draw from the interior of the physical X region, shrunk by
/// `margin` (use something like 0.9 to stay away from the boundary).
pub fn random_x_params(rng: &mut impl Rng, margin: f64) -> XStateParams {
    let c = rng.gen_range(-1.0..1.0) * margin;
    let sum = rng.gen_range(-(1.0 - c)..=(1.0 - c)) * margin;
    let radius = (1.0 + c) * rng.gen_range(0.0f64..1.0).sqrt() * margin;
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let diff = radius * angle.cos();
    let d = 0.5 * radius * angle.sin();
    XStateParams::new(0.5 * (sum + diff), 0.5 * (sum - diff), c, d)
        .expect("sampled inside the physical region")
}

/// Random point of the Bell tetrahedron via a simplex draw of eigenvalues.
pub fn random_bell_diagonal(rng: &mut impl Rng) -> BellDiagonalState {
    let mut w = [0.0f64; 4];
    let mut total = 0.0;
    for e in w.iter_mut() {
        *e = -rng.gen_range(0.0f64..1.0).max(1e-12).ln();
        total += *e;
    }
    let r = w.map(|e| e / total);
    BellDiagonalState::new(
        r[0] - r[1] + r[2] - r[3],
        -r[0] + r[1] + r[2] - r[3],
        r[0] + r[1] - r[2] - r[3],
    )
    .expect("simplex point is inside the tetrahedron")
}

/// Random invertible filter leg, Frobenius-normalized, |det| bounded away
/// from zero.
pub fn random_invertible2(rng: &mut impl Rng) -> Mat2 {
    loop {
        let mut m = Mat2::zero();
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e = C64::new(standard_normal(rng), standard_normal(rng));
            }
        }
        let m = m.scale(C64::new(1.0 / m.norm(), 0.0));
        if m.det().norm() > 0.05 {
            return m;
        }
    }
}

/// Haar-like random 2x2 unitary.
pub fn random_unitary2(rng: &mut impl Rng) -> Mat2 {
    let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let (a, b, g) = (
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let (ct, st) = (theta.cos(), theta.sin());
    let e = |ph: f64, r: f64| C64::from_polar(r, ph);
    Mat2([
        [e(a, ct), e(b, st)],
        [e(g - b, -st), e(g - a, ct)],
    ])
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; plenty for sampling test states.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}
