//! The three dissipative generators, their reduction to the X family,
//! closed-form solutions for independent baths, and the decoherence-free
//! subspace of the squeezed bath.
//!
//! Conventions: sigma = |-><+| per qubit; for common baths the collective
//! operator is sigma_a + sigma_b; the squeezed bath carries m = sqrt(n(n+1))
//! and phase psi, with the e^{i psi} factor on the sigma† sigma† term. Both
//! squeezing brackets enter with the same -gamma m / 2 prefactor, which is
//! what Hermiticity preservation requires and what makes the printed
//! decoherence-free states stationary.

use crate::error::{Error, Result};
use crate::linalg::{kron, Mat2, Mat4, C64, ZERO};
use crate::qstate::{sigma_minus, DensityMatrix, XStateParams};

/// Bath specification: which generator, and its physical parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathModel {
    /// Each qubit couples to its own thermal bath of mean photon number n.
    IndependentThermal { gamma: f64, n: f64 },
    /// Both qubits couple to one thermal bath through sigma_a + sigma_b.
    CommonThermal { gamma: f64, n: f64 },
    /// Common squeezed bath with maximal squeezing m = sqrt(n(n+1)).
    CommonSqueezed { gamma: f64, n: f64, psi: f64 },
}

impl BathModel {
    pub fn independent_thermal(gamma: f64, n: f64) -> Result<Self> {
        validate(gamma, n)?;
        Ok(BathModel::IndependentThermal { gamma, n })
    }

    pub fn common_thermal(gamma: f64, n: f64) -> Result<Self> {
        validate(gamma, n)?;
        Ok(BathModel::CommonThermal { gamma, n })
    }

    pub fn common_squeezed(gamma: f64, n: f64, psi: f64) -> Result<Self> {
        validate(gamma, n)?;
        if !psi.is_finite() {
            return Err(Error::InvalidBath { name: "psi", value: psi });
        }
        Ok(BathModel::CommonSqueezed { gamma, n, psi })
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            BathModel::IndependentThermal { gamma, .. }
            | BathModel::CommonThermal { gamma, .. }
            | BathModel::CommonSqueezed { gamma, .. } => gamma,
        }
    }

    pub fn n(&self) -> f64 {
        match *self {
            BathModel::IndependentThermal { n, .. }
            | BathModel::CommonThermal { n, .. }
            | BathModel::CommonSqueezed { n, .. } => n,
        }
    }

    pub fn psi(&self) -> Option<f64> {
        match *self {
            BathModel::CommonSqueezed { psi, .. } => Some(psi),
            _ => None,
        }
    }

    /// Squeezing magnitude m = sqrt(n(n+1)); zero for thermal baths.
    pub fn squeeze_m(&self) -> f64 {
        match *self {
            BathModel::CommonSqueezed { n, .. } => (n * (n + 1.0)).sqrt(),
            _ => 0.0,
        }
    }

    /// Stiffness scale gamma (1 + 2n) used by the integrator guard.
    pub fn rate_scale(&self) -> f64 {
        self.gamma() * (1.0 + 2.0 * self.n())
    }
}

fn validate(gamma: f64, n: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidBath { name: "gamma", value: gamma });
    }
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidBath { name: "n", value: n });
    }
    Ok(())
}

fn sigma_a() -> Mat4 {
    kron(&sigma_minus(), &Mat2::identity())
}

fn sigma_b() -> Mat4 {
    kron(&Mat2::identity(), &sigma_minus())
}

fn sigma_collective() -> Mat4 {
    sigma_a().add(&sigma_b())
}

/// 2 L rho L† - L†L rho - rho L†L.
fn dissipator(l: &Mat4, rho: &Mat4) -> Mat4 {
    let ld = l.adjoint();
    let ldl = ld.mul(l);
    l.mul(rho)
        .mul(&ld)
        .scale_re(2.0)
        .sub(&ldl.mul(rho))
        .sub(&rho.mul(&ldl))
}

/// Right-hand side of the applicable master equation, on a raw matrix so the
/// integrator can evaluate it at non-state intermediate points.
pub fn lindblad_rhs_matrix(model: &BathModel, rho: &Mat4) -> Mat4 {
    let gamma = model.gamma();
    let n = model.n();
    match *model {
        BathModel::IndependentThermal { .. } => {
            let mut out = Mat4::zero();
            for s in [sigma_a(), sigma_b()] {
                out = out
                    .add(&dissipator(&s, rho).scale_re(n + 1.0))
                    .add(&dissipator(&s.adjoint(), rho).scale_re(n));
            }
            out.scale_re(gamma / 2.0)
        }
        BathModel::CommonThermal { .. } => {
            let s = sigma_collective();
            dissipator(&s, rho)
                .scale_re(n + 1.0)
                .add(&dissipator(&s.adjoint(), rho).scale_re(n))
                .scale_re(gamma / 2.0)
        }
        BathModel::CommonSqueezed { psi, .. } => {
            let s = sigma_collective();
            let sd = s.adjoint();
            let thermal = dissipator(&s, rho)
                .scale_re(n + 1.0)
                .add(&dissipator(&sd, rho).scale_re(n));
            let m = model.squeeze_m();
            let up = anomalous(&sd, rho);
            let down = anomalous(&s, rho);
            let phase = C64::new(0.0, psi).exp();
            let squeeze = up.scale(phase).add(&down.scale(phase.conj())).scale_re(-m);
            thermal.add(&squeeze).scale_re(gamma / 2.0)
        }
    }
}

/// 2 L rho L - L L rho - rho L L (the squeezing bracket).
fn anomalous(l: &Mat4, rho: &Mat4) -> Mat4 {
    let ll = l.mul(l);
    l.mul(rho)
        .mul(l)
        .scale_re(2.0)
        .sub(&ll.mul(rho))
        .sub(&rho.mul(&ll))
}

/// d rho / dt for a validated state.
pub fn lindblad_rhs(model: &BathModel, rho: &DensityMatrix) -> Mat4 {
    lindblad_rhs_matrix(model, rho.matrix())
}

/// Reduced right-hand side (da, db, dc, dd)/dt on the X family.
///
/// Independent baths follow the printed system; the common-bath systems are
/// the hand-derived projections, locked in by the reduced/full consistency
/// tests. A squeezed bath keeps the family closed only when sin(psi) = 0.
pub fn x_rhs(model: &BathModel, x: &XStateParams) -> Result<[f64; 4]> {
    let gamma = model.gamma();
    let n = model.n();
    let XStateParams { a, b, c, d } = *x;
    match *model {
        BathModel::IndependentThermal { .. } => Ok([
            -gamma * a * (1.0 + 2.0 * n),
            -gamma * b * (1.0 + 2.0 * n),
            -2.0 * gamma * (d + c + 2.0 * n * c),
            -gamma * (1.0 + d + 2.0 * n * d),
        ]),
        BathModel::CommonThermal { .. } => Ok(common_rhs(x, gamma, n, 0.0)),
        BathModel::CommonSqueezed { psi, .. } => {
            let m = model.squeeze_m();
            if (m * psi.sin()).abs() > 1e-12 {
                return Err(Error::XFormNotClosed { psi });
            }
            Ok(common_rhs(x, gamma, n, m * psi.cos()))
        }
    }
}

/// Common-bath reduction in triplet/singlet populations: p = <T1|rho|T1>,
/// u = <T0|rho|T0>, v = <S|rho|S>, s = <T-1|rho|T-1>, f = <T1|rho|T-1>.
/// The collective sigma is a cascade T1 -> T0 -> T-1 with matrix element
/// sqrt(2); the singlet is dark. `mcos` carries m cos(psi) for squeezing.
fn common_rhs(x: &XStateParams, gamma: f64, n: f64, mcos: f64) -> [f64; 4] {
    let XStateParams { a, b, c, d } = *x;
    let p = 0.25 * (1.0 + c + 2.0 * d);
    let s = 0.25 * (1.0 + c - 2.0 * d);
    let q = 0.25 * (1.0 - c);
    let f = 0.25 * (a - b);
    let g = 0.25 * (a + b);
    let u = q + g;

    let mut p_dot = -2.0 * gamma * (n + 1.0) * p + 2.0 * gamma * n * u;
    let mut u_dot = 2.0 * gamma * (n + 1.0) * (p - u) + 2.0 * gamma * n * (s - u);
    let mut s_dot = 2.0 * gamma * (n + 1.0) * u - 2.0 * gamma * n * s;
    let mut f_dot = -gamma * (1.0 + 2.0 * n) * f;
    if mcos != 0.0 {
        p_dot += 2.0 * gamma * mcos * f;
        s_dot += 2.0 * gamma * mcos * f;
        u_dot += -4.0 * gamma * mcos * f;
        f_dot += -gamma * mcos * (2.0 * u - p - s);
    }
    // v is dark under every term; map back to (a, b, c, d).
    let g_dot = 0.5 * u_dot;
    [
        2.0 * (g_dot + f_dot),
        2.0 * (g_dot - f_dot),
        -2.0 * u_dot,
        p_dot - s_dot,
    ]
}

/// Closed-form independent-bath solution from the Bell state (1, 1, -1).
pub fn analytic_independent(t: f64, gamma: f64, n: f64) -> Result<XStateParams> {
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    validate(gamma, n)?;
    let k = 1.0 + 2.0 * n;
    let e = (-gamma * k * t).exp();
    let d = (e - 1.0) / k;
    let a = e;
    let b = e;
    let c = -e * e - (2.0 * e - e * e - 1.0) / (k * k);
    XStateParams::new(a, b, c, d)
}

/// Orthonormal basis of the squeezed-bath decoherence-free subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfsBasis {
    /// (n |++> + m e^{-i psi} |-->) / sqrt(n^2 + m^2); the attractor for
    /// initial states with no singlet component.
    pub phi1: [C64; 4],
    /// The singlet (|-+> - |+->) / sqrt(2).
    pub phi2: [C64; 4],
}

/// Stationary states of the squeezed-bath generator. At n = 0 the squeezing
/// degenerates (m = 0) and phi1 becomes the ground state up to the phase.
pub fn dfs_states(n: f64, psi: f64) -> Result<DfsBasis> {
    if n < 0.0 {
        return Err(Error::NonPositiveN { n });
    }
    let phase = C64::new(0.0, -psi).exp();
    let phi1 = if n == 0.0 {
        [ZERO, ZERO, ZERO, phase]
    } else {
        let m = (n * (n + 1.0)).sqrt();
        let norm = (n * n + m * m).sqrt();
        [
            C64::new(n / norm, 0.0),
            ZERO,
            ZERO,
            phase.scale(m / norm),
        ]
    };
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi2 = [ZERO, C64::new(-s, 0.0), C64::new(s, 0.0), ZERO];
    Ok(DfsBasis { phi1, phi2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use crate::qstate::DensityMatrix;

    fn norm_of_rhs(model: &BathModel, rho: &DensityMatrix) -> f64 {
        lindblad_rhs(model, rho).max_abs()
    }

    #[test]
    fn vacuum_ground_state_is_fixed_point() {
        let model = BathModel::independent_thermal(1.3, 0.0).unwrap();
        let ground = DensityMatrix::from_pure(&[ZERO, ZERO, ZERO, ONE]).unwrap();
        assert!(norm_of_rhs(&model, &ground) < 1e-14);
    }

    #[test]
    fn doubly_excited_decay_rate() {
        // d(rho_11)/dt = -2 gamma rho_11 for |++> under independent vacuum.
        let gamma = 0.7;
        let model = BathModel::independent_thermal(gamma, 0.0).unwrap();
        let excited = DensityMatrix::from_pure(&[ONE, ZERO, ZERO, ZERO]).unwrap();
        let rhs = lindblad_rhs(&model, &excited);
        assert!((rhs.0[0][0].re + 2.0 * gamma).abs() < 1e-12);
    }

    #[test]
    fn singlet_is_stationary_for_common_baths() {
        let singlet = dfs_states(0.5, 0.0).unwrap().phi2;
        let rho = DensityMatrix::from_pure(&singlet).unwrap();
        for model in [
            BathModel::common_thermal(1.0, 0.5).unwrap(),
            BathModel::common_squeezed(1.0, 0.5, 0.9).unwrap(),
        ] {
            assert!(norm_of_rhs(&model, &rho) < 1e-13);
        }
    }

    #[test]
    fn dfs_states_are_stationary_for_squeezed_bath() {
        for (n, psi) in [(0.001, 0.0), (0.5, 0.7), (2.0, -2.1)] {
            let model = BathModel::common_squeezed(1.3, n, psi).unwrap();
            let basis = dfs_states(n, psi).unwrap();
            for phi in [basis.phi1, basis.phi2] {
                let rho = DensityMatrix::from_pure(&phi).unwrap();
                assert!(
                    norm_of_rhs(&model, &rho) < 1e-12,
                    "not stationary at n={n}, psi={psi}"
                );
            }
        }
    }

    #[test]
    fn dfs_orthonormal_and_coefficients() {
        let basis = dfs_states(0.001, 0.0).unwrap();
        let mut dot = ZERO;
        for i in 0..4 {
            dot += basis.phi1[i].conj() * basis.phi2[i];
        }
        assert!(dot.norm() < 1e-14);
        // Coefficients on (|++>, |-->) for n = 0.001.
        assert!((basis.phi1[0].re - 0.03159).abs() < 1e-4);
        assert!((basis.phi1[3].re - 0.99950).abs() < 1e-4);

        // n -> 0 limit: the ground state up to a global phase.
        let basis = dfs_states(0.0, 0.4).unwrap();
        assert!((basis.phi1[3].norm() - 1.0).abs() < 1e-14);
        assert!(basis.phi1[0].norm() < 1e-14);

        assert!(matches!(dfs_states(-0.1, 0.0), Err(Error::NonPositiveN { .. })));
    }

    #[test]
    fn rhs_traceless_and_hermitian() {
        let x = XStateParams::new(0.4, -0.3, 0.2, -0.1).unwrap();
        let rho = x.to_density();
        for model in [
            BathModel::independent_thermal(1.1, 0.4).unwrap(),
            BathModel::common_thermal(1.1, 0.4).unwrap(),
            BathModel::common_squeezed(1.1, 0.4, 0.6).unwrap(),
        ] {
            let rhs = lindblad_rhs(&model, &rho);
            assert!(rhs.trace().norm() < 1e-13);
            assert!(rhs.hermiticity_defect() < 1e-13);
        }
    }

    #[test]
    fn printed_independent_system_at_bell_state() {
        let gamma = 1.0;
        let model = BathModel::independent_thermal(gamma, 0.0).unwrap();
        let x = XStateParams::new(1.0, 1.0, -1.0, 0.0).unwrap();
        let dot = x_rhs(&model, &x).unwrap();
        assert!((dot[0] + gamma).abs() < 1e-14);
        assert!((dot[1] + gamma).abs() < 1e-14);
        assert!((dot[2] - 2.0 * gamma).abs() < 1e-14);
        assert!((dot[3] + gamma).abs() < 1e-14);
    }

    #[test]
    fn reduced_matches_full_projection() {
        let x = XStateParams::new(0.35, -0.15, 0.25, -0.2).unwrap();
        let rho = x.to_density();
        for model in [
            BathModel::independent_thermal(1.3, 0.4).unwrap(),
            BathModel::common_thermal(1.3, 0.4).unwrap(),
            BathModel::common_squeezed(1.3, 0.4, 0.0).unwrap(),
            BathModel::common_squeezed(1.3, 0.4, std::f64::consts::PI).unwrap(),
        ] {
            let reduced = x_rhs(&model, &x).unwrap();
            let full = lindblad_rhs(&model, &rho);
            // The derivative inherits the X pattern; project it.
            let derivative = DensityMatrix::new_unchecked(full);
            let c = crate::qstate::correlation_from_density(&derivative);
            let projected = [c.0[1][1], c.0[2][2], c.0[3][3], c.0[0][3]];
            for (got, want) in reduced.iter().zip(projected) {
                assert!((got - want).abs() < 1e-10, "model {model:?}");
            }
        }
    }

    #[test]
    fn squeezed_rhs_requires_closed_family() {
        let model = BathModel::common_squeezed(1.0, 0.4, 0.7).unwrap();
        let x = XStateParams::new(0.35, -0.15, 0.25, -0.2).unwrap();
        assert!(matches!(x_rhs(&model, &x), Err(Error::XFormNotClosed { .. })));
    }

    #[test]
    fn thermal_fixed_point_of_reduced_system() {
        // d* = -1/(1+2n), a = b = 0, and the consistent c*.
        let n = 0.35;
        let model = BathModel::independent_thermal(1.0, n).unwrap();
        let d_star = -1.0 / (1.0 + 2.0 * n);
        let c_star = d_star * d_star; // dc/dt = 0 needs c = -d/(1+2n) = d^2
        let x = XStateParams::new(0.0, 0.0, c_star, d_star).unwrap();
        let dot = x_rhs(&model, &x).unwrap();
        for v in dot {
            assert!(v.abs() < 1e-14);
        }
    }

    #[test]
    fn analytic_solution_examples() {
        // t = 0 reproduces the initial Bell state.
        let x = analytic_independent(0.0, 1.0, 0.0).unwrap();
        assert_eq!((x.a, x.b, x.c, x.d), (1.0, 1.0, -1.0, 0.0));

        // Vacuum at gamma t = ln 2.
        let x = analytic_independent(2.0f64.ln(), 1.0, 0.0).unwrap();
        assert!((x.a - 0.5).abs() < 1e-14);
        assert!((x.b - 0.5).abs() < 1e-14);
        assert!(x.c.abs() < 1e-14);
        assert!((x.d + 0.5).abs() < 1e-14);

        // Long-time limit is the ground state (0, 0, 1, -1).
        let x = analytic_independent(200.0, 1.0, 0.0).unwrap();
        assert!(x.a.abs() < 1e-14 && (x.c - 1.0).abs() < 1e-12 && (x.d + 1.0).abs() < 1e-12);

        assert!(matches!(
            analytic_independent(-1.0, 1.0, 0.0),
            Err(Error::NegativeTime { .. })
        ));
    }

    #[test]
    fn analytic_solution_satisfies_reduced_system() {
        // Finite-difference derivative of the closed forms vs x_rhs.
        let gamma = 1.0;
        let n = 0.25;
        let model = BathModel::independent_thermal(gamma, n).unwrap();
        let h = 1e-6;
        for &t in &[0.1, 0.5, 1.0, 2.0, 4.0] {
            let x = analytic_independent(t, gamma, n).unwrap();
            let plus = analytic_independent(t + h, gamma, n).unwrap();
            let minus = analytic_independent(t - h, gamma, n).unwrap();
            let fd = [
                (plus.a - minus.a) / (2.0 * h),
                (plus.b - minus.b) / (2.0 * h),
                (plus.c - minus.c) / (2.0 * h),
                (plus.d - minus.d) / (2.0 * h),
            ];
            let rhs = x_rhs(&model, &x).unwrap();
            for (got, want) in rhs.iter().zip(fd) {
                assert!((got - want).abs() < 1e-6, "t = {t}");
            }
        }
    }

    #[test]
    fn bath_model_validation() {
        assert!(matches!(
            BathModel::independent_thermal(0.0, 0.1),
            Err(Error::InvalidBath { name: "gamma", .. })
        ));
        assert!(matches!(
            BathModel::common_thermal(1.0, -0.1),
            Err(Error::InvalidBath { name: "n", .. })
        ));
        let m = BathModel::common_squeezed(1.0, 0.5, 0.3).unwrap();
        assert!((m.squeeze_m() - (0.5f64 * 1.5).sqrt()).abs() < 1e-15);
        assert!((m.rate_scale() - 2.0).abs() < 1e-15);
    }
}
