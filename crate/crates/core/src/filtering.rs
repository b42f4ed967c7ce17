//! Local filtering operations, their Lorentz-transform picture, the
//! closed-form optimal boost for the symmetric X family, and a numeric
//! minimizer used solely to validate the closed form.
//!
//! A filter (A x B) acts on the Pauli correlation tensor as a pair of proper
//! orthochronous Lorentz transformations, one per index. For X-form states
//! the optimal transformation is a symmetric z-boost with rapidity parameter
//! alpha; applying it and normalizing yields the Bell-diagonal normal form
//! whose concurrence is the maximum extractable entanglement.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entanglement::{concurrence, concurrence_bell_diagonal, BellDiagonalState};
use crate::error::{Error, Result};
use crate::linalg::{kron, Mat2, Mat4, C64, ZERO};
use crate::qstate::{CorrelationTensor, DensityMatrix, XStateParams};

/// Boost used to evaluate the infinite-boost limit numerically.
pub const ALPHA_CAP: f64 = 1e4;
/// Hard cap on finite boosts accepted by [`partial_extraction`].
pub const ALPHA_MAX: f64 = 1e6;
/// Singularity threshold on (1+c)^2 - 4 d^2.
pub const EPS_SINGULAR: f64 = 1e-12;
/// Below this |d| the identity is the optimal filter (alpha = 0).
const D_TOL: f64 = 1e-12;
/// |det| below this is treated as a singular filter.
const MIN_DET: f64 = 1e-14;
/// Success probabilities below this are treated as zero.
const MIN_TRACE: f64 = 1e-14;

/// Invertible local filtering operation (A x B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFilter {
    pub a: Mat2,
    pub b: Mat2,
}

impl LocalFilter {
    pub fn new(a: Mat2, b: Mat2) -> Result<Self> {
        for m in [&a, &b] {
            let det = m.det().norm();
            if det <= MIN_DET {
                return Err(Error::SingularFilter { det });
            }
        }
        Ok(LocalFilter { a, b })
    }

    pub fn identity() -> Self {
        LocalFilter { a: Mat2::identity(), b: Mat2::identity() }
    }

    /// |det A| |det B|.
    pub fn det_product(&self) -> f64 {
        self.a.det().norm() * self.b.det().norm()
    }
}

/// Proper orthochronous Lorentz transform acting on one correlation index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform(pub [[f64; 4]; 4]);

impl LorentzTransform {
    /// Validates L^T eta L = eta (within 1e-10), L00 >= 1 and det L = +1.
    pub fn new(l: [[f64; 4]; 4]) -> Result<Self> {
        let eta = [1.0, -1.0, -1.0, -1.0];
        let mut defect = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += l[k][i] * eta[k] * l[k][j];
                }
                let want = if i == j { eta[i] } else { 0.0 };
                defect = defect.max((acc - want).abs());
            }
        }
        if defect > 1e-10 {
            return Err(Error::NotLorentz { defect });
        }
        if l[0][0] < 1.0 - 1e-12 {
            return Err(Error::NotLorentz { defect: 1.0 - l[0][0] });
        }
        let det = det4(&l);
        if (det - 1.0).abs() > 1e-8 {
            return Err(Error::NotLorentz { defect: (det - 1.0).abs() });
        }
        Ok(LorentzTransform(l))
    }
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let mut piv = col;
        for row in (col + 1)..4 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Normalized filtered state (A x B) rho (A x B)† / Tr[...].
pub fn apply_filter(rho: &DensityMatrix, f: &LocalFilter) -> Result<DensityMatrix> {
    let det = f.a.det().norm().min(f.b.det().norm());
    if det <= MIN_DET {
        return Err(Error::SingularFilter { det });
    }
    let k = kron(&f.a, &f.b);
    let out = k.mul(rho.matrix()).mul(&k.adjoint());
    let tr = out.trace().re;
    if tr <= MIN_TRACE {
        return Err(Error::ZeroSuccessProbability { trace: tr });
    }
    let normalized = out.scale_re(1.0 / tr);
    // The filtered state of a PSD state is PSD; hermitize rounding and wrap.
    Ok(DensityMatrix::new_unchecked(normalized.add(&normalized.adjoint()).scale_re(0.5)))
}

/// Concurrence after filtering, via the transformation law
/// C |det A| |det B| / Tr[(A†A x B†B) rho] rather than re-diagonalizing.
pub fn filtered_concurrence(rho: &DensityMatrix, f: &LocalFilter) -> Result<f64> {
    let det = f.a.det().norm().min(f.b.det().norm());
    if det <= MIN_DET {
        return Err(Error::SingularFilter { det });
    }
    let weight = kron(&f.a.adjoint().mul(&f.a), &f.b.adjoint().mul(&f.b));
    let tr = weight.mul(rho.matrix()).trace().re;
    if tr <= MIN_TRACE {
        return Err(Error::ZeroSuccessProbability { trace: tr });
    }
    Ok(concurrence(rho) * f.det_product() / tr)
}

/// The fixed matrix T mapping (A x A*) conjugation to a Lorentz transform.
fn t_matrix() -> Mat4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r = |x: f64| C64::new(x * s, 0.0);
    let i = |x: f64| C64::new(0.0, x * s);
    Mat4([
        [r(1.0), ZERO, ZERO, r(1.0)],
        [ZERO, r(1.0), r(1.0), ZERO],
        [ZERO, i(1.0), i(-1.0), ZERO],
        [r(1.0), ZERO, ZERO, r(-1.0)],
    ])
}

/// L = T (A x A*) T† / |det A|.
pub fn filter_to_lorentz(a: &Mat2) -> Result<LorentzTransform> {
    let det = a.det().norm();
    if det <= MIN_DET {
        return Err(Error::SingularFilter { det });
    }
    let t = t_matrix();
    let m = t.mul(&kron(a, &a.conj())).mul(&t.adjoint()).scale_re(1.0 / det);
    let mut l = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            debug_assert!(m.0[i][j].im.abs() < 1e-10 * (1.0 + m.max_abs()));
            l[i][j] = m.0[i][j].re;
        }
    }
    LorentzTransform::new(l)
}

/// Correlation tensor after filtering: L_A c L_B^T, normalized to c00 = 1.
pub fn lorentz_action(
    t: &CorrelationTensor,
    la: &LorentzTransform,
    lb: &LorentzTransform,
) -> Result<CorrelationTensor> {
    let mut out = [[0.0f64; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = 0.0;
            for r in 0..4 {
                for s in 0..4 {
                    acc += la.0[mu][r] * lb.0[nu][s] * t.0[r][s];
                }
            }
            out[mu][nu] = acc;
        }
    }
    if out[0][0] <= MIN_TRACE {
        return Err(Error::ZeroSuccessProbability { trace: out[0][0] });
    }
    Ok(CorrelationTensor(out).normalized())
}

/// Symmetric z-boost solving the X-family normal-form problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalBoost {
    pub alpha: f64,
    pub beta: f64,
    /// Set when (1+c)^2 - 4d^2 is below [`EPS_SINGULAR`]: the optimum is an
    /// infinite boost and finite fields are meaningless.
    pub singular: bool,
}

impl OptimalBoost {
    fn finite(alpha: f64) -> Self {
        OptimalBoost { alpha, beta: (1.0 + alpha * alpha).sqrt(), singular: false }
    }

    fn singular() -> Self {
        OptimalBoost { alpha: f64::INFINITY, beta: f64::INFINITY, singular: true }
    }
}

/// Filter with unit determinant realizing a symmetric z-boost of parameter
/// alpha on both qubits: A = B = diag(sqrt(beta+alpha), sqrt(beta-alpha)).
pub fn boost_filter(alpha: f64) -> LocalFilter {
    let beta = (1.0 + alpha * alpha).sqrt();
    // beta - alpha = 1/(beta + alpha) avoids cancellation for large alpha.
    let plus = beta + alpha.abs();
    let minus = 1.0 / plus;
    let (hi, lo) = if alpha >= 0.0 { (plus, minus) } else { (minus, plus) };
    let a = Mat2::diag(C64::new(hi.sqrt(), 0.0), C64::new(lo.sqrt(), 0.0));
    LocalFilter { a, b: a }
}

/// Filter realizing a non-singular optimal boost.
pub fn boost_to_filter(ob: &OptimalBoost) -> Result<LocalFilter> {
    if ob.singular {
        return Err(Error::SingularBoost);
    }
    Ok(boost_filter(ob.alpha))
}

/// Closed-form optimal boost parameter for an X state.
///
/// alpha^2 = -1/2 + (1+c) / (2 sqrt((1+c)^2 - 4d^2)), with sign(alpha) =
/// -sign(d). Bell-diagonal inputs (d = 0) need no boost regardless of c, and
/// states on the singular locus (1+c)^2 = 4d^2 need an infinite one.
pub fn optimal_boost(x: &XStateParams) -> Result<OptimalBoost> {
    let defect = x.physicality_defect();
    if defect > crate::qstate::TOL_PHYSICALITY {
        return Err(Error::Unphysical { defect });
    }
    if x.d.abs() <= D_TOL {
        return Ok(OptimalBoost::finite(0.0));
    }
    let one_c = 1.0 + x.c;
    if one_c <= 0.0 {
        // Physical states reach 1+c = 0 only with d = 0, handled above.
        return Err(Error::DegenerateC { value: one_c });
    }
    let k = one_c * one_c - 4.0 * x.d * x.d;
    if k < EPS_SINGULAR {
        return Ok(OptimalBoost::singular());
    }
    let alpha_sq = -0.5 + 0.5 * one_c / k.sqrt();
    let alpha = alpha_sq.max(0.0).sqrt() * if x.d > 0.0 { -1.0 } else { 1.0 };
    Ok(OptimalBoost::finite(alpha))
}

/// Everything the optimal-filter computation produces for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeeReport {
    /// Maximum extractable entanglement.
    pub value: f64,
    /// Bell-diagonal normal form (the limiting one when singular).
    pub bell: BellDiagonalState,
    /// Optimal finite boost, absent in the singular case.
    pub alpha: Option<f64>,
    pub singular: bool,
    /// Capped-boost doubling check passed (always true when not singular).
    pub converged: bool,
}

/// Bell-diagonal normal form reached by the optimal filter.
///
/// Non-singular case: C1 = a/D, C2 = b/D, C3 = (alpha^2 + 2 alpha beta d +
/// beta^2 c)/D with D = beta^2 + 2 alpha beta d + alpha^2 c. Singular case:
/// the infinite-boost limit evaluated at [`ALPHA_CAP`] through
/// cancellation-free forms, with a doubling convergence check.
pub fn optimal_bell_state(x: &XStateParams) -> Result<BellDiagonalState> {
    mee_report(x).map(|r| r.bell)
}

/// Concurrence of the optimal Bell-diagonal state.
pub fn max_extractable_entanglement(x: &XStateParams) -> Result<f64> {
    mee_report(x).map(|r| r.value)
}

pub fn mee_report(x: &XStateParams) -> Result<MeeReport> {
    let ob = optimal_boost(x)?;
    if ob.singular {
        let b1 = singular_bell(x, ALPHA_CAP);
        let b2 = singular_bell(x, 2.0 * ALPHA_CAP);
        let diff = (b1.0 - b2.0)
            .abs()
            .max((b1.1 - b2.1).abs())
            .max((b1.2 - b2.2).abs());
        let bell = BellDiagonalState::new(b1.0, b1.1, b1.2)?;
        return Ok(MeeReport {
            value: concurrence_bell_diagonal(&bell),
            bell,
            alpha: None,
            singular: true,
            converged: diff <= 1e-6,
        });
    }
    let (alpha, beta) = (ob.alpha, ob.beta);
    let denom = beta * beta + 2.0 * alpha * beta * x.d + alpha * alpha * x.c;
    if denom <= EPS_SINGULAR {
        return Err(Error::NonPositiveDenominator { value: denom });
    }
    let c3 = (alpha * alpha + 2.0 * alpha * beta * x.d + beta * beta * x.c) / denom;
    let bell = BellDiagonalState::new(x.a / denom, x.b / denom, c3)?;
    Ok(MeeReport {
        value: concurrence_bell_diagonal(&bell),
        bell,
        alpha: Some(alpha),
        singular: false,
        converged: true,
    })
}

/// Bell parameters at a large boost on the singular locus (1+c = 2|d|),
/// written so the ~alpha^2 cancellations never happen in floating point:
/// D = 1 - 2|d| a/(a+beta), N = -1 + 2|d| beta/(a+beta).
fn singular_bell(x: &XStateParams, alpha: f64) -> (f64, f64, f64) {
    let ad = x.d.abs();
    let beta = (1.0 + alpha * alpha).sqrt();
    let denom = 1.0 - 2.0 * ad * alpha / (alpha + beta);
    let num = -1.0 + 2.0 * ad * beta / (alpha + beta);
    (x.a / denom, x.b / denom, num / denom)
}

/// Concurrence extracted by a finite symmetric boost alpha.
pub fn partial_extraction(x: &XStateParams, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha.abs() > ALPHA_MAX {
        return Err(Error::BoostCapExceeded { alpha, max: ALPHA_MAX });
    }
    let filtered = apply_filter(&x.to_density(), &boost_filter(alpha))?;
    Ok(concurrence(&filtered))
}

/// Unit-Minkowski-norm pair minimizing the contracted correlation form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiPair {
    pub m: [f64; 4],
    pub n: [f64; 4],
}

impl MinkowskiPair {
    pub fn new(m: [f64; 4], n: [f64; 4]) -> Result<Self> {
        for v in [&m, &n] {
            let norm = v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
            let defect = (norm - 1.0).abs();
            if defect > 1e-9 || v[0] < 0.0 {
                return Err(Error::NotMinkowskiUnit { defect });
            }
        }
        Ok(MinkowskiPair { m, n })
    }
}

const ORACLE_MAX_ITERS: usize = 10_000;
const ORACLE_F_TOL: f64 = 1e-12;
// |dF| alone can stop while the minimizer is still ~1e-5 away (linear
// convergence); the parameter condition restores 1e-6-grade agreement.
const ORACLE_PARAM_TOL: f64 = 1e-11;

/// Brute-force minimizer of F(m, n) = c[mu][nu] m_mu n_nu over unit
/// orthochronous Minkowski vectors, by alternating exact one-sided solves
/// with multi-start. Exists solely as an independent check of
/// [`optimal_boost`]; not a production path.
pub fn minimize_correlation_form(
    t: &CorrelationTensor,
    seed: u64,
    starts: usize,
) -> Result<(MinkowskiPair, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds = vec![[1.0, 0.0, 0.0, 0.0]];
    for _ in 0..starts.max(8) {
        let r: f64 = rng.gen_range(0.0..2.0);
        let mut u = [0.0f64; 3];
        loop {
            for e in u.iter_mut() {
                *e = rng.gen_range(-1.0..1.0);
            }
            let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
            if n > 1e-3 {
                for e in u.iter_mut() {
                    *e /= n;
                }
                break;
            }
        }
        let sh = r.sinh();
        seeds.push([r.cosh(), sh * u[0], sh * u[1], sh * u[2]]);
    }

    let mut best: Option<([f64; 4], [f64; 4], f64)> = None;
    for seed_m in seeds {
        if let Some((m, n, f)) = alternate_from(t, seed_m) {
            if best.as_ref().map_or(true, |b| f < b.2) {
                best = Some((m, n, f));
            }
        }
    }
    match best {
        Some((m, n, f)) => Ok((MinkowskiPair::new(m, n)?, f)),
        None => Err(Error::NoConvergence { iterations: ORACLE_MAX_ITERS }),
    }
}

fn alternate_from(t: &CorrelationTensor, mut m: [f64; 4]) -> Option<([f64; 4], [f64; 4], f64)> {
    let mut n;
    let mut f_prev = f64::INFINITY;
    let mut converged = false;
    let mut out_n = [0.0; 4];
    for _ in 0..ORACLE_MAX_ITERS {
        // w^nu = c[mu][nu] m_mu, then the exact minimizer over n.
        let mut w = [0.0f64; 4];
        for nu in 0..4 {
            for mu in 0..4 {
                w[nu] += t.0[mu][nu] * m[mu];
            }
        }
        n = hyperboloid_minimizer(&w)?;
        // w^mu = c[mu][nu] n_nu, then the exact minimizer over m.
        let mut w = [0.0f64; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                w[mu] += t.0[mu][nu] * n[nu];
            }
        }
        let prev_m = m;
        let (next_m, f) = hyperboloid_minimizer_with_value(&w)?;
        m = next_m;
        let dparam =
            (0..4).map(|i| (m[i] - prev_m[i]).abs()).fold(0.0, f64::max);
        out_n = n;
        if (f_prev - f).abs() <= ORACLE_F_TOL && dparam <= ORACLE_PARAM_TOL {
            f_prev = f;
            converged = true;
            break;
        }
        f_prev = f;
    }
    converged.then(|| (m, out_n, f_prev))
}

/// argmin of sum w^mu x_mu over x0 = sqrt(1 + |x_vec|^2): x points opposite
/// the spatial part of w, with rapidity tanh r = |w_vec| / w0. Unbounded
/// (returns None) unless w0 > |w_vec|.
fn hyperboloid_minimizer(w: &[f64; 4]) -> Option<[f64; 4]> {
    hyperboloid_minimizer_with_value(w).map(|(x, _)| x)
}

fn hyperboloid_minimizer_with_value(w: &[f64; 4]) -> Option<([f64; 4], f64)> {
    let wv = (w[1] * w[1] + w[2] * w[2] + w[3] * w[3]).sqrt();
    if w[0] <= wv {
        return None;
    }
    let s = ((w[0] - wv) * (w[0] + wv)).sqrt();
    Some(([w[0] / s, -w[1] / s, -w[2] / s, -w[3] / s], s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::concurrence_x_state;
    use crate::linalg::ONE;
    use crate::qstate::correlation_from_density;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn phi_plus() -> DensityMatrix {
        DensityMatrix::from_pure(&[C64::new(SQRT_HALF, 0.0), ZERO, ZERO, C64::new(SQRT_HALF, 0.0)])
            .unwrap()
    }

    #[test]
    fn identity_filter_is_a_no_op() {
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let rho = x.to_density();
        let out = apply_filter(&rho, &LocalFilter::identity()).unwrap();
        assert!(out.matrix().sub(rho.matrix()).max_abs() < 1e-14);
        let c = filtered_concurrence(&rho, &LocalFilter::identity()).unwrap();
        assert!((c - 0.35).abs() < 1e-10);
    }

    #[test]
    fn diagonal_filter_on_phi_plus() {
        // A = diag(1, 1/2) maps |Phi+> to a state of concurrence 4/5, and the
        // transformation law gives 1 * 0.5 / 0.625 = 0.8 directly.
        let f = LocalFilter::new(Mat2::diag(ONE, C64::new(0.5, 0.0)), Mat2::identity()).unwrap();
        let rho = phi_plus();
        let out = apply_filter(&rho, &f).unwrap();
        assert!((concurrence(&out) - 0.8).abs() < 1e-12);
        assert!((filtered_concurrence(&rho, &f).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn singular_filter_is_rejected() {
        let a = Mat2::diag(ONE, ZERO);
        assert!(matches!(
            LocalFilter::new(a, Mat2::identity()),
            Err(Error::SingularFilter { .. })
        ));
        let f = LocalFilter { a, b: Mat2::identity() };
        assert!(matches!(apply_filter(&phi_plus(), &f), Err(Error::SingularFilter { .. })));
    }

    #[test]
    fn separable_states_stay_separable() {
        let ground = DensityMatrix::from_pure(&[ZERO, ZERO, ZERO, ONE]).unwrap();
        let f = LocalFilter::new(
            Mat2([[C64::new(0.8, 0.1), C64::new(0.2, -0.3)], [ZERO, C64::new(1.1, 0.0)]]),
            Mat2::diag(C64::new(0.5, 0.5), ONE),
        )
        .unwrap();
        assert!(filtered_concurrence(&ground, &f).unwrap().abs() < 1e-12);
        assert!(concurrence(&apply_filter(&ground, &f).unwrap()) < 1e-10);
    }

    #[test]
    fn identity_filter_maps_to_identity_lorentz() {
        let l = filter_to_lorentz(&Mat2::identity()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((l.0[i][j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn diag_filter_maps_to_z_boost() {
        // A = diag(e^{eta/2}, e^{-eta/2}) -> cosh/sinh z-boost.
        let eta = 0.7f64;
        let a = Mat2::diag(
            C64::new((eta / 2.0).exp(), 0.0),
            C64::new((-eta / 2.0).exp(), 0.0),
        );
        let l = filter_to_lorentz(&a).unwrap();
        assert!((l.0[0][0] - eta.cosh()).abs() < 1e-12);
        assert!((l.0[3][3] - eta.cosh()).abs() < 1e-12);
        assert!((l.0[0][3] - eta.sinh()).abs() < 1e-12);
        assert!((l.0[3][0] - eta.sinh()).abs() < 1e-12);
        assert!((l.0[1][1] - 1.0).abs() < 1e-12 && (l.0[2][2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_filter_maps_to_rotation() {
        // Unitaries leave the time component alone.
        let th = 0.43f64;
        let u = Mat2([
            [C64::new(th.cos(), 0.0), C64::new(0.0, th.sin())],
            [C64::new(0.0, th.sin()), C64::new(th.cos(), 0.0)],
        ]);
        let l = filter_to_lorentz(&u).unwrap();
        assert!((l.0[0][0] - 1.0).abs() < 1e-12);
        for k in 1..4 {
            assert!(l.0[0][k].abs() < 1e-12 && l.0[k][0].abs() < 1e-12);
        }
    }

    #[test]
    fn boost_filter_round_trip() {
        let alpha = 0.577_350_269_189_625_8;
        let beta = (1.0f64 + alpha * alpha).sqrt();
        let f = boost_filter(alpha);
        assert!((f.a.det().norm() - 1.0).abs() < 1e-12);
        let l = filter_to_lorentz(&f.a).unwrap();
        assert!((l.0[0][0] - beta).abs() < 1e-9);
        assert!((l.0[0][3] - alpha).abs() < 1e-9);
        assert!((l.0[3][0] - alpha).abs() < 1e-9);
        assert!((l.0[3][3] - beta).abs() < 1e-9);

        // alpha = 0 is the identity.
        let f0 = boost_filter(0.0);
        assert!(f0.a.0[0][0] == ONE && f0.a.0[1][1] == ONE);
    }

    #[test]
    fn boost_to_filter_rejects_singular() {
        assert!(matches!(
            boost_to_filter(&OptimalBoost::singular()),
            Err(Error::SingularBoost)
        ));
    }

    #[test]
    fn optimal_boost_closed_form() {
        // d = 0 forces alpha = 0.
        let x = XStateParams::new(0.3, -0.2, 0.4, 0.0).unwrap();
        let ob = optimal_boost(&x).unwrap();
        assert_eq!(ob.alpha, 0.0);
        assert!(!ob.singular);

        // Worked example: alpha = +1/sqrt(3).
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let ob = optimal_boost(&x).unwrap();
        assert!((ob.alpha - 1.0 / 3.0f64.sqrt()).abs() < 1e-12);
        // The defining relation: alpha (1+c) beta + d (1 + 2 alpha^2) = 0.
        let res = ob.alpha * (1.0 + x.c) * ob.beta + x.d * (1.0 + 2.0 * ob.alpha * ob.alpha);
        assert!(res.abs() < 1e-9);

        // Singular locus: 1 + c = -2d exactly.
        let e = 0.2f64;
        let x = XStateParams::new(e, e, 1.0 - 2.0 * e, e - 1.0).unwrap();
        assert!(optimal_boost(&x).unwrap().singular);
    }

    #[test]
    fn optimal_bell_state_values() {
        // Bell-diagonal input is a fixed point.
        let x = XStateParams::new(0.3, -0.2, 0.4, 0.0).unwrap();
        let bell = optimal_bell_state(&x).unwrap();
        assert!((bell.c1 - 0.3).abs() < 1e-14);
        assert!((bell.c2 + 0.2).abs() < 1e-14);
        assert!((bell.c3 - 0.4).abs() < 1e-14);

        // Worked example: (5/9, 5/9, -2/3) with denominator 0.9.
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let bell = optimal_bell_state(&x).unwrap();
        assert!((bell.c1 - 5.0 / 9.0).abs() < 1e-12);
        assert!((bell.c2 - 5.0 / 9.0).abs() < 1e-12);
        assert!((bell.c3 + 2.0 / 3.0).abs() < 1e-12);

        // Singular family: the limit is the initial Bell state (1, 1, -1).
        let e = 0.05f64;
        let x = XStateParams::new(e, e, 1.0 - 2.0 * e, e - 1.0).unwrap();
        let r = mee_report(&x).unwrap();
        assert!(r.singular && r.converged);
        assert!((r.bell.c1 - 1.0).abs() < 1e-6);
        assert!((r.bell.c2 - 1.0).abs() < 1e-6);
        assert!((r.bell.c3 + 1.0).abs() < 1e-6);
    }

    #[test]
    fn mee_values() {
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let mee = max_extractable_entanglement(&x).unwrap();
        assert!((mee - 0.35 / 0.9).abs() < 1e-12);
        // Route agreement with the explicit filter.
        let ob = optimal_boost(&x).unwrap();
        let f = boost_to_filter(&ob).unwrap();
        let via_filter = filtered_concurrence(&x.to_density(), &f).unwrap();
        assert!((mee - via_filter).abs() < 1e-8);

        // Bell-diagonal input: MEE is its own concurrence. This includes the
        // paper's initial state (1,1,-1) where 1 + c = 0.
        let x = XStateParams::new(1.0, 1.0, -1.0, 0.0).unwrap();
        let r = mee_report(&x).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(!r.singular && r.alpha == Some(0.0));

        // Separable input stays separable.
        let x = XStateParams::new(0.1, 0.1, 0.1, 0.05).unwrap();
        assert!(concurrence_x_state(&x) == 0.0);
        assert!(max_extractable_entanglement(&x).unwrap() < 1e-12);
    }

    #[test]
    fn partial_extraction_examples() {
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        // alpha = 0 is the identity filter.
        let at0 = partial_extraction(&x, 0.0).unwrap();
        assert!((at0 - concurrence_x_state(&x)).abs() < 1e-10);

        // Beyond the hard cap.
        assert!(matches!(
            partial_extraction(&x, 2e6),
            Err(Error::BoostCapExceeded { .. })
        ));

        // Singular-family state at gamma t = 3, boosted with alpha = 9.
        let e = (-3.0f64).exp();
        let x = XStateParams::new(e, e, 1.0 - 2.0 * e, e - 1.0).unwrap();
        let got = partial_extraction(&x, 9.0).unwrap();
        assert!((got - 0.944_692_823_8).abs() < 1e-6);
        assert!(got >= 0.9);
    }

    #[test]
    fn extraction_approaches_one_on_singular_family() {
        let e = (-3.0f64).exp();
        let x = XStateParams::new(e, e, 1.0 - 2.0 * e, e - 1.0).unwrap();
        let mut prev = -1.0;
        for alpha in [0.0, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0, ALPHA_CAP] {
            let c = partial_extraction(&x, alpha).unwrap();
            assert!(c >= prev - 1e-12, "extraction decreased at alpha = {alpha}");
            prev = c;
        }
        assert!(prev > 1.0 - 1e-6);
    }

    #[test]
    fn oracle_on_bell_diagonal_tensor() {
        let x = XStateParams::new(0.3, -0.2, 0.4, 0.0).unwrap();
        let (pair, f) = minimize_correlation_form(&x.to_correlation(), 7, 8).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        assert!((pair.m[0] - 1.0).abs() < 1e-9);
        for k in 1..4 {
            assert!(pair.m[k].abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let ob = optimal_boost(&x).unwrap();
        let (pair, f) = minimize_correlation_form(&x.to_correlation(), 11, 8).unwrap();
        assert!((pair.m[0] - ob.beta).abs() < 1e-6);
        assert!((pair.m[3] - ob.alpha).abs() < 1e-6);
        assert!((pair.n[3] - ob.alpha).abs() < 1e-6);
        // F at the optimum equals the normalization denominator 0.9.
        assert!((f - 0.9).abs() < 1e-9);
    }

    #[test]
    fn lorentz_action_matches_filter_route() {
        let x = XStateParams::new(0.5, 0.5, -0.5, -0.2).unwrap();
        let ob = optimal_boost(&x).unwrap();
        let f = boost_to_filter(&ob).unwrap();
        let la = filter_to_lorentz(&f.a).unwrap();
        let via_lorentz = lorentz_action(&x.to_correlation(), &la, &la).unwrap();
        let via_filter =
            correlation_from_density(&apply_filter(&x.to_density(), &f).unwrap());
        for mu in 0..4 {
            for nu in 0..4 {
                assert!((via_lorentz.0[mu][nu] - via_filter.0[mu][nu]).abs() < 1e-10);
            }
        }
    }
}
