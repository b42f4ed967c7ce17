//! Fixed-step time integration of the master equations, per-sample
//! observable recording, and event detection (sudden death, revivals).

use crate::baths::{dfs_states, lindblad_rhs_matrix, x_rhs, BathModel};
use crate::entanglement::{concurrence, concurrence_x_state, BellDiagonalState};
use crate::error::{Error, Result};
use crate::filtering::mee_report;
use crate::linalg::Mat4;
use crate::qstate::{
    extract_x_params, fidelity_pure, purity, von_neumann_entropy, DensityMatrix, XStateParams,
    TOL_PHYSICALITY,
};

/// Concurrence below this value counts as dead.
pub const EPS_DEATH: f64 = 1e-6;
/// A rise of the extractable entanglement above this counts as a revival.
pub const EPS_REVIVAL: f64 = 1e-4;
/// Stability guard: dt * gamma (1 + 2n) must not exceed this.
pub const MAX_STEP_RATE: f64 = 0.1;
/// Default number of recorded samples per trajectory.
pub const TARGET_SAMPLES: usize = 2000;

/// Observables recorded at one instant of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    /// Time in units of 1/gamma.
    pub t: f64,
    pub x: XStateParams,
    pub concurrence: f64,
    /// Maximum extractable entanglement.
    pub mee: f64,
    /// The optimal boost at this sample was an infinite-boost limit.
    pub mee_singular: bool,
    /// Capped-boost doubling check passed (always true when not singular).
    pub mee_converged: bool,
    pub entropy: f64,
    pub purity: f64,
    /// Bell-diagonal normal form reached by the optimal filter.
    pub bell: BellDiagonalState,
    /// Optimal boost parameter; absent in the singular case.
    pub alpha: Option<f64>,
    /// Overlap with the squeezed-bath attractor; squeezed model only.
    pub fidelity_phi1: Option<f64>,
}

/// Time-ordered observable record of one integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub model: BathModel,
    pub samples: Vec<SamplePoint>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn concurrences(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.concurrence).collect()
    }

    pub fn mees(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.mee).collect()
    }
}

/// Interval over which the extractable entanglement rose after a minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalWindow {
    pub t_start: f64,
    pub t_end: f64,
    pub delta_mee: f64,
}

/// Detected qualitative events of a trajectory.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EventReport {
    /// First instant concurrence reaches zero and stays there.
    pub sudden_death_time: Option<f64>,
    pub revival_windows: Vec<RevivalWindow>,
}

/// Classic fixed-step fourth-order integration of the reduced X-family
/// system. No renormalization is applied; physicality drift beyond 1e-8
/// aborts with [`Error::PhysicalityLost`].
pub fn integrate(
    model: &BathModel,
    x0: &XStateParams,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_with_stride(model, x0, t_end, dt, None)
}

/// As [`integrate`], recording every `stride`-th step (default sized for
/// about [`TARGET_SAMPLES`] samples).
pub fn integrate_with_stride(
    model: &BathModel,
    x0: &XStateParams,
    t_end: f64,
    dt: f64,
    stride: Option<usize>,
) -> Result<Trajectory> {
    let plan = plan_steps(model, t_end, dt, stride)?;
    // Reject a squeezed bath the reduced system cannot represent up front.
    x_rhs(model, x0)?;

    let mut samples = Vec::with_capacity(plan.expected_samples());
    let mut y = [x0.a, x0.b, x0.c, x0.d];
    samples.push(record(model, 0.0, &y)?);
    for step in 1..=plan.n_steps {
        y = rk4_step(&y, plan.dt, |v| {
            x_rhs(model, &XStateParams::new_unchecked(v[0], v[1], v[2], v[3]))
                .expect("closure validated before integration")
        });
        if step % plan.stride == 0 || step == plan.n_steps {
            samples.push(record(model, step as f64 * plan.dt, &y)?);
        }
    }
    Ok(Trajectory { model: *model, samples })
}

/// Fixed-step integration of the full 4x4 master equation; the
/// 16-dimensional oracle for the reduced path. States are recorded through
/// X-form extraction, so it requires an X-closed evolution.
pub fn integrate_full(
    model: &BathModel,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_full_with_stride(model, rho0, t_end, dt, None)
}

pub fn integrate_full_with_stride(
    model: &BathModel,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
    stride: Option<usize>,
) -> Result<Trajectory> {
    let plan = plan_steps(model, t_end, dt, stride)?;
    let mut samples = Vec::with_capacity(plan.expected_samples());
    let mut rho = *rho0.matrix();
    samples.push(record_full(model, 0.0, &rho)?);
    for step in 1..=plan.n_steps {
        rho = rk4_step_matrix(&rho, plan.dt, |m| lindblad_rhs_matrix(model, m));
        if step % plan.stride == 0 || step == plan.n_steps {
            samples.push(record_full(model, step as f64 * plan.dt, &rho)?);
        }
    }
    Ok(Trajectory { model: *model, samples })
}

struct StepPlan {
    n_steps: usize,
    dt: f64,
    stride: usize,
}

impl StepPlan {
    fn expected_samples(&self) -> usize {
        self.n_steps / self.stride + 2
    }
}

fn plan_steps(model: &BathModel, t_end: f64, dt: f64, stride: Option<usize>) -> Result<StepPlan> {
    if t_end < 0.0 {
        return Err(Error::NegativeTime { t: t_end });
    }
    if t_end == 0.0 {
        return Ok(StepPlan { n_steps: 0, dt: 0.0, stride: 1 });
    }
    let rate = model.rate_scale();
    if !(dt > 0.0) || dt > t_end || dt * rate > MAX_STEP_RATE {
        return Err(Error::StepTooLarge { dt, rate });
    }
    let n_steps = (t_end / dt).ceil().max(1.0) as usize;
    let adjusted = t_end / n_steps as f64;
    let stride = stride.unwrap_or_else(|| (n_steps / TARGET_SAMPLES).max(1));
    Ok(StepPlan { n_steps, dt: adjusted, stride: stride.max(1) })
}

fn rk4_step(y: &[f64; 4], dt: f64, rhs: impl Fn(&[f64; 4]) -> [f64; 4]) -> [f64; 4] {
    let k1 = rhs(y);
    let k2 = rhs(&advance(y, &k1, dt / 2.0));
    let k3 = rhs(&advance(y, &k2, dt / 2.0));
    let k4 = rhs(&advance(y, &k3, dt));
    let mut out = *y;
    for i in 0..4 {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn advance(y: &[f64; 4], k: &[f64; 4], h: f64) -> [f64; 4] {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]]
}

fn rk4_step_matrix(rho: &Mat4, dt: f64, rhs: impl Fn(&Mat4) -> Mat4) -> Mat4 {
    let k1 = rhs(rho);
    let k2 = rhs(&rho.add(&k1.scale_re(dt / 2.0)));
    let k3 = rhs(&rho.add(&k2.scale_re(dt / 2.0)));
    let k4 = rhs(&rho.add(&k3.scale_re(dt)));
    rho.add(
        &k1.add(&k2.scale_re(2.0))
            .add(&k3.scale_re(2.0))
            .add(&k4)
            .scale_re(dt / 6.0),
    )
}

fn record(model: &BathModel, t: f64, y: &[f64; 4]) -> Result<SamplePoint> {
    let x = XStateParams::new_unchecked(y[0], y[1], y[2], y[3]);
    let defect = x.physicality_defect();
    if defect > TOL_PHYSICALITY {
        return Err(Error::PhysicalityLost { t, defect });
    }
    let rho = x.to_density();
    let mee = mee_report(&x)?;
    let fidelity_phi1 = match model {
        BathModel::CommonSqueezed { n, psi, .. } => {
            Some(fidelity_pure(&rho, &dfs_states(*n, *psi)?.phi1)?)
        }
        _ => None,
    };
    Ok(SamplePoint {
        t,
        x,
        concurrence: concurrence_x_state(&x),
        mee: mee.value,
        mee_singular: mee.singular,
        mee_converged: mee.converged,
        entropy: von_neumann_entropy(&rho),
        purity: purity(&rho),
        bell: mee.bell,
        alpha: mee.alpha,
        fidelity_phi1,
    })
}

fn record_full(model: &BathModel, t: f64, rho: &Mat4) -> Result<SamplePoint> {
    let trace_defect = (rho.trace().re - 1.0).abs();
    let herm_defect = rho.hermiticity_defect();
    let defect = trace_defect.max(herm_defect);
    if defect > 1e-10 {
        return Err(Error::PhysicalityLost { t, defect });
    }
    let state = DensityMatrix::new_unchecked(rho.add(&rho.adjoint()).scale_re(0.5));
    let x = extract_x_params(&state)?;
    let mut point = record(model, t, &[x.a, x.b, x.c, x.d])?;
    // Concurrence and mixing functionals from the full matrix, not the
    // extracted parameters, so the comparison against `integrate` is honest.
    point.concurrence = concurrence(&state);
    point.entropy = von_neumann_entropy(&state);
    point.purity = purity(&state);
    Ok(point)
}

/// Sudden-death detection and extractable-entanglement revival windows.
pub fn detect_events(traj: &Trajectory) -> EventReport {
    let times = traj.times();
    EventReport {
        sudden_death_time: first_permanent_zero(&times, &traj.concurrences(), EPS_DEATH),
        revival_windows: rising_windows(&times, &traj.mees(), EPS_REVIVAL),
    }
}

/// First time the series drops to `eps` or below and never rises above it
/// again, linearly interpolated between the bracketing samples.
pub fn first_permanent_zero(times: &[f64], values: &[f64], eps: f64) -> Option<f64> {
    let last_alive = values.iter().rposition(|&v| v > eps);
    let first_dead = match last_alive {
        None => return Some(times[0]),
        Some(i) if i + 1 == values.len() => return None,
        Some(i) => i + 1,
    };
    let (t0, v0) = (times[first_dead - 1], values[first_dead - 1]);
    let (t1, v1) = (times[first_dead], values[first_dead]);
    if v0 > v1 {
        Some(t0 + (v0 - eps) / (v0 - v1) * (t1 - t0))
    } else {
        Some(t1)
    }
}

/// Maximal windows in which the series climbs by more than `eps` after a
/// local minimum. Plateaus (exactly repeated values) are treated as single
/// points so a rise out of a flat stretch is still a revival.
pub fn rising_windows(times: &[f64], values: &[f64], eps: f64) -> Vec<RevivalWindow> {
    // Compress plateaus: (first index, last index, value).
    let mut segments: Vec<(usize, usize, f64)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match segments.last_mut() {
            Some(seg) if seg.2 == v => seg.1 = i,
            _ => segments.push((i, i, v)),
        }
    }
    let mut windows = Vec::new();
    let mut i = 1;
    while i + 1 < segments.len() {
        let is_valley = segments[i].2 < segments[i - 1].2 && segments[i].2 < segments[i + 1].2;
        if !is_valley {
            i += 1;
            continue;
        }
        // Climb to the next local maximum.
        let mut j = i;
        while j + 1 < segments.len() && segments[j + 1].2 > segments[j].2 {
            j += 1;
        }
        let delta = segments[j].2 - segments[i].2;
        if delta > eps {
            windows.push(RevivalWindow {
                t_start: times[segments[i].1],
                t_end: times[segments[j].0],
                delta_mee: delta,
            });
        }
        i = j + 1;
    }
    windows
}
