//! Independent numeric oracles for the integration tests. Nothing here may
//! call into the implementation paths being checked: eigenvalues come from
//! characteristic-polynomial roots, not from the crate's Jacobi solver.

use entx::linalg::{kron, Mat4, C64};
use entx::qstate::{pauli, DensityMatrix};

/// Coefficients (c1, c2, c3, c4) of det(zI - M) = z^4 + c1 z^3 + c2 z^2 +
/// c3 z + c4, by the Faddeev-LeVerrier recursion.
pub fn char_poly4(m: &Mat4) -> [C64; 4] {
    let mut coeffs = [C64::new(0.0, 0.0); 4];
    let mut mk = *m;
    for k in 1..=4 {
        let ck = -mk.trace() / C64::new(k as f64, 0.0);
        coeffs[k - 1] = ck;
        if k < 4 {
            let mut shifted = mk;
            for i in 0..4 {
                shifted.0[i][i] += ck;
            }
            mk = m.mul(&shifted);
        }
    }
    coeffs
}

/// All four roots of z^4 + c1 z^3 + c2 z^2 + c3 z + c4 by Durand-Kerner,
/// with multiplicity-aware polishing of root clusters.
pub fn quartic_roots(coeffs: &[C64; 4]) -> [C64; 4] {
    let p = |z: C64| {
        (((z + coeffs[0]) * z + coeffs[1]) * z + coeffs[2]) * z + coeffs[3]
    };
    let dp = |z: C64| {
        ((z.scale(4.0) + coeffs[0].scale(3.0)) * z + coeffs[1].scale(2.0)) * z + coeffs[2]
    };
    let seed = C64::new(0.4, 0.9);
    let mut roots = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for k in 0..4 {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..4 {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            let delta = p(roots[k]) / denom;
            roots[k] -= delta;
            worst = worst.max(delta.norm());
        }
        if worst < 1e-14 {
            break;
        }
    }

    // Durand-Kerner stalls at eps^(1/m) accuracy on multiplicity-m roots.
    // Collapse clusters and re-converge them with modified Newton
    // (z <- z - m p/p'), which is quadratic at an m-fold root; keep the raw
    // members when the polish does not actually improve the residual
    // (a near-but-distinct pair, not a true multiple root).
    let scale = roots.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let mut assigned = [false; 4];
    for k in 0..4 {
        if assigned[k] {
            continue;
        }
        let mut cluster = vec![k];
        for j in (k + 1)..4 {
            if !assigned[j] && (roots[j] - roots[k]).norm() <= 3e-5 * scale {
                cluster.push(j);
            }
        }
        let m = cluster.len();
        if m < 2 {
            continue;
        }
        let z0 = cluster.iter().map(|&i| roots[i]).sum::<C64>().scale(1.0 / m as f64);
        let before = p(z0).norm();
        // An m-fold root of p is a simple root of the (m-1)-th derivative,
        // which is well conditioned there: quadratic for m = 3, Newton on
        // p' for m = 2, linear for m = 4.
        let z = match m {
            2 => {
                let mut z = z0;
                for _ in 0..40 {
                    let d2 = (z.scale(12.0) + coeffs[0].scale(6.0)) * z + coeffs[1].scale(2.0);
                    if d2.norm() == 0.0 {
                        break;
                    }
                    let step = dp(z) / d2;
                    z -= step;
                    if step.norm() <= 1e-16 * scale {
                        break;
                    }
                }
                z
            }
            3 => {
                // p''(z) = 12 z^2 + 6 c1 z + 2 c2 = 0, root nearest the cluster.
                let disc = (coeffs[0] * coeffs[0].scale(9.0) - coeffs[1].scale(24.0)).sqrt();
                let r1 = (-coeffs[0].scale(3.0) + disc).scale(1.0 / 12.0);
                let r2 = (-coeffs[0].scale(3.0) - disc).scale(1.0 / 12.0);
                if (r1 - z0).norm() < (r2 - z0).norm() { r1 } else { r2 }
            }
            _ => -coeffs[0].scale(0.25),
        };
        // Accept only if the residual reaches either the relative-improvement
        // bar or the evaluation noise floor of p at z; a near-but-distinct
        // pair fails both and keeps its raw members.
        let zn = z.norm();
        let noise = 64.0
            * f64::EPSILON
            * (zn.powi(4)
                + coeffs[0].norm() * zn.powi(3)
                + coeffs[1].norm() * zn * zn
                + coeffs[2].norm() * zn
                + coeffs[3].norm());
        if p(z).norm() <= (1e-4 * before).max(noise) {
            for &i in &cluster {
                roots[i] = z;
                assigned[i] = true;
            }
        }
    }
    roots
}

/// Eigenvalues of an arbitrary complex 4x4 matrix via its characteristic
/// polynomial.
pub fn eigenvalues_bruteforce(m: &Mat4) -> [C64; 4] {
    quartic_roots(&char_poly4(m))
}

/// Concurrence from the non-Hermitian R = rho (sy x sy) rho* (sy x sy),
/// with R's eigenvalues taken from the characteristic polynomial.
pub fn concurrence_bruteforce(rho: &DensityMatrix) -> f64 {
    let yy = kron(&pauli(2), &pauli(2));
    let r = rho.matrix().mul(&yy).mul(&rho.matrix().conj()).mul(&yy);
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for root in eigenvalues_bruteforce(&r) {
        // R has non-negative real spectrum for valid states; the imaginary
        // parts and negative dips are root-finder / rounding noise.
        let s = root.re.max(0.0).sqrt();
        sum += s;
        max = max.max(s);
    }
    (2.0 * max - sum).max(0.0)
}
