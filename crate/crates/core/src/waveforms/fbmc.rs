//! FBMC-OQAM synthesis with the Hermite prototype.

use super::FrameGeometry;
use crate::linalg::cis;
use crate::{CMatrix, Complex64, Error, Result};
use std::f64::consts::PI;

/// Nonzero Hermite expansion coefficients `(i, a_i)` of the prototype.
pub const HERMITE_COEFFS: [(usize, f64); 6] = [
    (0, 1.412692577),
    (4, -3.0145e-3),
    (8, -8.8041e-6),
    (12, -2.2611e-9),
    (16, -4.4570e-15),
    (20, 1.8633e-16),
];

fn hermite_all(x: f64, up_to: usize) -> Vec<f64> {
    let mut h = vec![0.0; up_to + 1];
    h[0] = 1.0;
    if up_to >= 1 {
        h[1] = 2.0 * x;
    }
    for n in 1..up_to {
        h[n + 1] = 2.0 * x * h[n] - 2.0 * n as f64 * h[n - 1];
    }
    h
}

/// Hermite prototype `p(t)` for symbol duration `t0`.
pub fn fbmc_prototype(t: f64, t0: f64) -> f64 {
    let x = 2.0 * PI.sqrt() * t / t0;
    let h = hermite_all(x, 20);
    let sum: f64 = HERMITE_COEFFS.iter().map(|&(i, a)| a * h[i]).sum();
    (-2.0 * PI * (t / t0).powi(2)).exp() * sum / t0.sqrt()
}

/// Sampled synthesis matrix.
#[derive(Debug, Clone)]
pub struct FbmcSynthesis {
    /// Column `l + kM` holds `√Δt · g_{l,k}` on the sample grid.
    pub g: CMatrix,
    pub sample_count: usize,
}

/// Builds `G` for `M` subcarriers and `N` real symbols per subcarrier.
///
/// Symbols are spaced `T = T0/2` in time and `F = 1/T0` in frequency and the
/// samples sit at `t_i = iΔt - O·T0/2` with `Δt = T0/M`. Each shifted
/// prototype is truncated to its `O·T0` support.
pub fn fbmc_synthesis(geometry: &FrameGeometry, overlap: usize) -> Result<FbmcSynthesis> {
    if overlap < 4 {
        return Err(Error::Config(format!("FBMC overlap factor must be at least 4, got {overlap}")));
    }
    let m = geometry.m;
    let n = geometry.n;
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidSize(format!(
            "FBMC needs an even number of subcarriers, got {m}"
        )));
    }
    // Work in units of T0; the √Δt factor keeps columns at unit energy.
    let t0 = 1.0;
    let dt = t0 / m as f64;
    let half_symbol = m / 2;
    let support = overlap * m;
    let sample_count = (n - 1) * half_symbol + support + 1;
    let proto: Vec<f64> = (0..=support)
        .map(|i| fbmc_prototype(i as f64 * dt - overlap as f64 * t0 / 2.0, t0))
        .collect();
    let mut g = CMatrix::zeros(sample_count, m * n);
    let scale = dt.sqrt();
    for k in 0..n {
        let offset = k * half_symbol;
        for l in 0..m {
            let phase = cis(PI * (l + k) as f64 / 2.0);
            let col = l + k * m;
            for (j, &p) in proto.iter().enumerate() {
                // t - kT measured from the start of the prototype support.
                let tau = j as f64 * dt - overlap as f64 * t0 / 2.0;
                let carrier = cis(2.0 * PI * l as f64 * tau / t0);
                g[(offset + j, col)] = carrier * phase * Complex64::new(p * scale, 0.0);
            }
        }
    }
    Ok(FbmcSynthesis { g, sample_count })
}
