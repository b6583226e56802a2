//! Delay-Doppler orthogonal pulse (DDOP) used by ODDM.
//!
//! The discrete ODDM bundle uses ideal Nyquist sampling, so its matrices are
//! unitary. The pulse defined here renders the band-limited transmit signal.
//! Time is measured in units of the slot duration `T`.

use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

/// Samples per delay bin `T/M` in the rendered pulse.
pub const DDOP_OVERSAMPLE: usize = 8;

/// Sampled DDOP `ǧ(t) = Σ_k a(t - kT)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DdopPulse {
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub rolloff: f64,
    /// Sample spacing in units of `T`.
    pub dt: f64,
    /// Unit-energy root-raised-cosine `a(t)` on `[-QT/M, QT/M]`.
    pub sub_pulse: Vec<f64>,
    /// Unit-energy `ǧ(t)` on `[-QT/M, (N-1)T + QT/M]`.
    pub samples: Vec<f64>,
}

/// Root-raised-cosine impulse response at `u` symbol periods.
fn rrc(u: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        return if u == 0.0 { 1.0 } else { (PI * u).sin() / (PI * u) };
    }
    if u == 0.0 {
        return 1.0 - beta + 4.0 * beta / PI;
    }
    let edge = 1.0 / (4.0 * beta);
    if (u.abs() - edge).abs() < 1e-12 {
        let a = PI / (4.0 * beta);
        return beta / 2f64.sqrt() * ((1.0 + 2.0 / PI) * a.sin() + (1.0 - 2.0 / PI) * a.cos());
    }
    let num = (PI * u * (1.0 - beta)).sin() + 4.0 * beta * u * (PI * u * (1.0 + beta)).cos();
    let den = PI * u * (1.0 - (4.0 * beta * u).powi(2));
    num / den
}

fn normalize(v: &mut [f64], dt: f64) {
    let e: f64 = v.iter().map(|x| x * x).sum::<f64>() * dt;
    if e > 0.0 {
        let s = 1.0 / e.sqrt();
        v.iter_mut().for_each(|x| *x *= s);
    }
}

/// Builds the DDOP for an `M × N` grid with half-support `Q` delay bins.
pub fn ddop_pulse(m: usize, n: usize, q: usize, rolloff: f64) -> Result<DdopPulse> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSize("DDOP grid must be non-empty".into()));
    }
    if 2 * q >= m {
        return Err(Error::Config(format!("DDOP needs 2Q < M, got Q = {q} and M = {m}")));
    }
    if !(0.0..=1.0).contains(&rolloff) {
        return Err(Error::Config(format!("rolloff must lie in [0, 1], got {rolloff}")));
    }
    let os = DDOP_OVERSAMPLE;
    let dt = 1.0 / (m * os) as f64;
    let half = q * os;
    let mut sub_pulse: Vec<f64> = (0..=2 * half)
        .map(|j| rrc((j as f64 - half as f64) / os as f64, rolloff))
        .collect();
    normalize(&mut sub_pulse, dt);

    let slot = m * os;
    let len = (n - 1) * slot + 2 * half + 1;
    let mut samples = vec![0.0; len];
    for k in 0..n {
        for (j, &a) in sub_pulse.iter().enumerate() {
            samples[k * slot + j] += a;
        }
    }
    normalize(&mut samples, dt);
    Ok(DdopPulse {
        m,
        n,
        q,
        rolloff,
        dt,
        sub_pulse,
        samples,
    })
}

impl DdopPulse {
    /// Time of the first sample, in units of `T`.
    pub fn start_time(&self) -> f64 {
        -(self.q as f64) / self.m as f64
    }

    /// Inner product `⟨ǧ(t), ǧ(t - mT/M)⟩` for an integer delay-bin shift.
    pub fn delayed_inner_product(&self, shift: isize) -> f64 {
        let s = shift * DDOP_OVERSAMPLE as isize;
        let len = self.samples.len() as isize;
        let mut acc = 0.0;
        for j in 0..len {
            let k = j - s;
            if (0..len).contains(&k) {
                acc += self.samples[j as usize] * self.samples[k as usize];
            }
        }
        acc * self.dt
    }

    /// Band-limited rendering `Σ_i s[i] a(t - iT/M)` of ideal-pulse core samples.
    ///
    /// Edge pulses are truncated rather than wrapped, so the output spans
    /// `[-QT/M, (len - 1)T/M + QT/M]` at `DDOP_OVERSAMPLE` samples per delay bin.
    pub fn render(&self, core: &[Complex64]) -> Vec<Complex64> {
        if core.is_empty() {
            return Vec::new();
        }
        let os = DDOP_OVERSAMPLE;
        let amp = self.dt.sqrt();
        let len = (core.len() - 1) * os + self.sub_pulse.len();
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, &v) in core.iter().enumerate() {
            for (j, &a) in self.sub_pulse.iter().enumerate() {
                out[i * os + j] += v * (a * amp);
            }
        }
        out
    }
}
