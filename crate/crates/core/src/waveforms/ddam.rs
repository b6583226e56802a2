//! Delay-Doppler alignment modulation for a single-stream MISO link.
//!
//! Each path `i` gets its own beamformer `F_i`, a delay pre-compensation
//! `κ_i = l_max - l_i` and a Doppler pre-rotation `e^{-j2πν_i n T_s}`. With
//! zero-forcing beamformers every path lands on the common delay `l_max`
//! with no inter-path leakage, so the receiver sees a single flat tap.

use crate::channel::ChannelRealization;
use crate::linalg::cis;
use crate::{CMatrix, CVector, Complex64, Error, Result};
use std::f64::consts::PI;

/// Per-path beamformer design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beamformer {
    /// Maximal-ratio transmission, `F_i ∝ h_i`.
    Mrt,
    /// Zero forcing: `h_i` projected onto the null space of the other paths.
    Zf,
}

/// Antenna array, beamformer and per-path steering vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DdamConfig {
    /// Number of transmit antennas `M_t`.
    pub mt: usize,
    pub beamformer: Beamformer,
    /// Steering vector of each path; the effective path channel is the tap
    /// gain times this vector.
    pub steering: Vec<CVector>,
}

/// Precoded multi-antenna frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DdamFrame {
    /// `M_t × len` transmit samples.
    pub samples: CMatrix,
    /// Per-path delay compensation `κ_i`.
    pub kappa: Vec<usize>,
    /// Common arrival delay `l_max`.
    pub common_delay: usize,
    /// Composite gain `Σ_i h_i^H F_i` after Doppler alignment.
    pub gain: Complex64,
    /// Beamformers `F_i` including the folded alignment phase.
    pub precoders: Vec<CVector>,
    /// Number of data symbols.
    pub symbol_count: usize,
}

fn path_vectors(cfg: &DdamConfig, real: &ChannelRealization) -> Result<Vec<CVector>> {
    if cfg.steering.len() != real.taps.len() {
        return Err(Error::Config(format!(
            "{} steering vectors for {} channel paths",
            cfg.steering.len(),
            real.taps.len()
        )));
    }
    cfg.steering
        .iter()
        .zip(&real.taps)
        .map(|(h, tap)| {
            if h.len() != cfg.mt {
                return Err(Error::Shape(format!(
                    "steering vector of length {} for {} antennas",
                    h.len(),
                    cfg.mt
                )));
            }
            Ok(h * tap.gain)
        })
        .collect()
}

/// Projects `v` onto the orthogonal complement of the columns of `others`.
fn null_space_projection(v: &CVector, others: &CMatrix) -> Result<CVector> {
    if others.ncols() == 0 {
        return Ok(v.clone());
    }
    let qr = others.clone().qr();
    let r = qr.r();
    let scale = others.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    if (0..r.nrows().min(r.ncols())).any(|i| r[(i, i)].norm() <= 1e-12 * scale) {
        return Err(Error::Beamformer("path steering vectors are rank deficient".into()));
    }
    let q = qr.q();
    let mut p = v - &q * (q.adjoint() * v);
    // A second pass removes the rounding residue of the first.
    p -= &q * (q.adjoint() * &p);
    Ok(p)
}

/// Builds the per-antenna transmit samples `s[n] = Σ_i F_i x[n - κ_i] e^{-j2πν_i n T_s}`.
pub fn ddam_precode(x: &[Complex64], cfg: &DdamConfig, real: &ChannelRealization) -> Result<DdamFrame> {
    let p = real.taps.len();
    if p == 0 {
        return Err(Error::Config("DDAM needs at least one path".into()));
    }
    let vecs = path_vectors(cfg, real)?;
    if cfg.beamformer == Beamformer::Zf && cfg.mt < p {
        return Err(Error::Beamformer(format!(
            "zero forcing needs at least as many antennas as paths ({} < {p})",
            cfg.mt
        )));
    }
    let ts = 1.0 / real.sample_rate;
    let l_max = real.max_delay();
    let kappa: Vec<usize> = real.taps.iter().map(|t| l_max - t.delay).collect();
    let kappa_max = kappa.iter().copied().max().unwrap_or(0);

    let mut precoders = Vec::with_capacity(p);
    let mut gain = Complex64::new(0.0, 0.0);
    for i in 0..p {
        let dir = match cfg.beamformer {
            Beamformer::Mrt => vecs[i].clone(),
            Beamformer::Zf => {
                let cols: Vec<CVector> = (0..p).filter(|&j| j != i).map(|j| vecs[j].clone()).collect();
                let others = if cols.is_empty() {
                    CMatrix::zeros(cfg.mt, 0)
                } else {
                    CMatrix::from_columns(&cols)
                };
                null_space_projection(&vecs[i], &others)?
            }
        };
        let norm = dir.norm();
        if norm <= 1e-12 {
            return Err(Error::Beamformer(format!("path {i} has no usable beam direction")));
        }
        let unit = dir / Complex64::new(norm * (p as f64).sqrt(), 0.0);
        gain += vecs[i].dotc(&unit);
        let tap = &real.taps[i];
        let align = cis(-2.0 * PI * tap.doppler_hz * tap.delay as f64 * ts);
        precoders.push(unit * align);
    }

    let len = x.len() + kappa_max;
    let mut samples = CMatrix::zeros(cfg.mt, len);
    for (i, f) in precoders.iter().enumerate() {
        let nu = real.taps[i].doppler_hz;
        for (idx, &xv) in x.iter().enumerate() {
            let nn = idx + kappa[i];
            let v = xv * cis(-2.0 * PI * nu * nn as f64 * ts);
            for a in 0..cfg.mt {
                samples[(a, nn)] += f[a] * v;
            }
        }
    }
    Ok(DdamFrame {
        samples,
        kappa,
        common_delay: l_max,
        gain,
        precoders,
        symbol_count: x.len(),
    })
}

/// Single-antenna received signal `r[n] = Σ_i h_i^H s[n - l_i] e^{j2πν_i n T_s}`.
///
/// The output covers `symbol_count + l_max` samples so that every delayed
/// copy of the frame is captured.
pub fn ddam_channel(frame: &DdamFrame, cfg: &DdamConfig, real: &ChannelRealization) -> Result<Vec<Complex64>> {
    let vecs = path_vectors(cfg, real)?;
    let ts = 1.0 / real.sample_rate;
    let len = frame.symbol_count + frame.common_delay;
    let tx_len = frame.samples.ncols();
    // Project the transmit samples onto each path once.
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (tap, h) in real.taps.iter().zip(&vecs) {
        let proj = h.adjoint() * &frame.samples;
        for (n, o) in out.iter_mut().enumerate() {
            if n >= tap.delay && n - tap.delay < tx_len {
                *o += proj[n - tap.delay] * cis(2.0 * PI * tap.doppler_hz * n as f64 * ts);
            }
        }
    }
    Ok(out)
}

/// Aligns to the common tap and removes the composite gain.
pub fn ddam_receive(r: &[Complex64], frame: &DdamFrame) -> Vec<Complex64> {
    let d = frame.common_delay;
    (0..frame.symbol_count)
        .map(|n| {
            let v = r.get(n + d).copied().unwrap_or_default();
            if frame.gain.norm() > 0.0 {
                v / frame.gain
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{discretize, ChannelModelKind, Path, PathSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> CVector {
        CVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn realization(delays: &[usize], dopplers: &[f64], fs: f64) -> ChannelRealization {
        let paths = delays
            .iter()
            .zip(dopplers)
            .map(|(&d, &nu)| Path {
                gain: Complex64::new(1.0, 0.0),
                delay_s: d as f64 / fs,
                doppler_hz: nu,
                scale: 0.0,
            })
            .collect();
        discretize(&PathSet::new(paths, 0.0), ChannelModelKind::NarrowbandDdc, fs, fs / 64.0).unwrap()
    }

    #[test]
    fn single_path_is_rank_one_copy() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let real = realization(&[3], &[100.0], 1e4);
        let cfg = DdamConfig {
            mt: 4,
            beamformer: Beamformer::Mrt,
            steering: vec![random_vec(&mut rng, 4)],
        };
        let x: Vec<Complex64> = (0..10).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let f = ddam_precode(&x, &cfg, &real).unwrap();
        assert_eq!(f.kappa, vec![0]);
        assert_eq!(f.samples.ncols(), 10);
        assert_eq!(f.samples.rank(1e-9), 1);
    }

    #[test]
    fn zf_needs_enough_antennas() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let real = realization(&[0, 1, 2], &[0.0; 3], 1e4);
        let cfg = DdamConfig {
            mt: 2,
            beamformer: Beamformer::Zf,
            steering: (0..3).map(|_| random_vec(&mut rng, 2)).collect(),
        };
        assert!(matches!(ddam_precode(&[Complex64::new(1.0, 0.0)], &cfg, &real), Err(Error::Beamformer(_))));
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let real = realization(&[0, 2], &[10.0, -20.0], 1e4);
        let cfg = DdamConfig {
            mt: 4,
            beamformer: Beamformer::Zf,
            steering: (0..2).map(|_| random_vec(&mut rng, 4)).collect(),
        };
        let x = vec![Complex64::new(0.0, 0.0); 8];
        let f = ddam_precode(&x, &cfg, &real).unwrap();
        let r = ddam_channel(&f, &cfg, &real).unwrap();
        assert!(ddam_receive(&r, &f).iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn mrt_with_orthogonal_paths_recovers_symbols() {
        let mut e0 = CVector::zeros(4);
        e0[0] = Complex64::new(1.0, 0.0);
        let mut e1 = CVector::zeros(4);
        e1[2] = Complex64::new(0.0, 1.0);
        let real = realization(&[0, 3], &[120.0, -75.0], 1e4);
        let cfg = DdamConfig {
            mt: 4,
            beamformer: Beamformer::Mrt,
            steering: vec![e0, e1],
        };
        let x: Vec<Complex64> = (0..16).map(|i| Complex64::new((i as f64).cos(), (i as f64).sin())).collect();
        let f = ddam_precode(&x, &cfg, &real).unwrap();
        let y = ddam_receive(&ddam_channel(&f, &cfg, &real).unwrap(), &f);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() <= 1e-9);
        }
    }
}
