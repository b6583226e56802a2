use crate::channel::{discretize, ChannelModelKind, Path, PathSet};
use crate::detection::Constellation;
use crate::seed::{Seed, Stream};
use crate::waveforms::{ddam_precode, Beamformer, DdamConfig, SymbolField, WaveformBundle};
use crate::{CVector, Complex64, Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Peak-to-average power ratio in dB.
pub fn papr_db(signal: &[Complex64]) -> Result<f64> {
    if signal.is_empty() {
        return Err(Error::Shape("PAPR of an empty signal".into()));
    }
    let (peak, sum) = signal
        .iter()
        .map(|v| v.norm_sqr())
        .fold((0.0f64, 0.0f64), |(p, s), v| (p.max(v), s + v));
    if sum <= 0.0 {
        return Err(Error::Domain("PAPR of a zero-power signal".into()));
    }
    Ok(10.0 * (peak * signal.len() as f64 / sum).log10())
}

/// One point of an empirical CCDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcdfPoint {
    pub papr_db: f64,
    /// Fraction of frames whose PAPR exceeds `papr_db`.
    pub ccdf: f64,
}

/// Random symbols for one frame.
fn frame_symbols(bundle: &WaveformBundle, c: &Constellation, seed: Seed, trial: u64) -> Vec<Complex64> {
    let mut rng = seed.rng(Stream::Symbols, &[trial]);
    let pts = c.points();
    (0..bundle.symbol_count())
        .map(|_| {
            let p = pts[rng.gen_range(0..pts.len())];
            match bundle.field {
                SymbolField::Complex => p,
                SymbolField::Real => Complex64::new(p.re * 2f64.sqrt(), 0.0),
            }
        })
        .collect()
}

/// Per-frame PAPR values over the prefix-free core samples.
pub fn papr_samples(bundle: &WaveformBundle, c: &Constellation, trials: usize, seed: Seed) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    (0..trials as u64)
        .into_par_iter()
        .map(|t| papr_db(&bundle.modulate(&frame_symbols(bundle, c, seed, t))?))
        .collect()
}

/// DDAM frames used for PAPR statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DdamPaprSetup {
    /// Transmit antennas.
    pub mt: usize,
    /// Number of paths.
    pub paths: usize,
    /// Largest path delay in samples; delays are drawn uniformly in `0..=max_delay`.
    pub max_delay: usize,
    /// Data symbols per frame.
    pub symbols: usize,
    pub beamformer: Beamformer,
    pub sample_rate: f64,
    /// Jakes maximum Doppler in Hz.
    pub max_doppler_hz: f64,
}

/// Per-antenna PAPR values of DDAM frames, pooled over all antennas.
///
/// Each trial draws i.i.d. `CN(0, 1)` steering vectors, uniform integer
/// delays and Jakes Dopplers, precodes one random frame and measures every
/// antenna's PAPR over the full precoded span.
pub fn ddam_papr_samples(setup: &DdamPaprSetup, c: &Constellation, trials: usize, seed: Seed) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if setup.paths == 0 || setup.mt == 0 || setup.symbols == 0 {
        return Err(Error::Config("DDAM PAPR setup needs paths, antennas and symbols".into()));
    }
    let per_trial: Result<Vec<Vec<f64>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut steer_rng = seed.rng(Stream::Steering, &[t]);
            let steering: Vec<CVector> = (0..setup.paths)
                .map(|_| {
                    CVector::from_fn(setup.mt, |_, _| {
                        let re: f64 = steer_rng.sample(StandardNormal);
                        let im: f64 = steer_rng.sample(StandardNormal);
                        Complex64::new(re, im) / 2f64.sqrt()
                    })
                })
                .collect();
            let mut delay_rng = seed.rng(Stream::Delays, &[t]);
            let mut dop_rng = seed.rng(Stream::ChannelDoppler, &[t]);
            let paths = (0..setup.paths)
                .map(|_| {
                    let d = delay_rng.gen_range(0..=setup.max_delay);
                    let theta: f64 = dop_rng.gen_range(-PI..=PI);
                    Path {
                        gain: Complex64::new(1.0, 0.0),
                        delay_s: d as f64 / setup.sample_rate,
                        doppler_hz: setup.max_doppler_hz * theta.cos(),
                        scale: 0.0,
                    }
                })
                .collect();
            let real = discretize(
                &PathSet::new(paths, 0.0),
                ChannelModelKind::NarrowbandDdc,
                setup.sample_rate,
                setup.sample_rate / setup.symbols as f64,
            )?;
            let mut sym_rng = seed.rng(Stream::Symbols, &[t]);
            let pts = c.points();
            let x: Vec<Complex64> = (0..setup.symbols).map(|_| pts[sym_rng.gen_range(0..pts.len())]).collect();
            let cfg = DdamConfig {
                mt: setup.mt,
                beamformer: setup.beamformer,
                steering,
            };
            let frame = ddam_precode(&x, &cfg, &real)?;
            (0..setup.mt)
                .map(|a| {
                    let row: Vec<Complex64> = frame.samples.row(a).iter().copied().collect();
                    papr_db(&row)
                })
                .collect()
        })
        .collect();
    Ok(per_trial?.into_iter().flatten().collect())
}

/// Empirical survivor function evaluated at `thresholds`.
///
/// Points whose CCDF falls below `10 / values.len()` are omitted because too
/// few exceedances back them.
pub fn ccdf(values: &[f64], thresholds: &[f64]) -> Vec<CcdfPoint> {
    if values.is_empty() {
        return Vec::new();
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let floor = 10.0 / n;
    thresholds
        .iter()
        .filter_map(|&x| {
            let at_or_below = sorted.partition_point(|&v| v <= x);
            let p = (sorted.len() - at_or_below) as f64 / n;
            (p >= floor).then_some(CcdfPoint { papr_db: x, ccdf: p })
        })
        .collect()
}

/// Smallest PAPR level whose empirical CCDF is at most `p`.
pub fn papr_at_ccdf(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Shape("no PAPR samples".into()));
    }
    let n = values.len();
    if !(p > 0.0 && p < 1.0) || p < 10.0 / n as f64 {
        return Err(Error::Domain(format!(
            "CCDF level {p} is outside the resolvable range for {n} samples"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    // Exceedances of sorted[i] number n - 1 - i (ignoring ties).
    let idx = (n as f64 - 1.0 - p * n as f64).ceil().max(0.0) as usize;
    Ok(sorted[idx.min(n - 1)])
}

/// Empirical PAPR CCDF of a waveform on a threshold grid.
pub fn papr_ccdf(
    bundle: &WaveformBundle,
    c: &Constellation,
    trials: usize,
    seed: Seed,
    thresholds: &[f64],
) -> Result<Vec<CcdfPoint>> {
    Ok(ccdf(&papr_samples(bundle, c, trials, seed)?, thresholds))
}
