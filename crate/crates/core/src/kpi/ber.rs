use crate::channel::{add_noise, apply_channel, effective_channel, ChannelRealization, ChannelSpec};
use crate::detection::{single_tap_equalize, Constellation, MmseEqualizer};
use crate::seed::{Seed, Stream};
use crate::waveforms::{SymbolField, WaveformBundle};
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// Receiver used in BER simulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Detector {
    /// Block MMSE on the full effective channel.
    #[default]
    Mmse,
    /// Per-symbol equalization; the effective channel must be diagonal.
    SingleTap,
}

impl Detector {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mmse" => Ok(Self::Mmse),
            "single-tap" | "single_tap" | "singletap" => Ok(Self::SingleTap),
            other => Err(Error::Config(format!("unknown detector '{other}'"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Mmse => "mmse",
            Self::SingleTap => "single-tap",
        }
    }
}

/// Bit errors accumulated at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub snr_db: f64,
    pub bit_errors: u64,
    pub bits: u64,
    pub ber: f64,
}

/// Everything a BER sweep needs besides the waveform.
#[derive(Debug, Clone)]
pub struct BerConfig {
    pub channel: ChannelSpec,
    pub detector: Detector,
    pub constellation: Constellation,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub seed: Seed,
}

/// Output of [`run_ber`].
#[derive(Debug, Clone, PartialEq)]
pub struct BerRun {
    pub points: Vec<BerPoint>,
    /// Order-independent hash of every bit block and channel realization
    /// consumed. Two runs share their random streams exactly when the
    /// digests agree.
    pub stream_digest: u64,
}

/// Noise variance for a per-symbol SNR in dB with unit-energy symbols.
pub fn noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// Bits for one trial. Every waveform draws from the same stream, so a
/// shorter frame sees a prefix of a longer frame's bits.
pub fn trial_bits(seed: Seed, trial: u64, count: usize) -> Vec<u8> {
    let mut rng = seed.rng(Stream::Bits, &[trial]);
    (0..count).map(|_| rng.gen_range(0..2u8)).collect()
}

fn trial_digest(trial: u64, bits: &[u8], real: &ChannelRealization) -> u64 {
    let mut h = DefaultHasher::new();
    trial.hash(&mut h);
    bits.hash(&mut h);
    for tap in &real.taps {
        tap.delay.hash(&mut h);
        tap.doppler_hz.to_bits().hash(&mut h);
        tap.gain.re.to_bits().hash(&mut h);
        tap.gain.im.to_bits().hash(&mut h);
        tap.scale.to_bits().hash(&mut h);
    }
    h.finish()
}

/// Monte-Carlo bit error rate of one waveform.
///
/// Trial `t` draws its channel from `cfg.channel.realize(seed, t, ..)`, its
/// bits from the `Bits` stream of trial `t` and its noise at SNR index `i`
/// from the `Noise` stream of `(t, i)`. Waveforms run with the same seed
/// therefore face identical bits, channels and noise. Trials run in
/// parallel and integer error counts are summed, so the result does not
/// depend on scheduling.
pub fn run_ber(bundle: &WaveformBundle, cfg: &BerConfig) -> Result<BerRun> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if cfg.snr_db.is_empty() {
        return Err(Error::Config("the SNR list is empty".into()));
    }
    if cfg.snr_db.iter().any(|s| !s.is_finite()) {
        return Err(Error::Config("SNR values must be finite".into()));
    }
    if bundle.field == SymbolField::Real {
        return Err(Error::Config(format!(
            "{} carries real-valued symbols and has no complex BER receiver",
            bundle.scheme
        )));
    }
    let geometry = bundle.geometry;
    let fs = geometry.sample_rate();
    let bps = cfg.constellation.bits_per_symbol();
    let nbits = bundle.symbol_count() * bps;
    let nsnr = cfg.snr_db.len();

    let per_trial: Result<Vec<(Vec<u64>, u64)>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let real = cfg.channel.realize(cfg.seed, t, fs, geometry.delta_f)?.with_noise_var(0.0);
            let bits = trial_bits(cfg.seed, t, nbits);
            let digest = trial_digest(t, &bits, &real);
            let x = cfg.constellation.map_bits(&bits)?;
            let clean = apply_channel(&bundle.transmit(&x)?, &real, 0)?;
            let h = effective_channel(bundle, &real)?;
            let mmse = match cfg.detector {
                Detector::Mmse => Some(MmseEqualizer::new(&h)),
                Detector::SingleTap => None,
            };
            let mut errors = vec![0u64; nsnr];
            for (i, &snr) in cfg.snr_db.iter().enumerate() {
                let nv = noise_variance(snr);
                let mut r = clean.clone();
                add_noise(&mut r, nv, cfg.seed.derive(Stream::Noise, &[t, i as u64]));
                let y = bundle.demodulate(&r)?;
                let soft = match &mmse {
                    Some(eq) => eq.factor(nv)?.solve(&y)?,
                    None => single_tap_equalize(&y, &h, nv, &cfg.constellation)?.soft,
                };
                let decided = cfg.constellation.demap_hard(&soft);
                errors[i] = decided.iter().zip(&bits).filter(|(a, b)| a != b).count() as u64;
            }
            Ok((errors, digest))
        })
        .collect();
    let per_trial = per_trial?;

    let mut totals = vec![0u64; nsnr];
    let mut digest = 0u64;
    for (errors, d) in &per_trial {
        for (acc, e) in totals.iter_mut().zip(errors) {
            *acc += e;
        }
        digest = digest.wrapping_add(*d);
    }
    let bits = nbits as u64 * cfg.trials as u64;
    Ok(BerRun {
        points: cfg
            .snr_db
            .iter()
            .zip(totals)
            .map(|(&snr_db, bit_errors)| BerPoint {
                snr_db,
                bit_errors,
                bits,
                ber: bit_errors as f64 / bits as f64,
            })
            .collect(),
        stream_digest: digest,
    })
}
