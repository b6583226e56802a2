//! Dispersive channel models.
//!
//! A [`PathSet`] holds continuous per-path parameters. [`discretize`] maps it
//! onto the sample grid of a waveform: delays are rounded to the nearest
//! sample, Dopplers stay continuous. The resulting [`ChannelRealization`] can
//! be applied to a frame ([`apply_channel`]), expanded into the full
//! time-varying matrix ([`channel_matrix_full`]), or projected into a
//! waveform's modulation domain ([`effective_channel`]).

mod presets;

pub use presets::{
    channel_preset, parse_profile, preset, velocity_to_doppler, PresetName, EPA, ETU, EVA,
    FIG16_CARRIER_HZ, FIG16_DELAYS_US, FIG16_VELOCITIES_KMH, SPEED_OF_LIGHT,
};

use crate::linalg::cis;
use crate::seed::{Seed, Stream};
use crate::waveforms::WaveformBundle;
use crate::{CMatrix, Complex64, Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// One propagation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Path {
    /// Complex gain `h_i`.
    pub gain: Complex64,
    /// Delay `τ_i` in seconds.
    pub delay_s: f64,
    /// Doppler shift `ν_i` in Hz.
    pub doppler_hz: f64,
    /// Time-scaling factor `α_i`, with `ν_i = α_i f_c`.
    pub scale: f64,
}

/// Continuous multipath description.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub paths: Vec<Path>,
    /// Carrier frequency in Hz (zero when unknown).
    pub carrier_hz: f64,
    /// Set once the gains have been scaled to unit total power.
    pub normalized: bool,
}

impl PathSet {
    pub fn new(paths: Vec<Path>, carrier_hz: f64) -> Self {
        Self {
            paths,
            carrier_hz,
            normalized: false,
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn total_power(&self) -> f64 {
        self.paths.iter().map(|p| p.gain.norm_sqr()).sum()
    }

    pub fn max_delay_s(&self) -> f64 {
        self.paths.iter().map(|p| p.delay_s).fold(0.0, f64::max)
    }

    /// Scales the gains so that `Σ|h_i|² = 1`.
    pub fn normalize(&mut self) {
        let p = self.total_power();
        if p > 0.0 {
            let s = 1.0 / p.sqrt();
            for path in &mut self.paths {
                path.gain *= s;
            }
            self.normalized = true;
        }
    }

    /// Sets the carrier frequency and refreshes every path's scale factor.
    pub fn with_carrier(mut self, carrier_hz: f64) -> Self {
        self.carrier_hz = carrier_hz;
        for p in &mut self.paths {
            p.scale = if carrier_hz > 0.0 { p.doppler_hz / carrier_hz } else { 0.0 };
        }
        self
    }
}

/// Replaces every path's Doppler by `ν_max cos θ_i` with `θ_i ~ U[-π, π]`.
pub fn draw_jakes_dopplers(path_set: &PathSet, nu_max: f64, rng_seed: u64) -> Result<PathSet> {
    if !(nu_max >= 0.0) {
        return Err(Error::Domain(format!("maximum Doppler must be non-negative, got {nu_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = path_set.clone();
    for p in &mut out.paths {
        let theta: f64 = rng.gen_range(-PI..=PI);
        p.doppler_hz = nu_max * theta.cos();
        p.scale = if out.carrier_hz > 0.0 { p.doppler_hz / out.carrier_hz } else { 0.0 };
    }
    Ok(out)
}

/// Draws i.i.d. circular Gaussian gains scaled by each path's profile power,
/// then normalizes to unit total power.
pub fn draw_rayleigh_gains(path_set: &PathSet, rng_seed: u64) -> PathSet {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = path_set.clone();
    for p in &mut out.paths {
        let amp = p.gain.norm();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        p.gain = Complex64::new(re, im) * (amp / 2f64.sqrt());
    }
    out.normalize();
    out
}

/// Channel model families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ChannelModelKind {
    /// Delay, Doppler and time scaling.
    WidebandDdc,
    /// Delay and Doppler; time scaling ignored.
    #[default]
    NarrowbandDdc,
    /// Delay only.
    Tdc,
    /// Doppler only.
    Fdc,
}

impl ChannelModelKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wideband" | "wideband-ddc" => Ok(Self::WidebandDdc),
            "narrowband" | "narrowband-ddc" | "ddc" => Ok(Self::NarrowbandDdc),
            "tdc" => Ok(Self::Tdc),
            "fdc" => Ok(Self::Fdc),
            _ => Err(Error::Config(format!("unknown channel model `{s}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::WidebandDdc => "wideband-ddc",
            Self::NarrowbandDdc => "narrowband-ddc",
            Self::Tdc => "tdc",
            Self::Fdc => "fdc",
        }
    }
}

/// A path mapped onto the sample grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    /// Integer delay `l_i` in samples.
    pub delay: usize,
    /// Continuous delay in seconds.
    pub delay_s: f64,
    /// Continuous Doppler in Hz.
    pub doppler_hz: f64,
    /// Doppler normalized by the subcarrier spacing.
    pub normalized_doppler: f64,
    /// Time-scaling factor (used by the wideband model only).
    pub scale: f64,
    pub gain: Complex64,
}

/// A sampled channel ready to be applied to frames.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub kind: ChannelModelKind,
    pub taps: Vec<Tap>,
    /// Sample rate `f_s` in Hz.
    pub sample_rate: f64,
    /// Subcarrier spacing used to normalize Dopplers.
    pub subcarrier_spacing: f64,
    /// Noise variance `σ²` (linear).
    pub noise_var: f64,
    pub carrier_hz: f64,
}

/// Maps a path set onto the sample grid of rate `f_s`.
///
/// Delays are rounded to the nearest sample and Dopplers are kept
/// continuous. The time-dispersive kind zeroes every Doppler and the
/// frequency-dispersive kind zeroes every delay.
pub fn discretize(
    path_set: &PathSet,
    kind: ChannelModelKind,
    fs: f64,
    delta_f: f64,
) -> Result<ChannelRealization> {
    if !(fs > 0.0) || !(delta_f > 0.0) {
        return Err(Error::Domain("sample rate and subcarrier spacing must be positive".into()));
    }
    if path_set.is_empty() {
        return Err(Error::Domain("path set is empty".into()));
    }
    let mut taps = Vec::with_capacity(path_set.len());
    for p in &path_set.paths {
        if !(p.delay_s >= 0.0) {
            return Err(Error::Domain(format!("negative path delay {}", p.delay_s)));
        }
        let (delay_s, doppler_hz, scale) = match kind {
            ChannelModelKind::WidebandDdc => (p.delay_s, p.doppler_hz, p.scale),
            ChannelModelKind::NarrowbandDdc => (p.delay_s, p.doppler_hz, 0.0),
            ChannelModelKind::Tdc => (p.delay_s, 0.0, 0.0),
            ChannelModelKind::Fdc => (0.0, p.doppler_hz, 0.0),
        };
        taps.push(Tap {
            delay: (delay_s * fs).round() as usize,
            delay_s,
            doppler_hz,
            normalized_doppler: doppler_hz / delta_f,
            scale,
            gain: p.gain,
        });
    }
    Ok(ChannelRealization {
        kind,
        taps,
        sample_rate: fs,
        subcarrier_spacing: delta_f,
        noise_var: 0.0,
        carrier_hz: path_set.carrier_hz,
    })
}

impl ChannelRealization {
    /// Returns the same channel with noise variance `σ²`.
    pub fn with_noise_var(mut self, noise_var: f64) -> Self {
        self.noise_var = noise_var;
        self
    }

    /// Largest integer tap delay.
    pub fn max_delay(&self) -> usize {
        self.taps.iter().map(|t| t.delay).max().unwrap_or(0)
    }

    /// Path set whose delays sit exactly on the sample grid.
    pub fn to_path_set(&self) -> PathSet {
        let paths = self
            .taps
            .iter()
            .map(|t| Path {
                gain: t.gain,
                delay_s: match self.kind {
                    ChannelModelKind::WidebandDdc => t.delay_s,
                    _ => t.delay as f64 / self.sample_rate,
                },
                doppler_hz: t.doppler_hz,
                scale: t.scale,
            })
            .collect();
        PathSet {
            paths,
            carrier_hz: self.carrier_hz,
            normalized: false,
        }
    }

    /// Input sample index feeding output sample `n` through `tap`.
    pub fn source_index(&self, tap: &Tap, n: usize) -> Option<usize> {
        let src = match self.kind {
            ChannelModelKind::WidebandDdc => {
                (n as f64 * (1.0 + tap.scale) - tap.delay_s * self.sample_rate).round()
            }
            _ => n as f64 - tap.delay as f64,
        };
        (src >= 0.0).then_some(src as usize)
    }

    /// Complex coefficient `h_i e^{j2πν_i n / f_s}` of `tap` at output sample `n`.
    pub fn coefficient(&self, tap: &Tap, n: usize) -> Complex64 {
        tap.gain * cis(2.0 * PI * tap.doppler_hz * n as f64 / self.sample_rate)
    }
}

/// Passes a frame through the channel and adds circular Gaussian noise of
/// variance `real.noise_var`. The output has the input's length.
pub fn apply_channel(s: &[Complex64], real: &ChannelRealization, rng_seed: u64) -> Result<Vec<Complex64>> {
    if s.is_empty() {
        return Err(Error::Shape("cannot apply a channel to an empty frame".into()));
    }
    let len = s.len();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for tap in &real.taps {
        for (n, o) in out.iter_mut().enumerate() {
            if let Some(src) = real.source_index(tap, n) {
                if src < len {
                    *o += real.coefficient(tap, n) * s[src];
                }
            }
        }
    }
    if real.noise_var > 0.0 {
        add_noise(&mut out, real.noise_var, rng_seed);
    }
    Ok(out)
}

/// Adds `CN(0, σ²)` noise drawn from a ChaCha8 stream keyed on `rng_seed`.
pub fn add_noise(x: &mut [Complex64], noise_var: f64, rng_seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let sd = (noise_var / 2.0).sqrt();
    for v in x.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *v += Complex64::new(re, im) * sd;
    }
}

/// Dense `L × L` linear time-varying channel matrix.
pub fn channel_matrix_full(real: &ChannelRealization, len: usize) -> Result<CMatrix> {
    if len < real.max_delay() + 1 {
        return Err(Error::Shape(format!(
            "matrix size {len} cannot hold delay {}",
            real.max_delay()
        )));
    }
    let mut h = CMatrix::zeros(len, len);
    for tap in &real.taps {
        for n in 0..len {
            if let Some(src) = real.source_index(tap, n) {
                if src < len {
                    h[(n, src)] += real.coefficient(tap, n);
                }
            }
        }
    }
    Ok(h)
}

/// Modulation-domain channel `A_rx · R_rm · H · R_add · A_tx`.
///
/// The prefix must cover the largest tap delay and the realization must use
/// the waveform's sample rate.
pub fn effective_channel(bundle: &WaveformBundle, real: &ChannelRealization) -> Result<CMatrix> {
    let fs = bundle.geometry.sample_rate();
    if (real.sample_rate - fs).abs() > 1e-9 * fs {
        return Err(Error::Config(format!(
            "channel sampled at {} Hz but waveform runs at {} Hz",
            real.sample_rate, fs
        )));
    }
    let lp = bundle.prefix_len();
    if real.max_delay() > lp {
        return Err(Error::Config(format!(
            "prefix of {lp} samples is shorter than the channel delay of {} samples",
            real.max_delay()
        )));
    }
    let tx = bundle.prefixed_tx_matrix();
    let frame_len = tx.nrows();
    let core = bundle.core_len();
    let k = tx.ncols();

    // Sparse row description of R_rm · H restricted to the kept rows.
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(core);
    for r in 0..core {
        let n = lp + r;
        let mut entries = Vec::with_capacity(real.taps.len());
        for tap in &real.taps {
            if let Some(src) = real.source_index(tap, n) {
                if src < frame_len {
                    entries.push((src, real.coefficient(tap, n)));
                }
            }
        }
        rows.push(entries);
    }
    let mut hc = CMatrix::zeros(core, k);
    for j in 0..k {
        let col = tx.column(j);
        for (r, entries) in rows.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(src, c) in entries {
                acc += c * col[src];
            }
            hc[(r, j)] = acc;
        }
    }
    Ok(&bundle.a_rx * hc)
}

/// Support statistics of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sparsity {
    /// Fraction of entries at or above the threshold.
    pub support_fraction: f64,
    /// Largest number of such entries in a single row.
    pub max_row_support: usize,
}

/// Counts entries with `|H_ij| ≥ threshold · max|H|`.
pub fn sparsity_metrics(h: &CMatrix, threshold: f64) -> Result<Sparsity> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Domain(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    if h.is_empty() {
        return Err(Error::Shape("empty matrix".into()));
    }
    let peak = h.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let cut = threshold * peak;
    let mut total = 0usize;
    let mut max_row = 0usize;
    for i in 0..h.nrows() {
        let count = (0..h.ncols()).filter(|&j| h[(i, j)].norm() >= cut && peak > 0.0).count();
        total += count;
        max_row = max_row.max(count);
    }
    Ok(Sparsity {
        support_fraction: total as f64 / h.len() as f64,
        max_row_support: max_row,
    })
}

/// How per-trial channel realizations are drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    /// Profile supplying delays, powers and (for fixed fading) Dopplers.
    pub profile: PathSet,
    pub kind: ChannelModelKind,
    /// Draw Rayleigh gains from the profile powers (otherwise use the profile gains).
    pub rayleigh: bool,
    /// Jakes maximum Doppler in Hz; `None` keeps the profile Dopplers.
    pub jakes_max_doppler_hz: Option<f64>,
}

impl ChannelSpec {
    /// Default drawing rules for a named profile: Rayleigh gains except for
    /// the single-path AWGN profile and the fixed five-path channel.
    pub fn for_preset(name: PresetName, kind: ChannelModelKind, jakes_max_doppler_hz: Option<f64>) -> Self {
        Self {
            profile: preset(name),
            kind,
            rayleigh: !matches!(name, PresetName::Awgn | PresetName::Fig16),
            jakes_max_doppler_hz,
        }
    }

    /// Draws the realization for one Monte-Carlo trial.
    pub fn realize(&self, seed: Seed, trial: u64, fs: f64, delta_f: f64) -> Result<ChannelRealization> {
        let mut set = if self.rayleigh {
            draw_rayleigh_gains(&self.profile, seed.derive(Stream::ChannelGains, &[trial]))
        } else {
            self.profile.clone()
        };
        if let Some(nu_max) = self.jakes_max_doppler_hz {
            set = draw_jakes_dopplers(&set, nu_max, seed.derive(Stream::ChannelDoppler, &[trial]))?;
        }
        discretize(&set, self.kind, fs, delta_f)
    }
}
