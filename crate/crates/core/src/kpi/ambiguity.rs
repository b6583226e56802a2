use crate::linalg::cis;
use crate::waveforms::WaveformBundle;
use crate::{CMatrix, Complex64, Error, Result};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// How the delayed copy is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AfMode {
    /// Samples shifted past either end are zero.
    #[default]
    Aperiodic,
    /// Circular shifts; both signals must have the same length.
    Cyclic,
}

impl AfMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Aperiodic => "aperiodic",
            Self::Cyclic => "cyclic",
        }
    }
}

/// Unnormalized discrete ambiguity value
/// `A(τ, ν) = Σ_n a[n] b*[n - τ] e^{-j2πνn/f_s}`.
pub fn ambiguity_value(a: &[Complex64], b: &[Complex64], delay: i64, doppler_hz: f64, fs: f64, mode: AfMode) -> Complex64 {
    let lb = b.len() as i64;
    let w = -2.0 * PI * doppler_hz / fs;
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, &an) in a.iter().enumerate() {
        let src = n as i64 - delay;
        let idx = match mode {
            AfMode::Aperiodic if (0..lb).contains(&src) => src,
            AfMode::Aperiodic => continue,
            AfMode::Cyclic => src.rem_euclid(lb),
        };
        acc += an * b[idx as usize].conj() * cis(w * n as f64);
    }
    acc
}

/// Peak-normalized ambiguity magnitudes on a delay-Doppler grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AfGrid {
    /// Delay lags in samples.
    pub delays: Vec<i64>,
    pub delays_s: Vec<f64>,
    /// Delays divided by the length of `a`.
    pub delays_norm: Vec<f64>,
    pub dopplers_hz: Vec<f64>,
    /// Dopplers divided by the sample rate.
    pub dopplers_norm: Vec<f64>,
    /// `|A|` over `(delay, doppler)`, scaled so the grid maximum is 1.
    pub magnitudes: DMatrix<f64>,
    /// Grid maximum of `|A|` before scaling.
    pub raw_peak: f64,
    pub mode: AfMode,
}

impl AfGrid {
    pub fn normalization(&self) -> &'static str {
        "grid-peak"
    }
}

fn strictly_increasing<T: PartialOrd>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Evaluates the auto (`b = a`) or cross ambiguity function on a grid.
pub fn ambiguity_grid(
    a: &[Complex64],
    b: &[Complex64],
    delays: &[i64],
    dopplers_hz: &[f64],
    fs: f64,
    mode: AfMode,
) -> Result<AfGrid> {
    if delays.is_empty() || dopplers_hz.is_empty() {
        return Err(Error::Shape("ambiguity grid axes must be nonempty".into()));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Shape("ambiguity function of an empty signal".into()));
    }
    if !(fs > 0.0) {
        return Err(Error::Domain(format!("sample rate must be positive, got {fs}")));
    }
    if mode == AfMode::Cyclic && a.len() != b.len() {
        return Err(Error::Shape("cyclic ambiguity needs equal-length signals".into()));
    }
    if !strictly_increasing(delays) || !strictly_increasing(dopplers_hz) {
        return Err(Error::Domain("ambiguity grid axes must be strictly increasing".into()));
    }
    let span = a.len().max(b.len()) as i64;
    if delays.iter().any(|d| d.abs() >= span) {
        return Err(Error::Domain("delay lags must stay within the frame duration".into()));
    }
    if dopplers_hz.iter().any(|v| v.abs() > fs) {
        return Err(Error::Domain("Doppler shifts must stay within the bandwidth".into()));
    }
    let raw = CMatrix::from_fn(delays.len(), dopplers_hz.len(), |i, j| {
        ambiguity_value(a, b, delays[i], dopplers_hz[j], fs, mode)
    });
    let mut magnitudes = raw.map(|v| v.norm());
    let raw_peak = magnitudes.max();
    if raw_peak > 0.0 {
        magnitudes /= raw_peak;
    }
    Ok(AfGrid {
        delays: delays.to_vec(),
        delays_s: delays.iter().map(|&d| d as f64 / fs).collect(),
        delays_norm: delays.iter().map(|&d| d as f64 / a.len() as f64).collect(),
        dopplers_hz: dopplers_hz.to_vec(),
        dopplers_norm: dopplers_hz.iter().map(|v| v / fs).collect(),
        magnitudes,
        raw_peak,
        mode,
    })
}

/// Reported in place of `-∞` dB when a cut has no sidelobe energy.
pub const NO_SIDELOBE_DB: f64 = -400.0;

/// Rule used to delimit the mainlobe.
pub const MAINLOBE_RULE: &str = "first-local-minima";

/// Mainlobe width and sidelobe levels along one cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutMetrics {
    /// Width between the −3 dB crossings, in axis units.
    pub width_3db: f64,
    pub pslr_db: f64,
    pub islr_db: f64,
    /// Neither side of the peak has a bounding minimum.
    pub no_null: bool,
}

/// Mainlobe and sidelobe figures of a 1D magnitude cut sampled with
/// spacing `step`.
///
/// The mainlobe runs from the peak outwards until the magnitude stops
/// strictly decreasing; those first local minima and everything beyond
/// them form the sidelobe region. A side that decreases all the way to the
/// end of the cut has no minimum. When neither side has one the cut is
/// flagged `no_null` and PSLR is reported as 0 dB.
pub fn af_cut_metrics(cut: &[f64], step: f64) -> Result<CutMetrics> {
    if cut.is_empty() {
        return Err(Error::Shape("empty cut".into()));
    }
    if cut.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::Domain("cut magnitudes must be finite and non-negative".into()));
    }
    let (peak_idx, peak) = cut
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    if peak <= 0.0 {
        return Err(Error::Domain("cut is identically zero".into()));
    }

    let mut left = peak_idx;
    while left > 0 && cut[left - 1] < cut[left] {
        left -= 1;
    }
    let mut right = peak_idx;
    while right + 1 < cut.len() && cut[right + 1] < cut[right] {
        right += 1;
    }
    let left_null = left > 0 || (left == 0 && peak_idx > 0 && cut[0] == 0.0);
    let right_null = right + 1 < cut.len() || (right + 1 == cut.len() && right > peak_idx && cut[right] == 0.0);
    // Minima themselves belong to the sidelobe region.
    let main_lo = if left_null { left + 1 } else { 0 };
    let main_hi = if right_null { right.saturating_sub(1).max(peak_idx) } else { cut.len() - 1 };
    let no_null = !left_null && !right_null;

    let half = peak / 2f64.sqrt();
    let cross = |range: &mut dyn Iterator<Item = usize>, toward: i64| -> f64 {
        for i in range {
            let j = (i as i64 + toward) as usize;
            if cut[j] < half {
                return i as f64 + toward as f64 * (cut[i] - half) / (cut[i] - cut[j]);
            }
        }
        if toward < 0 {
            0.0
        } else {
            (cut.len() - 1) as f64
        }
    };
    let lo = cross(&mut (1..=peak_idx).rev(), -1);
    let hi = cross(&mut (peak_idx..cut.len() - 1), 1);
    let width_3db = (hi - lo) * step;

    let mut main_energy = 0.0;
    let mut side_energy = 0.0;
    let mut side_peak: f64 = 0.0;
    for (i, &v) in cut.iter().enumerate() {
        if (main_lo..=main_hi).contains(&i) {
            main_energy += v * v;
        } else {
            side_energy += v * v;
            side_peak = side_peak.max(v);
        }
    }
    let pslr_db = if no_null {
        0.0
    } else if side_peak > 0.0 {
        20.0 * (side_peak / peak).log10()
    } else {
        NO_SIDELOBE_DB
    };
    let islr_db = if side_energy > 0.0 {
        10.0 * (side_energy / main_energy).log10()
    } else {
        NO_SIDELOBE_DB
    };
    Ok(CutMetrics {
        width_3db,
        pslr_db,
        islr_db,
        no_null,
    })
}

/// Table-style metrics for both principal cuts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfMetrics {
    /// Delay cut; width in units of the analysed signal length.
    pub delay: CutMetrics,
    /// Doppler cut; width in units of the sample rate.
    pub doppler: CutMetrics,
    pub mode: AfMode,
    pub include_prefix: bool,
}

impl AfMetrics {
    pub fn boundary_rule(&self) -> &'static str {
        MAINLOBE_RULE
    }
}

/// Options for [`frame_af_metrics`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfOptions {
    pub mode: AfMode,
    /// Analyse the prefixed frame instead of the core samples.
    pub include_prefix: bool,
    /// Doppler bins per `f_s / L` resolution cell.
    pub doppler_oversample: usize,
}

impl Default for AfOptions {
    fn default() -> Self {
        Self {
            mode: AfMode::Aperiodic,
            include_prefix: true,
            doppler_oversample: 8,
        }
    }
}

/// Auto-ambiguity metrics of a frame carrying `symbols`.
///
/// The delay cut covers every integer lag `|τ| < L` at zero Doppler; the
/// Doppler cut covers `[-f_s/2, f_s/2)` at zero delay with
/// `doppler_oversample` bins per `f_s/L`.
pub fn frame_af_metrics(bundle: &WaveformBundle, symbols: &[Complex64], opts: AfOptions) -> Result<AfMetrics> {
    if opts.doppler_oversample == 0 {
        return Err(Error::Config("Doppler oversampling must be at least 1".into()));
    }
    let s = if opts.include_prefix {
        bundle.transmit(symbols)?
    } else {
        bundle.modulate(symbols)?
    };
    let fs = bundle.geometry.sample_rate();
    let l = s.len() as i64;
    let delays: Vec<i64> = (-(l - 1)..l).collect();
    let nd = opts.doppler_oversample as i64 * l;
    let dopplers: Vec<f64> = (-nd / 2..nd - nd / 2).map(|k| k as f64 * fs / nd as f64).collect();
    let dcut = ambiguity_grid(&s, &s, &delays, &[0.0], fs, opts.mode)?;
    let vcut = ambiguity_grid(&s, &s, &[0], &dopplers, fs, opts.mode)?;
    let dvals: Vec<f64> = dcut.magnitudes.column(0).iter().copied().collect();
    let vvals: Vec<f64> = vcut.magnitudes.row(0).iter().copied().collect();
    Ok(AfMetrics {
        delay: af_cut_metrics(&dvals, 1.0 / l as f64)?,
        doppler: af_cut_metrics(&vvals, 1.0 / nd as f64)?,
        mode: opts.mode,
        include_prefix: opts.include_prefix,
    })
}
