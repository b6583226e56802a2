//! Experiment configuration as read from TOML.
//!
//! Every table rejects unknown keys. Numeric fields that users commonly get
//! wrong (`trials`, sizes) are parsed as signed integers so that negative
//! values reach validation and produce an error naming the field.

use crate::error::BenchError;
use mcwave::channel::{ChannelModelKind, PresetName};
use mcwave::kpi::{AfMode, Detector};
use mcwave::waveforms::{Beamformer, Scheme};
use serde::{Deserialize, Serialize};

/// Which experiment a configuration describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Ber,
    Papr,
    Af,
    Chanmat,
    AfdmSweep,
    Overhead,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ber => "ber",
            Self::Papr => "papr",
            Self::Af => "af",
            Self::Chanmat => "chanmat",
            Self::AfdmSweep => "afdm-sweep",
            Self::Overhead => "overhead",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub trials: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    #[serde(default)]
    pub waveforms: WaveformSection,
    #[serde(default)]
    pub channel: ChannelSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ber: Option<BerSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub papr: Option<PaprSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub af: Option<AfSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chanmat: Option<ChanmatSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overhead: Option<OverheadSection>,
}

/// Scheme list plus frame numerology shared by all schemes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveformSection {
    pub schemes: Vec<String>,
    /// Subcarriers of 1D schemes.
    pub m: i64,
    pub delta_f_hz: f64,
    /// Delay bins of 2D schemes.
    pub m_2d: i64,
    /// Doppler bins of 2D schemes.
    pub n_2d: i64,
    pub delta_f_2d_hz: f64,
    pub prefix_len: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub afdm_c1: Option<f64>,
    pub afdm_c2: f64,
    /// Overrides the maximum normalized Doppler derived from the channel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub afdm_alpha_max: Option<f64>,
    pub frft_order: f64,
    pub ifdm_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dfts_width: Option<i64>,
    pub oddm_q: i64,
    pub oddm_rolloff: f64,
    pub fbmc_overlap: i64,
}

impl Default for WaveformSection {
    fn default() -> Self {
        Self {
            schemes: vec!["ofdm".into()],
            m: 64,
            delta_f_hz: 15e3,
            m_2d: 8,
            n_2d: 8,
            delta_f_2d_hz: 120e3,
            prefix_len: 16,
            afdm_c1: None,
            afdm_c2: 0.0,
            afdm_alpha_max: None,
            frft_order: 0.5,
            ifdm_seed: 0,
            dfts_width: None,
            oddm_q: 4,
            oddm_rolloff: 0.1,
            fbmc_overlap: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub preset: String,
    pub model: String,
    pub carrier_hz: f64,
    /// Jakes maximum speed; converted with `carrier_hz`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity_kmh: Option<f64>,
    /// Jakes maximum Doppler; takes precedence over `velocity_kmh`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_doppler_hz: Option<f64>,
    /// Overrides whether gains are Rayleigh-distributed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rayleigh: Option<bool>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            preset: "awgn".into(),
            model: "narrowband-ddc".into(),
            carrier_hz: 24e9,
            velocity_kmh: None,
            max_doppler_hz: None,
            rayleigh: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BerSection {
    pub snr_db: Vec<f64>,
    pub detector: String,
    pub qam: i64,
}

impl Default for BerSection {
    fn default() -> Self {
        Self {
            snr_db: vec![0.0, 5.0, 10.0, 15.0, 20.0],
            detector: "mmse".into(),
            qam: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PaprSection {
    pub qam: i64,
    /// Transmit antennas of DDAM.
    pub mt: i64,
    /// DDAM path count.
    pub paths: i64,
    /// Largest DDAM path delay in samples.
    pub max_delay: i64,
    pub beamformer: String,
    pub threshold_min_db: f64,
    pub threshold_max_db: f64,
    pub threshold_step_db: f64,
    /// CCDF level summarized in `papr_summary.csv`.
    pub ccdf_level: f64,
}

impl Default for PaprSection {
    fn default() -> Self {
        Self {
            qam: 128,
            mt: 64,
            paths: 5,
            max_delay: 40,
            beamformer: "zf".into(),
            threshold_min_db: 0.0,
            threshold_max_db: 14.0,
            threshold_step_db: 0.1,
            ccdf_level: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AfSection {
    pub mode: String,
    pub include_prefix: bool,
    pub doppler_oversample: i64,
    /// `all-one` or `random`.
    pub symbols: String,
}

impl Default for AfSection {
    fn default() -> Self {
        Self {
            mode: "aperiodic".into(),
            include_prefix: true,
            doppler_oversample: 8,
            symbols: "all-one".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChanmatSection {
    /// Channel kinds to render, e.g. `["tdc", "fdc", "narrowband-ddc"]`.
    pub models: Vec<String>,
    /// Relative magnitude below which an entry counts as zero.
    pub threshold: f64,
}

impl Default for ChanmatSection {
    fn default() -> Self {
        Self {
            models: vec!["tdc".into(), "fdc".into(), "narrowband-ddc".into()],
            threshold: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    /// Grid points per axis spanning `[0, 1/(2M)]`.
    pub c1_points: i64,
    pub c2_points: i64,
    pub snr_db: f64,
    pub qam: i64,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            c1_points: 16,
            c2_points: 16,
            snr_db: 15.0,
            qam: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OverheadSection {
    pub l_max: i64,
    pub alpha_max: i64,
    pub xi: i64,
    /// Prefix-to-symbol duration ratios `T_cp / T_sym` to tabulate.
    pub cp_ratios: Vec<f64>,
    pub qam: i64,
}

impl Default for OverheadSection {
    fn default() -> Self {
        Self {
            l_max: 8,
            alpha_max: 4,
            xi: 0,
            cp_ratios: vec![0.0, 0.0625, 0.125, 0.25],
            qam: 4,
        }
    }
}

/// Configuration after validation, with every string resolved.
#[derive(Debug, Clone)]
pub struct Validated {
    pub config: ExperimentConfig,
    pub trials: usize,
    pub schemes: Vec<SchemeChoice>,
    pub channel_preset: PresetName,
    pub channel_model: ChannelModelKind,
    pub max_doppler_hz: Option<f64>,
}

/// An entry of the scheme list. DDAM is only meaningful for PAPR runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    Frame(Scheme),
    Ddam,
}

impl SchemeChoice {
    pub fn name(self) -> &'static str {
        match self {
            Self::Frame(s) => s.name(),
            Self::Ddam => "DDAM",
        }
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> BenchError {
    BenchError::Validation {
        field: field.to_string(),
        message: msg.to_string(),
    }
}

fn positive(field: &str, v: i64) -> Result<usize, BenchError> {
    if v <= 0 {
        return Err(invalid(field, format!("must be a positive integer, got {v}")));
    }
    Ok(v as usize)
}

fn non_negative(field: &str, v: i64) -> Result<u64, BenchError> {
    if v < 0 {
        return Err(invalid(field, format!("must be non-negative, got {v}")));
    }
    Ok(v as u64)
}

pub fn parse_qam(field: &str, v: i64) -> Result<mcwave::detection::Constellation, BenchError> {
    let order = positive(field, v)?;
    mcwave::detection::Constellation::qam(order).map_err(|e| invalid(field, e))
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        toml::from_str(text).map_err(|e| BenchError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment configurations always serialize")
    }

    /// Checks every field the chosen experiment uses.
    pub fn validate(&self) -> Result<Validated, BenchError> {
        let trials = positive("trials", self.trials)?;
        let w = &self.waveforms;
        positive("waveforms.m", w.m)?;
        positive("waveforms.m_2d", w.m_2d)?;
        let n2 = positive("waveforms.n_2d", w.n_2d)?;
        non_negative("waveforms.prefix_len", w.prefix_len)?;
        if !(w.delta_f_hz > 0.0) {
            return Err(invalid("waveforms.delta_f_hz", "must be positive"));
        }
        if !(w.delta_f_2d_hz > 0.0) {
            return Err(invalid("waveforms.delta_f_2d_hz", "must be positive"));
        }
        if let Some(k) = w.dfts_width {
            if positive("waveforms.dfts_width", k)? > w.m as usize {
                return Err(invalid("waveforms.dfts_width", "cannot exceed waveforms.m"));
            }
        }
        positive("waveforms.oddm_q", w.oddm_q)?;
        positive("waveforms.fbmc_overlap", w.fbmc_overlap)?;
        if w.schemes.is_empty() && !matches!(self.kind, ExperimentKind::Overhead | ExperimentKind::AfdmSweep) {
            return Err(invalid("waveforms.schemes", "the scheme list is empty"));
        }
        let mut schemes = Vec::new();
        for name in &w.schemes {
            let choice = if name.eq_ignore_ascii_case("ddam") {
                SchemeChoice::Ddam
            } else {
                SchemeChoice::Frame(Scheme::parse(name).map_err(|e| invalid("waveforms.schemes", e))?)
            };
            if schemes.contains(&choice) {
                return Err(invalid("waveforms.schemes", format!("'{name}' is listed twice")));
            }
            if choice == SchemeChoice::Ddam && self.kind != ExperimentKind::Papr {
                return Err(invalid("waveforms.schemes", "DDAM is only available in PAPR experiments"));
            }
            if choice == SchemeChoice::Frame(Scheme::Otsm) && !n2.is_power_of_two() {
                return Err(invalid("waveforms.n_2d", format!("OTSM needs a power-of-two N, got {n2}")));
            }
            if choice == SchemeChoice::Frame(Scheme::Fbmc) && self.kind == ExperimentKind::Ber {
                return Err(invalid("waveforms.schemes", "FBMC carries real symbols and has no BER receiver"));
            }
            schemes.push(choice);
        }

        let c = &self.channel;
        let channel_preset = PresetName::parse(&c.preset).map_err(|e| invalid("channel.preset", e))?;
        let channel_model = ChannelModelKind::parse(&c.model).map_err(|e| invalid("channel.model", e))?;
        if !(c.carrier_hz > 0.0) {
            return Err(invalid("channel.carrier_hz", "must be positive"));
        }
        let max_doppler_hz = match (c.max_doppler_hz, c.velocity_kmh) {
            (Some(v), _) if !(v >= 0.0) => return Err(invalid("channel.max_doppler_hz", "must be non-negative")),
            (Some(v), _) => Some(v),
            (None, Some(v)) => Some(mcwave::channel::velocity_to_doppler(v, c.carrier_hz).abs()),
            (None, None) => None,
        };

        match self.kind {
            ExperimentKind::Ber => {
                let b = self.ber.clone().unwrap_or_default();
                if b.snr_db.is_empty() || b.snr_db.iter().any(|s| !s.is_finite()) {
                    return Err(invalid("ber.snr_db", "needs at least one finite SNR"));
                }
                Detector::parse(&b.detector).map_err(|e| invalid("ber.detector", e))?;
                parse_qam("ber.qam", b.qam)?;
            }
            ExperimentKind::Papr => {
                let p = self.papr.clone().unwrap_or_default();
                parse_qam("papr.qam", p.qam)?;
                positive("papr.mt", p.mt)?;
                positive("papr.paths", p.paths)?;
                non_negative("papr.max_delay", p.max_delay)?;
                parse_beamformer(&p.beamformer)?;
                if !(p.threshold_step_db > 0.0) || !(p.threshold_max_db > p.threshold_min_db) {
                    return Err(invalid("papr.threshold_step_db", "threshold grid must be increasing"));
                }
                if !(p.ccdf_level > 0.0 && p.ccdf_level < 1.0) {
                    return Err(invalid("papr.ccdf_level", "must lie in (0, 1)"));
                }
                if p.ccdf_level < 10.0 / trials as f64 {
                    return Err(invalid(
                        "trials",
                        format!("{trials} frames cannot resolve a CCDF of {}", p.ccdf_level),
                    ));
                }
            }
            ExperimentKind::Af => {
                let a = self.af.clone().unwrap_or_default();
                parse_af_mode(&a.mode)?;
                positive("af.doppler_oversample", a.doppler_oversample)?;
                if !matches!(a.symbols.as_str(), "all-one" | "random") {
                    return Err(invalid("af.symbols", "use 'all-one' or 'random'"));
                }
            }
            ExperimentKind::Chanmat => {
                let cm = self.chanmat.clone().unwrap_or_default();
                if cm.models.is_empty() {
                    return Err(invalid("chanmat.models", "needs at least one channel model"));
                }
                for m in &cm.models {
                    ChannelModelKind::parse(m).map_err(|e| invalid("chanmat.models", e))?;
                }
                if !(cm.threshold > 0.0 && cm.threshold < 1.0) {
                    return Err(invalid("chanmat.threshold", "must lie in (0, 1)"));
                }
            }
            ExperimentKind::AfdmSweep => {
                let s = self.sweep.clone().unwrap_or_default();
                positive("sweep.c1_points", s.c1_points)?;
                positive("sweep.c2_points", s.c2_points)?;
                if !s.snr_db.is_finite() {
                    return Err(invalid("sweep.snr_db", "must be finite"));
                }
                parse_qam("sweep.qam", s.qam)?;
            }
            ExperimentKind::Overhead => {
                let o = self.overhead.clone().unwrap_or_default();
                non_negative("overhead.l_max", o.l_max)?;
                non_negative("overhead.alpha_max", o.alpha_max)?;
                non_negative("overhead.xi", o.xi)?;
                parse_qam("overhead.qam", o.qam)?;
                if o.cp_ratios.iter().any(|r| !(*r >= 0.0)) {
                    return Err(invalid("overhead.cp_ratios", "ratios must be non-negative"));
                }
            }
        }
        Ok(Validated {
            config: self.clone(),
            trials,
            schemes,
            channel_preset,
            channel_model,
            max_doppler_hz,
        })
    }
}

pub fn parse_beamformer(s: &str) -> Result<Beamformer, BenchError> {
    match s.to_ascii_lowercase().as_str() {
        "zf" => Ok(Beamformer::Zf),
        "mrt" => Ok(Beamformer::Mrt),
        other => Err(invalid("papr.beamformer", format!("unknown beamformer '{other}'"))),
    }
}

pub fn parse_af_mode(s: &str) -> Result<AfMode, BenchError> {
    match s.to_ascii_lowercase().as_str() {
        "aperiodic" => Ok(AfMode::Aperiodic),
        "cyclic" => Ok(AfMode::Cyclic),
        other => Err(invalid("af.mode", format!("unknown mode '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_round_trips() {
        let text = "kind = \"ber\"\nseed = 3\ntrials = 5\n";
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        let again = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = "kind = \"ber\"\nseed = 3\ntrials = 5\n[waveforms]\nbogus = 1\n";
        assert!(matches!(ExperimentConfig::from_toml(text), Err(BenchError::Parse(_))));
    }

    #[test]
    fn negative_trials_name_the_field() {
        let cfg = ExperimentConfig::from_toml("kind = \"ber\"\nseed = 3\ntrials = -4\n").unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("trials"));
    }

    #[test]
    fn otsm_needs_power_of_two() {
        let text = "kind = \"ber\"\nseed = 3\ntrials = 1\n[waveforms]\nschemes = [\"otsm\"]\nn_2d = 6\n";
        let err = ExperimentConfig::from_toml(text).unwrap().validate().unwrap_err();
        assert!(err.to_string().contains("waveforms.n_2d"));
    }
}
