//! Built-in experiment configurations.
//!
//! Each preset is stored as TOML text and goes through the same parser and
//! validator as a user file.

use crate::config::ExperimentConfig;
use crate::error::BenchError;

/// A named, ready-to-run configuration.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    /// What the preset reproduces.
    pub anchor: &'static str,
    /// How the desk-scale variant differs from the full configuration.
    pub desk_delta: &'static str,
    pub toml: &'static str,
}

impl Preset {
    pub fn config(&self) -> Result<ExperimentConfig, BenchError> {
        ExperimentConfig::from_toml(self.toml)
    }
}

const TAB5_BER: &str = r#"
kind = "ber"
seed = 2024
trials = 1000

[waveforms]
schemes = ["scm", "ofdm", "ocdm", "afdm", "otfs", "otsm"]
m = 1024
delta_f_hz = 3000.0
m_2d = 32
n_2d = 32
delta_f_2d_hz = 96000.0
prefix_len = 16

[channel]
preset = "eva"
model = "narrowband-ddc"
carrier_hz = 24e9
velocity_kmh = 540.0

[ber]
snr_db = [0.0, 5.0, 10.0, 15.0, 20.0]
detector = "mmse"
qam = 4
"#;

const TAB5_BER_DESK: &str = r#"
kind = "ber"
seed = 2024
trials = 200

[waveforms]
schemes = ["scm", "ofdm", "ocdm", "afdm", "otfs", "otsm"]
m = 256
delta_f_hz = 12000.0
m_2d = 16
n_2d = 16
delta_f_2d_hz = 192000.0
prefix_len = 16

[channel]
preset = "eva"
model = "narrowband-ddc"
carrier_hz = 24e9
velocity_kmh = 540.0

[ber]
snr_db = [0.0, 5.0, 10.0, 15.0, 20.0]
detector = "mmse"
qam = 4
"#;

const FIG17_DESK: &str = r#"
kind = "ber"
seed = 17
trials = 100

[waveforms]
schemes = ["scm", "ofdm", "ocdm", "afdm", "otfs", "otsm"]
m = 256
delta_f_hz = 12000.0
m_2d = 16
n_2d = 16
delta_f_2d_hz = 192000.0
prefix_len = 16

[channel]
preset = "eva"
model = "narrowband-ddc"
carrier_hz = 24e9
velocity_kmh = 540.0

[ber]
snr_db = [0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0]
detector = "mmse"
qam = 4
"#;

const TAB6_PAPR: &str = r#"
kind = "papr"
seed = 2026
trials = 10000

[waveforms]
schemes = ["ofdm", "ocdm", "afdm", "otfs", "ddam"]
m = 512
delta_f_hz = 250000.0
m_2d = 32
n_2d = 16
delta_f_2d_hz = 4000000.0
prefix_len = 40

[channel]
preset = "awgn"
carrier_hz = 28e9

[papr]
qam = 128
mt = 256
paths = 5
max_delay = 40
beamformer = "zf"
threshold_min_db = 0.0
threshold_max_db = 14.0
threshold_step_db = 0.1
ccdf_level = 0.01
"#;

const TAB6_PAPR_DESK: &str = r#"
kind = "papr"
seed = 2026
trials = 2000

[waveforms]
schemes = ["ofdm", "ocdm", "afdm", "otfs", "ddam"]
m = 512
delta_f_hz = 250000.0
m_2d = 32
n_2d = 16
delta_f_2d_hz = 4000000.0
prefix_len = 40

[channel]
preset = "awgn"
carrier_hz = 28e9

[papr]
qam = 128
mt = 64
paths = 5
max_delay = 40
beamformer = "zf"
threshold_min_db = 0.0
threshold_max_db = 14.0
threshold_step_db = 0.1
ccdf_level = 0.01
"#;

const TAB8_UNIT: &str = r#"
kind = "af"
seed = 8
trials = 1

[waveforms]
schemes = ["scm", "ofdm", "ocdm", "otfs", "afdm"]
m = 256
delta_f_hz = 12000.0
m_2d = 16
n_2d = 16
delta_f_2d_hz = 192000.0
prefix_len = 16
afdm_c1 = 0.005859375
afdm_c2 = 0.001953125

[af]
mode = "aperiodic"
include_prefix = false
doppler_oversample = 8
symbols = "all-one"
"#;

const FIG16_CHANMAT: &str = r#"
kind = "chanmat"
seed = 16
trials = 1

[waveforms]
schemes = ["scm", "ofdm", "afdm", "otfs"]
m = 128
delta_f_hz = 12000.0
m_2d = 16
n_2d = 8
delta_f_2d_hz = 96000.0
prefix_len = 8

[channel]
preset = "fig16"
carrier_hz = 24e9

[chanmat]
models = ["tdc", "fdc", "narrowband-ddc"]
threshold = 1e-3
"#;

const FIG21_SWEEP: &str = r#"
kind = "afdm-sweep"
seed = 21
trials = 100

[waveforms]
schemes = ["afdm"]
m = 128
delta_f_hz = 12000.0
prefix_len = 8

[channel]
preset = "fig16"
carrier_hz = 24e9

[sweep]
c1_points = 16
c2_points = 16
snr_db = 15.0
qam = 4
"#;

const OVERHEAD: &str = r#"
kind = "overhead"
seed = 0
trials = 1

[waveforms]
schemes = []
m = 1024
m_2d = 32
n_2d = 32

[overhead]
l_max = 8
alpha_max = 4
xi = 0
cp_ratios = [0.0, 0.0625, 0.125, 0.25, 1.0]
qam = 4
"#;

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "tab5-ber",
        anchor: "BER setup: f_c = 24 GHz, B = 3.072 MHz, 4-QAM, EVA, 540 km/h, M = 1024 (1D), 32x32 (2D), MMSE, 1000 realizations",
        desk_delta: "full scale; see tab5-ber-desk",
        toml: TAB5_BER,
    },
    Preset {
        name: "tab5-ber-desk",
        anchor: "BER setup of tab5-ber at desk scale",
        desk_delta: "M = 256 at 12 kHz (1D), 16x16 at 192 kHz (2D), 200 realizations; bandwidth and Doppler unchanged",
        toml: TAB5_BER_DESK,
    },
    Preset {
        name: "fig17-desk",
        anchor: "BER curves of six waveforms over EVA with MMSE: f_c = 24 GHz, 540 km/h",
        desk_delta: "desk numerology of tab5-ber-desk, 100 realizations, 2.5 dB SNR grid",
        toml: FIG17_DESK,
    },
    Preset {
        name: "tab6-papr",
        anchor: "PAPR setup: f_c = 28 GHz, B = 128 MHz, M = 512, 32x16 (2D), 128-QAM, N_t = 256, P = 5, max delay 40, 10000 realizations",
        desk_delta: "full scale; see tab6-papr-desk",
        toml: TAB6_PAPR,
    },
    Preset {
        name: "tab6-papr-desk",
        anchor: "PAPR CCDF setup of tab6-papr at desk scale",
        desk_delta: "N_t = 64 instead of 256, 2000 frames instead of 10000",
        toml: TAB6_PAPR_DESK,
    },
    Preset {
        name: "tab8-unit",
        anchor: "Ambiguity metrics of all-one frames: SCM, OFDM, OCDM, OTFS, AFDM",
        desk_delta: "M = 256 (1D), 16x16 (2D); AFDM c1 = 3/(2M), c2 = 1/(2M); aperiodic, prefix excluded",
        toml: TAB8_UNIT,
    },
    Preset {
        name: "fig16-chanmat",
        anchor: "Effective channel matrices: five-path channel at 24 GHz, 12 kHz spacing, M = 128, OTFS 16x8",
        desk_delta: "none (already small)",
        toml: FIG16_CHANMAT,
    },
    Preset {
        name: "fig21-sweep",
        anchor: "AFDM BER over (c1, c2): QPSK, M = 128, five-path channel, MMSE",
        desk_delta: "c1 and c2 grids of 16 points spanning [0, 1/(2M)] (grid density chosen here); 100 noise realizations at 15 dB",
        toml: FIG21_SWEEP,
    },
    Preset {
        name: "overhead",
        anchor: "Pilot overhead of AFDM (161) and OTFS (289) for l_max = 8, alpha_max = 4, plus CP overhead and spectral efficiency",
        desk_delta: "none (closed form)",
        toml: OVERHEAD,
    },
];

pub fn find(name: &str) -> Result<&'static Preset, BenchError> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| BenchError::UnknownPreset(name.to_string()))
}
