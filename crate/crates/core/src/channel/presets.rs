//! Named path profiles and a plain-text profile loader.
//!
//! The EPA, EVA and ETU tables are the 3GPP TS 36.104 (Annex B.2) extended
//! power-delay profiles. Their nominal maximum Doppler frequencies are the
//! usual pairings EPA 5 Hz, EVA 70 Hz and ETU 300 Hz.

use super::{Path, PathSet};
use crate::{Complex64, Error, Result};

/// Speed of light used for velocity to Doppler conversion (m/s).
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Carrier frequency of the five-path illustrative channel (Hz).
pub const FIG16_CARRIER_HZ: f64 = 24.0e9;

/// `(delay_ns, power_db)` pairs of the extended pedestrian A profile.
pub const EPA: [(f64, f64); 7] = [
    (0.0, 0.0),
    (30.0, -1.0),
    (70.0, -2.0),
    (90.0, -3.0),
    (110.0, -8.0),
    (190.0, -17.2),
    (410.0, -20.8),
];

/// `(delay_ns, power_db)` pairs of the extended vehicular A profile.
pub const EVA: [(f64, f64); 9] = [
    (0.0, 0.0),
    (30.0, -1.5),
    (150.0, -1.4),
    (310.0, -3.6),
    (370.0, -0.6),
    (710.0, -9.1),
    (1090.0, -7.0),
    (1730.0, -12.0),
    (2510.0, -16.9),
];

/// `(delay_ns, power_db)` pairs of the extended typical urban profile.
pub const ETU: [(f64, f64); 9] = [
    (0.0, -1.0),
    (50.0, -1.0),
    (120.0, -1.0),
    (200.0, 0.0),
    (230.0, 0.0),
    (500.0, 0.0),
    (1600.0, -3.0),
    (2300.0, -5.0),
    (5000.0, -7.0),
];

/// Delays (µs) of the five-path illustrative channel.
pub const FIG16_DELAYS_US: [f64; 5] = [0.0, 0.0, 0.39, 1.17, 2.34];
/// Radial velocities (km/h) of the five-path illustrative channel.
pub const FIG16_VELOCITIES_KMH: [f64; 5] = [0.0, -1080.0, 648.0, 270.0, 108.0];

/// Channel profile names understood by [`channel_preset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Epa,
    Eva,
    Etu,
    Fig16,
    Awgn,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [Self::Epa, Self::Eva, Self::Etu, Self::Fig16, Self::Awgn];

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "EPA" => Ok(Self::Epa),
            "EVA" => Ok(Self::Eva),
            "ETU" => Ok(Self::Etu),
            "FIG16" => Ok(Self::Fig16),
            "AWGN" => Ok(Self::Awgn),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Epa => "EPA",
            Self::Eva => "EVA",
            Self::Etu => "ETU",
            Self::Fig16 => "FIG16",
            Self::Awgn => "AWGN",
        }
    }

    /// Nominal maximum Doppler frequency in Hz.
    pub fn nominal_max_doppler_hz(self) -> f64 {
        match self {
            Self::Epa => 5.0,
            Self::Eva => 70.0,
            Self::Etu => 300.0,
            Self::Fig16 => velocity_to_doppler(1080.0, FIG16_CARRIER_HZ).abs(),
            Self::Awgn => 0.0,
        }
    }
}

/// Doppler shift (Hz) of a radial velocity in km/h at carrier `fc`.
pub fn velocity_to_doppler(velocity_kmh: f64, fc: f64) -> f64 {
    velocity_kmh / 3.6 * fc / SPEED_OF_LIGHT
}

fn from_power_delay(table: &[(f64, f64)]) -> PathSet {
    let paths = table
        .iter()
        .map(|&(delay_ns, power_db)| Path {
            gain: Complex64::new(10f64.powf(power_db / 20.0), 0.0),
            delay_s: delay_ns * 1e-9,
            doppler_hz: 0.0,
            scale: 0.0,
        })
        .collect();
    let mut set = PathSet::new(paths, 0.0);
    set.normalize();
    set
}

/// Returns the named profile with deterministic gains (square root of the
/// linear profile power, normalized to unit total power) and zero Doppler,
/// except for the five-path channel whose Dopplers follow from its velocities.
pub fn channel_preset(name: &str) -> Result<PathSet> {
    Ok(preset(PresetName::parse(name)?))
}

/// Typed variant of [`channel_preset`].
pub fn preset(name: PresetName) -> PathSet {
    match name {
        PresetName::Epa => from_power_delay(&EPA),
        PresetName::Eva => from_power_delay(&EVA),
        PresetName::Etu => from_power_delay(&ETU),
        PresetName::Awgn => PathSet::new(
            vec![Path {
                gain: Complex64::new(1.0, 0.0),
                delay_s: 0.0,
                doppler_hz: 0.0,
                scale: 0.0,
            }],
            0.0,
        ),
        PresetName::Fig16 => {
            let g = Complex64::new(1.0 / 5f64.sqrt(), 0.0);
            let paths = FIG16_DELAYS_US
                .iter()
                .zip(FIG16_VELOCITIES_KMH)
                .map(|(&d, v)| {
                    let nu = velocity_to_doppler(v, FIG16_CARRIER_HZ);
                    Path {
                        gain: g,
                        delay_s: d * 1e-6,
                        doppler_hz: nu,
                        scale: nu / FIG16_CARRIER_HZ,
                    }
                })
                .collect();
            let mut set = PathSet::new(paths, FIG16_CARRIER_HZ);
            set.normalized = true;
            set
        }
    }
}

/// Parses a path profile from text.
///
/// One path per line with three whitespace- or comma-separated fields:
/// `power_dB delay_s motion`. The motion field is a Doppler frequency in Hz
/// (bare number or `Hz` suffix) or a radial velocity with a `kmh` suffix,
/// which is converted at `carrier_hz`. Blank lines and `#` comments are
/// skipped. Gains are the square roots of the linear powers, normalized to
/// unit total power.
///
/// ```text
/// # power_dB  delay_s   motion
/// 0.0         0         0
/// -3.0        0.39e-6   648kmh
/// -6.0        1.17e-6   -1200Hz
/// ```
pub fn parse_profile(text: &str, carrier_hz: f64) -> Result<PathSet> {
    let mut paths = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 3 {
            return Err(Error::Profile {
                line: line_no,
                msg: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let num = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::Profile {
                line: line_no,
                msg: format!("cannot parse {what} `{s}`"),
            })
        };
        let power_db = num(fields[0], "power_dB")?;
        let delay_s = num(fields[1], "delay_s")?;
        if delay_s < 0.0 {
            return Err(Error::Profile {
                line: line_no,
                msg: "negative delay".into(),
            });
        }
        let motion = fields[2];
        let doppler_hz = if let Some(v) = motion.strip_suffix("kmh") {
            if carrier_hz <= 0.0 {
                return Err(Error::Profile {
                    line: line_no,
                    msg: "velocity given but carrier frequency is not positive".into(),
                });
            }
            velocity_to_doppler(num(v, "velocity_kmh")?, carrier_hz)
        } else {
            num(motion.strip_suffix("Hz").unwrap_or(motion), "doppler_Hz")?
        };
        let scale = if carrier_hz > 0.0 { doppler_hz / carrier_hz } else { 0.0 };
        paths.push(Path {
            gain: Complex64::new(10f64.powf(power_db / 20.0), 0.0),
            delay_s,
            doppler_hz,
            scale,
        });
    }
    if paths.is_empty() {
        return Err(Error::Profile {
            line: 0,
            msg: "profile contains no paths".into(),
        });
    }
    let mut set = PathSet::new(paths, carrier_hz);
    set.normalize();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eva_summary_statistics() {
        let eva = channel_preset("EVA").unwrap();
        assert_eq!(eva.len(), 9);
        assert!((eva.max_delay_s() - 2510e-9).abs() < 1e-18);
        assert!((eva.total_power() - 1.0).abs() < 1e-12);
        assert_eq!(channel_preset("epa").unwrap().len(), 7);
        assert!((channel_preset("ETU").unwrap().max_delay_s() - 5e-6).abs() < 1e-18);
    }

    #[test]
    fn fig16_doppler() {
        let set = channel_preset("FIG16").unwrap();
        assert_eq!(set.len(), 5);
        assert!((set.paths[1].doppler_hz - (-24_000.0)).abs() < 1e-9);
        for p in &set.paths {
            assert!((p.doppler_hz - p.scale * set.carrier_hz).abs() < 1e-9);
        }
    }

    #[test]
    fn awgn_and_unknown() {
        let a = channel_preset("AWGN").unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.paths[0].gain, Complex64::new(1.0, 0.0));
        assert_eq!(a.paths[0].delay_s, 0.0);
        assert!(matches!(channel_preset("XYZ"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn profile_parsing() {
        let text = "# comment\n0 0 0\n-3.0, 0.39e-6, 648kmh\n\n-6 1.17e-6 -1200Hz # trailing\n";
        let set = parse_profile(text, 24e9).unwrap();
        assert_eq!(set.len(), 3);
        assert!((set.paths[1].doppler_hz - 14_400.0).abs() < 1e-9);
        assert_eq!(set.paths[2].doppler_hz, -1200.0);
        assert!((set.total_power() - 1.0).abs() < 1e-12);
        assert!(matches!(parse_profile("0 0", 1.0), Err(Error::Profile { line: 1, .. })));
        assert!(matches!(parse_profile("0 -1 0", 1.0), Err(Error::Profile { .. })));
        assert!(matches!(parse_profile("# none\n", 1.0), Err(Error::Profile { .. })));
    }
}
