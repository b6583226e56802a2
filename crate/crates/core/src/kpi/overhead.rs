use crate::{Error, Result};

/// Cyclic-prefix overhead `ρ = T_cp / (T_sym + T_cp)`.
pub fn cp_overhead(t_cp: f64, t_sym: f64) -> Result<f64> {
    if !(t_cp >= 0.0) || !(t_sym > 0.0) {
        return Err(Error::Domain(format!(
            "need T_cp >= 0 and T_sym > 0, got {t_cp} and {t_sym}"
        )));
    }
    Ok(t_cp / (t_sym + t_cp))
}

/// Spectral efficiency `η = (1 - k) log2(M_c) K / ((T_s + T_cp) B)` in bit/s/Hz.
///
/// `k` is the pilot fraction, `k_symbols` the number of data-bearing
/// symbols per block of duration `t_s` plus prefix `t_cp`.
pub fn spectral_efficiency(
    k: f64,
    order: usize,
    k_symbols: usize,
    t_s: f64,
    t_cp: f64,
    bandwidth: f64,
) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("pilot fraction must lie in [0, 1), got {k}")));
    }
    if order < 2 || k_symbols == 0 || !(t_s > 0.0) || !(t_cp >= 0.0) || !(bandwidth > 0.0) {
        return Err(Error::Domain("spectral efficiency inputs must be positive".into()));
    }
    Ok((1.0 - k) * (order as f64).log2() * k_symbols as f64 / ((t_s + t_cp) * bandwidth))
}

/// Schemes with an embedded-pilot overhead formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PilotScheme {
    Afdm,
    Otfs,
}

/// Number of reserved entries and their share of the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PilotOverhead {
    pub count: u64,
    pub fraction: f64,
}

/// Pilot plus guard entries needed for embedded channel estimation.
///
/// AFDM reserves `2(l_max + 1)(2(α_max + ξ) + 1) - 1` chirp-domain entries;
/// OTFS reserves `(4(α_max + ξ) + 1)(2 l_max + 1)` delay-Doppler entries.
pub fn pilot_overhead(scheme: PilotScheme, l_max: u64, alpha_max: u64, xi: u64, frame_size: u64) -> Result<PilotOverhead> {
    if frame_size == 0 {
        return Err(Error::Domain("frame size must be positive".into()));
    }
    let count = match scheme {
        PilotScheme::Afdm => 2 * (l_max + 1) * (2 * (alpha_max + xi) + 1) - 1,
        PilotScheme::Otfs => (4 * (alpha_max + xi) + 1) * (2 * l_max + 1),
    };
    Ok(PilotOverhead {
        count,
        fraction: count as f64 / frame_size as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp_overhead_values() {
        assert_eq!(cp_overhead(0.0, 1.0).unwrap(), 0.0);
        assert!((cp_overhead(0.25, 1.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((cp_overhead(1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(cp_overhead(-1.0, 1.0).is_err());
    }

    #[test]
    fn spectral_efficiency_values() {
        let b = 1e6;
        let k_sym = 64;
        let ts = k_sym as f64 / b;
        assert!((spectral_efficiency(0.0, 4, k_sym, ts, 0.0, b).unwrap() - 2.0).abs() < 1e-12);
        // ρ = 0.2 means T_cp = T_s / 4.
        assert!((spectral_efficiency(0.0, 4, k_sym, ts, ts / 4.0, b).unwrap() - 1.6).abs() < 1e-12);
        assert!((spectral_efficiency(0.1, 4, k_sym, ts, ts / 4.0, b).unwrap() - 1.44).abs() < 1e-12);
    }

    #[test]
    fn pilot_counts() {
        assert_eq!(pilot_overhead(PilotScheme::Afdm, 8, 4, 0, 1024).unwrap().count, 161);
        assert_eq!(pilot_overhead(PilotScheme::Otfs, 8, 4, 0, 1024).unwrap().count, 289);
        assert_eq!(pilot_overhead(PilotScheme::Afdm, 0, 0, 0, 1).unwrap().count, 1);
        assert_eq!(pilot_overhead(PilotScheme::Otfs, 0, 0, 0, 1).unwrap().count, 1);
    }
}
