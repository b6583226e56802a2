//! Per-scheme modulation and demodulation operators.
//!
//! A [`WaveformBundle`] stores `A_tx` (symbols to core samples), `A_rx`
//! (prefix-stripped samples to symbols) and the prefix rule. Every bundle
//! except FBMC is unitary, so `A_rx A_tx = I`; FBMC carries real OQAM
//! symbols and only satisfies `Re{A_rx A_tx} = I`.
//!
//! Two-dimensional symbol frames are vectorized column-major with the delay
//! (or subcarrier) index fastest: symbol `(l, k)` sits at `l + k·M`.

mod ddam;
mod fbmc;
mod oddm;

pub use ddam::{ddam_channel, ddam_precode, ddam_receive, Beamformer, DdamConfig, DdamFrame};
pub use fbmc::{fbmc_prototype, fbmc_synthesis, FbmcSynthesis, HERMITE_COEFFS};
pub use oddm::{ddop_pulse, DdopPulse, DDOP_OVERSAMPLE};

use crate::linalg::{cis, kron, matvec};
use crate::transforms::{
    daft_matrix, dfnt_matrix, dfrft_matrix, dft_matrix, dzt, random_interleaver,
    structured_permutation, wht_matrix, DztDirection, PermutationKind, WalshOrder,
};
use crate::{CMatrix, Complex64, Error, Result};
use std::f64::consts::PI;
use std::fmt;

/// Waveform schemes with a matrix modulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Scm,
    Ofdm,
    DftsOfdm,
    FrftOfdm,
    Ocdm,
    Ifdm,
    Afdm,
    Fbmc,
    McOtfs,
    ZakOtfs,
    Oddm,
    Otsm,
}

impl Scheme {
    pub const ALL: [Scheme; 12] = [
        Scheme::Scm,
        Scheme::Ofdm,
        Scheme::DftsOfdm,
        Scheme::FrftOfdm,
        Scheme::Ocdm,
        Scheme::Ifdm,
        Scheme::Afdm,
        Scheme::Fbmc,
        Scheme::McOtfs,
        Scheme::ZakOtfs,
        Scheme::Oddm,
        Scheme::Otsm,
    ];

    /// Canonical display name.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Scm => "SCM",
            Scheme::Ofdm => "OFDM",
            Scheme::DftsOfdm => "DFT-s-OFDM",
            Scheme::FrftOfdm => "FrFT-OFDM",
            Scheme::Ocdm => "OCDM",
            Scheme::Ifdm => "IFDM",
            Scheme::Afdm => "AFDM",
            Scheme::Fbmc => "FBMC",
            Scheme::McOtfs => "MC-OTFS",
            Scheme::ZakOtfs => "ZAK-OTFS",
            Scheme::Oddm => "ODDM",
            Scheme::Otsm => "OTSM",
        }
    }

    /// Parses a case-insensitive identifier. `otfs` is accepted for MC-OTFS.
    pub fn parse(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let scheme = match key.as_str() {
            "scm" => Scheme::Scm,
            "ofdm" => Scheme::Ofdm,
            "dft-s-ofdm" | "dfts-ofdm" => Scheme::DftsOfdm,
            "frft-ofdm" => Scheme::FrftOfdm,
            "ocdm" => Scheme::Ocdm,
            "ifdm" => Scheme::Ifdm,
            "afdm" => Scheme::Afdm,
            "fbmc" => Scheme::Fbmc,
            "otfs" | "mc-otfs" => Scheme::McOtfs,
            "zak-otfs" => Scheme::ZakOtfs,
            "oddm" => Scheme::Oddm,
            "otsm" => Scheme::Otsm,
            _ => return Err(Error::Config(format!("unknown waveform `{s}`"))),
        };
        Ok(scheme)
    }

    /// True for schemes that multiplex over a two-dimensional grid.
    pub fn is_2d(self) -> bool {
        matches!(
            self,
            Scheme::Fbmc | Scheme::McOtfs | Scheme::ZakOtfs | Scheme::Oddm | Scheme::Otsm
        )
    }

    pub fn domain(self) -> ModulationDomain {
        match self {
            Scheme::Scm => ModulationDomain::Time,
            Scheme::Ofdm | Scheme::DftsOfdm => ModulationDomain::Frequency,
            Scheme::FrftOfdm => ModulationDomain::FractionalFrequency,
            Scheme::Ocdm => ModulationDomain::Chirp,
            Scheme::Ifdm => ModulationDomain::InterleavedFrequency,
            Scheme::Afdm => ModulationDomain::Daft,
            Scheme::Fbmc => ModulationDomain::TimeFrequency,
            Scheme::McOtfs | Scheme::ZakOtfs | Scheme::Oddm => ModulationDomain::DelayDoppler,
            Scheme::Otsm => ModulationDomain::DelaySequency,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Domain in which a scheme places its symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModulationDomain {
    Time,
    Frequency,
    FractionalFrequency,
    Chirp,
    InterleavedFrequency,
    Daft,
    TimeFrequency,
    DelayDoppler,
    DelaySequency,
}

impl ModulationDomain {
    pub fn label(self) -> &'static str {
        match self {
            Self::Time => "Time",
            Self::Frequency => "Frequency",
            Self::FractionalFrequency => "Fractional-frequency",
            Self::Chirp => "Chirp",
            Self::InterleavedFrequency => "Interleave-frequency",
            Self::Daft => "DAFT",
            Self::TimeFrequency => "TF",
            Self::DelayDoppler => "Delay-Doppler",
            Self::DelaySequency => "Delay-sequency",
        }
    }
}

/// Frame dimensions shared by every scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameGeometry {
    /// Subcarriers or delay bins.
    pub m: usize,
    /// Slots or Doppler bins (1 for one-dimensional schemes).
    pub n: usize,
    /// Subcarrier spacing in Hz.
    pub delta_f: f64,
    /// Prefix length in samples.
    pub prefix_len: usize,
}

impl FrameGeometry {
    pub fn new(m: usize, n: usize, delta_f: f64, prefix_len: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSize(format!("frame must be non-empty, got {m}x{n}")));
        }
        if !(delta_f > 0.0) {
            return Err(Error::Domain(format!("subcarrier spacing must be positive, got {delta_f}")));
        }
        Ok(Self {
            m,
            n,
            delta_f,
            prefix_len,
        })
    }

    /// Sample rate `f_s = M Δf`.
    pub fn sample_rate(&self) -> f64 {
        self.m as f64 * self.delta_f
    }

    /// Sample interval `T_s = 1/f_s`.
    pub fn sample_interval(&self) -> f64 {
        1.0 / self.sample_rate()
    }

    /// Number of grid entries `M·N`.
    pub fn grid_size(&self) -> usize {
        self.m * self.n
    }
}

/// Guard-interval rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrefixRule {
    /// Cyclic prefix.
    Cp,
    /// Chirp-periodic prefix with chirp parameter `c1`.
    Cpp { c1: f64 },
    /// No prefix.
    None,
}

impl PrefixRule {
    pub fn label(&self) -> &'static str {
        match self {
            PrefixRule::Cp => "CP",
            PrefixRule::Cpp { .. } => "CPP",
            PrefixRule::None => "none",
        }
    }

    /// Phase applied to the copied sample at prefix position `l ∈ [-L, -1]`.
    fn phase(&self, core_len: usize, l: isize) -> Complex64 {
        match *self {
            PrefixRule::Cpp { c1 } => {
                let m = core_len as f64;
                let l = l as f64;
                cis(-2.0 * PI * c1 * (m * m + 2.0 * m * l))
            }
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

/// Prepends `lp` guard samples to `core` according to `rule`.
pub fn add_prefix(core: &[Complex64], rule: PrefixRule, lp: usize) -> Result<Vec<Complex64>> {
    let m = core.len();
    if lp > m {
        return Err(Error::Config(format!(
            "prefix length {lp} exceeds core length {m}"
        )));
    }
    if rule == PrefixRule::None && lp > 0 {
        return Err(Error::Config("prefix length is nonzero but the rule is `none`".into()));
    }
    let mut out = Vec::with_capacity(m + lp);
    for i in 0..lp {
        let l = i as isize - lp as isize;
        out.push(core[m - lp + i] * rule.phase(m, l));
    }
    out.extend_from_slice(core);
    Ok(out)
}

/// Drops the first `lp` samples.
pub fn remove_prefix(frame: &[Complex64], lp: usize) -> Result<Vec<Complex64>> {
    if lp > frame.len() {
        return Err(Error::Shape(format!(
            "frame of {} samples is shorter than the prefix {lp}",
            frame.len()
        )));
    }
    Ok(frame[lp..].to_vec())
}

/// Field carried by each symbol slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolField {
    Complex,
    /// Real-valued OQAM symbols.
    Real,
}

/// Scheme-specific parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveformParams {
    /// AFDM `c1`; `None` selects `(2⌊α_max⌋ + 1)/(2M)`.
    pub afdm_c1: Option<f64>,
    pub afdm_c2: f64,
    /// Maximum normalized Doppler used for the default `c1`.
    pub afdm_alpha_max: f64,
    /// FrFT-OFDM order `p`.
    pub frft_order: f64,
    pub ifdm_seed: u64,
    /// DFT-s-OFDM allocation width `K` (defaults to `M`).
    pub dfts_width: Option<usize>,
    /// First allocated subcarrier (defaults to `(M - K)/2`).
    pub dfts_start: Option<usize>,
    pub walsh_order: WalshOrder,
    /// ODDM pulse half-support `Q` in delay bins.
    pub oddm_q: usize,
    pub oddm_rolloff: f64,
    /// FBMC prototype support in units of `T0`.
    pub fbmc_overlap: usize,
}

impl Default for WaveformParams {
    fn default() -> Self {
        Self {
            afdm_c1: None,
            afdm_c2: 0.0,
            afdm_alpha_max: 0.0,
            frft_order: 0.5,
            ifdm_seed: 0,
            dfts_width: None,
            dfts_start: None,
            walsh_order: WalshOrder::Sequency,
            oddm_q: 4,
            oddm_rolloff: 0.1,
            fbmc_overlap: 6,
        }
    }
}

impl WaveformParams {
    /// The AFDM `c1` actually used for an `M`-point frame.
    pub fn resolved_c1(&self, m: usize) -> f64 {
        self.afdm_c1
            .unwrap_or_else(|| (2.0 * self.afdm_alpha_max.floor() + 1.0) / (2.0 * m as f64))
    }
}

/// Modulator, demodulator and prefix rule of one scheme.
#[derive(Debug, Clone)]
pub struct WaveformBundle {
    pub scheme: Scheme,
    pub geometry: FrameGeometry,
    /// Symbols to core samples.
    pub a_tx: CMatrix,
    /// Prefix-free samples to symbols.
    pub a_rx: CMatrix,
    pub prefix: PrefixRule,
    pub domain: ModulationDomain,
    pub field: SymbolField,
}

impl WaveformBundle {
    /// Number of symbol slots per frame.
    pub fn symbol_count(&self) -> usize {
        self.a_tx.ncols()
    }

    /// Samples per frame without the prefix.
    pub fn core_len(&self) -> usize {
        self.a_tx.nrows()
    }

    pub fn prefix_len(&self) -> usize {
        match self.prefix {
            PrefixRule::None => 0,
            _ => self.geometry.prefix_len,
        }
    }

    /// Samples per frame including the prefix.
    pub fn frame_len(&self) -> usize {
        self.core_len() + self.prefix_len()
    }

    pub fn is_unitary(&self) -> bool {
        self.field == SymbolField::Complex
    }

    /// Core samples `A_tx x`.
    pub fn modulate(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.symbol_count() {
            return Err(Error::Shape(format!(
                "{} expects {} symbols, got {}",
                self.scheme,
                self.symbol_count(),
                x.len()
            )));
        }
        Ok(matvec(&self.a_tx, x))
    }

    /// Full transmitted frame, prefix included.
    pub fn transmit(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        add_prefix(&self.modulate(x)?, self.prefix, self.prefix_len())
    }

    /// Strips the prefix and maps back to the modulation domain.
    pub fn demodulate(&self, frame: &[Complex64]) -> Result<Vec<Complex64>> {
        if frame.len() != self.frame_len() {
            return Err(Error::Shape(format!(
                "{} expects a frame of {} samples, got {}",
                self.scheme,
                self.frame_len(),
                frame.len()
            )));
        }
        let core = remove_prefix(frame, self.prefix_len())?;
        let mut y = matvec(&self.a_rx, &core);
        if self.field == SymbolField::Real {
            for v in &mut y {
                *v = Complex64::new(v.re, 0.0);
            }
        }
        Ok(y)
    }

    /// `R_add · A_tx`, the frame-length transmit matrix.
    pub fn prefixed_tx_matrix(&self) -> CMatrix {
        let lp = self.prefix_len();
        let core = self.core_len();
        let mut t = CMatrix::zeros(core + lp, self.symbol_count());
        for j in 0..self.symbol_count() {
            for i in 0..lp {
                let l = i as isize - lp as isize;
                t[(i, j)] = self.a_tx[(core - lp + i, j)] * self.prefix.phase(core, l);
            }
            for i in 0..core {
                t[(lp + i, j)] = self.a_tx[(i, j)];
            }
        }
        t
    }
}

fn require_1d(scheme: Scheme, g: &FrameGeometry) -> Result<()> {
    if g.n != 1 {
        return Err(Error::InvalidSize(format!(
            "{scheme} is one-dimensional and needs N = 1, got N = {}",
            g.n
        )));
    }
    Ok(())
}

fn matrix_from_columns(size: usize, f: impl Fn(&[Complex64]) -> Result<Vec<Complex64>>) -> Result<CMatrix> {
    let mut out = CMatrix::zeros(size, size);
    let mut e = vec![Complex64::new(0.0, 0.0); size];
    for j in 0..size {
        e[j] = Complex64::new(1.0, 0.0);
        let col = f(&e)?;
        for (i, v) in col.into_iter().enumerate() {
            out[(i, j)] = v;
        }
        e[j] = Complex64::new(0.0, 0.0);
    }
    Ok(out)
}

/// Builds the operator bundle of `scheme` on `geometry`.
pub fn build_waveform(scheme: Scheme, geometry: FrameGeometry, params: &WaveformParams) -> Result<WaveformBundle> {
    let g = geometry;
    let m = g.m;
    let n = g.n;
    let mut prefix = PrefixRule::Cp;
    let mut field = SymbolField::Complex;
    let (a_tx, a_rx) = match scheme {
        Scheme::Scm => {
            require_1d(scheme, &g)?;
            (CMatrix::identity(m, m), CMatrix::identity(m, m))
        }
        Scheme::Ofdm => {
            require_1d(scheme, &g)?;
            let f = dft_matrix(m)?;
            (f.adjoint(), f)
        }
        Scheme::DftsOfdm => {
            require_1d(scheme, &g)?;
            let k = params.dfts_width.unwrap_or(m);
            if k == 0 || k > m {
                return Err(Error::InvalidSize(format!(
                    "DFT-s-OFDM allocation width {k} must lie in 1..={m}"
                )));
            }
            let start = params.dfts_start.unwrap_or((m - k) / 2);
            if start + k > m {
                return Err(Error::InvalidSize(format!(
                    "DFT-s-OFDM allocation {start}..{} exceeds {m} subcarriers",
                    start + k
                )));
            }
            let mut map = CMatrix::zeros(m, k);
            for i in 0..k {
                map[(start + i, i)] = Complex64::new(1.0, 0.0);
            }
            let tx = dft_matrix(m)?.adjoint() * map * dft_matrix(k)?;
            let rx = tx.adjoint();
            (tx, rx)
        }
        Scheme::FrftOfdm => {
            require_1d(scheme, &g)?;
            let f = dfrft_matrix(m, params.frft_order)?;
            (f.adjoint(), f)
        }
        Scheme::Ocdm => {
            require_1d(scheme, &g)?;
            let phi = dfnt_matrix(m)?.phi;
            (phi.adjoint(), phi)
        }
        Scheme::Ifdm => {
            require_1d(scheme, &g)?;
            let pi = random_interleaver(m, params.ifdm_seed)?.to_matrix();
            let f = dft_matrix(m)?;
            let tx = &pi * f.adjoint();
            let rx = f * pi.transpose();
            (tx, rx)
        }
        Scheme::Afdm => {
            require_1d(scheme, &g)?;
            let c1 = params.resolved_c1(m);
            prefix = PrefixRule::Cpp { c1 };
            let a = daft_matrix(m, c1, params.afdm_c2)?;
            (a.adjoint(), a)
        }
        Scheme::Fbmc => {
            prefix = PrefixRule::None;
            field = SymbolField::Real;
            let syn = fbmc_synthesis(&g, params.fbmc_overlap)?;
            let rx = syn.g.adjoint();
            (syn.g, rx)
        }
        Scheme::McOtfs => {
            // Heisenberg transform with rectangular pulses after the ISFFT.
            let im = CMatrix::identity(n, n);
            let fm = dft_matrix(m)?;
            let fn_ = dft_matrix(n)?;
            let heisenberg = kron(&im, &fm.adjoint());
            let isfft = kron(&fn_.adjoint(), &fm);
            let tx = heisenberg * isfft;
            let rx = tx.adjoint();
            (tx, rx)
        }
        Scheme::ZakOtfs => {
            let size = m * n;
            let tx = matrix_from_columns(size, |e| dzt(e, m, n, DztDirection::Inverse))?;
            let rx = matrix_from_columns(size, |e| dzt(e, m, n, DztDirection::Forward))?;
            (tx, rx)
        }
        Scheme::Oddm => {
            if 2 * params.oddm_q >= m {
                return Err(Error::Config(format!(
                    "ODDM pulse needs 2Q < M, got Q = {} and M = {m}",
                    params.oddm_q
                )));
            }
            if !(0.0..=1.0).contains(&params.oddm_rolloff) {
                return Err(Error::Config(format!(
                    "ODDM rolloff must lie in [0, 1], got {}",
                    params.oddm_rolloff
                )));
            }
            let pi = structured_permutation(PermutationKind::Oddm, m, n)?.to_matrix();
            let shuffle = structured_permutation(PermutationKind::Shuffle, m, n)?.to_matrix();
            let inner = kron(&CMatrix::identity(m, m), &dft_matrix(n)?.adjoint());
            let tx = pi * inner * shuffle;
            let rx = tx.adjoint();
            (tx, rx)
        }
        Scheme::Otsm => {
            let w = wht_matrix(n, params.walsh_order)?;
            let shuffle = structured_permutation(PermutationKind::Shuffle, m, n)?.to_matrix();
            let tx = kron(&w, &CMatrix::identity(m, m)) * shuffle;
            let rx = tx.transpose();
            (tx, rx)
        }
    };
    if prefix != PrefixRule::None && g.prefix_len > a_tx.nrows() {
        return Err(Error::Config(format!(
            "prefix length {} exceeds core length {}",
            g.prefix_len,
            a_tx.nrows()
        )));
    }
    Ok(WaveformBundle {
        scheme,
        geometry: g,
        a_tx,
        a_rx,
        prefix,
        domain: scheme.domain(),
        field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity_error, max_abs_diff};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geo(m: usize, n: usize, lp: usize) -> FrameGeometry {
        FrameGeometry::new(m, n, 15e3, lp).unwrap()
    }

    #[test]
    fn ofdm_first_column() {
        let b = build_waveform(Scheme::Ofdm, geo(4, 1, 0), &WaveformParams::default()).unwrap();
        let s = b.modulate(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        for v in s {
            assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn afdm_zero_chirp_is_ofdm() {
        let p = WaveformParams {
            afdm_c1: Some(0.0),
            afdm_c2: 0.0,
            ..Default::default()
        };
        let a = build_waveform(Scheme::Afdm, geo(16, 1, 4), &p).unwrap();
        let o = build_waveform(Scheme::Ofdm, geo(16, 1, 4), &p).unwrap();
        assert_eq!(a.a_tx, o.a_tx);
    }

    #[test]
    fn dfts_full_allocation_is_identity() {
        let b = build_waveform(Scheme::DftsOfdm, geo(8, 1, 0), &WaveformParams::default()).unwrap();
        assert!(max_abs_diff(&b.a_tx, &CMatrix::identity(8, 8)) < 1e-12);
        let p = WaveformParams {
            dfts_width: Some(4),
            ..Default::default()
        };
        let b = build_waveform(Scheme::DftsOfdm, geo(8, 1, 0), &p).unwrap();
        assert_eq!(b.a_tx.shape(), (8, 4));
        assert!(identity_error(&(&b.a_rx * &b.a_tx)) < 1e-12);
        let bad = WaveformParams {
            dfts_width: Some(4),
            dfts_start: Some(5),
            ..Default::default()
        };
        assert!(build_waveform(Scheme::DftsOfdm, geo(8, 1, 0), &bad).is_err());
    }

    #[test]
    fn mc_otfs_two_by_two() {
        let b = build_waveform(Scheme::McOtfs, geo(2, 2, 0), &WaveformParams::default()).unwrap();
        let s = b.modulate(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = 1.0 / 2f64.sqrt();
        let expected = [c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)];
        for (a, b) in s.iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn otsm_structure() {
        let b = build_waveform(Scheme::Otsm, geo(2, 2, 0), &WaveformParams::default()).unwrap();
        assert!(identity_error(&(&b.a_tx * b.a_tx.adjoint())) <= 1e-12);
        assert!(b.a_tx.iter().all(|v| v.im == 0.0));
        let b = build_waveform(Scheme::Otsm, geo(4, 8, 0), &WaveformParams::default()).unwrap();
        let shuffle = structured_permutation(PermutationKind::Shuffle, 4, 8).unwrap().to_matrix();
        let core = &b.a_tx * shuffle.transpose();
        assert!(identity_error(&(&core * &core)) <= 1e-12);
        assert!(matches!(
            build_waveform(Scheme::Otsm, geo(4, 6, 0), &WaveformParams::default()),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn one_dimensional_schemes_reject_slots() {
        assert!(matches!(
            build_waveform(Scheme::Ofdm, geo(8, 2, 0), &WaveformParams::default()),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn prefix_examples() {
        let core = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        let framed = add_prefix(&core, PrefixRule::Cp, 2).unwrap();
        let expected: Vec<Complex64> = [3.0, 4.0, 1.0, 2.0, 3.0, 4.0].iter().map(|&v| c(v, 0.0)).collect();
        assert_eq!(framed, expected);
        assert_eq!(add_prefix(&core, PrefixRule::Cpp { c1: 0.0 }, 3).unwrap(), add_prefix(&core, PrefixRule::Cp, 3).unwrap());
        assert_eq!(remove_prefix(&framed, 2).unwrap(), core.to_vec());
        assert!(matches!(add_prefix(&core, PrefixRule::Cp, 5), Err(Error::Config(_))));
    }

    #[test]
    fn cpp_phase_matches_formula() {
        let m = 8usize;
        let c1 = 0.37;
        let core: Vec<Complex64> = (0..m).map(|i| c(i as f64 + 1.0, -(i as f64))).collect();
        let framed = add_prefix(&core, PrefixRule::Cpp { c1 }, 3).unwrap();
        for (i, l) in (-3isize..0).enumerate() {
            let mf = m as f64;
            let lf = l as f64;
            let expected = core[(m as isize + l) as usize] * cis(-2.0 * PI * c1 * (mf * mf + 2.0 * mf * lf));
            assert!((framed[i] - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn domain_labels() {
        assert_eq!(Scheme::Scm.domain().label(), "Time");
        assert_eq!(Scheme::Afdm.domain().label(), "DAFT");
        assert_eq!(Scheme::Otsm.domain().label(), "Delay-sequency");
        assert_eq!(Scheme::Oddm.domain().label(), "Delay-Doppler");
        assert_eq!(Scheme::parse("otfs").unwrap(), Scheme::McOtfs);
        assert!(Scheme::parse("ofdma").is_err());
        for s in Scheme::ALL {
            assert_eq!(Scheme::parse(s.name()).unwrap(), s);
        }
    }
}
