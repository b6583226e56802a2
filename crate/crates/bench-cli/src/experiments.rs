//! Executes validated configurations and renders their CSV artifacts.

use crate::config::{parse_af_mode, parse_beamformer, parse_qam, ExperimentKind, SchemeChoice, Validated};
use crate::error::BenchError;
use mcwave::channel::{effective_channel, preset, sparsity_metrics, ChannelModelKind, ChannelSpec};
use mcwave::detection::Constellation;
use mcwave::kpi::{
    ccdf, ddam_papr_samples, frame_af_metrics, papr_at_ccdf, papr_samples, pilot_overhead, run_ber,
    spectral_efficiency, cp_overhead, AfOptions, BerConfig, DdamPaprSetup, Detector, PilotScheme,
};
use mcwave::seed::{Seed, Stream};
use mcwave::waveforms::{build_waveform, FrameGeometry, Scheme, WaveformBundle, WaveformParams};
use mcwave::Complex64;
use rand::Rng;
use serde_json::{json, Value};
use std::fmt::Write;

/// One output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Files produced by a run and the quantities derived along the way.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub artifacts: Vec<Artifact>,
    pub derived: Value,
}

/// Formats a number with 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn tag(s: SchemeChoice) -> String {
    s.name().to_ascii_lowercase()
}

fn geometry(v: &Validated, scheme: Scheme) -> Result<FrameGeometry, BenchError> {
    let w = &v.config.waveforms;
    let g = if scheme.is_2d() {
        FrameGeometry::new(w.m_2d as usize, w.n_2d as usize, w.delta_f_2d_hz, w.prefix_len as usize)
    } else {
        FrameGeometry::new(w.m as usize, 1, w.delta_f_hz, w.prefix_len as usize)
    };
    Ok(g?)
}

fn params(v: &Validated) -> WaveformParams {
    let w = &v.config.waveforms;
    WaveformParams {
        afdm_c1: w.afdm_c1,
        afdm_c2: w.afdm_c2,
        afdm_alpha_max: w
            .afdm_alpha_max
            .unwrap_or_else(|| alpha_max(v).unwrap_or(0.0)),
        frft_order: w.frft_order,
        ifdm_seed: w.ifdm_seed,
        dfts_width: w.dfts_width.map(|k| k as usize),
        oddm_q: w.oddm_q as usize,
        oddm_rolloff: w.oddm_rolloff,
        fbmc_overlap: w.fbmc_overlap as usize,
        ..WaveformParams::default()
    }
}

/// Largest Doppler of the configured channel, in Hz.
fn max_doppler(v: &Validated) -> f64 {
    v.max_doppler_hz.unwrap_or_else(|| {
        preset(v.channel_preset)
            .paths
            .iter()
            .map(|p| p.doppler_hz.abs())
            .fold(0.0, f64::max)
    })
}

/// Maximum Doppler normalized by the 1D subcarrier spacing.
fn alpha_max(v: &Validated) -> Option<f64> {
    Some(max_doppler(v) / v.config.waveforms.delta_f_hz)
}

fn bundle(v: &Validated, scheme: Scheme, p: &WaveformParams) -> Result<WaveformBundle, BenchError> {
    Ok(build_waveform(scheme, geometry(v, scheme)?, p)?)
}

fn channel_spec(v: &Validated, kind: ChannelModelKind) -> ChannelSpec {
    let mut spec = ChannelSpec::for_preset(v.channel_preset, kind, v.max_doppler_hz);
    if let Some(r) = v.config.channel.rayleigh {
        spec.rayleigh = r;
    }
    spec
}

fn frame_schemes(v: &Validated) -> impl Iterator<Item = (SchemeChoice, Scheme)> + '_ {
    v.schemes.iter().filter_map(|&c| match c {
        SchemeChoice::Frame(s) => Some((c, s)),
        SchemeChoice::Ddam => None,
    })
}

/// Common derived quantities recorded in every manifest.
fn base_derived(v: &Validated) -> Value {
    let w = &v.config.waveforms;
    let fs_1d = w.m as f64 * w.delta_f_hz;
    let fs_2d = w.m_2d as f64 * w.delta_f_2d_hz;
    let profile = preset(v.channel_preset);
    let nu = max_doppler(v);
    json!({
        "sample_rate_1d_hz": fs_1d,
        "sample_rate_2d_hz": fs_2d,
        "channel_preset": v.channel_preset.as_str(),
        "channel_model": v.channel_model.as_str(),
        "max_doppler_hz": nu,
        "alpha_max_1d": nu / w.delta_f_hz,
        "alpha_max_2d": nu / (w.delta_f_2d_hz / w.n_2d as f64),
        "profile_normalized_delays_1d": profile.paths.iter().map(|p| p.delay_s * fs_1d).collect::<Vec<_>>(),
        "profile_normalized_dopplers_1d": profile.paths.iter().map(|p| p.doppler_hz / w.delta_f_hz).collect::<Vec<_>>(),
        "snr_convention": "SNR = Es/N0 with unit-energy symbols; noise CN(0, 10^(-SNR/10)) per time sample",
        "trials": v.trials,
    })
}

pub fn execute(v: &Validated) -> Result<RunOutput, BenchError> {
    let mut derived = base_derived(v);
    let (artifacts, extra) = match v.config.kind {
        ExperimentKind::Ber => run_ber_experiment(v)?,
        ExperimentKind::Papr => run_papr(v)?,
        ExperimentKind::Af => run_af(v)?,
        ExperimentKind::Chanmat => run_chanmat(v)?,
        ExperimentKind::AfdmSweep => run_sweep(v)?,
        ExperimentKind::Overhead => run_overhead(v)?,
    };
    if let (Value::Object(base), Value::Object(more)) = (&mut derived, extra) {
        base.extend(more);
    }
    Ok(RunOutput { artifacts, derived })
}

type Stage = Result<(Vec<Artifact>, Value), BenchError>;

fn run_ber_experiment(v: &Validated) -> Stage {
    let b = v.config.ber.clone().unwrap_or_default();
    let cfg = BerConfig {
        channel: channel_spec(v, v.channel_model),
        detector: Detector::parse(&b.detector)?,
        constellation: parse_qam("ber.qam", b.qam)?,
        snr_db: b.snr_db.clone(),
        trials: v.trials,
        seed: Seed(v.config.seed),
    };
    let p = params(v);
    let mut artifacts = Vec::new();
    let mut digests = serde_json::Map::new();
    let mut c1 = serde_json::Map::new();
    for (choice, scheme) in frame_schemes(v) {
        let bd = bundle(v, scheme, &p)?;
        let run = run_ber(&bd, &cfg)?;
        digests.insert(choice.name().into(), json!(format!("{:016x}", run.stream_digest)));
        if scheme == Scheme::Afdm {
            c1.insert("afdm_c1".into(), json!(p.resolved_c1(bd.geometry.m)));
        }
        artifacts.push(Artifact {
            name: format!("ber_{}.csv", tag(choice)),
            contents: csv(
                "snr_db,bit_errors,bits,ber",
                run.points
                    .iter()
                    .map(|pt| format!("{},{},{},{}", num(pt.snr_db), pt.bit_errors, pt.bits, num(pt.ber))),
            ),
        });
    }
    let mut extra = json!({
        "detector": cfg.detector.as_str(),
        "stream_digests": digests,
        "bit_stream": "Bits stream per trial shared by all schemes",
    });
    extra.as_object_mut().unwrap().extend(c1);
    Ok((artifacts, extra))
}

fn thresholds(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

fn run_papr(v: &Validated) -> Stage {
    let ps = v.config.papr.clone().unwrap_or_default();
    let constellation = parse_qam("papr.qam", ps.qam)?;
    let grid = thresholds(ps.threshold_min_db, ps.threshold_max_db, ps.threshold_step_db);
    let seed = Seed(v.config.seed);
    let p = params(v);
    let mut artifacts = Vec::new();
    let mut summary = Vec::new();
    for &choice in &v.schemes {
        let values = match choice {
            SchemeChoice::Frame(s) => papr_samples(&bundle(v, s, &p)?, &constellation, v.trials, seed)?,
            SchemeChoice::Ddam => {
                let w = &v.config.waveforms;
                let setup = DdamPaprSetup {
                    mt: ps.mt as usize,
                    paths: ps.paths as usize,
                    max_delay: ps.max_delay as usize,
                    symbols: w.m as usize,
                    beamformer: parse_beamformer(&ps.beamformer)?,
                    sample_rate: w.m as f64 * w.delta_f_hz,
                    max_doppler_hz: v.max_doppler_hz.unwrap_or(0.0),
                };
                ddam_papr_samples(&setup, &constellation, v.trials, seed)?
            }
        };
        let level = papr_at_ccdf(&values, ps.ccdf_level)?;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        summary.push(format!(
            "{},{},{},{},{}",
            choice.name(),
            values.len(),
            num(ps.ccdf_level),
            num(level),
            num(mean)
        ));
        artifacts.push(Artifact {
            name: format!("papr_ccdf_{}.csv", tag(choice)),
            contents: csv(
                "papr_db,ccdf",
                ccdf(&values, &grid).iter().map(|c| format!("{},{}", num(c.papr_db), num(c.ccdf))),
            ),
        });
    }
    artifacts.push(Artifact {
        name: "papr_summary.csv".into(),
        contents: csv("scheme,samples,ccdf_level,papr_at_level_db,mean_papr_db", summary),
    });
    Ok((
        artifacts,
        json!({
            "papr_convention": "per-frame PAPR over prefix-free core samples; DDAM per-antenna PAPR over the precoded span, pooled over antennas",
            "ccdf_estimator": "empirical survivor function, points below 10/samples omitted",
        }),
    ))
}

fn run_af(v: &Validated) -> Stage {
    let a = v.config.af.clone().unwrap_or_default();
    let opts = AfOptions {
        mode: parse_af_mode(&a.mode)?,
        include_prefix: a.include_prefix,
        doppler_oversample: a.doppler_oversample as usize,
    };
    let p = params(v);
    let qpsk = Constellation::qam(4)?;
    let mut rows = Vec::new();
    for (choice, scheme) in frame_schemes(v) {
        let bd = bundle(v, scheme, &p)?;
        let symbols: Vec<Complex64> = if a.symbols == "all-one" {
            vec![Complex64::new(1.0, 0.0); bd.symbol_count()]
        } else {
            let mut rng = Seed(v.config.seed).rng(Stream::Symbols, &[0]);
            (0..bd.symbol_count())
                .map(|_| qpsk.points()[rng.gen_range(0..4)])
                .collect()
        };
        let m = frame_af_metrics(&bd, &symbols, opts)?;
        rows.push(format!(
            "{},{},{},{},{},{},{},{},{}",
            choice.name(),
            num(m.delay.width_3db),
            num(m.doppler.width_3db),
            num(m.delay.pslr_db),
            num(m.delay.islr_db),
            num(m.doppler.pslr_db),
            num(m.doppler.islr_db),
            m.delay.no_null,
            m.doppler.no_null
        ));
    }
    Ok((
        vec![Artifact {
            name: "af_metrics.csv".into(),
            contents: csv(
                "scheme,delta_tau_3db,delta_nu_3db,pslr_tau_db,islr_tau_db,pslr_nu_db,islr_nu_db,no_null_tau,no_null_nu",
                rows,
            ),
        }],
        json!({
            "af_mode": opts.mode.as_str(),
            "af_include_prefix": opts.include_prefix,
            "af_doppler_oversample": opts.doppler_oversample,
            "af_symbols": a.symbols,
            "af_mainlobe_rule": mcwave::kpi::MAINLOBE_RULE,
            "af_width_units": "delay width per frame length, Doppler width per sample rate",
            "afdm_c1": p.resolved_c1(v.config.waveforms.m as usize),
            "afdm_c2": p.afdm_c2,
        }),
    ))
}

fn run_chanmat(v: &Validated) -> Stage {
    let cm = v.config.chanmat.clone().unwrap_or_default();
    let p = params(v);
    let mut artifacts = Vec::new();
    let mut summary = Vec::new();
    for (choice, scheme) in frame_schemes(v) {
        let bd = bundle(v, scheme, &p)?;
        for model in &cm.models {
            let kind = ChannelModelKind::parse(model)?;
            let real = channel_spec(v, kind).realize(
                Seed(v.config.seed),
                0,
                bd.geometry.sample_rate(),
                bd.geometry.delta_f,
            )?;
            let h = effective_channel(&bd, &real)?;
            let s = sparsity_metrics(&h, cm.threshold)?;
            summary.push(format!(
                "{},{},{},{},{}",
                choice.name(),
                kind.as_str(),
                h.nrows(),
                num(s.support_fraction),
                s.max_row_support
            ));
            let mut body = String::new();
            for i in 0..h.nrows() {
                let row: Vec<String> = (0..h.ncols()).map(|j| num(h[(i, j)].norm())).collect();
                writeln!(body, "{}", row.join(",")).expect("writing to a String");
            }
            artifacts.push(Artifact {
                name: format!("chanmat_{}_{}.csv", tag(choice), kind.as_str()),
                contents: body,
            });
        }
    }
    artifacts.push(Artifact {
        name: "chanmat_summary.csv".into(),
        contents: csv("scheme,model,size,support_fraction,max_row_support", summary),
    });
    Ok((
        artifacts,
        json!({
            "chanmat_threshold": cm.threshold,
            "chanmat_values": "|H_eff| entries, row-major, one matrix row per line",
            "afdm_c1": p.resolved_c1(v.config.waveforms.m as usize),
        }),
    ))
}

fn grid(points: usize, max: f64) -> Vec<f64> {
    if points == 1 {
        return vec![0.0];
    }
    (0..points).map(|i| max * i as f64 / (points - 1) as f64).collect()
}

fn run_sweep(v: &Validated) -> Stage {
    let s = v.config.sweep.clone().unwrap_or_default();
    let m = v.config.waveforms.m as usize;
    let cfg = BerConfig {
        channel: channel_spec(v, v.channel_model),
        detector: Detector::Mmse,
        constellation: parse_qam("sweep.qam", s.qam)?,
        snr_db: vec![s.snr_db],
        trials: v.trials,
        seed: Seed(v.config.seed),
    };
    let top = 1.0 / (2.0 * m as f64);
    let mut rows = Vec::new();
    for &c1 in &grid(s.c1_points as usize, top) {
        for &c2 in &grid(s.c2_points as usize, top) {
            let p = WaveformParams {
                afdm_c1: Some(c1),
                afdm_c2: c2,
                ..params(v)
            };
            let run = run_ber(&bundle(v, Scheme::Afdm, &p)?, &cfg)?;
            let pt = run.points[0];
            rows.push(format!("{},{},{},{},{}", num(c1), num(c2), pt.bit_errors, pt.bits, num(pt.ber)));
        }
    }
    Ok((
        vec![Artifact {
            name: "afdm_sweep.csv".into(),
            contents: csv("c1,c2,bit_errors,bits,ber", rows),
        }],
        json!({
            "sweep_range": "c1 and c2 on uniform grids over [0, 1/(2M)] inclusive",
            "sweep_snr_db": s.snr_db,
        }),
    ))
}

fn run_overhead(v: &Validated) -> Stage {
    let o = v.config.overhead.clone().unwrap_or_default();
    let w = &v.config.waveforms;
    let (l, a, xi) = (o.l_max as u64, o.alpha_max as u64, o.xi as u64);
    let afdm = pilot_overhead(PilotScheme::Afdm, l, a, xi, w.m as u64)?;
    let otfs = pilot_overhead(PilotScheme::Otfs, l, a, xi, (w.m_2d * w.n_2d) as u64)?;
    let pilots = csv(
        "scheme,l_max,alpha_max,xi,frame_size,count,fraction",
        [
            ("AFDM", w.m, afdm),
            ("OTFS", w.m_2d * w.n_2d, otfs),
        ]
        .into_iter()
        .map(|(name, size, po)| format!("{name},{l},{a},{xi},{size},{},{}", po.count, num(po.fraction))),
    );
    let qam = parse_qam("overhead.qam", o.qam)?.order();
    // Unit bandwidth with K = M symbols gives T_s = M.
    let k = w.m as usize;
    let ts = k as f64;
    let mut rows = Vec::new();
    for &r in &o.cp_ratios {
        let tcp = r * ts;
        let eta = |frac: f64| -> Result<f64, BenchError> {
            if frac >= 1.0 {
                return Ok(0.0);
            }
            Ok(spectral_efficiency(frac, qam, k, ts, tcp, 1.0)?)
        };
        rows.push(format!(
            "{},{},{},{},{}",
            num(r),
            num(cp_overhead(tcp, ts)?),
            num(eta(0.0)?),
            num(eta(afdm.fraction)?),
            num(eta(otfs.fraction)?)
        ));
    }
    Ok((
        vec![
            Artifact {
                name: "pilot_overhead.csv".into(),
                contents: pilots,
            },
            Artifact {
                name: "overhead.csv".into(),
                contents: csv("cp_ratio,rho,eta_no_pilot,eta_afdm_pilot,eta_otfs_pilot", rows),
            },
        ],
        json!({ "spectral_efficiency_units": "bit/s/Hz with K = M symbols per block" }),
    ))
}
