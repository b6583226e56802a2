//! Performance indicators: bit error rate, PAPR statistics, ambiguity
//! function metrics and overhead formulas.

mod ambiguity;
mod ber;
mod overhead;
mod papr;

pub use ambiguity::{
    af_cut_metrics, ambiguity_grid, ambiguity_value, frame_af_metrics, AfGrid, AfMetrics, AfMode, AfOptions,
    CutMetrics, MAINLOBE_RULE, NO_SIDELOBE_DB,
};
pub use ber::{noise_variance, run_ber, trial_bits, BerConfig, BerPoint, BerRun, Detector};
pub use overhead::{cp_overhead, pilot_overhead, spectral_efficiency, PilotOverhead, PilotScheme};
pub use papr::{
    ccdf, ddam_papr_samples, papr_at_ccdf, papr_ccdf, papr_db, papr_samples, CcdfPoint, DdamPaprSetup,
};
