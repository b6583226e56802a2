//! Constellation mapping and modulation-domain equalization.

mod constellation;
mod equalize;

pub use constellation::Constellation;
pub use equalize::{
    ml_oracle, mmse_equalize, single_tap_diagonal, single_tap_equalize, EqualizerOutput,
    MmseEqualizer, MmseFactor, DIAGONAL_TOLERANCE, ML_MAX_CANDIDATES, ML_MAX_SYMBOLS,
};
