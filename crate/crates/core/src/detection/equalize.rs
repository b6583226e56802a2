use super::Constellation;
use crate::linalg::matvec;
use crate::{CMatrix, Complex64, Error, Result};
use nalgebra::Cholesky;

/// Soft estimates plus nearest-point decisions.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualizerOutput {
    pub soft: Vec<Complex64>,
    /// Indices into the constellation.
    pub hard: Vec<usize>,
    /// Post-equalization SNR per symbol, when the equalizer provides it.
    pub post_snr: Option<Vec<f64>>,
}

impl EqualizerOutput {
    fn decide(soft: Vec<Complex64>, c: &Constellation, post_snr: Option<Vec<f64>>) -> Self {
        let hard = soft.iter().map(|&s| c.nearest(s)).collect();
        Self { soft, hard, post_snr }
    }
}

/// Relative off-diagonal magnitude above which a matrix is not treated as diagonal.
pub const DIAGONAL_TOLERANCE: f64 = 1e-10;

/// Per-symbol MMSE `x̂_k = h_k^* y_k / (|h_k|² + σ²)` on a diagonal channel.
pub fn single_tap_equalize(
    y: &[Complex64],
    h: &CMatrix,
    noise_var: f64,
    c: &Constellation,
) -> Result<EqualizerOutput> {
    if !h.is_square() || h.nrows() != y.len() {
        return Err(Error::Shape(format!(
            "single-tap equalizer needs a {0}x{0} channel, got {1}x{2}",
            y.len(),
            h.nrows(),
            h.ncols()
        )));
    }
    let peak = h.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for j in 0..h.ncols() {
        for i in 0..h.nrows() {
            if i != j && h[(i, j)].norm() > DIAGONAL_TOLERANCE * peak.max(f64::MIN_POSITIVE) {
                return Err(Error::Contract(format!(
                    "channel is not diagonal: |H[{i},{j}]| = {:.3e}",
                    h[(i, j)].norm()
                )));
            }
        }
    }
    let d: Vec<Complex64> = (0..h.nrows()).map(|i| h[(i, i)]).collect();
    single_tap_diagonal(y, &d, noise_var, c)
}

/// Single-tap equalizer on an explicit diagonal.
pub fn single_tap_diagonal(
    y: &[Complex64],
    d: &[Complex64],
    noise_var: f64,
    c: &Constellation,
) -> Result<EqualizerOutput> {
    if d.len() != y.len() {
        return Err(Error::Shape("diagonal and observation lengths differ".into()));
    }
    let mut soft = Vec::with_capacity(y.len());
    let mut snr = Vec::with_capacity(y.len());
    for (&yk, &hk) in y.iter().zip(d) {
        let den = hk.norm_sqr() + noise_var;
        if den == 0.0 {
            return Err(Error::Solver("zero channel tap with zero noise".into()));
        }
        soft.push(hk.conj() * yk / den);
        snr.push(if noise_var > 0.0 { hk.norm_sqr() / noise_var } else { f64::INFINITY });
    }
    Ok(EqualizerOutput::decide(soft, c, Some(snr)))
}

/// Block MMSE equalizer with a cached Gram matrix.
///
/// Solves `(H^H H + σ² I) x̂ = H^H y` through a Cholesky factorization.
/// The factorization is refused when the regularized Gram matrix is
/// numerically singular.
#[derive(Debug, Clone)]
pub struct MmseEqualizer {
    h_adj: CMatrix,
    gram: CMatrix,
}

/// Factorization for one noise level.
#[derive(Debug, Clone)]
pub struct MmseFactor<'a> {
    eq: &'a MmseEqualizer,
    chol: Cholesky<Complex64, nalgebra::Dyn>,
}

/// Smallest accepted ratio between the extreme Cholesky pivots.
const PIVOT_RATIO_FLOOR: f64 = 1e-7;

impl MmseEqualizer {
    pub fn new(h: &CMatrix) -> Self {
        let h_adj = h.adjoint();
        let gram = &h_adj * h;
        Self { h_adj, gram }
    }

    pub fn symbol_count(&self) -> usize {
        self.gram.nrows()
    }

    pub fn observation_len(&self) -> usize {
        self.h_adj.ncols()
    }

    /// Factors `H^H H + σ² I`.
    pub fn factor(&self, noise_var: f64) -> Result<MmseFactor<'_>> {
        if !(noise_var >= 0.0) {
            return Err(Error::Domain(format!("noise variance must be non-negative, got {noise_var}")));
        }
        let mut a = self.gram.clone();
        for i in 0..a.nrows() {
            a[(i, i)] += Complex64::new(noise_var, 0.0);
        }
        let chol = Cholesky::new(a).ok_or_else(|| Error::Solver("MMSE system is not positive definite".into()))?;
        let l = chol.l_dirty();
        let diag: Vec<f64> = (0..l.nrows()).map(|i| l[(i, i)].re).collect();
        let max = diag.iter().copied().fold(0.0, f64::max);
        let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
        if !(min > PIVOT_RATIO_FLOOR * max) {
            return Err(Error::Solver("MMSE system is numerically singular".into()));
        }
        Ok(MmseFactor { eq: self, chol })
    }
}

impl MmseFactor<'_> {
    /// Soft estimates for one observation.
    pub fn solve(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        if y.len() != self.eq.observation_len() {
            return Err(Error::Shape(format!(
                "observation of length {} for a channel with {} rows",
                y.len(),
                self.eq.observation_len()
            )));
        }
        let rhs = crate::CVector::from_vec(matvec(&self.eq.h_adj, y));
        Ok(self.chol.solve(&rhs).iter().copied().collect())
    }
}

/// One-shot block MMSE equalization.
pub fn mmse_equalize(y: &[Complex64], h: &CMatrix, noise_var: f64, c: &Constellation) -> Result<EqualizerOutput> {
    if h.nrows() != y.len() {
        return Err(Error::Shape(format!(
            "channel has {} rows but the observation has {} samples",
            h.nrows(),
            y.len()
        )));
    }
    let eq = MmseEqualizer::new(h);
    let soft = eq.factor(noise_var)?.solve(y)?;
    Ok(EqualizerOutput::decide(soft, c, None))
}

/// Largest symbol count accepted by [`ml_oracle`].
pub const ML_MAX_SYMBOLS: usize = 8;
/// Largest candidate count accepted by [`ml_oracle`].
pub const ML_MAX_CANDIDATES: u64 = 1 << 24;

/// Exhaustive maximum-likelihood detection.
///
/// Candidates are visited in lexicographic order of their index vectors
/// (first symbol most significant) and only a strictly smaller metric
/// replaces the incumbent, so ties resolve to the lowest index.
pub fn ml_oracle(y: &[Complex64], h: &CMatrix, c: &Constellation) -> Result<Vec<usize>> {
    let k = h.ncols();
    if h.nrows() != y.len() {
        return Err(Error::Shape("channel rows and observation length differ".into()));
    }
    let candidates = (c.order() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if k > ML_MAX_SYMBOLS || candidates > ML_MAX_CANDIDATES {
        return Err(Error::TooLarge {
            symbols: k,
            limit: ML_MAX_SYMBOLS,
        });
    }
    let pts = c.points();
    let mut idx = vec![0usize; k];
    let mut best = idx.clone();
    let mut best_metric = f64::INFINITY;
    let mut resid = vec![Complex64::new(0.0, 0.0); y.len()];
    loop {
        resid.copy_from_slice(y);
        for (j, &s) in idx.iter().enumerate() {
            let p = pts[s];
            for (i, r) in resid.iter_mut().enumerate() {
                *r -= h[(i, j)] * p;
            }
        }
        let metric: f64 = resid.iter().map(|r| r.norm_sqr()).sum();
        if metric < best_metric {
            best_metric = metric;
            best.copy_from_slice(&idx);
        }
        // Advance the odometer, last symbol fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < c.order() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
