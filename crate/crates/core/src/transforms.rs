//! Unitary transforms and structured permutations.
//!
//! All transforms are materialized as dense matrices. Forward transforms are
//! returned; modulators use the conjugate transpose.

use crate::linalg::{cis, diag};
use crate::{CMatrix, Complex64, Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn check_size(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidSize("transform size must be at least 1".into()));
    }
    Ok(())
}

/// Normalized forward DFT matrix, `F[k, l] = e^{-j2πkl/M} / √M`.
pub fn dft_matrix(m: usize) -> Result<CMatrix> {
    check_size(m)?;
    let scale = 1.0 / (m as f64).sqrt();
    Ok(CMatrix::from_fn(m, m, |k, l| {
        // Reduce the exponent modulo M before converting to an angle.
        let idx = (k * l) % m;
        cis(-2.0 * PI * idx as f64 / m as f64) * scale
    }))
}

/// Chirp diagonal `e^{-j2πc l²}` for `l = 0..M-1`.
pub fn chirp_diagonal(m: usize, c: f64) -> Vec<Complex64> {
    (0..m).map(|l| cis(-2.0 * PI * c * (l * l) as f64)).collect()
}

/// Forward discrete affine Fourier transform `A = Λ_{c2} F Λ_{c1}`.
pub fn daft_matrix(m: usize, c1: f64, c2: f64) -> Result<CMatrix> {
    let f = dft_matrix(m)?;
    let l1 = chirp_diagonal(m, c1);
    let l2 = chirp_diagonal(m, c2);
    Ok(CMatrix::from_fn(m, m, |i, j| l2[i] * f[(i, j)] * l1[j]))
}

/// Sampled fractional Fourier kernel of order `p` (rotation `α = pπ/2`).
///
/// The sampling intervals are split symmetrically, `Δu = T_s = √(2π|sin α|/M)`.
/// Orders whose rotation is a multiple of π are rejected.
pub fn dfrft_matrix(m: usize, p: f64) -> Result<CMatrix> {
    check_size(m)?;
    let alpha = p * PI / 2.0;
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::DegenerateRotation { p });
    }
    let (s, c) = alpha.sin_cos();
    let mf = m as f64;
    let step2 = 2.0 * PI * s.abs() / mf;
    let cot = c / s;
    let lead = (Complex64::new(s, -c) / mf).sqrt();
    let quad: Vec<Complex64> = (0..m)
        .map(|l| cis(0.5 * (l * l) as f64 * cot * step2))
        .collect();
    Ok(CMatrix::from_fn(m, m, |l, k| {
        let idx = (k * l) % m;
        lead * quad[l] * quad[k] * cis(-2.0 * PI * idx as f64 / mf)
    }))
}

/// Discrete Fresnel transform together with its chirp factors, `Φ = Θ2 F Θ1`.
#[derive(Debug, Clone)]
pub struct Dfnt {
    pub theta1: Vec<Complex64>,
    pub theta2: Vec<Complex64>,
    pub phi: CMatrix,
}

/// Builds the DFnT decomposition for even or odd `M`.
pub fn dfnt_matrix(m: usize) -> Result<Dfnt> {
    check_size(m)?;
    let mf = m as f64;
    let (theta1, theta2): (Vec<Complex64>, Vec<Complex64>) = if m.is_multiple_of(2) {
        (
            (0..m)
                .map(|k| cis(-PI / 4.0) * cis(PI * (k * k) as f64 / mf))
                .collect(),
            (0..m).map(|l| cis(PI * (l * l) as f64 / mf)).collect(),
        )
    } else {
        (
            (0..m)
                .map(|k| cis(-PI / 4.0 + PI / (4.0 * mf) + PI * (k * k + k) as f64 / mf))
                .collect(),
            (0..m)
                .map(|l| cis(PI * (l as f64 * l as f64 - l as f64) / mf))
                .collect(),
        )
    };
    let phi = diag(&theta2) * dft_matrix(m)? * diag(&theta1);
    Ok(Dfnt { theta1, theta2, phi })
}

/// Row ordering of the Walsh–Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WalshOrder {
    /// Rows sorted by increasing number of sign changes.
    #[default]
    Sequency,
    /// Sylvester (Hadamard) ordering.
    Natural,
}

/// Number of sign changes along a ±1 row.
pub fn sign_changes(row: &[f64]) -> usize {
    row.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

/// Orthonormal Walsh–Hadamard matrix of size `N` (a power of two).
pub fn wht_matrix(n: usize, order: WalshOrder) -> Result<CMatrix> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidSize(format!(
            "Walsh-Hadamard size must be a power of two, got {n}"
        )));
    }
    let natural: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 })
                .collect()
        })
        .collect();
    let mut rows: Vec<usize> = (0..n).collect();
    if order == WalshOrder::Sequency {
        rows.sort_by_key(|&i| sign_changes(&natural[i]));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, n, |i, j| {
        Complex64::new(natural[rows[i]][j] * scale, 0.0)
    }))
}

/// A permutation stored as a gather map: `out[i] = in[source[i]]`.
///
/// Its matrix form has a single one per row, `Π[i, source[i]] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    source: Vec<usize>,
}

impl Permutation {
    /// Wraps a gather map, checking that it is a bijection.
    pub fn from_source(source: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; source.len()];
        for &s in &source {
            if s >= source.len() || seen[s] {
                return Err(Error::Domain("gather map is not a bijection".into()));
            }
            seen[s] = true;
        }
        Ok(Self { source })
    }

    pub fn identity(n: usize) -> Self {
        Self { source: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// The gather map.
    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.source.len()];
        for (i, &s) in self.source.iter().enumerate() {
            inv[s] = i;
        }
        Self { source: inv }
    }

    pub fn apply<T: Copy>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.source.len(), "permutation length mismatch");
        self.source.iter().map(|&s| x[s]).collect()
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.source.len();
        let mut p = CMatrix::zeros(n, n);
        for (i, &s) in self.source.iter().enumerate() {
            p[(i, s)] = Complex64::new(1.0, 0.0);
        }
        p
    }
}

/// Seeded random interleaver: a Fisher–Yates shuffle driven by ChaCha8.
///
/// Entry `l` of the result is the source index `α(l)` feeding output `l`.
pub fn random_interleaver(m: usize, seed: u64) -> Result<Permutation> {
    check_size(m)?;
    let mut source: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    source.shuffle(&mut rng);
    Ok(Permutation { source })
}

/// Direction of the discrete Zak transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DztDirection {
    /// Time samples to the delay-Doppler grid.
    Forward,
    /// Delay-Doppler grid to time samples.
    Inverse,
}

/// Discrete Zak transform on a length `M·N` vector.
///
/// The delay-Doppler grid is vectorized with the delay index fastest,
/// `x[l + kM]`. The inverse is
/// `s[n] = N^{-1/2} Σ_k x[(n mod M) + kM] e^{j2π⌊n/M⌋k/N}`.
pub fn dzt(x: &[Complex64], m: usize, n: usize, direction: DztDirection) -> Result<Vec<Complex64>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSize("Zak grid dimensions must be positive".into()));
    }
    if x.len() != m * n {
        return Err(Error::Shape(format!(
            "Zak transform expects {} samples, got {}",
            m * n,
            x.len()
        )));
    }
    let sign = match direction {
        DztDirection::Inverse => 1.0,
        DztDirection::Forward => -1.0,
    };
    let scale = 1.0 / (n as f64).sqrt();
    let twiddle: Vec<Complex64> = (0..n).map(|q| cis(sign * 2.0 * PI * q as f64 / n as f64)).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); m * n];
    for l in 0..m {
        for a in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..n {
                acc += x[l + b * m] * twiddle[(a * b) % n];
            }
            out[l + a * m] = acc * scale;
        }
    }
    Ok(out)
}

/// Kinds of structured permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationKind {
    /// `Π[k, k'] = 1` iff `k' = (k mod M)·N + ⌊k/M⌋`.
    Oddm,
    /// Perfect shuffle: row `m·N + n` selects column `n·M + m`.
    Shuffle,
}

/// Structured `MN × MN` permutation.
pub fn structured_permutation(kind: PermutationKind, m: usize, n: usize) -> Result<Permutation> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSize("permutation dimensions must be positive".into()));
    }
    let source = match kind {
        PermutationKind::Oddm => (0..m * n).map(|k| (k % m) * n + k / m).collect(),
        PermutationKind::Shuffle => (0..m * n).map(|r| (r % n) * m + r / n).collect(),
    };
    Ok(Permutation { source })
}
