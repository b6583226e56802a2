use crate::{Complex64, Error, Result};

/// Unit-energy QAM alphabet.
///
/// `points[label]` is the point carrying the bit word `label`, with the most
/// significant bit transmitted first. Square orders use independent Gray
/// codes on the in-phase (high bits) and quadrature (low bits) axes.
/// The 128-point cross constellation is the 12×12 odd-integer grid with the
/// 2×2 corner blocks removed; labels follow row-major order (quadrature
/// descending, in-phase ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    order: usize,
    bits_per_symbol: usize,
    points: Vec<Complex64>,
}

fn gray_position(label: usize) -> usize {
    // Inverse Gray code: position whose Gray code equals `label`.
    let mut pos = label;
    let mut shift = label >> 1;
    while shift != 0 {
        pos ^= shift;
        shift >>= 1;
    }
    pos
}

impl Constellation {
    /// Builds a 4-, 16-, 64- or 128-point QAM alphabet.
    pub fn qam(order: usize) -> Result<Self> {
        let points = match order {
            4 | 16 | 64 => {
                let side = (order as f64).sqrt() as usize;
                let half_bits = side.trailing_zeros() as usize;
                (0..order)
                    .map(|label| {
                        let i_pos = gray_position(label >> half_bits);
                        let q_pos = gray_position(label & (side - 1));
                        let lvl = |p: usize| 2.0 * p as f64 - (side as f64 - 1.0);
                        Complex64::new(lvl(i_pos), lvl(q_pos))
                    })
                    .collect::<Vec<_>>()
            }
            128 => {
                let levels: Vec<f64> = (0..12).map(|i| 2.0 * i as f64 - 11.0).collect();
                let mut pts = Vec::with_capacity(128);
                for &q in levels.iter().rev() {
                    for &i in &levels {
                        if !(i.abs() > 7.0 && q.abs() > 7.0) {
                            pts.push(Complex64::new(i, q));
                        }
                    }
                }
                pts
            }
            _ => {
                return Err(Error::Config(format!(
                    "unsupported QAM order {order}; use 4, 16, 64 or 128"
                )))
            }
        };
        let energy: f64 = points.iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
        let scale = 1.0 / energy.sqrt();
        Ok(Self {
            order,
            bits_per_symbol: order.trailing_zeros() as usize,
            points: points.into_iter().map(|p| p * scale).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.bits_per_symbol
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Index of the nearest point; ties go to the lowest index.
    pub fn nearest(&self, y: Complex64) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            let d = (y - p).norm_sqr();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    /// Maps a bit stream (one bit per byte, values 0 or 1) to symbols.
    pub fn map_bits(&self, bits: &[u8]) -> Result<Vec<Complex64>> {
        let b = self.bits_per_symbol;
        if !bits.len().is_multiple_of(b) {
            return Err(Error::Shape(format!(
                "{} bits do not fill whole {b}-bit symbols",
                bits.len()
            )));
        }
        Ok(bits
            .chunks(b)
            .map(|chunk| self.points[chunk.iter().fold(0usize, |acc, &bit| (acc << 1) | (bit & 1) as usize)])
            .collect())
    }

    /// Bits of the label at `index`, most significant first.
    pub fn label_bits(&self, index: usize, out: &mut Vec<u8>) {
        for k in (0..self.bits_per_symbol).rev() {
            out.push(((index >> k) & 1) as u8);
        }
    }

    /// Nearest-neighbour hard decisions converted back to bits.
    pub fn demap_hard(&self, symbols: &[Complex64]) -> Vec<u8> {
        let mut out = Vec::with_capacity(symbols.len() * self.bits_per_symbol);
        for &s in symbols {
            self.label_bits(self.nearest(s), &mut out);
        }
        out
    }
}
