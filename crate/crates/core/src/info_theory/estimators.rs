use super::raster::{DiscreteRaster, PixelMask};
use crate::{Error, Result};

/// Co-occurrence counts of two rasters over the included pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHistogram {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    total: u64,
}

impl JointHistogram {
    pub fn build(a: &DiscreteRaster, b: &DiscreteRaster, mask: &PixelMask) -> Result<Self> {
        check_dims(a, b, mask)?;
        let rows = a.alphabet_size();
        let cols = b.alphabet_size();
        let mut counts = vec![0u64; rows * cols];
        let mut total = 0u64;
        for ((&x, &y), &keep) in a.values().iter().zip(b.values()).zip(mask.included()) {
            if keep {
                counts[x as usize * cols + y as usize] += 1;
                total += 1;
            }
        }
        if total == 0 {
            return Err(Error::EmptySupport);
        }
        Ok(Self {
            rows,
            cols,
            counts,
            total,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, x: usize, y: usize) -> u64 {
        self.counts[x * self.cols + y]
    }

    /// Marginal counts of the first raster.
    pub fn row_marginal(&self) -> Vec<u64> {
        self.counts
            .chunks_exact(self.cols)
            .map(|row| row.iter().sum())
            .collect()
    }

    /// Marginal counts of the second raster.
    pub fn col_marginal(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.cols];
        for row in self.counts.chunks_exact(self.cols) {
            for (acc, &c) in out.iter_mut().zip(row) {
                *acc += c;
            }
        }
        out
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_counts(&self.counts, self.total)
    }

    /// `sum p(x,y) log2(p(x,y) / (p(x) p(y)))` over nonzero cells.
    pub fn mutual_information(&self) -> f64 {
        let pa = self.row_marginal();
        let pb = self.col_marginal();
        let n = self.total as f64;
        let mut mi = 0.0;
        for (x, row) in self.counts.chunks_exact(self.cols).enumerate() {
            for (y, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let pxy = c as f64 / n;
                let ratio = (c as f64 * n) / (pa[x] as f64 * pb[y] as f64);
                mi += pxy * ratio.log2();
            }
        }
        // rounding can leave a -1e-17 residue on independent inputs
        mi.max(0.0)
    }
}

fn check_dims(a: &DiscreteRaster, b: &DiscreteRaster, mask: &PixelMask) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::dims(a.dims(), b.dims()));
    }
    if a.dims() != mask.dims() {
        return Err(Error::dims(a.dims(), mask.dims()));
    }
    Ok(())
}

pub(crate) fn entropy_of_counts(counts: &[u64], total: u64) -> f64 {
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Shannon entropy of the masked pixels of `x`, in bits.
pub fn entropy(x: &DiscreteRaster, mask: &PixelMask) -> Result<f64> {
    if x.dims() != mask.dims() {
        return Err(Error::dims(x.dims(), mask.dims()));
    }
    let mut counts = vec![0u64; x.alphabet_size()];
    let mut total = 0u64;
    for (&v, &keep) in x.values().iter().zip(mask.included()) {
        if keep {
            counts[v as usize] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptySupport);
    }
    Ok(entropy_of_counts(&counts, total))
}

pub fn joint_entropy(a: &DiscreteRaster, b: &DiscreteRaster, mask: &PixelMask) -> Result<f64> {
    Ok(JointHistogram::build(a, b, mask)?.entropy())
}

pub fn mutual_information(a: &DiscreteRaster, b: &DiscreteRaster, mask: &PixelMask) -> Result<f64> {
    Ok(JointHistogram::build(a, b, mask)?.mutual_information())
}

/// `U(a, b) = MI(a, b) / sqrt(H(a) H(b))`, defined as 0 when either
/// marginal entropy is 0.
pub fn normalized_mi(a: &DiscreteRaster, b: &DiscreteRaster, mask: &PixelMask) -> Result<f64> {
    let joint = JointHistogram::build(a, b, mask)?;
    let ha = entropy_of_counts(&joint.row_marginal(), joint.total);
    let hb = entropy_of_counts(&joint.col_marginal(), joint.total);
    if ha == 0.0 || hb == 0.0 {
        return Ok(0.0);
    }
    Ok((joint.mutual_information() / (ha * hb).sqrt()).clamp(0.0, 1.0))
}
