use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fano bounds on the error probability of predicting `n_classes` classes
/// from features carrying `i_cx` bits about a label of entropy `h_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoBounds {
    pub lower: f64,
    pub upper: f64,
    pub h_c: f64,
    pub i_cx: f64,
    pub n_classes: usize,
}

/// `(H(C|X) - 1) / log2(Nc) <= Pe <= H(C|X) / log2(Nc)` with
/// `H(C|X) = h_c - i_cx`, both sides clamped into `[0, 1]`.
pub fn fano_bounds(h_c: f64, i_cx: f64, n_classes: usize) -> Result<FanoBounds> {
    if n_classes < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fano bounds need at least 2 classes, got {n_classes}"
        )));
    }
    if !h_c.is_finite() || !i_cx.is_finite() || i_cx < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "entropies must be finite and nonnegative, got H(C) = {h_c}, I(C;X) = {i_cx}"
        )));
    }
    if i_cx > h_c {
        return Err(Error::InvalidDecomposition { h_c, i_cx });
    }
    let conditional = h_c - i_cx;
    let denom = (n_classes as f64).log2();
    Ok(FanoBounds {
        lower: ((conditional - 1.0) / denom).clamp(0.0, 1.0),
        upper: (conditional / denom).clamp(0.0, 1.0),
        h_c,
        i_cx,
        n_classes,
    })
}
