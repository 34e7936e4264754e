use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineSelection {
    /// Bands in pick order.
    pub selected: Vec<usize>,
    /// Set when the candidate pool ran dry before `target` bands were picked.
    pub exhausted: bool,
    pub bandwidth: usize,
    pub target: usize,
    pub d_threshold: f64,
}

/// Bandwidth-rejection selection on an MI curve.
///
/// Repeatedly picks the remaining band `s` with the largest MI (ties to the
/// lower index). Its neighborhood is `s - bandwidth ..= s + bandwidth`
/// clipped to the curve, and `d(n) = mi[n] - mi[n - 1]` for each neighbor
/// `n` that has a left neighbor. When `max d(n) < d_threshold` (or no `d(n)`
/// exists) the whole neighborhood leaves the pool with `s`; otherwise only
/// `s` does.
pub fn bandwidth_rejection(
    mi_curve: &[f64],
    bandwidth: usize,
    target: usize,
    d_threshold: f64,
) -> Result<BaselineSelection> {
    if mi_curve.is_empty() {
        return Err(Error::InvalidArgument("MI curve is empty".into()));
    }
    if target == 0 {
        return Err(Error::InvalidArgument("target band count must be at least 1".into()));
    }
    if d_threshold.is_nan() || mi_curve.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("MI curve and threshold must be finite".into()));
    }

    let n = mi_curve.len();
    let mut remaining = vec![true; n];
    let mut left = n;
    let mut selected = Vec::with_capacity(target.min(n));
    while selected.len() < target && left > 0 {
        let s = (0..n)
            .filter(|&b| remaining[b])
            .fold(None, |best: Option<usize>, b| match best {
                Some(a) if mi_curve[a] >= mi_curve[b] => Some(a),
                _ => Some(b),
            })
            .expect("pool is nonempty");
        let lo = s.saturating_sub(bandwidth);
        let hi = (s + bandwidth).min(n - 1);
        let max_step = (lo.max(1)..=hi)
            .map(|b| mi_curve[b] - mi_curve[b - 1])
            .fold(f64::NEG_INFINITY, f64::max);

        selected.push(s);
        let drop = if max_step < d_threshold { lo..=hi } else { s..=s };
        for b in drop {
            if remaining[b] {
                remaining[b] = false;
                left -= 1;
            }
        }
    }
    Ok(BaselineSelection {
        exhausted: selected.len() < target,
        selected,
        bandwidth,
        target,
        d_threshold,
    })
}
