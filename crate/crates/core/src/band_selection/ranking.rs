use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The relevance cutoff (bits of MI with the ground truth) and the redundancy
/// cutoff (normalized MI between bands).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub th_relevance: f64,
    pub th_redundancy: f64,
}

impl Thresholds {
    pub fn new(th_relevance: f64, th_redundancy: f64) -> Result<Self> {
        if !(th_relevance.is_finite() && th_relevance >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "relevance threshold must be finite and >= 0, got {th_relevance}"
            )));
        }
        check_redundancy(th_redundancy)?;
        Ok(Self {
            th_relevance,
            th_redundancy,
        })
    }
}

pub(crate) fn check_redundancy(th: f64) -> Result<()> {
    if !(th > 0.0 && th <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "redundancy threshold must lie in (0, 1], got {th}"
        )));
    }
    Ok(())
}

/// Bands whose MI strictly exceeds the relevance cutoff, in ascending MI
/// order (ties by ascending band index).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RelevanceRanking {
    pub surviving: Vec<usize>,
    pub mi_values: Vec<f64>,
}

impl RelevanceRanking {
    pub fn len(&self) -> usize {
        self.surviving.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surviving.is_empty()
    }
}

pub fn rank_by_relevance(mi_curve: &[f64], th_relevance: f64) -> Result<RelevanceRanking> {
    if mi_curve.is_empty() {
        return Err(Error::InvalidArgument("MI curve is empty".into()));
    }
    if let Some(b) = mi_curve.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "MI of band {b} is not finite: {}",
            mi_curve[b]
        )));
    }
    let mut kept: Vec<(usize, f64)> = mi_curve
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, mi)| mi > th_relevance)
        .collect();
    kept.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(RelevanceRanking {
        surviving: kept.iter().map(|&(b, _)| b).collect(),
        mi_values: kept.iter().map(|&(_, mi)| mi).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_cutoff_and_ascending_order() {
        let r = rank_by_relevance(&[0.5, 0.4, 0.9, 0.45, 0.9], 0.4).unwrap();
        assert_eq!(r.surviving, vec![3, 0, 2, 4]);
        assert_eq!(r.mi_values, vec![0.45, 0.5, 0.9, 0.9]);
    }

    #[test]
    fn cutoff_above_max_is_empty() {
        let r = rank_by_relevance(&[0.1, 0.2], 0.3).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn empty_curve_rejected() {
        assert!(rank_by_relevance(&[], 0.0).is_err());
    }

    #[test]
    fn threshold_validation() {
        assert!(Thresholds::new(0.4, 0.7).is_ok());
        assert!(Thresholds::new(0.0, 1.0).is_ok());
        assert!(Thresholds::new(-0.1, 0.7).is_err());
        assert!(Thresholds::new(0.4, 0.0).is_err());
        assert!(Thresholds::new(0.4, 1.01).is_err());
    }
}
