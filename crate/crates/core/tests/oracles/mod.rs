//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bandsel::band_selection::{Admission, MemberCheck, NonRedundantSet, PickRecord, RedundancyMatrix, SENTINEL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probability table of the included symbols.
pub fn probabilities<K: Ord + Copy>(symbols: impl Iterator<Item = K>) -> BTreeMap<K, f64> {
    let mut counts: BTreeMap<K, usize> = BTreeMap::new();
    let mut total = 0usize;
    for s in symbols {
        *counts.entry(s).or_default() += 1;
        total += 1;
    }
    counts.into_iter().map(|(k, c)| (k, c as f64 / total as f64)).collect()
}

pub fn entropy_bits<K>(table: &BTreeMap<K, f64>) -> f64 {
    table.values().map(|&p| -p * p.ln()).sum::<f64>() / std::f64::consts::LN_2
}

fn masked<'a>(values: &'a [u32], mask: &'a [bool]) -> impl Iterator<Item = u32> + 'a {
    values.iter().zip(mask).filter(|(_, &m)| m).map(|(&v, _)| v)
}

pub fn oracle_entropy(a: &[u32], mask: &[bool]) -> f64 {
    entropy_bits(&probabilities(masked(a, mask)))
}

pub fn oracle_joint_entropy(a: &[u32], b: &[u32], mask: &[bool]) -> f64 {
    entropy_bits(&probabilities(masked(a, mask).zip(masked(b, mask))))
}

pub fn oracle_mi(a: &[u32], b: &[u32], mask: &[bool]) -> f64 {
    let pa = probabilities(masked(a, mask));
    let pb = probabilities(masked(b, mask));
    let pab = probabilities(masked(a, mask).zip(masked(b, mask)));
    pab.iter()
        .map(|(&(x, y), &p)| p * (p / (pa[&x] * pb[&y])).log2())
        .sum::<f64>()
        .max(0.0)
}

pub fn oracle_nmi(a: &[u32], b: &[u32], mask: &[bool]) -> f64 {
    let ha = oracle_entropy(a, mask);
    let hb = oracle_entropy(b, mask);
    if ha == 0.0 || hb == 0.0 {
        return 0.0;
    }
    (oracle_mi(a, b, mask) / (ha * hb).sqrt()).clamp(0.0, 1.0)
}

/// Random symmetric matrix with unit diagonal and two-decimal cells, so
/// ties are common.
pub fn random_redundancy_matrix(n: usize, seed: u64) -> RedundancyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = vec![1.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0..=100) as f64 / 100.0;
            cells[i * n + j] = v;
            cells[j * n + i] = v;
        }
    }
    let bands: Vec<usize> = (0..n).map(|i| 3 * i + 1).collect();
    RedundancyMatrix::from_cells(bands, cells).unwrap()
}

/// Step-by-step transcription of the redundancy-control loop: argmin over
/// the working matrix, admission tests against the pristine copy, then the
/// picked cell and its mirror are overwritten with the sentinel.
pub fn literal_select(d: &RedundancyMatrix, th: f64) -> NonRedundantSet {
    let n = d.n();
    let pristine: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| d.get(i, j)).collect()).collect();
    let mut work = pristine.clone();
    let mut ss: Vec<usize> = Vec::new();
    let mut log = Vec::new();
    let mut iteration = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..n {
            for j in 0..n {
                match best {
                    Some((bi, bj)) if work[i][j] >= work[bi][bj] => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let (x, y) = best.unwrap();
        if work[x][y] >= th {
            break;
        }
        let x_outcome = if ss.contains(&x) {
            Admission::AlreadySelected
        } else {
            let mut checked = Vec::new();
            let mut conflict = None;
            for &l in &ss {
                let u = pristine[x][l];
                if u < th {
                    checked.push(MemberCheck { band: d.bands()[l], u });
                } else {
                    conflict = Some(MemberCheck { band: d.bands()[l], u });
                    break;
                }
            }
            match conflict {
                Some(conflict) => Admission::Rejected { conflict },
                None => {
                    ss.push(x);
                    Admission::Admitted { checked }
                }
            }
        };
        let y_outcome = if ss.contains(&y) {
            Admission::AlreadySelected
        } else {
            let mut checked = Vec::new();
            let mut conflict = None;
            for &l in &ss {
                let u = pristine[l][y];
                if u < th {
                    checked.push(MemberCheck { band: d.bands()[l], u });
                } else {
                    conflict = Some(MemberCheck { band: d.bands()[l], u });
                    break;
                }
            }
            match conflict {
                Some(conflict) => Admission::Rejected { conflict },
                None => {
                    ss.push(y);
                    Admission::Admitted { checked }
                }
            }
        };
        log.push(PickRecord {
            iteration,
            cell: (x, y),
            bands: (d.bands()[x], d.bands()[y]),
            u: pristine[x][y],
            x: x_outcome,
            y: y_outcome,
        });
        work[x][y] = SENTINEL;
        work[y][x] = SENTINEL;
        iteration += 1;
    }
    NonRedundantSet {
        selected: ss.iter().map(|&i| d.bands()[i]).collect(),
        decision_log: log,
    }
}

/// Transcription of the bandwidth-rejection pseudocode over an explicit
/// remaining set `R`.
pub fn literal_bandwidth_rejection(mi: &[f64], bm: usize, x: usize, threshold: f64) -> Vec<usize> {
    let mut r: BTreeSet<usize> = (0..mi.len()).collect();
    let mut ss = Vec::new();
    while ss.len() < x && !r.is_empty() {
        let mut s = *r.iter().next().unwrap();
        for &b in &r {
            if mi[b] > mi[s] {
                s = b;
            }
        }
        let lo = s as i64 - bm as i64;
        let hi = s as i64 + bm as i64;
        let neighborhood: Vec<usize> = (lo..=hi)
            .filter(|&k| k >= 0 && (k as usize) < mi.len())
            .map(|k| k as usize)
            .collect();
        let mut max_d = f64::NEG_INFINITY;
        for &k in &neighborhood {
            if k >= 1 {
                let d = mi[k] - mi[k - 1];
                if d > max_d {
                    max_d = d;
                }
            }
        }
        ss.push(s);
        r.remove(&s);
        if max_d < threshold {
            for k in neighborhood {
                r.remove(&k);
            }
        }
    }
    ss
}

pub fn random_curve(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.gen_range(0..=40) as f64) / 10.0).collect()
}
