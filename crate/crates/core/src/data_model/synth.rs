use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cube::HsiCube;
use super::ground_truth::GroundTruthMap;
use super::rng::{self, Gaussian};
use crate::{Error, Result};

/// `copy` is `source` plus independent Gaussian noise of `extra_noise`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuplicatePair {
    pub source: usize,
    pub copy: usize,
    pub extra_noise: f64,
}

/// Two bands that each render only their own class set; every other pixel
/// shows the background level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisjointPair {
    pub band_a: usize,
    pub band_b: usize,
    pub classes_a: Vec<u32>,
    pub classes_b: Vec<u32>,
    /// Noise for these two bands; the spec-wide `noise_sigma` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sigma: Option<f64>,
}

/// Recipe for a synthetic band suite built from a ground-truth map.
///
/// A regular band shows `class_means[label]` at each pixel (labels listed in
/// its `erase_classes` entry show `class_means[0]`, the background level) plus
/// Gaussian noise of `noise_sigma`. Values are rounded to integers and clamped
/// to `0..=65535`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub n_bands: usize,
    /// Reflectance level per label; index 0 is the background.
    pub class_means: Vec<f64>,
    pub noise_sigma: f64,
    /// One list per band, or empty for no erasure anywhere.
    #[serde(default)]
    pub erase_classes: Vec<Vec<u32>>,
    #[serde(default)]
    pub duplicate_pairs: Vec<DuplicatePair>,
    #[serde(default)]
    pub disjoint_pairs: Vec<DisjointPair>,
    #[serde(default)]
    pub noise_only_bands: Vec<usize>,
    /// Spread of the noise-only bands around the background level.
    #[serde(default = "default_noise_only_sigma")]
    pub noise_only_sigma: f64,
    /// Digitization step of the noise-only bands.
    #[serde(default = "default_noise_only_step")]
    pub noise_only_step: f64,
}

fn default_noise_only_sigma() -> f64 {
    3000.0
}

fn default_noise_only_step() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Role {
    Regular,
    Copy { source: usize, extra_noise: f64 },
    Disjoint { pair: usize, first: bool },
    NoiseOnly,
}

impl SyntheticSpec {
    /// Nineteen bands over sixteen classes, laid out like the synthetic study
    /// this toolkit reproduces (paper band `k` is index `k - 1` here):
    ///
    /// * indices 6, 8, 12 carry only coarsely digitized noise;
    /// * index 16 duplicates index 3 up to a little extra noise;
    /// * indices 15 and 17 render disjoint class sets;
    /// * the remaining bands erase a few classes each, so they differ in how
    ///   much they reveal about the labels.
    pub fn paper_like() -> Self {
        let class_means = vec![
            2500.0, 1200.0, 5200.0, 3000.0, 7400.0, 1800.0, 6200.0, 4000.0, 8200.0, 2200.0, 5800.0, 3500.0, 7000.0,
            1500.0, 4600.0, 6600.0, 7800.0,
        ];
        let mut erase_classes = vec![Vec::new(); 19];
        let erasures: [(usize, &[u32]); 12] = [
            (0, &[1, 2, 3, 4]),
            (1, &[8, 9, 10]),
            (2, &[2, 4, 6]),
            (3, &[1, 3, 5]),
            (4, &[15, 16]),
            (5, &[3, 9, 15]),
            (7, &[1, 2, 3, 4, 5]),
            (9, &[4, 8, 12]),
            (10, &[7]),
            (11, &[9, 10, 11, 12, 13]),
            (13, &[5, 10]),
            (14, &[2, 5, 11, 13]),
        ];
        for (band, classes) in erasures {
            erase_classes[band] = classes.to_vec();
        }
        Self {
            n_bands: 19,
            class_means,
            noise_sigma: 700.0,
            erase_classes,
            duplicate_pairs: vec![DuplicatePair {
                source: 3,
                copy: 16,
                extra_noise: 2.0,
            }],
            disjoint_pairs: vec![DisjointPair {
                band_a: 15,
                band_b: 17,
                classes_a: vec![3, 5, 12, 14],
                classes_b: vec![4, 7, 10, 15],
                noise_sigma: Some(10.0),
            }],
            noise_only_bands: vec![6, 8, 12],
            noise_only_sigma: default_noise_only_sigma(),
            noise_only_step: 1500.0,
        }
    }

    fn roles(&self, n_classes: u32) -> Result<Vec<Role>> {
        let bad = |msg: String| Err(Error::Spec(msg));
        if self.n_bands == 0 {
            return bad("n_bands must be positive".into());
        }
        if self.class_means.len() < n_classes as usize + 1 {
            return bad(format!(
                "class_means has {} levels but the map needs {} (background plus {n_classes} classes)",
                self.class_means.len(),
                n_classes + 1
            ));
        }
        if self.class_means.iter().any(|m| !m.is_finite()) {
            return bad("class_means must be finite".into());
        }
        for (name, s) in [
            ("noise_sigma", self.noise_sigma),
            ("noise_only_sigma", self.noise_only_sigma),
        ] {
            if !(s.is_finite() && s >= 0.0) {
                return bad(format!("{name} must be finite and nonnegative, got {s}"));
            }
        }
        if !(self.noise_only_step.is_finite() && self.noise_only_step >= 1.0) {
            return bad(format!(
                "noise_only_step must be at least 1, got {}",
                self.noise_only_step
            ));
        }
        if !self.erase_classes.is_empty() && self.erase_classes.len() != self.n_bands {
            return bad(format!(
                "erase_classes must be empty or list all {} bands, got {}",
                self.n_bands,
                self.erase_classes.len()
            ));
        }
        let check_band = |b: usize, what: &str| -> Result<()> {
            if b >= self.n_bands {
                return Err(Error::Spec(format!(
                    "{what} references band {b} but there are only {} bands",
                    self.n_bands
                )));
            }
            Ok(())
        };
        let check_class = |c: u32, what: &str| -> Result<()> {
            if c > n_classes {
                return Err(Error::Spec(format!(
                    "{what} references class {c} but the map has {n_classes} classes"
                )));
            }
            Ok(())
        };
        for classes in &self.erase_classes {
            for &c in classes {
                check_class(c, "erase_classes")?;
            }
        }

        let mut roles = vec![Role::Regular; self.n_bands];
        let assign = |b: usize, role: Role, roles: &mut Vec<Role>| -> Result<()> {
            if roles[b] != Role::Regular {
                return Err(Error::Spec(format!("band {b} is given more than one role")));
            }
            roles[b] = role;
            Ok(())
        };
        for &b in &self.noise_only_bands {
            check_band(b, "noise_only_bands")?;
            assign(b, Role::NoiseOnly, &mut roles)?;
        }
        for (i, pair) in self.disjoint_pairs.iter().enumerate() {
            check_band(pair.band_a, "disjoint_pairs")?;
            check_band(pair.band_b, "disjoint_pairs")?;
            let a: BTreeSet<u32> = pair.classes_a.iter().copied().collect();
            let b: BTreeSet<u32> = pair.classes_b.iter().copied().collect();
            for &c in a.iter().chain(&b) {
                check_class(c, "disjoint_pairs")?;
                if c == 0 {
                    return bad("disjoint_pairs cannot cover the background label".into());
                }
            }
            if let Some(s) = pair.noise_sigma {
                if !(s.is_finite() && s >= 0.0) {
                    return bad(format!(
                        "disjoint pair noise_sigma must be finite and nonnegative, got {s}"
                    ));
                }
            }
            if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) {
                return bad(format!(
                    "disjoint pair ({}, {}) needs two nonempty, non-overlapping class sets",
                    pair.band_a, pair.band_b
                ));
            }
            assign(pair.band_a, Role::Disjoint { pair: i, first: true }, &mut roles)?;
            assign(pair.band_b, Role::Disjoint { pair: i, first: false }, &mut roles)?;
        }
        for pair in &self.duplicate_pairs {
            check_band(pair.source, "duplicate_pairs")?;
            check_band(pair.copy, "duplicate_pairs")?;
            if !(pair.extra_noise.is_finite() && pair.extra_noise >= 0.0) {
                return bad(format!(
                    "extra_noise must be finite and nonnegative, got {}",
                    pair.extra_noise
                ));
            }
            if pair.source == pair.copy {
                return bad(format!("band {} cannot duplicate itself", pair.source));
            }
            assign(
                pair.copy,
                Role::Copy {
                    source: pair.source,
                    extra_noise: pair.extra_noise,
                },
                &mut roles,
            )?;
        }
        for pair in &self.duplicate_pairs {
            if matches!(roles[pair.source], Role::Copy { .. }) {
                return bad(format!("band {} is a copy and cannot be duplicated again", pair.source));
            }
        }
        Ok(roles)
    }
}

/// Renders the bands described by `spec` over `gt`. Band `b` draws its noise
/// from ChaCha stream `b` of `seed`, so output is reproducible per seed.
pub fn synthesize_bands(gt: &GroundTruthMap, spec: &SyntheticSpec, seed: u64) -> Result<HsiCube> {
    let roles = spec.roles(gt.n_classes())?;
    let background = spec.class_means[0];
    let mut bands: Vec<Vec<f64>> = vec![Vec::new(); spec.n_bands];

    let finish = |v: f64| v.round().clamp(0.0, 65535.0);
    for b in 0..spec.n_bands {
        let mut noise = Gaussian::new(rng::stream(seed, b as u64));
        bands[b] = match roles[b] {
            Role::Copy { .. } => continue,
            Role::NoiseOnly => gt
                .labels()
                .iter()
                .map(|_| {
                    let v = background + spec.noise_only_sigma * noise.sample();
                    finish((v / spec.noise_only_step).round() * spec.noise_only_step)
                })
                .collect(),
            Role::Disjoint { pair, first } => {
                let p = &spec.disjoint_pairs[pair];
                let shown = if first { &p.classes_a } else { &p.classes_b };
                let sigma = p.noise_sigma.unwrap_or(spec.noise_sigma);
                gt.labels()
                    .iter()
                    .map(|&l| {
                        let level = if shown.contains(&l) {
                            spec.class_means[l as usize]
                        } else {
                            background
                        };
                        finish(level + sigma * noise.sample())
                    })
                    .collect()
            }
            Role::Regular => {
                let erased: &[u32] = spec.erase_classes.get(b).map_or(&[], Vec::as_slice);
                gt.labels()
                    .iter()
                    .map(|&l| {
                        let level = if erased.contains(&l) {
                            background
                        } else {
                            spec.class_means[l as usize]
                        };
                        finish(level + spec.noise_sigma * noise.sample())
                    })
                    .collect()
            }
        };
    }
    for b in 0..spec.n_bands {
        if let Role::Copy { source, extra_noise } = roles[b] {
            let mut noise = Gaussian::new(rng::stream(seed, b as u64));
            bands[b] = bands[source]
                .iter()
                .map(|&v| finish(v + extra_noise * noise.sample()))
                .collect();
        }
    }
    HsiCube::from_bands(gt.lines(), gt.samples(), bands)
}

/// A field-like label map: pixels take the label of the nearest of
/// `10 * n_classes` random sites. Each class owns five sites and the other
/// half of the sites are unlabeled (0), so classes cover similar areas and
/// roughly half the scene is labeled.
pub fn synthetic_ground_truth(lines: usize, samples: usize, n_classes: u32, seed: u64) -> Result<GroundTruthMap> {
    if lines == 0 || samples == 0 || n_classes == 0 {
        return Err(Error::InvalidArgument(format!(
            "synthetic map needs positive size and classes, got {lines}x{samples} with {n_classes} classes"
        )));
    }
    let mut rng = rng::stream(seed, rng::GROUND_TRUTH_STREAM);
    let labeled_sites = 5 * n_classes as usize;
    let sites: Vec<(f64, f64, u32)> = (0..2 * labeled_sites)
        .map(|i| {
            let r = rng.gen_range(0.0..lines as f64);
            let c = rng.gen_range(0.0..samples as f64);
            let label = if i < labeled_sites {
                (i % n_classes as usize) as u32 + 1
            } else {
                0
            };
            (r, c, label)
        })
        .collect();

    let mut labels = Vec::with_capacity(lines * samples);
    for row in 0..lines {
        for col in 0..samples {
            let (y, x) = (row as f64 + 0.5, col as f64 + 0.5);
            let nearest = sites
                .iter()
                .map(|&(r, c, l)| ((r - y).powi(2) + (c - x).powi(2), l))
                .fold(
                    (f64::INFINITY, 0),
                    |best, cand| {
                        if cand.0 < best.0 {
                            cand
                        } else {
                            best
                        }
                    },
                );
            labels.push(nearest.1);
        }
    }
    GroundTruthMap::new(lines, samples, labels)
}
