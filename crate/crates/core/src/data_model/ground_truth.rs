use std::fs;
use std::path::Path;

use super::cube::{load_cube, read_header, sidecar_path};
use crate::info_theory::{DiscreteRaster, PixelMask};
use crate::{Error, Result};

/// Per-pixel class labels in `0..=n_classes`; label 0 marks unlabeled pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthMap {
    lines: usize,
    samples: usize,
    labels: Vec<u32>,
    n_classes: u32,
}

impl GroundTruthMap {
    /// The class count is inferred as the largest label.
    pub fn new(lines: usize, samples: usize, labels: Vec<u32>) -> Result<Self> {
        if lines == 0 || samples == 0 {
            return Err(Error::GroundTruth(format!(
                "map must have at least one pixel, got {lines}x{samples}"
            )));
        }
        if labels.len() != lines * samples {
            return Err(Error::GroundTruth(format!(
                "map {lines}x{samples} needs {} labels, got {}",
                lines * samples,
                labels.len()
            )));
        }
        let n_classes = labels.iter().copied().max().unwrap_or(0);
        Ok(Self {
            lines,
            samples,
            labels,
            n_classes,
        })
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn n_classes(&self) -> u32 {
        self.n_classes
    }

    pub fn label(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.samples + col]
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn labeled_mask(&self) -> PixelMask {
        PixelMask::new(self.samples, self.lines, self.labels.iter().map(|&l| l != 0).collect())
            .expect("mask dimensions follow the map")
    }

    /// The labels as a raster over the alphabet `0..=n_classes`.
    pub fn raster(&self) -> DiscreteRaster {
        DiscreteRaster::new(
            self.samples,
            self.lines,
            self.n_classes as usize + 1,
            self.labels.clone(),
        )
        .expect("labels are bounded by n_classes")
    }
}

/// Loads a map from a whitespace-separated text grid, or from a single-band
/// raw cube when a JSON sidecar sits next to `path`.
pub fn load_ground_truth(path: &Path) -> Result<GroundTruthMap> {
    let side = sidecar_path(path);
    if side.exists() {
        return load_raw(path, &side);
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_text(&text)
}

fn load_raw(path: &Path, side: &Path) -> Result<GroundTruthMap> {
    let header = read_header(side)?;
    if header.bands != 1 {
        return Err(Error::GroundTruth(format!(
            "raw ground truth must have exactly 1 band, header declares {}",
            header.bands
        )));
    }
    let cube = load_cube(path, &header)?;
    let labels = cube
        .band(0)
        .iter()
        .enumerate()
        .map(|(i, &v)| to_label(v, i / header.samples + 1, i % header.samples + 1))
        .collect::<Result<Vec<_>>>()?;
    GroundTruthMap::new(header.lines, header.samples, labels)
}

fn to_label(v: f64, line: usize, column: usize) -> Result<u32> {
    if v < 0.0 || v.fract() != 0.0 || v > f64::from(u32::MAX) {
        return Err(Error::GroundTruth(format!(
            "label {v} at line {line}, column {column} is not a nonnegative integer"
        )));
    }
    Ok(v as u32)
}

fn parse_text(text: &str) -> Result<GroundTruthMap> {
    let mut labels = Vec::new();
    let mut samples = None;
    let mut lines = 0;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut count = 0;
        for (j, tok) in line.split_whitespace().enumerate() {
            let label = match tok.parse::<i64>() {
                Ok(v) if v >= 0 && v <= i64::from(u32::MAX) => v as u32,
                Ok(v) => {
                    return Err(Error::GroundTruth(format!(
                        "label {v} at line {}, column {} is out of range",
                        i + 1,
                        j + 1
                    )))
                }
                Err(_) => {
                    return Err(Error::GroundTruth(format!(
                        "label {tok:?} at line {}, column {} is not an integer",
                        i + 1,
                        j + 1
                    )))
                }
            };
            labels.push(label);
            count += 1;
        }
        match samples {
            None => samples = Some(count),
            Some(s) if s != count => {
                return Err(Error::GroundTruth(format!(
                    "line {} has {count} labels, expected {s}",
                    i + 1
                )))
            }
            _ => {}
        }
        lines += 1;
    }
    GroundTruthMap::new(lines, samples.unwrap_or(0), labels)
}

/// Writes the map as a text grid, one row per line.
pub fn write_ground_truth(gt: &GroundTruthMap, path: &Path) -> Result<()> {
    fs::write(path, render_text(gt)).map_err(|e| Error::io(path, e))
}

fn render_text(gt: &GroundTruthMap) -> String {
    let mut out = String::with_capacity(gt.labels.len() * 3);
    for row in gt.labels.chunks_exact(gt.samples) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grid_and_infers_classes() {
        let gt = parse_text("0 1 2\n3 0 1\n").unwrap();
        assert_eq!((gt.lines(), gt.samples()), (2, 3));
        assert_eq!(gt.n_classes(), 3);
        assert_eq!(gt.labeled_count(), 4);
        assert_eq!(gt.label(1, 0), 3);
    }

    #[test]
    fn all_zero_map_loads() {
        let gt = parse_text("0 0\n0 0\n").unwrap();
        assert_eq!(gt.labeled_count(), 0);
        assert!(gt.labeled_mask().is_empty());
    }

    #[test]
    fn rejects_negative_and_fractional_labels() {
        assert!(matches!(parse_text("0 -1\n"), Err(Error::GroundTruth(_))));
        let err = parse_text("0 1.5\n").unwrap_err().to_string();
        assert!(err.contains("line 1, column 2"), "{err}");
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_text("0 1\n1\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let gt = GroundTruthMap::new(2, 3, vec![0, 4, 2, 16, 0, 1]).unwrap();
        let text = render_text(&gt);
        let back = parse_text(&text).unwrap();
        assert_eq!(back, gt);
        assert_eq!(render_text(&back), text);
    }
}
