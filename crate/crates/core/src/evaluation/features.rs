use crate::data_model::{GroundTruthMap, HsiCube, Pixel};
use crate::{Error, Result};

/// One row per pixel holding its raw reflectance in each selected band.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    bands: Vec<usize>,
    values: Vec<f64>,
    labels: Vec<u32>,
}

impl FeatureMatrix {
    pub fn new(bands: Vec<usize>, values: Vec<f64>, labels: Vec<u32>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::InvalidArgument("feature matrix needs at least one band".into()));
        }
        if values.len() != labels.len() * bands.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows of {} columns need {} values, got {}",
                labels.len(),
                bands.len(),
                labels.len() * bands.len(),
                values.len()
            )));
        }
        Ok(Self { bands, values, labels })
    }

    pub fn rows(&self) -> usize {
        self.labels.len()
    }

    pub fn cols(&self) -> usize {
        self.bands.len()
    }

    pub fn bands(&self) -> &[usize] {
        &self.bands
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols()..(i + 1) * self.cols()]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

pub fn extract_features(
    cube: &HsiCube,
    selected: &[usize],
    pixels: &[Pixel],
    gt: &GroundTruthMap,
) -> Result<FeatureMatrix> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("no bands selected".into()));
    }
    if let Some(&b) = selected.iter().find(|&&b| b >= cube.bands()) {
        return Err(Error::InvalidArgument(format!(
            "band {b} does not exist in a cube of {} bands",
            cube.bands()
        )));
    }
    if (cube.lines(), cube.samples()) != (gt.lines(), gt.samples()) {
        return Err(Error::dims((cube.lines(), cube.samples()), (gt.lines(), gt.samples())));
    }
    let mut values = Vec::with_capacity(pixels.len() * selected.len());
    let mut labels = Vec::with_capacity(pixels.len());
    for p in pixels {
        if p.row >= gt.lines() || p.col >= gt.samples() {
            return Err(Error::InvalidArgument(format!(
                "pixel ({}, {}) lies outside the {}x{} grid",
                p.row,
                p.col,
                gt.lines(),
                gt.samples()
            )));
        }
        let label = gt.label(p.row, p.col);
        if label == 0 {
            return Err(Error::InvalidArgument(format!(
                "pixel ({}, {}) is unlabeled",
                p.row, p.col
            )));
        }
        values.extend(selected.iter().map(|&b| cube.value(b, p.row, p.col)));
        labels.push(label);
    }
    FeatureMatrix::new(selected.to_vec(), values, labels)
}

/// CSV with one column per band (`band_<index>`) and the label last, for
/// feeding external classifiers.
pub fn export_features_csv(features: &FeatureMatrix) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = features.bands.iter().map(|b| format!("band_{b}")).collect();
    header.push("label".into());
    w.write_record(&header)?;
    for i in 0..features.rows() {
        let mut rec: Vec<String> = features.row(i).iter().map(|v| v.to_string()).collect();
        rec.push(features.labels[i].to_string());
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (HsiCube, GroundTruthMap) {
        let cube = HsiCube::new(3, 2, 2, (0..12).map(f64::from).collect()).unwrap();
        let gt = GroundTruthMap::new(2, 2, vec![1, 0, 2, 3]).unwrap();
        (cube, gt)
    }

    #[test]
    fn single_band_gives_one_column() {
        let (cube, gt) = fixture();
        let f = extract_features(&cube, &[1], &[Pixel { row: 1, col: 1 }], &gt).unwrap();
        assert_eq!(f.cols(), 1);
        assert_eq!(f.row(0), &[7.0]);
        assert_eq!(f.labels(), &[3]);
    }

    #[test]
    fn unlabeled_pixel_rejected() {
        let (cube, gt) = fixture();
        assert!(extract_features(&cube, &[0], &[Pixel { row: 0, col: 1 }], &gt).is_err());
    }

    #[test]
    fn export_puts_label_last() {
        let (cube, gt) = fixture();
        let f = extract_features(
            &cube,
            &[2, 0],
            &[Pixel { row: 0, col: 0 }, Pixel { row: 1, col: 0 }],
            &gt,
        )
        .unwrap();
        assert_eq!(export_features_csv(&f).unwrap(), "band_2,band_0,label\n8,0,1\n10,2,2\n");
    }
}
