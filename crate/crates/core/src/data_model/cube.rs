use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A stack of equally sized bands, stored band-major: value `(b, r, c)` lives
/// at `b * lines * samples + r * samples + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct HsiCube {
    bands: usize,
    lines: usize,
    samples: usize,
    data: Vec<f64>,
}

impl HsiCube {
    pub fn new(bands: usize, lines: usize, samples: usize, data: Vec<f64>) -> Result<Self> {
        if bands == 0 || lines == 0 || samples == 0 {
            return Err(Error::InvalidArgument(format!(
                "cube dimensions must be positive, got {bands} bands of {lines}x{samples}"
            )));
        }
        if data.len() != bands * lines * samples {
            return Err(Error::InvalidArgument(format!(
                "cube of {bands} bands of {lines}x{samples} needs {} values, got {}",
                bands * lines * samples,
                data.len()
            )));
        }
        Ok(Self {
            bands,
            lines,
            samples,
            data,
        })
    }

    /// Builds a cube from per-band rasters of `lines * samples` values.
    pub fn from_bands(lines: usize, samples: usize, bands: Vec<Vec<f64>>) -> Result<Self> {
        let n = bands.len();
        if let Some(bad) = bands.iter().position(|b| b.len() != lines * samples) {
            return Err(Error::InvalidArgument(format!(
                "band {bad} has {} values, expected {}",
                bands[bad].len(),
                lines * samples
            )));
        }
        Self::new(n, lines, samples, bands.concat())
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn pixels_per_band(&self) -> usize {
        self.lines * self.samples
    }

    pub fn band(&self, b: usize) -> &[f64] {
        let n = self.pixels_per_band();
        &self.data[b * n..(b + 1) * n]
    }

    pub fn value(&self, band: usize, row: usize, col: usize) -> f64 {
        self.data[band * self.pixels_per_band() + row * self.samples + col]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DType {
    U16,
    F32,
}

impl DType {
    fn width(self) -> usize {
        match self {
            DType::U16 => 2,
            DType::F32 => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interleave {
    Bsq,
    Bil,
    Bip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ByteOrder {
    Little,
    Big,
}

/// JSON sidecar describing a raw binary cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeHeader {
    pub bands: usize,
    pub lines: usize,
    pub samples: usize,
    pub dtype: DType,
    pub interleave: Interleave,
    pub byte_order: ByteOrder,
}

impl CubeHeader {
    fn validate(&self) -> Result<()> {
        if self.bands == 0 || self.lines == 0 || self.samples == 0 {
            return Err(Error::Header(format!(
                "dimensions must be positive, got bands={} lines={} samples={}",
                self.bands, self.lines, self.samples
            )));
        }
        Ok(())
    }

    pub fn expected_bytes(&self) -> u64 {
        (self.bands * self.lines * self.samples * self.dtype.width()) as u64
    }

    /// Position of `(band, row, col)` in file order, in elements.
    fn file_index(&self, band: usize, row: usize, col: usize) -> usize {
        let (b, l, s) = (self.bands, self.lines, self.samples);
        match self.interleave {
            Interleave::Bsq => (band * l + row) * s + col,
            Interleave::Bil => (row * b + band) * s + col,
            Interleave::Bip => (row * s + col) * b + band,
        }
    }
}

/// The sidecar for `data.raw` is `data.raw.json`.
pub fn sidecar_path(data_path: &Path) -> PathBuf {
    let mut s = data_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn read_header(path: &Path) -> Result<CubeHeader> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let header: CubeHeader =
        serde_json::from_str(&text).map_err(|e| Error::Header(format!("{}: {e}", path.display())))?;
    header.validate()?;
    Ok(header)
}

/// Reads a raw cube in any interleave and returns it band-major.
pub fn load_cube(data_path: &Path, header: &CubeHeader) -> Result<HsiCube> {
    header.validate()?;
    let expected = header.expected_bytes();
    let actual = fs::metadata(data_path).map_err(|e| Error::io(data_path, e))?.len();
    if actual != expected {
        return Err(Error::SizeMismatch {
            path: data_path.to_path_buf(),
            expected,
            actual,
        });
    }
    let bytes = fs::read(data_path).map_err(|e| Error::io(data_path, e))?;
    let raw = decode(&bytes, header.dtype, header.byte_order);

    let (lines, samples) = (header.lines, header.samples);
    let mut data = vec![0.0; raw.len()];
    for band in 0..header.bands {
        for row in 0..lines {
            for col in 0..samples {
                data[(band * lines + row) * samples + col] = raw[header.file_index(band, row, col)];
            }
        }
    }
    HsiCube::new(header.bands, lines, samples, data)
}

fn decode(bytes: &[u8], dtype: DType, order: ByteOrder) -> Vec<f64> {
    match dtype {
        DType::U16 => bytes
            .chunks_exact(2)
            .map(|c| {
                let b = [c[0], c[1]];
                f64::from(match order {
                    ByteOrder::Little => u16::from_le_bytes(b),
                    ByteOrder::Big => u16::from_be_bytes(b),
                })
            })
            .collect(),
        DType::F32 => bytes
            .chunks_exact(4)
            .map(|c| {
                let b = [c[0], c[1], c[2], c[3]];
                f64::from(match order {
                    ByteOrder::Little => f32::from_le_bytes(b),
                    ByteOrder::Big => f32::from_be_bytes(b),
                })
            })
            .collect(),
    }
}

/// Writes `cube` to `data_path` in the layout `header` describes, plus the
/// sidecar at [`sidecar_path`]. `u16` output requires integer values in range.
pub fn write_cube(cube: &HsiCube, data_path: &Path, header: &CubeHeader) -> Result<()> {
    header.validate()?;
    if (header.bands, header.lines, header.samples) != (cube.bands, cube.lines, cube.samples) {
        return Err(Error::Header(format!(
            "header declares {}x{}x{} but cube is {}x{}x{}",
            header.bands, header.lines, header.samples, cube.bands, cube.lines, cube.samples
        )));
    }
    let n = cube.data.len();
    let mut ordered = vec![0.0; n];
    for band in 0..cube.bands {
        for row in 0..cube.lines {
            for col in 0..cube.samples {
                ordered[header.file_index(band, row, col)] = cube.value(band, row, col);
            }
        }
    }

    let mut bytes = Vec::with_capacity(n * header.dtype.width());
    for v in ordered {
        match header.dtype {
            DType::U16 => {
                if v.fract() != 0.0 || !(0.0..=65535.0).contains(&v) {
                    return Err(Error::InvalidArgument(format!("value {v} cannot be stored as u16")));
                }
                let v = v as u16;
                bytes.extend_from_slice(&match header.byte_order {
                    ByteOrder::Little => v.to_le_bytes(),
                    ByteOrder::Big => v.to_be_bytes(),
                });
            }
            DType::F32 => {
                let v = v as f32;
                bytes.extend_from_slice(&match header.byte_order {
                    ByteOrder::Little => v.to_le_bytes(),
                    ByteOrder::Big => v.to_be_bytes(),
                });
            }
        }
    }
    fs::write(data_path, &bytes).map_err(|e| Error::io(data_path, e))?;
    let side = sidecar_path(data_path);
    let mut json = serde_json::to_string_pretty(header)?;
    json.push('\n');
    fs::write(&side, json).map_err(|e| Error::io(&side, e))
}
