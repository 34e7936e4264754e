use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::{AccuracyReport, SweepGrid};
use crate::band_selection::{BaselineSelection, SelectionResult};
use crate::{Error, Result};

/// Version stamped into every JSON document this module writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown report format {other:?}, expected csv or json"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Sweep(&'a SweepGrid),
    Accuracy(&'a AccuracyReport),
    Selection(&'a SelectionResult),
    Baseline(&'a BaselineSelection),
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema_version: u32,
    kind: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
    kind: String,
}

pub fn emit_report(report: Report<'_>, format: ReportFormat) -> Result<String> {
    match (report, format) {
        (Report::Sweep(g), ReportFormat::Json) => json("sweep", g),
        (Report::Accuracy(a), ReportFormat::Json) => json("accuracy", a),
        (Report::Selection(s), ReportFormat::Json) => json("selection", s),
        (Report::Baseline(b), ReportFormat::Json) => json("baseline", b),
        (Report::Sweep(g), ReportFormat::Csv) => sweep_csv(g),
        (Report::Accuracy(a), ReportFormat::Csv) => accuracy_csv(a),
        (Report::Selection(s), ReportFormat::Csv) => order_csv(&s.selected),
        (Report::Baseline(b), ReportFormat::Csv) => order_csv(&b.selected),
    }
}

fn json<T: Serialize>(kind: &str, body: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        kind,
        body,
    })?;
    s.push('\n');
    Ok(s)
}

fn check_header(text: &str, kind: &str) -> Result<()> {
    let h: Header = serde_json::from_str(text)?;
    if h.schema_version != SCHEMA_VERSION || h.kind != kind {
        return Err(Error::InvalidArgument(format!(
            "expected a version {SCHEMA_VERSION} {kind} document, found version {} {}",
            h.schema_version, h.kind
        )));
    }
    Ok(())
}

pub fn parse_sweep_json(text: &str) -> Result<SweepGrid> {
    check_header(text, "sweep")?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_accuracy_json(text: &str) -> Result<AccuracyReport> {
    check_header(text, "accuracy")?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_selection_json(text: &str) -> Result<SelectionResult> {
    check_header(text, "selection")?;
    Ok(serde_json::from_str(text)?)
}

pub fn parse_baseline_json(text: &str) -> Result<BaselineSelection> {
    check_header(text, "baseline")?;
    Ok(serde_json::from_str(text)?)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn sweep_csv(g: &SweepGrid) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["th_relevance", "th_redundancy", "n_bands", "accuracy_pct", "seed"])?;
    for c in &g.cells {
        w.write_record([
            c.th_relevance.to_string(),
            c.th_redundancy.to_string(),
            c.n_bands.to_string(),
            c.accuracy.map_or_else(|| "-".to_string(), |a| format!("{a:.2}")),
            g.seed.to_string(),
        ])?;
    }
    finish(w)
}

fn order_csv(bands: &[usize]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["order", "band"])?;
    for (i, b) in bands.iter().enumerate() {
        w.write_record([i.to_string(), b.to_string()])?;
    }
    finish(w)
}

fn accuracy_csv(a: &AccuracyReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n_bands",
        "accuracy_pct",
        "th_relevance",
        "th_redundancy",
        "seed",
        "classifier",
        "bands",
    ])?;
    let (rel, red) = a.thresholds.map_or((String::new(), String::new()), |t| {
        (t.th_relevance.to_string(), t.th_redundancy.to_string())
    });
    let bands: Vec<String> = a.bands.iter().map(usize::to_string).collect();
    w.write_record([
        a.n_bands.to_string(),
        format!("{:.2}", a.accuracy),
        rel,
        red,
        a.seed.to_string(),
        a.classifier.clone(),
        bands.join(" "),
    ])?;
    finish(w)
}

/// Per-band MI as CSV (`band,mi_bits`), with an `mi_estimated_bits` column
/// when a second curve against an estimated ground truth is given.
pub fn curve_csv(curve: &[f64], estimated: Option<&[f64]>) -> Result<String> {
    if let Some(e) = estimated {
        if e.len() != curve.len() {
            return Err(Error::InvalidArgument(format!(
                "curves have {} and {} bands",
                curve.len(),
                e.len()
            )));
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    match estimated {
        Some(_) => w.write_record(["band", "mi_bits", "mi_estimated_bits"])?,
        None => w.write_record(["band", "mi_bits"])?,
    }
    for (b, mi) in curve.iter().enumerate() {
        let mut rec = vec![b.to_string(), mi.to_string()];
        if let Some(e) = estimated {
            rec.push(e[b].to_string());
        }
        w.write_record(&rec)?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band_selection::{RelevanceRanking, SelectionResult, Thresholds};
    use crate::evaluation::sweep::SweepCell;

    fn cell(r: f64, t: f64, n: usize, acc: Option<f64>) -> SweepCell {
        let th = Thresholds::new(r, t).unwrap();
        SweepCell {
            th_relevance: r,
            th_redundancy: t,
            n_bands: n,
            accuracy: acc,
            selection: SelectionResult {
                selected: (0..n).collect(),
                thresholds: th,
                ranking: RelevanceRanking::default(),
                decision_log: vec![],
            },
        }
    }

    fn grid(cells: Vec<SweepCell>, rel: Vec<f64>, red: Vec<f64>) -> SweepGrid {
        SweepGrid {
            relevance_axis: rel,
            redundancy_axis: red,
            bins: 256,
            seed: 0,
            fraction: 0.5,
            classifier: "1nn-euclidean".into(),
            cells,
        }
    }

    #[test]
    fn empty_grid_is_header_only() {
        let g = grid(vec![], vec![], vec![]);
        assert_eq!(
            emit_report(Report::Sweep(&g), ReportFormat::Csv).unwrap(),
            "th_relevance,th_redundancy,n_bands,accuracy_pct,seed\n"
        );
    }

    #[test]
    fn two_by_two_fixture_bytes() {
        let g = grid(
            vec![
                cell(0.0, 0.3, 4, Some(61.25)),
                cell(0.0, 0.7, 6, Some(70.0)),
                cell(0.4, 0.3, 0, None),
                cell(0.4, 0.7, 3, Some(86.734)),
            ],
            vec![0.0, 0.4],
            vec![0.3, 0.7],
        );
        let expected = "th_relevance,th_redundancy,n_bands,accuracy_pct,seed\n\
                        0,0.3,4,61.25,0\n\
                        0,0.7,6,70.00,0\n\
                        0.4,0.3,0,-,0\n\
                        0.4,0.7,3,86.73,0\n";
        assert_eq!(emit_report(Report::Sweep(&g), ReportFormat::Csv).unwrap(), expected);
    }

    #[test]
    fn json_round_trip() {
        let g = grid(vec![cell(0.4, 0.7, 2, Some(55.5))], vec![0.4], vec![0.7]);
        let text = emit_report(Report::Sweep(&g), ReportFormat::Json).unwrap();
        assert!(text.starts_with("{\n  \"schema_version\": 1,\n  \"kind\": \"sweep\""));
        assert_eq!(parse_sweep_json(&text).unwrap(), g);
        assert!(parse_accuracy_json(&text).is_err());
    }

    #[test]
    fn selection_and_baseline_documents() {
        let sel = cell(0.4, 0.7, 3, Some(1.0)).selection;
        let text = emit_report(Report::Selection(&sel), ReportFormat::Json).unwrap();
        assert_eq!(parse_selection_json(&text).unwrap(), sel);
        assert_eq!(
            emit_report(Report::Selection(&sel), ReportFormat::Csv).unwrap(),
            "order,band\n0,0\n1,1\n2,2\n"
        );
        let base = crate::band_selection::bandwidth_rejection(&[1.0, 2.0, 0.5], 1, 2, 0.1).unwrap();
        let text = emit_report(Report::Baseline(&base), ReportFormat::Json).unwrap();
        assert_eq!(parse_baseline_json(&text).unwrap(), base);
        assert!(parse_selection_json(&text).is_err());
    }

    #[test]
    fn unknown_format_tag() {
        assert!("xml".parse::<ReportFormat>().is_err());
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
    }

    #[test]
    fn curve_with_estimate() {
        let s = curve_csv(&[0.5, 1.25], Some(&[0.25, 1.0])).unwrap();
        assert_eq!(s, "band,mi_bits,mi_estimated_bits\n0,0.5,0.25\n1,1.25,1\n");
    }
}
