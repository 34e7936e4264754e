use std::path::Path;

use bandsel::band_selection::Thresholds;
use bandsel::data_model::{
    split_labeled_pixels, synthesize_bands, synthetic_ground_truth, GroundTruthMap, HsiCube, Pixel, SyntheticSpec,
};
use bandsel::evaluation::{
    accuracy, classify_1nn, emit_report, export_features_csv, extract_features, parse_accuracy_json, sweep,
    AccuracyReport, FeatureMatrix, Report, ReportFormat, SweepConfig, NEAREST_NEIGHBOR,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> FeatureMatrix {
    let values = (0..rows * cols).map(|_| f64::from(rng.gen_range(0..6u8))).collect();
    let labels = (0..rows).map(|_| rng.gen_range(1..=4)).collect();
    FeatureMatrix::new((0..cols).collect(), values, labels).unwrap()
}

#[test]
fn nearest_neighbor_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..20 {
        let train = random_matrix(&mut rng, 50, 3);
        let test = random_matrix(&mut rng, 50, 3);
        let predicted = classify_1nn(&train, &test).unwrap();
        for (i, &p) in predicted.iter().enumerate() {
            let mut best = (f64::INFINITY, 0);
            for j in 0..train.rows() {
                let d: f64 = test.row(i).iter().zip(train.row(j)).map(|(a, b)| (a - b).powi(2)).sum();
                if d < best.0 {
                    best = (d, j);
                }
            }
            assert_eq!(p, train.labels()[best.1]);
        }
    }
}

#[test]
fn accuracy_is_a_percentage() {
    assert_eq!(accuracy(&[1, 2, 3, 3], &[1, 2, 2, 3]).unwrap(), 75.0);
    assert!(accuracy(&[1], &[1, 2]).is_err());
}

#[test]
fn features_are_direct_lookups() {
    let gt = synthetic_ground_truth(12, 9, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let bands: Vec<Vec<f64>> = (0..6)
        .map(|_| (0..108).map(|_| rng.gen_range(0.0..1.0)).collect())
        .collect();
    let cube = HsiCube::from_bands(12, 9, bands).unwrap();
    let split = split_labeled_pixels(&gt, 0.5, 4).unwrap();
    let chosen = [5, 1, 3];
    let f = extract_features(&cube, &chosen, &split.test, &gt).unwrap();
    assert_eq!(f.rows(), split.test.len());
    for (i, p) in split.test.iter().enumerate() {
        let expected: Vec<f64> = chosen.iter().map(|&b| cube.value(b, p.row, p.col)).collect();
        assert_eq!(f.row(i), expected.as_slice());
        assert_eq!(f.labels()[i], gt.label(p.row, p.col));
    }
    let unlabeled = (0..12)
        .flat_map(|r| (0..9).map(move |c| Pixel { row: r, col: c }))
        .find(|p| gt.label(p.row, p.col) == 0)
        .unwrap();
    assert!(extract_features(&cube, &chosen, &[unlabeled], &gt).is_err());
}

#[test]
fn feature_csv_layout() {
    let f = FeatureMatrix::new(vec![4, 7], vec![1.5, 2.0, 3.0, 0.25], vec![2, 5]).unwrap();
    assert_eq!(
        export_features_csv(&f).unwrap(),
        "band_4,band_7,label\n1.5,2,2\n3,0.25,5\n"
    );
}

fn small_suite() -> (HsiCube, GroundTruthMap) {
    let gt = synthetic_ground_truth(60, 60, 16, 5).unwrap();
    let cube = synthesize_bands(&gt, &SyntheticSpec::paper_like(), 5).unwrap();
    (cube, gt)
}

#[test]
fn each_sweep_cell_equals_an_isolated_run() {
    let (cube, gt) = small_suite();
    let config = SweepConfig {
        relevance_axis: vec![0.0, 0.4, 1.0],
        redundancy_axis: vec![0.15, 0.35, 0.7],
        bins: 64,
        split_seed: 2,
        fraction: 0.5,
    };
    let full = sweep(&cube, &gt, &config).unwrap();
    assert_eq!(full.cells.len(), 9);
    for (r, &rel) in config.relevance_axis.iter().enumerate() {
        for (t, &red) in config.redundancy_axis.iter().enumerate() {
            let single = SweepConfig {
                relevance_axis: vec![rel],
                redundancy_axis: vec![red],
                ..config.clone()
            };
            let alone = sweep(&cube, &gt, &single).unwrap();
            assert_eq!(&alone.cells[0], full.cell(r, t));
            let cell = full.cell(r, t);
            assert_eq!(cell.selection.thresholds, Thresholds::new(rel, red).unwrap());
            assert_eq!(cell.accuracy.is_none(), cell.n_bands == 0);
        }
    }
    assert_eq!(full, sweep(&cube, &gt, &config).unwrap());
}

#[test]
fn report_fixtures_match_bytes() {
    let report = AccuracyReport {
        n_bands: 2,
        accuracy: 87.5,
        thresholds: Some(Thresholds::new(0.4, 0.7).unwrap()),
        seed: 3,
        classifier: NEAREST_NEIGHBOR.into(),
        bands: vec![2, 5],
    };
    let json = emit_report(Report::Accuracy(&report), ReportFormat::Json).unwrap();
    assert_eq!(json, fixture("accuracy.json"));
    assert_eq!(parse_accuracy_json(&json).unwrap(), report);
    assert_eq!(
        emit_report(Report::Accuracy(&report), ReportFormat::Csv).unwrap(),
        fixture("accuracy.csv")
    );
}

#[test]
fn sweep_csv_fixture_matches_bytes() {
    use bandsel::band_selection::{RelevanceRanking, SelectionResult};
    use bandsel::evaluation::{SweepCell, SweepGrid};

    let cell = |r: f64, t: f64, n: usize, acc: Option<f64>| SweepCell {
        th_relevance: r,
        th_redundancy: t,
        n_bands: n,
        accuracy: acc,
        selection: SelectionResult {
            selected: (0..n).collect(),
            thresholds: Thresholds::new(r, t).unwrap(),
            ranking: RelevanceRanking::default(),
            decision_log: vec![],
        },
    };
    let grid = SweepGrid {
        relevance_axis: vec![0.0, 0.4],
        redundancy_axis: vec![0.3, 0.7],
        bins: 256,
        seed: 7,
        fraction: 0.5,
        classifier: NEAREST_NEIGHBOR.into(),
        cells: vec![
            cell(0.0, 0.3, 4, Some(61.25)),
            cell(0.0, 0.7, 6, Some(70.0)),
            cell(0.4, 0.3, 0, None),
            cell(0.4, 0.7, 3, Some(86.734)),
        ],
    };
    assert_eq!(
        emit_report(Report::Sweep(&grid), ReportFormat::Csv).unwrap(),
        fixture("sweep_2x2.csv")
    );
}
