//! Prints the relevance curve, the pairwise normalized-MI table of the
//! survivors and the selected bands for the default synthetic suite.
//!
//! cargo run --release -p bandsel --example synthetic_suite -- [seed] [th_rel] [th_red]
//!
//! Set `BANDSEL_SPEC` to a synthetic spec JSON file to replace the default suite.

use bandsel::band_selection::{rank_by_relevance, select_bands, BandStatistics, Thresholds};
use bandsel::data_model::{synthesize_bands, synthetic_ground_truth, SyntheticSpec};
use bandsel::evaluation::{sweep, SweepConfig};
use bandsel::info_theory::DEFAULT_BINS;

fn main() -> bandsel::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seed: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(0);
    let th_rel: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.4);
    let th_red: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.7);

    let gt = synthetic_ground_truth(145, 145, 16, seed)?;
    let spec = match std::env::var("BANDSEL_SPEC") {
        Ok(path) => serde_json::from_str(&std::fs::read_to_string(path).expect("readable spec"))?,
        Err(_) => SyntheticSpec::paper_like(),
    };
    let cube = synthesize_bands(&gt, &spec, seed)?;
    println!("labeled pixels: {}", gt.labeled_count());

    let stats = BandStatistics::compute(&cube, &gt, DEFAULT_BINS)?;
    for (b, mi) in stats.mi_curve.iter().enumerate() {
        println!("band {b:2}  MI {mi:.3}");
    }
    let noise_max = spec
        .noise_only_bands
        .iter()
        .map(|&b| stats.mi_curve[b])
        .fold(0.0, f64::max);
    let informative_min = (0..spec.n_bands)
        .filter(|b| !spec.noise_only_bands.contains(b))
        .map(|b| stats.mi_curve[b])
        .fold(f64::INFINITY, f64::min);
    println!("separation {:.3} bits", informative_min - noise_max);

    let ranking = rank_by_relevance(&stats.mi_curve, th_rel)?;
    print!("\n     ");
    for &b in &ranking.surviving {
        print!("{b:>5}");
    }
    println!();
    for &a in &ranking.surviving {
        print!("{a:>5}");
        for &b in &ranking.surviving {
            print!("{:>5.2}", if a == b { 1.0 } else { stats.nmi(a, b) });
        }
        println!();
    }

    for pair in &spec.disjoint_pairs {
        println!(
            "disjoint ({}, {}) U {:.3}",
            pair.band_a,
            pair.band_b,
            stats.nmi(pair.band_a, pair.band_b)
        );
    }
    for pair in &spec.duplicate_pairs {
        println!(
            "duplicate ({}, {}) U {:.3}",
            pair.source,
            pair.copy,
            stats.nmi(pair.source, pair.copy)
        );
    }

    let result = select_bands(&cube, &gt, Thresholds::new(th_rel, th_red)?, DEFAULT_BINS)?;
    println!("\nselected ({}): {:?}", result.selected.len(), result.selected);

    let config = SweepConfig {
        relevance_axis: vec![0.0, 0.4, 1.0, 1.5, 2.0, 2.4],
        redundancy_axis: vec![0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.7, 1.0],
        bins: DEFAULT_BINS,
        split_seed: seed,
        fraction: 0.5,
    };
    let grid = sweep(&cube, &gt, &config)?;
    print!("\n  TH \\ MI>");
    for r in &config.relevance_axis {
        print!("{r:>13}");
    }
    println!();
    for (t, th) in config.redundancy_axis.iter().enumerate() {
        print!("{th:>10}");
        for r in 0..config.relevance_axis.len() {
            let c = grid.cell(r, t);
            match c.accuracy {
                Some(a) => print!("{:>5} {:>6.2}%", c.n_bands, a),
                None => print!("{:>13}", "-"),
            }
        }
        println!();
    }
    Ok(())
}
