//! Per-task accuracy table on a local copy of GazeBase (not shipped).
//!
//! Walks `<dir>` recursively for track files named like `S_1002_S1_HSS.csv`
//! (GazeBase columns `n,x,y,val,dP,lab` are accepted), then runs the
//! repeated 80/20 protocol for every task and feature set and prints the
//! measured mean accuracy next to a reference value. Nothing is
//! asserted: preprocessing details behind the reference values are not fully
//! known.
//!
//! Run with
//! `cargo run --release --example gazebase_table -- <dir> [repetitions] [seed]`.

use std::path::{Path, PathBuf};

use gazetopo::gaze::Task;
use gazetopo::pipeline::{load_paths, run_experiment, ExperimentConfig};

const TOPO_ALL: &str = "ts_x+ts_y+ts_amp+landscape";

/// (column, feature set) in table order.
const COLUMNS: [(&str, &str); 11] = [
    ("Standard", "macro"),
    ("X", "ts_x"),
    ("Y", "ts_y"),
    ("Amp", "ts_amp"),
    ("Landscape", "landscape"),
    ("All", TOPO_ALL),
    ("Std+X", "macro+ts_x"),
    ("Std+Y", "macro+ts_y"),
    ("Std+Amp", "macro+ts_amp"),
    ("Std+Land", "macro+landscape"),
    ("Std+All", "macro+ts_x+ts_y+ts_amp+landscape"),
];

/// Reference accuracies per task, in `COLUMNS` order.
const REFERENCE: [(Task, [f64; 11]); 5] = [
    (Task::Fix, [0.4107, 0.4156, 0.3496, 0.4304, 0.4201, 0.5087, 0.4456, 0.4410, 0.5172, 0.4823, 0.5586]),
    (Task::Hs, [0.7333, 0.5696, 0.4512, 0.5274, 0.5647, 0.8034, 0.7504, 0.7227, 0.7611, 0.7023, 0.8263]),
    (Task::Rs, [0.6489, 0.2305, 0.2357, 0.4842, 0.4405, 0.5663, 0.6888, 0.6853, 0.6932, 0.6694, 0.6762]),
    (Task::Text, [0.7657, 0.3458, 0.2616, 0.4670, 0.4193, 0.6898, 0.7522, 0.7555, 0.7729, 0.7843, 0.8015]),
    (Task::Game, [0.4862, 0.2016, 0.2334, 0.3952, 0.3793, 0.5277, 0.4377, 0.4643, 0.5809, 0.4538, 0.5576]),
];

fn collect_csv(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect_csv(&p, out)?;
        } else if p.extension().is_some_and(|e| e == "csv") {
            out.push(p);
        }
    }
    Ok(())
}

fn main() {
    let mut args = std::env::args().skip(1);
    let Some(dir) = args.next() else {
        eprintln!("usage: gazebase_table <gazebase-dir> [repetitions] [seed]");
        std::process::exit(2);
    };
    let repetitions = args.next().and_then(|s| s.parse().ok()).unwrap_or(75);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let mut files = Vec::new();
    collect_csv(Path::new(&dir), &mut files).expect("readable directory");
    let tracks = load_paths(&files).expect("parsable GazeBase files");
    println!("{} tracks loaded from {dir}", tracks.len());

    for (task, reference) in REFERENCE {
        if !tracks.iter().any(|t| t.task == Some(task)) {
            println!("{}: no tracks, skipped", task.name());
            continue;
        }
        let config = ExperimentConfig {
            feature_sets: COLUMNS.iter().map(|c| c.1.to_string()).collect(),
            task: Some(task),
            repetitions,
            seed,
            ..ExperimentConfig::default()
        };
        match run_experiment(&tracks, &config) {
            Ok(report) => {
                println!("\n{} ({} tracks)", task.name(), report.n_tracks);
                println!("{:<10} {:>9} {:>9} {:>9}", "features", "measured", "std", "reference");
                for ((name, _), (r, reference)) in COLUMNS.iter().zip(report.results.iter().zip(reference)) {
                    println!("{name:<10} {:>9.4} {:>9.4} {reference:>9.4}", r.mean, r.std);
                }
            }
            Err(e) => println!("{}: {e}", task.name()),
        }
    }
}
