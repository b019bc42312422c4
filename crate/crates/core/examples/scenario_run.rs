//! Run a scenario file (default: the bundled classical toy scenario) and print
//! the report.

use std::path::PathBuf;

use fracfloquet::cli::{run_scenario, run_sweep, Scenario};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/toy_classical.toml")));
    let out = std::env::temp_dir().join("fracfloquet-scenario");
    let plan = match Scenario::load(&path).and_then(|s| s.validate(Some(&out))) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    };
    let report = if plan.scenario.solve.sweep.is_some() { run_sweep(&plan) } else { run_scenario(&plan) };
    for c in &report.checks {
        println!("{}", c.line());
    }
    println!("timings {:?}", report.timings);
    println!("files in {}", out.display());
}
