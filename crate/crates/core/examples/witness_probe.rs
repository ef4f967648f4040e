//! Samples decomposable witnesses, runs the necessary-condition battery and
//! probes a matrix file for block positivity.
//!
//! Usage: `cargo run --release --example witness_probe [matrix.json]`

use ews::linalg::BipartiteOperator;
use ews::witnesses::{necessary_battery, probe_block_positivity, sample_decomposable};
use ews::Spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/data/example-3.2-matrix.json"
        )
        .into()
    });
    let w: BipartiteOperator = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    let (m, n) = w.dims();
    let s = Spectrum::new(m, n, w.eigvals())?;
    println!("{path}: spectrum {:.6?}", s.values());
    for c in necessary_battery(&s, false).checks {
        println!("  {:<70} {:?}", c.condition.description(), c.passed);
    }
    println!(
        "  probe: {:.3e}",
        probe_block_positivity(&w, 50, 200, 0)?.value
    );

    let mut fails = 0;
    for w in sample_decomposable((3, 3), (2, 4), 7, 200)? {
        let s = Spectrum::new(3, 3, w.eigvals())?;
        fails += !necessary_battery(&s, true).all_passed() as usize;
    }
    println!("200 sampled 3x3 decomposable witnesses: {fails} battery failures");
    Ok(())
}
