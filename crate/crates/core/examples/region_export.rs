//! Writes the trace-one two-qubit region grid as CSV and counts the labels.
//!
//! Usage: `cargo run --release --example region_export [step] [out.csv]`

fn main() {
    let step = std::env::args().nth(1).unwrap_or_else(|| "0.02".into());
    let out = std::env::args()
        .nth(2)
        .unwrap_or_else(|| "region.csv".into());
    let args = ["ews", "region", "--step", &step, "--out", &out];
    let code = ews::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    if code != 0 {
        std::process::exit(code);
    }
    let text = std::fs::read_to_string(&out).expect("written above");
    for label in ["green", "orange", "outside"] {
        let count = text.lines().filter(|l| l.ends_with(label)).count();
        println!("{label}: {count}");
    }
    println!("wrote {out}");
}
