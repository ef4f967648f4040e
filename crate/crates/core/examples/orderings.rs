//! Enumerates the realizable product orderings and shows the placement maps
//! for the two orderings of three Schmidt coefficients.
//!
//! Usage: `cargo run --release --example orderings [max_m]`

use std::time::Instant;

use ews::linalg::SymMatrix;
use ews::orderings::{apply_l, enumerate_orderings, orderings};

fn main() -> ews::Result<()> {
    let max_m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);

    for m in 2..=max_m {
        let start = Instant::now();
        let all = enumerate_orderings(m)?;
        println!("m = {m}: {} orderings ({:.2?})", all.len(), start.elapsed());
    }

    let mut y = SymMatrix::zeros(3);
    for i in 0..3 {
        for j in i..3 {
            y.set(i, j, (10 * (i + 1) + j + 1) as f64);
        }
    }
    for (k, ord) in orderings(3)?.iter().enumerate() {
        let order: Vec<String> = ord.order().iter().map(|p| p.to_string()).collect();
        println!("L{}: {}", k + 1, order.join(" > "));
        println!("    L(Y) for y_ij = 10i + j: {:?}", apply_l(ord, 3, &y)?);
        println!("    witness alpha: {:.4?}", ord.witness_alpha());
    }
    Ok(())
}
