//! Exact two-qubit membership and the explicit witness construction.
//!
//! Usage: `cargo run --example two_qubit [mu1 mu2 mu3 mu4]`

use ews::two_qubit::{bp22_slacks, construct_bp22, is_bp22_spectrum};
use ews::witnesses::probe_block_positivity;
use ews::Spectrum;

fn main() -> ews::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let spectra = if args.len() == 4 {
        vec![args]
    } else {
        vec![
            vec![4.0, 2.0, 1.0, -2.0],
            vec![4.0, 2.0, -0.5, -0.5],
            vec![1.0, 1.0, 1.0, -1.0],
        ]
    };
    for v in spectra {
        let s = Spectrum::new(2, 2, v)?;
        let member = is_bp22_spectrum(&s)?;
        println!(
            "{:?}: member = {member}, slacks = {:?}",
            s.values(),
            bp22_slacks(&s)?
        );
        if member {
            let w = construct_bp22(&s)?;
            let probe = probe_block_positivity(&w, 20, 200, 0)?;
            println!("  constructed eigenvalues {:?}", w.eigvals());
            println!("  lowest product-state value found {:.3e}", probe.value);
        }
    }
    Ok(())
}
