//! Hull membership for qubit-qudit spectra: the closed form, the matrix
//! certificate and the threshold of the golden-ratio family.

use ews::qubit_qudit::{
    conv_bp2n_margin, conv_bp2n_member_c, conv_bp2n_member_d, golden_family, threshold_bisect,
};

fn main() -> ews::Result<()> {
    for c in [-0.6, -0.8, -0.9] {
        let s = golden_family(c)?;
        println!(
            "c = {c}: member = {}, margin = {:.4}",
            conv_bp2n_member_d(&s)?,
            conv_bp2n_margin(&s)?
        );
        if let Some(x) = conv_bp2n_member_c(&s)? {
            println!("  certificate X = {:?}", x.to_rows());
        }
    }
    let c = threshold_bisect(golden_family, conv_bp2n_member_d, -2.0, 0.0)?;
    println!(
        "threshold {c:.12} (exact {:.12})",
        -(3.0 + 5f64.sqrt()) / 6.0
    );
    Ok(())
}
