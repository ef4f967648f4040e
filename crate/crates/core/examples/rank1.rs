//! Spectra of partially transposed rank-one projections.

use ews::rank1::{build_rank1_pt, rank1_pt_spectrum, SchmidtVector};

fn main() -> ews::Result<()> {
    for (coeffs, n) in [
        (vec![2.0, 1.0], 2),
        (vec![1.0, 1.0], 3),
        (vec![3.0, 2.0, 1.0], 4),
    ] {
        let a = SchmidtVector::new(coeffs, n)?;
        let mut numeric = build_rank1_pt(&a).eigvals();
        numeric.sort_by(|x, y| y.total_cmp(x));
        println!("alpha = {:?}, n = {n}", a.coeffs());
        println!("  formula   {:?}", rank1_pt_spectrum(&a).values());
        println!("  numerical {:.12?}", numeric);
    }
    Ok(())
}
