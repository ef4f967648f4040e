//! Absolutely-PPT tests through the adjoint placement maps.

use ews::appt::{appt_matrices, appt_min_eig, is_appt, is_asep_2n};
use ews::Spectrum;

fn main() -> ews::Result<()> {
    let lam = Spectrum::new(
        3,
        3,
        [2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
            .map(|x| x / 12.0)
            .to_vec(),
    )?;
    println!("lambda = {:?}", lam.values());
    for (j, a) in appt_matrices(&lam)?.iter().enumerate() {
        println!("  L{}*(lambda) = {:?}", j + 1, a.to_rows());
    }
    println!(
        "  APPT = {}, min eigenvalue {:.4}",
        is_appt(&lam)?,
        appt_min_eig(&lam)?
    );

    for v in [
        [0.4, 0.3, 0.1, 0.1, 0.05, 0.05],
        [0.2, 0.2, 0.15, 0.15, 0.15, 0.15],
    ] {
        let s = Spectrum::new(2, 3, v.to_vec())?;
        println!(
            "{v:?}: APPT = {}, closed form = {}",
            is_appt(&s)?,
            is_asep_2n(&s)?
        );
    }
    Ok(())
}
