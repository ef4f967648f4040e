//! Certificate-producing hull membership for a three-by-three family.
//!
//! Usage: `cargo run --release --example feasibility [c ...]`

use ews::feasibility::{
    check_pairing_certificate, check_psd_certificate, decide_conv_dbp, Budget, MembershipVerdict,
};
use ews::Spectrum;

fn main() -> ews::Result<()> {
    let mut cs: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if cs.is_empty() {
        cs = vec![0.0, -0.5, -1.0, -1.01, -1.5];
    }
    for c in cs {
        let mu = Spectrum::new(3, 3, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, c])?;
        match decide_conv_dbp(&mu, &Budget::default())? {
            MembershipVerdict::Member(cert) => {
                println!(
                    "c = {c}: member, certificate valid = {}",
                    check_psd_certificate(&mu, &cert)?
                );
                for (j, y) in cert.ys.iter().enumerate() {
                    println!("  Y{} = {:.4?}", j + 1, y.to_rows());
                }
            }
            MembershipVerdict::NonMember(cert) => {
                println!(
                    "c = {c}: non-member, pairing {:.6} with lambda {:.4?} (valid = {})",
                    cert.value,
                    cert.lam.values(),
                    check_pairing_certificate(&mu, &cert)?
                );
            }
            MembershipVerdict::Undecided {
                iterations,
                lower_bound,
                ..
            } => {
                println!("c = {c}: undecided after {iterations} rounds, bound {lower_bound:.3e}");
            }
        }
    }
    Ok(())
}
