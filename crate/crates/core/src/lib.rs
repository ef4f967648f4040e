pub mod appt;
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod linalg;
pub mod orderings;
pub mod qubit_qudit;
pub mod rank1;
pub mod spectrum;
pub mod two_qubit;
pub mod witnesses;

pub use error::{Error, Result};
pub use spectrum::{SortedSpectrum, Spectrum};
