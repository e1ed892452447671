pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod frobenius;
pub mod goursat;
pub mod kernels;
pub mod params;
pub mod poly;
pub mod relations;
pub mod verify;

pub use error::{HeunError, Result};
pub use kernels::{C2Fn, Jet, SeriesControl};
pub use params::{CheParams, OdeCoeffs};
