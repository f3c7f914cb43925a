//! Digital simulation toolkit for Sachdev-Ye-Kitaev models.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`pauli`]: exact Pauli-string algebra (symplectic bit masks).
//! * [`models`]: disorder sampling for the four SYK variants, term counting and
//!   coupling regrouping.
//! * [`encoding`]: Jordan-Wigner encoding into a real-coefficient
//!   [`encoding::SpinHamiltonian`].
//! * [`compile`]: Trotterization and trapped-ion / superconducting gate
//!   compilation, error bounds and resource reports.
//! * [`simulate`]: dense state-vector engine, exact propagators and the ancilla
//!   time-inversion and correlation protocols.
//! * [`oracle`]: independent dense reference constructions used to verify the
//!   layers above.

pub mod compile;
pub mod encoding;
pub mod error;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod simulate;

pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString, Phase};

/// Crate version, recorded in run provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
