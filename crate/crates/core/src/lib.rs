//! Exact diagonalization of the periodic spin-1/2 XXZ ring and the
//! nearest-neighbour entanglement (concurrence) and mixedness (linear
//! entropy) that follow from its spectrum.
//!
//! Three independent routes produce the same observables:
//!
//! * closed-form five-site spectrum and four-site ground state
//!   ([`spectrum`]), fed through [`thermo`] and [`pairstate`];
//! * momentum-sector block diagonalization ([`basis`], [`hamiltonian`],
//!   [`spectrum::spectrum_numeric`]);
//! * a brute-force density-matrix [`oracle`].
//!
//! [`engine::Evaluator`] selects one route per evaluation and [`search`]
//! locates extrema and entanglement thresholds along `Δ`.

pub mod basis;
pub mod engine;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod oracle;
pub mod pairstate;
pub mod search;
pub mod spectrum;
pub mod thermo;

pub use basis::{MomentumBasis, Orbit, SpinState};
pub use engine::{Engine, Evaluator, Measures};
pub use error::{Error, Result};
pub use hamiltonian::ModelParams;
pub use linalg::DenseMatrix;
pub use oracle::DensityMatrix;
pub use pairstate::PairState;
pub use search::{Extremum, ScanOptions, Sense, Threshold};
pub use spectrum::{GroundState, Level, NumericRoute, Sector, Spectrum};
pub use thermo::ThermoPoint;
