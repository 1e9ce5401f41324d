//! A numerical laboratory for a seven-level quantum system: a particle in
//! a one-dimensional finite square well with seven bound states.
//!
//! * [`well`] solves for the bound states and their dipole couplings.
//! * [`linalg`] provides the dense complex matrices, the Hermitian
//!   eigensolver, partial traces, and von Neumann entropy.
//! * [`encodings`] views the seven levels as three virtual qubits (padded to
//!   eight) or as a qutrit and a qubit plus an ancilla.
//! * [`thermal`] builds Gibbs states and sweeps the correlation measures over
//!   temperature.
//! * [`pulse`], [`gates`], and [`parity`] simulate the three-query parity
//!   algorithm at gate and pulse level.
//!
//! ```
//! use sevenlevel::well::{solve_bound_states, WellSpec};
//!
//! let states = solve_bound_states(&WellSpec::default()).unwrap();
//! assert_eq!(states.len(), 7);
//! ```

pub mod encodings;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod parity;
pub mod pulse;
pub mod quadrature;
pub mod thermal;
pub mod verify;
pub mod well;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
