//! Two-qubit open-system dynamics with entanglement accounting.
//!
//! The crate simulates a pair of qubits in contact with independent thermal
//! baths, a common thermal bath, or a common squeezed bath, and tracks at
//! every instant both the concurrence and the maximum extractable
//! entanglement: the concurrence reachable by an optimal invertible local
//! filtering operation, computed in closed form for the symmetric X family
//! through the filter/Lorentz-boost correspondence.
//!
//! Module map:
//! - [`linalg`]: small complex matrices and the Hermitian eigensolver,
//! - [`qstate`]: density matrices, Pauli correlation tensors, X parameters,
//!   entropy/purity/fidelity,
//! - [`entanglement`]: concurrence (general, Bell-diagonal, X closed forms)
//!   and the partial-transpose test,
//! - [`filtering`]: filtering operations, Lorentz correspondence, optimal
//!   boost, extractable entanglement, and the numeric validation oracle,
//! - [`baths`]: the three Lindblad generators, reduced X-family systems,
//!   closed-form solutions, decoherence-free states,
//! - [`dynamics`]: fixed-step integration, trajectory records, event
//!   detection,
//! - [`sample`]: seeded random states and filters for validation.

pub mod baths;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod filtering;
pub mod linalg;
pub mod qstate;
pub mod sample;

pub use baths::BathModel;
pub use entanglement::BellDiagonalState;
pub use error::{Error, Result};
pub use qstate::{CorrelationTensor, DensityMatrix, XStateParams};
