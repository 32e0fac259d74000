//! Exact diagonalization, parity-adapted coherent states and
//! vibration-rotation entanglement for the two-dimensional U(3) vibron model.
//!
//! The Hamiltonian interpolates between the U(2) (linear) and SO(3) (bent)
//! dynamical-symmetry limits,
//!
//! ```text
//! H(ξ) = (1 − ξ) n̂ + ξ (N(N+1) − Ŵ²) / (N − 1)
//! ```
//!
//! and commutes with both the 2D angular momentum and the parity
//! `exp(iπn̂)`. Everything in this crate works in the number basis
//! `|N; n, l⟩` with `l = n − 2m`.

pub mod coefficients;
pub mod entanglement;
pub mod error;
pub mod exact;
pub mod model;
pub mod oracle;
pub mod position;
pub mod selfcheck;
pub mod special;
pub mod tridiag;
pub mod variational;

pub use coefficients::CoefficientTable;
pub use entanglement::{BentPhaseAsymptotics, EntanglementReport};
pub use error::{Result, VibronError};
pub use exact::{diagonalize_block, ground_state, SpectralResult};
pub use model::{AngularBlock, BasisLabel, ModelPoint};
pub use special::QuadratureRule;
pub use variational::{AnsatzKind, VariationalResult};
