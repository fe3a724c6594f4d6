//! Core library for synthesizing and verifying preparation circuits of a
//! bond-dimension-2 matrix-product-state family.
//!
//! The crate is organized as a pipeline:
//!
//! * [`mps`] — the translation-invariant target family, its transfer
//!   operator, and exact tensor-network evaluation (overlaps, Pauli strings).
//! * [`observables`] — the interpolating Hamiltonian and string-order
//!   observables evaluated on states.
//! * [`rg`] — renormalization-group circuit synthesis: blocking, polar
//!   decomposition, fixed point, circuit emission, approximation error.
//! * [`seq`] — sequential two-staircase synthesis with Bell-type fusion of
//!   the ring ends.
//! * [`circuit`] — the gate-level intermediate representation shared by the
//!   synthesizers, the compiler, and the simulators.
//! * [`compile`] — isometry and two-qubit unitary decomposition into
//!   CNOT + single-qubit gates.
//! * [`layout`] — heavy-hex coupling maps, ring/path layouts, SWAP routing,
//!   and two-qubit depth accounting.
//! * [`sim`] — dense statevector and MPS circuit execution, plus stochastic
//!   Pauli-noise trajectories.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! route through `libm`. Every algorithm is deterministic: identical inputs
//! produce identical outputs bit for bit, independent of platform threading.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod circuit;
pub mod compile;
pub mod error;
pub mod layout;
pub mod linalg;
pub mod math;
pub mod mps;
pub mod observables;
pub mod rg;
pub mod seq;
pub mod sim;

pub use error::{Error, Result};
