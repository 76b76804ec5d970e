//! Spectra of shape-invariant quantum systems and their q-deformed
//! generalizations.
//!
//! A shape-invariant system is defined by a superpotential `W(x; a_j)`, a
//! parameter chain `a_0, a_1, a_2, ...` and a remainder `R(a_j)` such that the
//! factorized partner Hamiltonians close under the parameter shift. The n-th
//! bound-state energy of `H_1 = hbar*Omega * B_+ B_-` is then
//! `hbar*Omega * e_n` with `e_n = sum_{k=1..n} R(a_k)`.
//!
//! This crate provides:
//!
//! * [`qnum`] — numerically robust q-number / Q-number arithmetic,
//! * [`potential`] — the model catalog (harmonic oscillator, Morse, Scarf,
//!   Coulomb) with parameter chains, remainders and the ansatz
//!   `R(a_j) = C [f(a_j) - f(a_{j+1})]`,
//! * [`spectra`] — deformed spectra for the four deformation schemes,
//!   including the two independent evaluation paths of the
//!   shape-invariance-preserving S-model,
//! * [`algebra`] — truncated matrix representations of all ladder operators
//!   in the energy eigenbasis and residual checks of every commutation and
//!   q-commutation relation,
//! * [`oracle`] — an independent coordinate-space finite-difference
//!   eigensolver that validates the algebraic spectrum,
//! * [`tridiag`] — the symmetric tridiagonal bisection eigensolver backing
//!   the oracle.

pub mod algebra;
mod error;
mod numfmt;
pub mod oracle;
pub mod potential;
pub mod qnum;
pub mod spectra;
pub mod tridiag;

pub use error::{Error, Result};
pub use oracle::{GridSpec, OracleResult, OracleRow};
pub use potential::{PotentialKind, PotentialModel};
pub use qnum::QParam;
pub use spectra::{DeformationScheme, SpectrumRow, SpectrumTable, Variant};
