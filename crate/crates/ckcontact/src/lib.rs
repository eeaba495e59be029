//! Numerical toolkit for contact Lie systems on the 3D Cayley-Klein spaces.
//!
//! The crate constructs the geometric objects of the constant-curvature
//! family (kappa-trigonometry, metrics, contact forms, Reeb fields, the
//! sp(4, R) vector-field realization), integrates the catalogued
//! time-dependent systems, performs scaling-symmetry and Reeb-fibration
//! reductions, and checks the algebraic identities between them
//! numerically. The `verify` module bundles those checks into seeded,
//! reproducible suites behind the `ckcontact` binary.

#[macro_use]
pub mod ad;
pub mod calculus;
pub mod config;
pub mod error;
pub mod contact;
pub mod fibration;
pub mod geometry;
pub mod ktrig;
pub mod report;
pub mod symplectic;
pub mod systems;
pub mod verify;

pub use error::{CkError, Result};
