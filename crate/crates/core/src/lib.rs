//! Sparse exterior-form algebra on jet-space coordinates, frame-bundle
//! canonical forms, and the Lovelock Lagrangian / Lovelock tensor pipeline,
//! with brute-force oracles behind every identity.
//!
//! Module layout:
//! - [`alt`] — Levi-Civita symbol, generalized Kronecker delta,
//!   antisymmetrization; exact integer arithmetic throughout.
//! - [`xalg`] — sparse alternating forms over an abstract coordinate space:
//!   wedge, interior product, pullback, vector-valued combinators.
//! - [`valg`] — Hodge star for a diagonal signature, the extended bilinear
//!   form, Cartan projectors, and the invariant Lovelock construction.
//! - [`jetforms`] — canonical forms (coframe, connection, curvature,
//!   torsion) and Sparling forms evaluated at numeric first-jet points.
//! - [`lovelock`] — spacetime-side pipeline: metrics, curvature tensors,
//!   vielbeins, Lovelock density/tensor, the field-equation forms.
//! - [`report`] / [`suites`] — machine-readable check reports and the named
//!   verification suites driven by the CLI.

pub mod alt;
pub mod jetforms;
pub mod lovelock;
pub mod report;
pub mod suites;
pub mod valg;
pub mod xalg;

pub use alt::{antisymmetrize, gkdelta, levi_civita, verify_eps_delta};
pub use xalg::{SparseAltForm, TangentVector, VectorValuedForm};
