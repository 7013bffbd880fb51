//! Doubled Cambrian framework for the cyclically oriented n-cycle.
//!
//! This crate builds, in exact arithmetic, the combinatorial model of the
//! principal-coefficients cluster algebra whose exchange matrix is the
//! oriented n-cycle (Cartan companion of affine type Ã₍ₙ₋₁₎):
//!
//! * [`perm`] — the affine symmetric group in window notation: lengths,
//!   inversion sets, weak order, root action, parabolic projections;
//! * [`sorting`] — sorting words, sortable elements, labels, π↓, and the
//!   finite-type antipode inside finite parabolics;
//! * [`cyclic`] — Ω-sortability for the oriented cycle and the partial
//!   label sets C_Ω;
//! * [`eta`] — the two-case classification and the gluing bijection η;
//! * [`framework`] — assembly of the doubled graph with its n-element
//!   label sets;
//! * [`verify`] — executable checks of the framework axioms (Sign, Base,
//!   Transition, Unique minimum, Full edge, Descending chain, completeness,
//!   regularity);
//! * [`fan`] — exact-rational cones, dual bases (g-vector rays), facet
//!   pairing, and sampled completeness of the fan;
//! * [`oracle`] — an independent principal-coefficients mutation engine and
//!   the exchange-graph isomorphism check;
//! * [`export`] — JSON, DOT, and (for n = 3) SVG output.
//!
//! The narrative guide lives in `book/`; its code snippets compile and run
//! as doc-tests through the [`guide`] module.

pub mod cyclic;
pub mod error;
pub mod eta;
pub mod export;
pub mod fan;
pub mod framework;
pub mod guide;
pub mod oracle;
pub mod perm;
pub mod root;
pub mod sorting;
pub mod verify;

pub use cyclic::{Orientation, PartialLabeling};
pub use error::{Error, Result};
pub use eta::VertexClass;
pub use framework::LabeledQuasiGraph;
pub use perm::{AffinePermutation, SimpleIndex};
pub use root::Root;
pub use sorting::CoxeterWord;

/// Default seed for the reproducible fan sampling (documented constant).
pub const DEFAULT_SEED: u64 = 56491;
