//! Smooth complete fans with exact arithmetic, toric Mori theory, and a
//! classifier for smooth toric Fano varieties containing an invariant
//! divisor isomorphic to `P^{n-1}`, together with the companion check on
//! Fano blow-ups at torus-fixed points.

pub mod classify;
pub mod error;
pub mod fan;
pub mod format;
pub mod intersect;
pub mod lattice;
mod lp;
pub mod mori;

pub use error::{Error, Result};
pub use fan::{fans_isomorphic, Cone, Fan, FanIsomorphism, UnimodularMatrix, Wall};
pub use intersect::{anticanonical_degree, divisor_dot_curve, is_ample, is_fano, TDivisor};
pub use lattice::{Int, LatticeVector};
pub use mori::{curve_class, ContractionInfo, ContractionKind, CurveClass, MoriCone};
