//! Exact and arbitrary-precision machinery for series whose terms are ratios
//! of central binomial coefficients, together with a catalog of closed-form
//! identities and a verifier that certifies each one numerically.

pub mod exact;
pub mod numerics;
pub mod recurrence;
pub mod closed_forms;
pub mod integrals;
pub mod catalog;
