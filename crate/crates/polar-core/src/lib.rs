//! Exact combinatorics of the association schemes of finite classical polar
//! spaces.
//!
//! The library computes, in exact rational arithmetic throughout:
//!
//! * basic q-series machinery (q-binomials, q-Pochhammer symbols and
//!   terminating basic hypergeometric sums),
//! * the eigenvalue tables P and Q of the six families of polar space
//!   schemes, of the half hyperbolic scheme and of the fused parabolic or
//!   symplectic scheme, in both the natural and the alternate Hahn orderings,
//! * inner and dual distributions of subsets, including the closed-form
//!   distribution of a hypothetical Steiner system of isotropic generators,
//! * closed-form upper bounds on codes of generators with prescribed minimal
//!   distance, together with the simplified power-of-q estimates,
//! * a rational-arithmetic Delsarte linear program with verifiable dual
//!   certificates,
//! * nonexistence certificates for Steiner systems of generators, and
//! * a brute-force enumeration oracle over small fields that rebuilds the
//!   schemes from actual matrices and cross-checks every closed form.
//!
//! Nothing in the crate uses floating point: every certificate is an exact
//! identity or an exact strict inequality over the rationals.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod distributions;
pub mod lp;
pub mod oracle;
pub mod qarith;
pub mod schemes;
pub mod steiner;

pub use qarith::Rat;
