//! Cut-and-project model sets in homogeneous Lie groups.
//!
//! This crate constructs model sets `Λ(G, H, Γ, W)` where `G` and `H` are
//! homogeneous Lie groups of nilpotency degree at most two, `Γ` is a
//! Galois-embedded arithmetic lattice and `W` a convex polytopal window. On
//! top of the exact group arithmetic it computes patch-counting complexity,
//! acceptance domains, slabs and the hyperplane-arrangement region counts
//! that bound the complexity function from both sides.
//!
//! All decisions (memberships, signs, region counts) are made in exact
//! arithmetic over ordered fields; floating point only appears in reports and
//! in explicitly sampled estimates.

pub mod arrangement;
pub mod complexity;
pub mod config;
pub mod cut_project;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod group;
pub mod linalg;
pub mod lp;
pub mod par;
pub mod polytope;
pub mod scalar;
pub mod scheme;
pub mod window;

pub use error::Error;
pub use scalar::{Cubic, Quad, Rat, Scalar};
