//! Gauss-diagram invariants of virtual and twisted knots and links.
//!
//! The library represents virtual link diagrams as Gauss diagrams (cyclic
//! words of signed, over/under-labeled chord endpoints, plus optional bars
//! for twisted diagrams) and computes chord-index-based invariants on them:
//! writhe and affine index polynomials, finite type invariants, indexed
//! Jones polynomials, indexed-quandle coloring and cocycle invariants,
//! biquandle-derived chord indices, and twisted-knot polynomials. A
//! Reidemeister-move engine drives property-based invariance checks.

pub mod bracket;
pub mod diagrams;
pub mod finite_type;
pub mod gauss;
pub mod index;
pub mod moves;
pub mod poly;

pub use gauss::{FlatDiagram, GaussDiagram, GaussError, Passage, Sign, Token};
pub use poly::{Frac, FormalSum, LaurentPoly};
