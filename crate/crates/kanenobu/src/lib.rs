//! Exact-arithmetic toolkit for Kanenobu-type knots and the branched double
//! covers Σ(n,p,q).
//!
//! The pipeline: build the planar diagram of K(n,p,q) from the 3-braid
//! σ₁σ₂⁻¹σ₁ⁿ and twist counts (p,q), chessboard-color it and extract the
//! signed reduced white graph, present π₁(Σ) and H₁(Σ), run Fox calculus in
//! Q[Z/N] and its cyclotomic character images to reconstruct the maximal
//! abelian torsion, and derive Heegaard Floer correction-term profiles via
//! the Casson-Walker invariant. On top of that sit the weight-one criterion,
//! the lens-space surgery obstruction, and the cusp-equation verification.
//!
//! Everything is exact: big integers, big rationals, and elements of
//! Q(ζ_m) in the power basis mod the cyclotomic polynomial Φ_m.

pub mod braid;
pub mod cyclotomic;
pub mod diagram;
pub mod error;
pub mod family;
pub mod fox;
pub mod groupring;
pub mod invariants;
pub mod jones;
pub mod lens;
pub mod matrix;
pub mod obstruct;
pub mod presentation;
pub mod rational;
pub mod torsion;
pub mod whitegraph;
pub mod words;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use matrix::{AbelianStructure, IntMatrix};
pub use whitegraph::{KanenobuParams, SignedWhiteGraph, UNBOUNDED};
