//! Exact evaluation and sign computation for the random-cluster Tutte polynomial
//! `Z(G; q, γ) = Σ_{A ⊆ E} q^{κ(V,A)} Π_{e ∈ A} γ_e`, together with the weight-shifting
//! gadgets, complexity-region map and sign-oracle cut counting built on top of it.

pub mod arith;
pub mod error;
pub mod eval;
pub mod gadget;
pub mod graph;
pub mod matroid;
pub mod reduction;
pub mod region;
pub mod sign;

pub use arith::{frac, int, interpolate, parse_rational, Rational, UniPoly};
pub use error::{Error, Result};
pub use gadget::{Gadget, ShiftExpr};
pub use graph::{EdgeId, Multigraph, WeightFunction};
pub use matroid::BinaryMatroid;
pub use reduction::{CutCount, ReductionReport};
pub use region::{PlanePoint, PointClass, Region, Status};
pub use sign::{SignReport, SignValue};
