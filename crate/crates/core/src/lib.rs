//! Numerics for meromorphic functions under the Wright-function operator:
//! the operator itself, coefficient bounds for the class Σ(θ, λ, γ),
//! membership and representation tests, and radii of starlikeness and convexity.

pub mod bounds;
pub mod classdef;
pub mod error;
pub mod grid;
pub mod io;
pub mod laurent;
pub mod radii;
pub mod special;

pub use bounds::{BoundSequence, ClassParams};
pub use classdef::{SchwarzFunction, Verdict};
pub use error::{Error, Result};
pub use grid::GridSpec;
pub use laurent::{LaurentSeries, TaylorSeries};
pub use radii::{RadiusKind, RadiusQuery, RadiusResult, Weights};
pub use special::WrightParams;
