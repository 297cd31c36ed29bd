//! Exact cohomology of generalized quasitoric manifolds and quasitoric
//! bundles.
//!
//! Three presentations of the same ring are computed independently:
//!
//! * the Stanley-Reisner model `H*(B)[x_1..x_s] / (I_SR + J_c)` ([`srbundle`]),
//! * the piecewise-polynomial (Brion) model ([`ppbrion`]),
//! * the inverse-system model `Sym(V) / Ann(P)` for a potential `P`
//!   ([`invsys`]), built from exact integration over multi-polytopes
//!   ([`multipoly`]).
//!
//! All arithmetic is exact over `Q`.

pub mod basealg;
pub mod catalog;
pub mod charpair;
pub mod error;
pub mod exactnum;
pub mod invsys;
pub mod io;
pub mod literal;
pub mod multipoly;
pub mod ppbrion;
pub mod srbundle;

pub use basealg::{ChernData, GradedBaseAlgebra};
pub use charpair::{CharacteristicPair, ConeSign, ValidationReport};
pub use error::{Error, Result};
pub use exactnum::{MultiPoly, RatMatrix, Scalar};
pub use invsys::{HilbertFunction, Potential};
pub use multipoly::MultiPolytope;
pub use ppbrion::PPElement;
pub use srbundle::{BundleElement, BundleRing};
