//! Exact computer algebra for characteristic varieties of hypergeometric
//! and binomial systems of differential equations.
//!
//! Everything here runs over arbitrary-precision rationals; there is no
//! floating point anywhere in the computation paths. The main entry points
//! are:
//!
//! * [`exact`] — big-integer matrices, Smith normal form, lattice kernels,
//!   and rational linear feasibility (pointedness certificates);
//! * [`poly`] — multivariate polynomials over Q, Buchberger's algorithm,
//!   saturation, elimination, and Krull dimension;
//! * [`weyl`] — the Weyl algebra, left Gröbner bases for projective weight
//!   vectors, graded ideals, and singular loci (the direct oracle);
//! * [`geom`] — the L-umbrella of a pointed matrix and its pyramid
//!   combinatorics;
//! * [`hyper`] — toric ideals, Euler operators, conormal components,
//!   A-discriminants, and truncated systems;
//! * [`binom`] — cellular decomposition of binomial ideals, toral/Andean
//!   classification, quasidegrees, and the holonomicity decision.

pub mod binom;
pub mod error;
pub mod exact;
pub mod geom;
pub mod hyper;
pub mod io;
pub mod poly;
pub mod report;
pub mod weyl;

pub use binom::BinomialModuleSpec;
pub use error::Error;
pub use exact::{IntMatrix, Lattice, PointedMatrix};
pub use geom::{Face, Umbrella};
pub use hyper::{ConormalComponent, Discriminant, HypergeometricSystem, TruncatedSystem};
pub use poly::{MonomialOrder, Poly, PolyIdeal, PolyRing};
pub use weyl::{ProjectiveWeight, WeylElement, WeylIdeal};

/// Convenience alias used throughout: exact rational scalars.
pub type Rat = num_rational::BigRational;
