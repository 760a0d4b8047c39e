//! Exact algebra for ideals of finite point sets over Z_p.
//!
//! The crate decides whether the vanishing ideal of a data set has a unique
//! reduced Groebner basis, enumerates every reduced basis when it does not,
//! relates data sets through coordinate-wise affine shifts, and applies this
//! to model selection for polynomial dynamical systems.

pub mod error;
pub mod fds;
pub mod feasibility;
pub mod field;
pub mod groebner;
pub mod io;
pub mod points;
pub mod poly;
pub mod shifts;

pub use error::{Error, Result};
pub use field::{MatrixZp, PrimeModulus, Scalar};
pub use groebner::{AlgebraicFan, FanEntry, ReducedGroebnerBasis};
pub use points::{OrderIdealSet, PointSet};
pub use poly::{ExponentVector, MarkedPolynomial, MonomialOrder, Polynomial};
pub use shifts::LinearShift;
