//! Exponent vectors, monomial orders and sparse polynomials over Z_p.

mod monomial;
mod order;
mod polynomial;
pub mod text;

pub use monomial::{box_vectors, ExponentVector};
pub use order::MonomialOrder;
pub use polynomial::{normal_form, MarkedPolynomial, Polynomial};
pub(crate) use polynomial::monomial_value;
pub use text::{format, format_with_names, parse, parse_with_names, VarNames};

use std::cmp::Ordering;

use crate::error::Result;

/// Checked comparison of two exponent vectors under `order`.
pub fn compare(order: &MonomialOrder, u: &ExponentVector, v: &ExponentVector) -> Result<Ordering> {
    order.compare(u, v)
}
