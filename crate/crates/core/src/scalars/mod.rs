//! Exact arithmetic in the rational function field `Q(q)`.

mod poly;
mod scalar;

pub use poly::Poly;
pub use scalar::{q_binomial, q_factorial, q_integer, Scalar};
