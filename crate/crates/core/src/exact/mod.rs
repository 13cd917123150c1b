pub mod matrix;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use matrix::{Matrix, RatMatrix};
pub use poly::{Monomial, PolyOp, SparsePolynomial, VarSet};
pub use rational::{int, parse_rational, rat, Rational};
pub use scalar::Scalar;
