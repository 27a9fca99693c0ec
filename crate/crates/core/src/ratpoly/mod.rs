//! Exact polynomial algebra over the rationals.
//!
//! Univariate arithmetic, gcds and square-free parts, Sturm chains with certified root
//! isolation, bivariate polynomials, Sylvester resultants and exact quadratic surds.

pub mod bivariate;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod resultant;
pub mod sturm;

pub use bivariate::{BivariatePolynomial, Var};
pub use poly::RationalPolynomial;
pub use quadratic::QuadraticSurd;
pub use rational::{int, parse_rational, rat, to_f64, ExtRational, Rational};
pub use resultant::{
    rational_determinant, resultant, resultant_univariate, resultant_with_derivative,
};
pub use sturm::{
    count_all_real_roots, count_real_roots, decimal_eps, descartes_bound, isolate_roots,
    real_roots, refine_root, sturm_sequence, IsolatingInterval, RootIsolator, SturmChain,
};
