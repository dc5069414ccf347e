//! Approximation of the monomial `x^n` on `[-1, 1]` by the truncated
//! Chebyshev expansion `phi_k`, with:
//!
//! * exact binomial arithmetic for the sup-norm error `p(n, k)`
//!   ([`combinatorics`]),
//! * exact Chebyshev-basis series, Clenshaw evaluation and power-basis
//!   conversion ([`chebyshev`]),
//! * the Hoeffding bound, erfc estimates and degree selection
//!   ([`approx_error`]),
//! * `A^n v` with `k` matrix-vector products ([`matpow`]),
//! * the `chebtrunc` command-line tool ([`cli`]).
//!
//! `phi_k` is within a factor `4e` of the best uniform approximation of
//! degree `k`; that best approximation is not computed here.

pub mod approx_error;
pub mod chebyshev;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod matpow;

pub use approx_error::{
    estimates, exact_error, grid_sup_error, hoeffding_bound, select_degree_bound,
    select_degree_exact, DegreePlan, ErrorReport, Method, PValue,
};
pub use chebyshev::{cheb_nodes, ChebSeries};
pub use combinatorics::{binomial, coin_toss_oracle, p_exact, tail_sum, Natural, Rational};
pub use error::{Error, Result};
pub use matpow::{auto_matpow, cheb_matpow, repeated_matpow, MatVecCounter, SymMatrix};
