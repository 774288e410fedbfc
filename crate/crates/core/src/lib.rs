//! Exact degenerate r-associated Stirling numbers of both kinds and the
//! associated degenerate Bell polynomials.
//!
//! All values live in Q[λ] ([`Poly`]). Second-kind numbers are generated by
//! `(1/k!)·(e_λ(t) − Σ_{l<r}(1)_{l,λ}tˡ/l!)^k`, first-kind numbers by
//! `(1/k!)·(log_λ(1+t) − Σ_{1≤l<r}c_l(λ)tˡ/l!)^k`, where
//! `e_λ(t) = (1+λt)^{1/λ}` and `log_λ` is its compositional inverse.
//!
//! ```
//! use dstirling::{build_table_second, Poly};
//!
//! let table = build_table_second(2, 4).unwrap();
//! assert_eq!(table.get(4, 2).unwrap(), &Poly::from_ints(&[3, -6, 3]));
//! ```

pub mod bell;
pub mod error;
pub mod export;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod selfcheck;
pub mod series;
pub mod stirling;

pub use bell::{bell_by_egf, bell_poly, BellPoly};
pub use error::{Error, Result};
pub use poly::{falling_lambda, log_coeff, Poly};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::Series;
pub use stirling::{
    base_series, build_table_first, build_table_second, column_series, number_by_series,
    second_kind_by_composition_sum, second_kind_by_inclusion_exclusion, Kind, StirlingTable,
};
