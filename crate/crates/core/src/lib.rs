//! Fast DCT-4 and DCT-2 algorithms of size `2^k`, derived by stepwise decomposition of
//! their polynomial algebras over the exact real field tower
//! `Q ⊂ Q[√2] ⊂ Q[√(2+√2)] ⊂ …`.
//!
//! * [`exact_field`] rationals and tower-field elements
//! * [`chebyshev`] polynomials, the `T`/`U`/`V` families and the recursive factorization
//! * [`galois`] the Galois group of `2T_{2^k}`, its subgroups and fixed fields
//! * [`planner`] factored sparse plans, behind a registry of transform families
//! * [`executor`] exact and floating application, oracles, operation counts, verification
//! * [`codegen`] JSON plans, dataflow graphs and straight-line kernels

pub mod chebyshev;
pub mod codegen;
pub mod error;
pub mod exact_field;
pub mod executor;
pub mod galois;
pub mod planner;

pub use error::{Error, Result};
