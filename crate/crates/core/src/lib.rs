//! Exact symbolic computation for one-variable formulas of Łukasiewicz
//! logic and the word problems of the function algebra they present.
//!
//! Formulas denote piecewise-linear functions on [0,1] with integer
//! coefficients. Everything here is exact: rationals are arbitrary-precision,
//! every decision procedure returns a certificate (a witness point, a
//! continued-fraction convergent, a verified construction), and every
//! nontrivial result is computed by two independent routes somewhere in the
//! test suite.
//!
//! Module map:
//! - [`formula`]: syntax, parsing, printing, derived connectives, length.
//! - [`pwl`]: compiled piecewise-linear functions and exact operations.
//! - [`decide`]: equality of formulas by bounded search and by canonical form.
//! - [`germ`]: quotients at rational points; value-and-slope germs and the
//!   parameters of the associated matrix algebras.
//! - [`contfrac`]: continued fractions, convergents, left-cut oracles for
//!   computable irrationals, hexadecimal digit extraction.
//! - [`effros_shen`]: equality in the quotients at irrational points.
//! - [`bratteli`]: incidence matrices, dimension vectors, mediant diagrams.
//! - [`goedel`]: hat functions, clipped-line synthesis, bounded
//!   ideal-membership with pluggable enumerations.
//! - [`gen`]: seeded deterministic formula generation for tests and benches.

pub mod bratteli;
pub mod contfrac;
pub mod decide;
pub mod effros_shen;
pub mod error;
pub mod formula;
pub mod gen;
pub mod germ;
pub mod goedel;
pub mod pwl;
pub mod rat;

pub use error::{Error, Result};
pub use formula::Formula;
pub use pwl::PwlFunction;
pub use rat::Rat;
