//! Infinite products of Gosper-group matrices and the accelerated zeta
//! series they encode.
//!
//! A scheme is a sequence of block matrices `[[alpha_k I + beta_k J, u_k], [0, 1]]`
//! whose infinite product has a zero upper-left block and a `u` column of
//! constants such as `zeta(3), zeta(5), ...`. The crate is layered as:
//!
//! - [`numeric`]: exact rationals, binary floats and the [`numeric::Scalar`] over both
//! - [`symfun`]: symmetric functions of reciprocal powers and harmonic numbers
//! - [`group`]: dense Gosper matrices, products and inverses
//! - [`banded`]: streaming evaluation of banded products in `O(N)` state
//! - [`schemes`]: the built-in schemes, a text format for new ones, and
//!   single-series coefficient extractions
//! - [`reference`]: independent high-precision values of the targets
//! - [`eval`]: truncated evaluation, verification and rate measurement
//!
//! ```
//! use gosper::eval::{evaluate, Backend};
//! use gosper::numeric::{rat, Scalar};
//! use gosper::schemes::make_koecher;
//!
//! let two_terms = evaluate(&make_koecher(1)?, Some(2), Backend::Rational)?;
//! assert_eq!(two_terms.v[0], Scalar::from(rat(115, 96)));
//! # Ok::<(), gosper::Error>(())
//! ```

pub mod banded;
pub mod error;
pub mod eval;
pub mod group;
pub mod numeric;
pub mod reference;
pub mod schemes;
pub mod symfun;

pub use error::{Error, Result};
