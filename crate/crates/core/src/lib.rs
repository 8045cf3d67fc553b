//! Exact character sums over small finite fields: Jacobi sums, Greene-style
//! binomials and hypergeometric functions, and a double-sum analogue of
//! Appell's `F1`, with an engine that checks identities among them by
//! exhaustive or seeded sweeps.
//!
//! All values are exact elements of `Z[zeta_{q-1}]` with a rational
//! denominator ([`CycVal`]); verdicts never go through floating point.
//!
//! Characters are numbered against the field's canonical generator `g`:
//! `chi_j(g^k) = zeta_{q-1}^{jk}`.

pub mod appell;
pub mod chars;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod hyper;
pub mod verify;

pub use chars::{CharGroup, CharIdx, CharValue};
pub use cyclo::{cyclotomic_poly, CycVal, CycloPoly};
pub use error::{Error, Result};
pub use field::{FElem, FieldCtx, Q_MAX};
