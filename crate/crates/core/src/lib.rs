//! Exact verification toolkit for the continued-fraction expansion of
//! the q-tangent function.
//!
//! The crate computes q-trigonometric series, continuants of Prodinger's
//! continued fraction, and the family of q-series identities that together
//! force the expansion, all over exact rational Laurent polynomials in
//! u = q^(1/2).  The [`verify`] module bundles the individual identity
//! checks into a reportable suite; the companion CLI exposes them as
//! subcommands.

pub mod cfrac;
pub mod continuants;
pub mod error;
pub mod exact;
pub mod qseries;
pub mod verify;

pub use cfrac::CFTruncation;
pub use continuants::{CoeffRoute, CoeffTable, ContinuantPair, ZPoly};
pub use error::{Error, Result};
pub use exact::{int, rat, ExactRational, LaurentPoly, RationalFunc};
pub use qseries::{QPochSpec, Sign, ZSeries};
pub use verify::{run_suite, ReportFormat, SuiteConfig, VerifyReport};
