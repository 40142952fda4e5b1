//! Psi-class intersection numbers and their n-point functions.
//!
//! Three independent routes to the same numbers live side by side:
//!
//! - [`buryak`]: exact n-point series from the Gaussian-moment formula built on
//!   the function `P_n`, computed in two structurally different ways.
//! - [`dvv`]: the DVV (Virasoro) recursion, used as the oracle.
//! - [`numeric`]: floating-point evaluation of the orthant-integral formula and
//!   of the cyclic-partition form of the Gaussian formula.
//!
//! [`verify`] ties them together into runnable identity suites and [`cli`]
//! exposes everything through the `psi-npoint` binary.

pub mod buryak;
pub mod cli;
pub mod combinatorics;
pub mod dvv;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod verify;

pub use buryak::{f_bur_series, intersection_number, p_n_definition, p_n_symmetric, CorrelatorKey, NPointSeries};
pub use dvv::{CorrelatorTable, Strategy};
pub use exact::{ExactScalar, Monomial, TruncatedSeries};
