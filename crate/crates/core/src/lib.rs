//! Conditional-skewness crash-risk toolkit.
//!
//! - [`ingest`]: CSV loading, growth rates, trading-day alignment, descriptive statistics.
//! - [`sentiment`]: search-volume fear index and its above-median dummy.
//! - [`garchs`]: GARCH-S filtering, likelihood, simulation and estimation.
//! - [`regress`]: declarative OLS models over an aligned panel.
//! - [`granger`]: VAR lag selection and Granger F-tests.

pub mod dist;
pub mod error;
pub mod garchs;
pub mod granger;
pub mod ingest;
pub mod linalg;
pub mod optim;
pub mod regress;
pub mod sentiment;

pub use error::{Error, Result};
pub use garchs::{FitOptions, GarchSFit, GarchSParams, ShockForm};
pub use granger::GrangerResult;
pub use ingest::{AlignedPanel, ReturnSeries};
pub use regress::{ModelSpec, RegressionResult, Term};
