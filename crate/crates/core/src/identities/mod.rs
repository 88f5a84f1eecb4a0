//! Catalog of identities, the residual record, and the suite runner.

pub mod catalog;
pub mod formulas;
pub mod report;
pub mod suite;

pub use catalog::{IdentityId, Status};
pub use report::IdentityReport;
pub use suite::{grid, parameter_names, run_identity, run_suite, Density, Params, Summary, SuiteResult};
