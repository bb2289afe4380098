//! Suite files, the rule cache and report emission behind the `qtorsor`
//! binary.

mod cache;
mod run;
mod spec;

pub use cache::{FileCache, CACHE_DIR_ENV, ENGINE_VERSION};
pub use run::{run, RunOptions, RunReport, RunStatus, EXIT_INPUT_ERROR, REPORT_VERSION};
pub use spec::{
    parse_spec, parse_spec_str, CheckKind, Datum, Override, SuiteKind, SuiteSpec,
    DEFAULT_BASIS_DEGREE, DEFAULT_DEGREE_BOUND,
};
