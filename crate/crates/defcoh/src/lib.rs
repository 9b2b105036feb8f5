//! Batch runner for the exact deformation-cohomology engine in `defcoh-core`.
//!
//! Jobs are read from a JSON document, executed (optionally in parallel) and
//! turned into a [`report::Report`] whose rendering does not depend on the
//! number of worker threads.

pub mod error;
pub mod job;
pub mod report;
pub mod runner;

pub use error::JobError;
pub use job::{parse_document, parse_job, Check, JobSpec};
pub use report::{render_table, render_tree, Report};
pub use runner::{run, run_all, RunOptions};

/// Process status for a finished run: 0 when every verdict passed, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        1
    }
}

/// Status used for schema and cap errors.
pub const EXIT_INPUT_ERROR: i32 = 2;
