//! Problem files, reports, command dispatch and the example corpus.

pub mod corpus;
pub mod problem;
pub mod report;
pub mod run;

pub use corpus::{corpus_report, golden_reports, random_instances, random_sequences, run_text, Instance, BUNDLED};
pub use problem::{parse_problem, Problem};
pub use report::{Body, Report, SequenceRow, Summary};
pub use run::{error_report, run, Command, Level, RunOptions};
