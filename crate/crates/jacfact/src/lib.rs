//! File formats, certificate reports, the command set and the golden-corpus
//! runner for `jacfact-core`.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod formats;
pub mod report;

pub use cli::{run, Cli};
pub use corpus::{run_corpus, CorpusError, CorpusSummary, CriterionResult};
pub use report::{Report, RunConfig, Status};
