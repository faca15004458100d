//! Interval-valued q-rung orthopair fuzzy numbers, fuzzy measures, Choquet
//! aggregation operators and a multi-expert, multi-attribute ranking
//! pipeline.

pub mod baselines;
pub mod bum;
pub mod choquet;
mod error;
pub mod fixtures;
pub mod ivqrof;
pub mod measure;
mod numeric;
pub mod pipeline;
pub mod problem_file;
pub mod repro;

pub use bum::Bum;
pub use choquet::{Aggregation, Operator, SortOrder};
pub use error::{Error, Result};
pub use ivqrof::{min_valid_q, IvqRofn, Rung, UnitInterval};
pub use measure::{FuzzyMeasure, Permutation, Subset};
pub use pipeline::{
    solve, sweep_q, AttributeKind, AttributeSpec, DecisionProblem, PipelineConfig, QSetting,
    RankingResult,
};
pub use problem_file::parse_problem;
