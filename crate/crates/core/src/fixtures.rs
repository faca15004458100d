//! Built-in decision problems, compiled into the library.

use crate::error::{Error, Result};
use crate::pipeline::DecisionProblem;
use crate::problem_file::parse_problem;

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.toml");
pub const HYPERTENSION: &str = include_str!("../fixtures/hypertension.toml");
pub const COMPARISON: &str = include_str!("../fixtures/comparison.toml");

pub const NAMES: [&str; 3] = ["example1", "hypertension", "comparison"];

pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "example1" => Some(EXAMPLE1),
        "hypertension" => Some(HYPERTENSION),
        "comparison" => Some(COMPARISON),
        _ => None,
    }
}

pub fn load(name: &str) -> Result<DecisionProblem> {
    let text = source(name).ok_or_else(|| {
        Error::Problem(format!(
            "unknown fixture `{name}` (expected one of {})",
            NAMES.join(", ")
        ))
    })?;
    parse_problem(text)
}
