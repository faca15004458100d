//! Group decision pipeline: standardize cost attributes, pick the rung,
//! aggregate experts cell by cell, aggregate attributes row by row, rank.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bum::Bum;
use crate::choquet::{Aggregation, Operator, SortOrder};
use crate::error::{Error, Result};
use crate::ivqrof::{min_valid_q, IvqRofn, Rung};
use crate::measure::FuzzyMeasure;
use crate::problem_file::name_subsets;

/// Default upper bound for the automatic rung search.
pub const DEFAULT_Q_MAX: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Benefit,
    Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
}

impl AttributeSpec {
    pub fn benefit(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Benefit,
        }
    }

    pub fn cost(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Cost,
        }
    }
}

/// Either a fixed rung or "smallest rung that admits every entry".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QSetting {
    #[default]
    Auto,
    Fixed(Rung),
}

impl fmt::Display for QSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSetting::Auto => f.write_str("auto"),
            QSetting::Fixed(q) => write!(f, "{q}"),
        }
    }
}

impl std::str::FromStr for QSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(QSetting::Auto);
        }
        let n: u32 = s.trim().parse().map_err(|_| {
            Error::Parse(format!("q must be `auto` or a positive integer, got `{s}`"))
        })?;
        Ok(QSetting::Fixed(Rung::new(n)?))
    }
}

/// Alternatives × attributes × experts, with one decision matrix per expert
/// (`matrices[k][i][j]` is expert `k`'s rating of alternative `i` on
/// attribute `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    alternatives: Vec<String>,
    attributes: Vec<AttributeSpec>,
    experts: Vec<String>,
    matrices: Vec<Vec<Vec<IvqRofn>>>,
    attribute_measure: FuzzyMeasure,
    expert_measure: FuzzyMeasure,
    q: QSetting,
}

fn unique(kind: &str, names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Problem(format!(
            "{kind}: at least one name is required"
        )));
    }
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::Problem(format!("{kind}: duplicate name `{name}`")));
        }
    }
    Ok(())
}

impl DecisionProblem {
    pub fn new(
        alternatives: Vec<String>,
        attributes: Vec<AttributeSpec>,
        experts: Vec<String>,
        matrices: Vec<Vec<Vec<IvqRofn>>>,
        attribute_measure: FuzzyMeasure,
        expert_measure: FuzzyMeasure,
        q: QSetting,
    ) -> Result<Self> {
        unique("alternatives", &alternatives)?;
        let attribute_names: Vec<String> = attributes.iter().map(|a| a.name.clone()).collect();
        unique("attributes", &attribute_names)?;
        unique("experts", &experts)?;
        if matrices.len() != experts.len() {
            return Err(Error::Problem(format!(
                "matrices: expected {} expert matrices, got {}",
                experts.len(),
                matrices.len()
            )));
        }
        for (k, matrix) in matrices.iter().enumerate() {
            if matrix.len() != alternatives.len() {
                return Err(Error::Problem(format!(
                    "matrices.{}: expected {} rows, got {}",
                    experts[k],
                    alternatives.len(),
                    matrix.len()
                )));
            }
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != attributes.len() {
                    return Err(Error::Problem(format!(
                        "matrices.{}[{i}] ({}): expected {} entries, got {}",
                        experts[k],
                        alternatives[i],
                        attributes.len(),
                        row.len()
                    )));
                }
            }
        }
        if attribute_measure.len() != attributes.len() {
            return Err(Error::Problem(format!(
                "attribute_measure: ground set has {} elements, expected {}",
                attribute_measure.len(),
                attributes.len()
            )));
        }
        if expert_measure.len() != experts.len() {
            return Err(Error::Problem(format!(
                "expert_measure: ground set has {} elements, expected {}",
                expert_measure.len(),
                experts.len()
            )));
        }
        Ok(DecisionProblem {
            alternatives,
            attributes,
            experts,
            matrices,
            attribute_measure,
            expert_measure,
            q,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn experts(&self) -> &[String] {
        &self.experts
    }

    pub fn matrices(&self) -> &[Vec<Vec<IvqRofn>>] {
        &self.matrices
    }

    pub fn attribute_measure(&self) -> &FuzzyMeasure {
        &self.attribute_measure
    }

    pub fn expert_measure(&self) -> &FuzzyMeasure {
        &self.expert_measure
    }

    pub fn q(&self) -> QSetting {
        self.q
    }

    pub fn with_q(mut self, q: QSetting) -> Self {
        self.q = q;
        self
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &IvqRofn)> {
        self.matrices.iter().enumerate().flat_map(|(k, m)| {
            m.iter()
                .enumerate()
                .flat_map(move |(i, row)| row.iter().enumerate().map(move |(j, a)| (k, i, j, a)))
        })
    }

    fn location(&self, k: usize, i: usize, j: usize) -> String {
        format!(
            "expert {}, alternative {}, attribute {}",
            self.experts[k], self.alternatives[i], self.attributes[j].name
        )
    }
}

/// Operators and numeric settings for [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub expert_operator: Operator,
    pub attribute_operator: Operator,
    pub order: SortOrder,
    pub q_max: u32,
    /// Used by the OWCA/OWCG operators only.
    pub bum: Bum,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            expert_operator: Operator::Ca,
            attribute_operator: Operator::Ca,
            order: SortOrder::Descending,
            q_max: DEFAULT_Q_MAX,
            bum: Bum::Identity,
        }
    }
}

impl PipelineConfig {
    /// Same operator at both stages.
    pub fn with_operator(op: Operator) -> Self {
        PipelineConfig {
            expert_operator: op,
            attribute_operator: op,
            ..Self::default()
        }
    }
}

/// Replaces every cost-attribute entry by its complement and marks all
/// attributes as benefit.
pub fn standardize(p: &DecisionProblem) -> DecisionProblem {
    let mut out = p.clone();
    for (j, attr) in p.attributes.iter().enumerate() {
        if attr.kind == AttributeKind::Cost {
            for matrix in out.matrices.iter_mut() {
                for row in matrix.iter_mut() {
                    row[j] = row[j].complement();
                }
            }
        }
    }
    for attr in out.attributes.iter_mut() {
        attr.kind = AttributeKind::Benefit;
    }
    out
}

/// A fixed rung is checked against every entry; `Auto` returns the smallest
/// admissible rung up to `q_max`.
pub fn resolve_q(p: &DecisionProblem, q_max: u32) -> Result<Rung> {
    match p.q {
        QSetting::Fixed(q) => {
            if let Some((k, i, j, _)) = p.entries().find(|(_, _, _, a)| !a.is_valid(q)) {
                return Err(Error::ExplicitQInvalid {
                    q: q.get(),
                    location: p.location(k, i, j),
                });
            }
            Ok(q)
        }
        QSetting::Auto => {
            let all: Vec<IvqRofn> = p.entries().map(|(_, _, _, a)| *a).collect();
            min_valid_q(&all, q_max)
        }
    }
}

/// The collective matrix: for every alternative/attribute cell, the experts'
/// ratings aggregated with the expert measure.
pub fn aggregate_experts(
    p: &DecisionProblem,
    q: Rung,
    config: &PipelineConfig,
) -> Result<Vec<Vec<IvqRofn>>> {
    let op = Aggregation::from_measure(config.expert_operator, &p.expert_measure, &config.bum)?;
    (0..p.alternatives.len())
        .map(|i| {
            (0..p.attributes.len())
                .map(|j| {
                    let cell: Vec<IvqRofn> = p.matrices.iter().map(|m| m[i][j]).collect();
                    op.apply(&cell, q, config.order)
                })
                .collect()
        })
        .collect()
}

/// One overall value per alternative: each row of the collective matrix
/// aggregated with the attribute measure.
pub fn aggregate_attributes(
    collective: &[Vec<IvqRofn>],
    attribute_measure: &FuzzyMeasure,
    q: Rung,
    config: &PipelineConfig,
) -> Result<Vec<IvqRofn>> {
    let op = Aggregation::from_measure(config.attribute_operator, attribute_measure, &config.bum)?;
    collective
        .iter()
        .map(|row| op.apply(row, q, config.order))
        .collect()
}

/// Final aggregates with their scores and the induced order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingResult {
    pub q: Rung,
    pub alternatives: Vec<String>,
    pub aggregates: Vec<IvqRofn>,
    pub scores: Vec<f64>,
    pub accuracies: Vec<f64>,
    /// Alternative indices, best first.
    pub ranking: Vec<usize>,
}

impl RankingResult {
    /// 1-based position of alternative `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        self.ranking
            .iter()
            .position(|&r| r == i)
            .map_or(0, |p| p + 1)
    }

    pub fn ranking_names(&self) -> Vec<&str> {
        self.ranking
            .iter()
            .map(|&i| self.alternatives[i].as_str())
            .collect()
    }

    /// `x3 > x2 > x1`, with `=` between alternatives that compare equal.
    pub fn ranking_line(&self) -> String {
        let mut line = String::new();
        for (k, &i) in self.ranking.iter().enumerate() {
            if k > 0 {
                let prev = self.ranking[k - 1];
                let tie = self.aggregates[prev]
                    .compare(&self.aggregates[i], self.q)
                    .is_eq();
                line.push_str(if tie { " = " } else { " > " });
            }
            line.push_str(&self.alternatives[i]);
        }
        line
    }
}

/// Sorts alternatives best first by score, then accuracy; equal pairs keep
/// their input order.
pub fn rank(alternatives: &[String], aggregates: &[IvqRofn], q: Rung) -> Result<RankingResult> {
    if alternatives.len() != aggregates.len() {
        return Err(Error::SizeMismatch {
            expected: alternatives.len(),
            actual: aggregates.len(),
        });
    }
    let mut ranking: Vec<usize> = (0..aggregates.len()).collect();
    ranking.sort_by(|&a, &b| aggregates[b].compare(&aggregates[a], q));
    Ok(RankingResult {
        q,
        alternatives: alternatives.to_vec(),
        aggregates: aggregates.to_vec(),
        scores: aggregates.iter().map(|a| a.score(q)).collect(),
        accuracies: aggregates.iter().map(|a| a.accuracy(q)).collect(),
        ranking,
    })
}

/// A ranking together with the collective matrix it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub collective: Vec<Vec<IvqRofn>>,
    pub result: RankingResult,
}

pub fn solve(p: &DecisionProblem, config: &PipelineConfig) -> Result<RankingResult> {
    Ok(solve_with_trace(p, config)?.result)
}

pub fn solve_with_trace(p: &DecisionProblem, config: &PipelineConfig) -> Result<Solution> {
    let p = standardize(p);
    let q = resolve_q(&p, config.q_max)?;
    let collective = aggregate_experts(&p, q, config).map_err(|e| name_subsets(e, &p.experts))?;
    let attribute_names: Vec<String> = p.attributes.iter().map(|a| a.name.clone()).collect();
    let aggregates = aggregate_attributes(&collective, &p.attribute_measure, q, config)
        .map_err(|e| name_subsets(e, &attribute_names))?;
    let result = rank(&p.alternatives, &aggregates, q)?;
    Ok(Solution { collective, result })
}

/// Solves once per rung. Every rung must admit all entries.
pub fn sweep_q(
    p: &DecisionProblem,
    qs: &[Rung],
    config: &PipelineConfig,
) -> Result<Vec<(Rung, RankingResult)>> {
    if qs.is_empty() {
        return Err(Error::EmptyInput);
    }
    qs.iter()
        .map(|&q| {
            let fixed = p.clone().with_q(QSetting::Fixed(q));
            solve(&fixed, config).map(|r| (q, r))
        })
        .collect()
}
