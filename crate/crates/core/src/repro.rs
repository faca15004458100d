//! Reference results for the built-in problems and the checks run against
//! them.
//!
//! Each check is PASS, FAIL or INFO. INFO entries document reference values
//! that are known not to follow from the stated method; they are reported
//! with their deviation but never fail a run.

use std::fmt;

use crate::baselines::{giifga_with, ChainConvention};
use crate::choquet::{choquet_average, choquet_average_with, Operator};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::ivqrof::{min_valid_q, IvqRofn, Rung};
use crate::measure::Permutation;
use crate::pipeline::{
    resolve_q, solve, solve_with_trace, sweep_q, DecisionProblem, PipelineConfig, QSetting,
    RankingResult,
};

/// Reference values, as printed (two or four decimals).
#[rustfmt::skip]
pub mod reference {
    /// Per-component tolerance for four-decimal matrices.
    pub const FOUR_DP_TOLERANCE: f64 = 5e-5;
    /// Tolerance for two-decimal paper-scale scores recomputed from printed
    /// aggregates.
    pub const SCORE_TOLERANCE: f64 = 0.01;
    /// Tolerance for the comparison problem's paper-scale scores.
    pub const COMPARISON_SCORE_TOLERANCE: f64 = 0.02;
    /// Tolerance on the paper-scale score of one collective-matrix row.
    pub const ROW_SCORE_TOLERANCE: f64 = 0.03;
    /// Per-component tolerance for two-decimal sweep aggregates.
    pub const SWEEP_TOLERANCE: f64 = 0.02;

    pub const EXAMPLE1_MIN_Q: u32 = 3;
    pub const EXAMPLE1_AGGREGATES: [[f64; 4]; 3] = [
        [0.57, 0.78, 0.37, 0.52],
        [0.49, 0.73, 0.37, 0.46],
        [0.50, 0.70, 0.32, 0.46],
    ];

    pub const HYPERTENSION_MAX_MIN_Q: u32 = 2;
    pub const HYPERTENSION_RANKING: [&str; 5] = ["x3", "x2", "x1", "x4", "x5"];
    pub const HYPERTENSION_QS: [u32; 4] = [2, 3, 4, 5];

    /// Collective matrix at q = 3.
    pub const HYPERTENSION_COLLECTIVE: [[[f64; 4]; 4]; 5] = [
        [[0.67, 0.78, 0.20, 0.30], [0.54, 0.62, 0.47, 0.57], [0.80, 0.90, 0.10, 0.20], [0.10, 0.20, 0.80, 0.95]],
        [[0.85, 0.92, 0.10, 0.18], [0.50, 0.55, 0.40, 0.50], [0.80, 0.87, 0.10, 0.15], [0.10, 0.20, 0.80, 0.95]],
        [[0.89, 0.94, 0.11, 0.18], [0.54, 0.64, 0.30, 0.40], [0.80, 0.85, 0.20, 0.30], [0.10, 0.20, 0.83, 0.90]],
        [[0.56, 0.66, 0.37, 0.47], [0.44, 0.54, 0.30, 0.40], [0.75, 0.82, 0.20, 0.30], [0.20, 0.30, 0.79, 0.86]],
        [[0.10, 0.20, 0.80, 0.91], [0.29, 0.39, 0.55, 0.65], [0.72, 0.84, 0.30, 0.40], [0.20, 0.30, 0.67, 0.79]],
    ];
    /// Un-halved score of row x2 of the collective matrix, aggregated at q = 3.
    pub const HYPERTENSION_ROW2_SCORE: f64 = 0.70;

    /// Aggregates r1..r5 for q = 2, 3, 4, 5.
    pub const HYPERTENSION_AGGREGATES: [[[f64; 4]; 5]; 4] = [
        [[0.60, 0.71, 0.32, 0.46], [0.65, 0.74, 0.29, 0.39], [0.69, 0.76, 0.32, 0.42], [0.53, 0.62, 0.40, 0.50], [0.44, 0.56, 0.55, 0.66]],
        [[0.63, 0.74, 0.32, 0.46], [0.69, 0.77, 0.29, 0.39], [0.72, 0.78, 0.32, 0.42], [0.56, 0.64, 0.40, 0.50], [0.49, 0.60, 0.55, 0.66]],
        [[0.65, 0.75, 0.32, 0.46], [0.71, 0.79, 0.29, 0.39], [0.74, 0.80, 0.32, 0.42], [0.58, 0.66, 0.40, 0.50], [0.53, 0.64, 0.55, 0.66]],
        [[0.67, 0.77, 0.32, 0.46], [0.72, 0.80, 0.29, 0.39], [0.75, 0.81, 0.32, 0.42], [0.60, 0.68, 0.40, 0.50], [0.56, 0.66, 0.55, 0.66]],
    ];
    /// Un-halved scores of the aggregates above. The q = 3 score of r4 is
    /// printed twice, as 0.52 and as 0.25; the aggregate gives 0.2487, so
    /// 0.25 is kept.
    pub const HYPERTENSION_SCORES: [[f64; 5]; 4] = [
        [0.55, 0.73, 0.77, 0.26, -0.23],
        [0.53, 0.70, 0.74, 0.25, -0.12],
        [0.44, 0.61, 0.67, 0.21, -0.03],
        [0.38, 0.51, 0.57, 0.18, 0.005],
    ];

    pub const COMPARISON_RANKING: [&str; 5] = ["x5", "x3", "x2", "x4", "x1"];
    pub const COMPARISON_SCORES: [f64; 5] = [0.24, 0.71, 0.74, 0.48, 0.76];
    pub const COMPARISON_EINSTEIN_RANKING: [&str; 5] = ["x5", "x2", "x3", "x4", "x1"];
    pub const COMPARISON_EINSTEIN_SCORES: [f64; 5] = [0.13, 0.66, 0.65, 0.36, 0.69];

    /// Expert-stage collective matrix under the Choquet average, q = 1.
    pub const COMPARISON_COLLECTIVE: [[[f64; 4]; 4]; 5] = [
        [[0.3122, 0.4748, 0.3242, 0.4248], [0.4288, 0.5694, 0.132, 0.2944], [0.2575, 0.4686, 0.3219, 0.4278], [0.3285, 0.5722, 0.1871, 0.3977]],
        [[0.4152, 0.6758, 0.2231, 0.3242], [0.4632, 0.6701, 0.1659, 0.2957], [0.4288, 0.6758, 0.1206, 0.2231], [0.5292, 0.7056, 0.1206, 0.2624]],
        [[0.5694, 0.7043, 0.1437, 0.2514], [0.5776, 0.6818, 0.1552, 0.2639], [0.5000, 0.6299, 0.1516, 0.3000], [0.3306, 0.4524, 0.2928, 0.4563]],
        [[0.3285, 0.5004, 0.2231, 0.3787], [0.5143, 0.7043, 0.1257, 0.2689], [0.2116, 0.4288, 0.1933, 0.3456], [0.3285, 0.7000, 0.1000, 0.2000]],
        [[0.6435, 0.7449, 0.1206, 0.2551], [0.4614, 0.5953, 0.1437, 0.2957], [0.5000, 0.6299, 0.2000, 0.3000], [0.4614, 0.5647, 0.2393, 0.4353]],
    ];

    /// Expert-stage collective matrix under the geometric baseline, q = 1.
    pub const COMPARISON_GEOMETRIC_COLLECTIVE: [[[f64; 4]; 4]; 5] = [
        [[0.3017, 0.4645, 0.2685, 0.3687], [0.4373, 0.5650, 0.1282, 0.2983], [0.2452, 0.4685, 0.3257, 0.4280], [0.3299, 0.5720, 0.1911, 0.3925]],
        [[0.3463, 0.5386, 0.2917, 0.3925], [0.4353, 0.6715, 0.1683, 0.2983], [0.4248, 0.6715, 0.1282, 0.2283], [0.5310, 0.7083, 0.1343, 0.2616]],
        [[0.5712, 0.7083, 0.1590, 0.2598], [0.5720, 0.6732, 0.1590, 0.2598], [0.5000, 0.6382, 0.1683, 0.3000], [0.2751, 0.4356, 0.3257, 0.4622]],
        [[0.3242, 0.4996, 0.2283, 0.3990], [0.5000, 0.7083, 0.1282, 0.2616], [0.1951, 0.4306, 0.2260, 0.3966], [0.3366, 0.7000, 0.1000, 0.2000]],
        [[0.6382, 0.7384, 0.1282, 0.2616], [0.4685, 0.6075, 0.1716, 0.2982], [0.5000, 0.6382, 0.2000, 0.3000], [0.4685, 0.5720, 0.2614, 0.4280]],
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn gate(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub fixture: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Runs every check for a built-in problem.
pub fn run(name: &str) -> Result<Report> {
    let problem = fixtures::load(name)?;
    let checks = match name {
        "example1" => example1(&problem)?,
        "hypertension" => hypertension(&problem)?,
        "comparison" => comparison(&problem)?,
        _ => return Err(Error::Problem(format!("no checks for `{name}`"))),
    };
    Ok(Report {
        fixture: name.to_string(),
        checks,
    })
}

/// Largest absolute component difference.
pub fn max_deviation(a: &IvqRofn, b: &[f64; 4]) -> f64 {
    a.to_array()
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn all_entries(p: &DecisionProblem) -> Vec<IvqRofn> {
    p.matrices().iter().flatten().flatten().copied().collect()
}

fn rung(q: u32) -> Rung {
    Rung::new(q).expect("positive rung")
}

fn scores_line(r: &RankingResult) -> String {
    let parts: Vec<String> = r.scores.iter().map(|s| format!("{:.3}", 2.0 * s)).collect();
    format!("paper-scale scores ({})", parts.join(", "))
}

fn example1(p: &DecisionProblem) -> Result<Vec<Check>> {
    let q = min_valid_q(&all_entries(p), 10)?;
    let mut checks = vec![Check::gate(
        "minimal rung",
        q.get() == reference::EXAMPLE1_MIN_Q,
        format!("min q = {q}, expected {}", reference::EXAMPLE1_MIN_Q),
    )];
    let r = solve(p, &PipelineConfig::default())?;
    let dev = r
        .aggregates
        .iter()
        .zip(&reference::EXAMPLE1_AGGREGATES)
        .map(|(a, b)| max_deviation(a, b))
        .fold(0.0, f64::max);
    let shown: Vec<String> = r.aggregates.iter().map(|a| format!("{a:.4}")).collect();
    checks.push(Check::info(
        "printed aggregates r1..r3",
        format!(
            "computed {}; max deviation from printed values {dev:.4} (printed values are not reproducible under any single sort convention)",
            shown.join(" "),
        ),
    ));
    checks.push(Check::info("computed ranking", r.ranking_line()));
    Ok(checks)
}

fn hypertension(p: &DecisionProblem) -> Result<Vec<Check>> {
    let config = PipelineConfig::default();
    let mut checks = Vec::new();

    let q_min = min_valid_q(&all_entries(p), 10)?;
    checks.push(Check::gate(
        "minimal rung",
        q_min.get() <= reference::HYPERTENSION_MAX_MIN_Q,
        format!(
            "min q = {q_min}, expected <= {}",
            reference::HYPERTENSION_MAX_MIN_Q
        ),
    ));
    let explicit = resolve_q(&p.clone().with_q(QSetting::Fixed(rung(3))), 10);
    checks.push(Check::gate(
        "explicit q = 3 accepted",
        explicit.is_ok(),
        match &explicit {
            Ok(_) => "every entry valid at q = 3".to_string(),
            Err(e) => e.to_string(),
        },
    ));

    let qs: Vec<Rung> = reference::HYPERTENSION_QS
        .iter()
        .map(|&q| rung(q))
        .collect();
    let sweep = sweep_q(p, &qs, &config)?;
    let expected = reference::HYPERTENSION_RANKING.join(" > ");
    for (q, r) in &sweep {
        checks.push(Check::gate(
            format!("ranking at q = {q}"),
            r.ranking_names() == reference::HYPERTENSION_RANKING,
            format!("{}; {}", r.ranking_line(), scores_line(r)),
        ));
    }
    checks.push(Check::info("expected ranking", expected));

    for (k, &q) in reference::HYPERTENSION_QS.iter().enumerate() {
        let mut worst: f64 = 0.0;
        for (agg, &printed) in reference::HYPERTENSION_AGGREGATES[k]
            .iter()
            .zip(&reference::HYPERTENSION_SCORES[k])
        {
            let a = IvqRofn::from_array(*agg)?;
            worst = worst.max((2.0 * a.score(rung(q)) - printed).abs());
        }
        checks.push(Check::gate(
            format!("score of printed aggregates at q = {q}"),
            worst <= reference::SCORE_TOLERANCE,
            format!(
                "max |2*score - printed| = {worst:.4}, tolerance {}",
                reference::SCORE_TOLERANCE
            ),
        ));
    }

    let row: Vec<IvqRofn> = reference::HYPERTENSION_COLLECTIVE[1]
        .iter()
        .map(|&a| IvqRofn::from_array(a))
        .collect::<Result<_>>()?;
    let r2 = choquet_average(&row, p.attribute_measure(), rung(3))?;
    let s2 = 2.0 * r2.score(rung(3));
    checks.push(Check::gate(
        "printed collective row x2 at q = 3",
        (s2 - reference::HYPERTENSION_ROW2_SCORE).abs() <= reference::ROW_SCORE_TOLERANCE,
        format!(
            "aggregate {r2:.4}, paper-scale score {s2:.4}, expected {} +/- {}",
            reference::HYPERTENSION_ROW2_SCORE,
            reference::ROW_SCORE_TOLERANCE
        ),
    ));

    let r1_q2 = &sweep[0].1.aggregates[0];
    let dev = max_deviation(r1_q2, &reference::HYPERTENSION_AGGREGATES[0][0]);
    checks.push(Check::gate(
        "aggregate x1 at q = 2",
        dev <= reference::SWEEP_TOLERANCE,
        format!(
            "{r1_q2:.4}, max deviation {dev:.4}, tolerance {}",
            reference::SWEEP_TOLERANCE
        ),
    ));

    let trace = solve_with_trace(&p.clone().with_q(QSetting::Fixed(rung(3))), &config)?;
    let dev = matrix_deviation(&trace.collective, &reference::HYPERTENSION_COLLECTIVE);
    checks.push(Check::info(
        "printed collective matrix at q = 3",
        format!("max deviation {dev:.4} (not reproduced by the sorted chain)"),
    ));
    for (k, (q, r)) in sweep.iter().enumerate() {
        let dev = r
            .aggregates
            .iter()
            .zip(&reference::HYPERTENSION_AGGREGATES[k])
            .map(|(a, b)| max_deviation(a, b))
            .fold(0.0, f64::max);
        checks.push(Check::info(
            format!("printed aggregates at q = {q}"),
            format!("max deviation {dev:.4}"),
        ));
    }
    Ok(checks)
}

fn matrix_deviation<const N: usize, const M: usize>(
    computed: &[Vec<IvqRofn>],
    printed: &[[[f64; 4]; N]; M],
) -> f64 {
    computed
        .iter()
        .zip(printed)
        .flat_map(|(row, prow)| row.iter().zip(prow).map(|(a, b)| max_deviation(a, b)))
        .fold(0.0, f64::max)
}

fn count_within<const N: usize, const M: usize>(
    computed: &[Vec<IvqRofn>],
    printed: &[[[f64; 4]; N]; M],
    tol: f64,
) -> (usize, usize) {
    let mut cells = 0;
    let mut components = 0;
    for (row, prow) in computed.iter().zip(printed) {
        for (a, b) in row.iter().zip(prow) {
            let hits = a
                .to_array()
                .iter()
                .zip(b)
                .filter(|(x, y)| (*x - *y).abs() <= tol)
                .count();
            components += hits;
            if hits == 4 {
                cells += 1;
            }
        }
    }
    (cells, components)
}

fn comparison(p: &DecisionProblem) -> Result<Vec<Check>> {
    let config = PipelineConfig::default();
    let tol = reference::FOUR_DP_TOLERANCE;
    let mut checks = Vec::new();

    let trace = solve_with_trace(p, &config)?;
    let (cells, _) = count_within(&trace.collective, &reference::COMPARISON_COLLECTIVE, tol);
    let dev = matrix_deviation(&trace.collective, &reference::COMPARISON_COLLECTIVE);
    checks.push(Check::gate(
        "collective matrix (descending sort)",
        cells == 20,
        format!("{cells}/20 cells within {tol:e}, max deviation {dev:.4}"),
    ));

    let r = &trace.result;
    checks.push(Check::gate(
        "ranking",
        r.ranking_names() == reference::COMPARISON_RANKING,
        format!(
            "{}; expected {}",
            r.ranking_line(),
            reference::COMPARISON_RANKING.join(" > ")
        ),
    ));
    let dev = r
        .scores
        .iter()
        .zip(&reference::COMPARISON_SCORES)
        .map(|(s, p)| (2.0 * s - p).abs())
        .fold(0.0, f64::max);
    checks.push(Check::info(
        "printed scores",
        format!(
            "{}; max deviation {dev:.3} vs tolerance {} ({})",
            scores_line(r),
            reference::COMPARISON_SCORE_TOLERANCE,
            if dev <= reference::COMPARISON_SCORE_TOLERANCE {
                "within tolerance"
            } else {
                "outside tolerance, ranking governs"
            }
        ),
    ));

    // Expert chain fixed to (e1, e3, e2), whatever the ratings.
    let fixed = Permutation::new(vec![0, 2, 1])?;
    let declared: Vec<Vec<IvqRofn>> = (0..p.alternatives().len())
        .map(|i| {
            (0..p.attributes().len())
                .map(|j| {
                    let cell: Vec<IvqRofn> = p.matrices().iter().map(|m| m[i][j]).collect();
                    choquet_average_with(&cell, p.expert_measure(), &fixed, Rung::ONE)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (cells, components) = count_within(&declared, &reference::COMPARISON_COLLECTIVE, tol);
    checks.push(Check::info(
        "collective matrix with fixed expert chain (e1, e3, e2)",
        format!("{cells}/20 cells, {components}/80 components within {tol:e}"),
    ));

    for convention in ChainConvention::ALL {
        let collective: Vec<Vec<IvqRofn>> = (0..p.alternatives().len())
            .map(|i| {
                (0..p.attributes().len())
                    .map(|j| {
                        let cell: Vec<IvqRofn> = p.matrices().iter().map(|m| m[i][j]).collect();
                        giifga_with(&cell, p.expert_measure(), convention)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let dev = matrix_deviation(&collective, &reference::COMPARISON_GEOMETRIC_COLLECTIVE);
        let (cells, _) = count_within(
            &collective,
            &reference::COMPARISON_GEOMETRIC_COLLECTIVE,
            tol,
        );
        checks.push(Check::info(
            format!(
                "geometric baseline collective matrix ({})",
                convention.label()
            ),
            format!("{cells}/20 cells within {tol:e}, max deviation {dev:.4}"),
        ));
    }

    let einstein = solve(p, &PipelineConfig::with_operator(Operator::Ivifegc))?;
    let dev = einstein
        .scores
        .iter()
        .zip(&reference::COMPARISON_EINSTEIN_SCORES)
        .map(|(s, p)| (2.0 * s - p).abs())
        .fold(0.0, f64::max);
    checks.push(Check::info(
        "Einstein baseline",
        format!(
            "{}; {}; printed ranking {}, max score deviation {dev:.3}",
            einstein.ranking_line(),
            scores_line(&einstein),
            reference::COMPARISON_EINSTEIN_RANKING.join(" > ")
        ),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_cover_each_fixture() {
        for name in fixtures::NAMES {
            let report = run(name).unwrap();
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn example1_min_q_passes() {
        let report = run("example1").unwrap();
        assert_eq!(report.checks[0].status, Status::Pass);
        assert!(report.passed());
    }

    #[test]
    fn unknown_fixture_is_an_error() {
        assert!(run("table99").is_err());
    }
}
