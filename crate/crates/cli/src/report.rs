//! Rendering of solve, sweep and repro results.

use std::fmt::Write as _;

use ivqrof::problem_file::ProblemFile;
use ivqrof::repro::{Report, Status};
use ivqrof::{DecisionProblem, PipelineConfig, RankingResult};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Rounds to `precision` decimals so JSON output is as stable as the text.
fn round(x: f64, precision: usize) -> f64 {
    format!("{x:.precision$}").parse().unwrap_or(x)
}

fn operators(config: &PipelineConfig) -> String {
    if config.expert_operator == config.attribute_operator {
        config.expert_operator.name().to_uppercase()
    } else {
        format!(
            "{} (experts), {} (attributes)",
            config.expert_operator.name().to_uppercase(),
            config.attribute_operator.name().to_uppercase()
        )
    }
}

fn table_block(out: &mut String, r: &RankingResult, precision: usize) {
    let p = precision;
    let width = r
        .alternatives
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(11);
    let agg_width = 4 * (p + 2) + 9;
    let num = (p + 4).max(11);
    writeln!(
        out,
        "{:<width$}  {:<agg_width$}  {:>num$}  {:>num$}  {:>num$}  rank",
        "alternative", "aggregate", "score", "paper-scale", "accuracy"
    )
    .unwrap();
    for (i, name) in r.alternatives.iter().enumerate() {
        let agg = format!("{:.p$}", r.aggregates[i]);
        writeln!(
            out,
            "{name:<width$}  {agg:<agg_width$}  {:>num$.p$}  {:>num$.p$}  {:>num$.p$}  {}",
            r.scores[i],
            2.0 * r.scores[i],
            r.accuracies[i],
            r.rank_of(i)
        )
        .unwrap();
    }
    writeln!(out, "ranking: {}", r.ranking_line()).unwrap();
}

fn result_json(r: &RankingResult, precision: usize) -> Value {
    let rows: Vec<Value> = r
        .alternatives
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let a = r.aggregates[i].to_array().map(|x| round(x, precision));
            json!({
                "alternative": name,
                "t": [a[0], a[1]],
                "f": [a[2], a[3]],
                "score": round(r.scores[i], precision),
                "paper_scale_score": round(2.0 * r.scores[i], precision),
                "accuracy": round(r.accuracies[i], precision),
                "rank": r.rank_of(i),
            })
        })
        .collect();
    json!({
        "q": r.q.get(),
        "results": rows,
        "ranking": r.ranking_names(),
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    fixture_q: u32,
    alternative: &'a str,
    t_lo: String,
    t_hi: String,
    f_lo: String,
    f_hi: String,
    score: String,
    paper_scale_score: String,
    rank: usize,
}

fn csv_rows(results: &[&RankingResult], precision: usize) -> String {
    let p = precision;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in results {
        for (i, name) in r.alternatives.iter().enumerate() {
            let [t_lo, t_hi, f_lo, f_hi] = r.aggregates[i].to_array().map(|x| format!("{x:.p$}"));
            w.serialize(CsvRow {
                fixture_q: r.q.get(),
                alternative: name,
                t_lo,
                t_hi,
                f_lo,
                f_hi,
                score: format!("{:.p$}", r.scores[i]),
                paper_scale_score: format!("{:.p$}", 2.0 * r.scores[i]),
                rank: r.rank_of(i),
            })
            .expect("in-memory CSV write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

fn problem_json(problem: &DecisionProblem) -> Value {
    serde_json::to_value(ProblemFile::from_problem(problem)).expect("problem serializes")
}

pub fn solve(
    label: &str,
    problem: &DecisionProblem,
    config: &PipelineConfig,
    r: &RankingResult,
    format: Format,
    precision: usize,
) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            writeln!(
                out,
                "problem: {label}  q = {}  operator: {}  order: {}",
                r.q,
                operators(config),
                config.order
            )
            .unwrap();
            table_block(&mut out, r, precision);
            out
        }
        Format::Json => {
            let mut v = result_json(r, precision);
            v["operator"] = json!({
                "experts": config.expert_operator.name(),
                "attributes": config.attribute_operator.name(),
            });
            v["order"] = json!(config.order.to_string());
            v["problem"] = problem_json(problem);
            pretty(&v)
        }
        Format::Csv => csv_rows(&[r], precision),
    }
}

pub fn sweep(
    label: &str,
    config: &PipelineConfig,
    results: &[RankingResult],
    format: Format,
    precision: usize,
) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            writeln!(
                out,
                "problem: {label}  operator: {}  order: {}",
                operators(config),
                config.order
            )
            .unwrap();
            for r in results {
                writeln!(out, "\nq = {}", r.q).unwrap();
                table_block(&mut out, r, precision);
            }
            writeln!(out, "\nrankings by q").unwrap();
            for r in results {
                writeln!(out, "  q = {}: {}", r.q, r.ranking_line()).unwrap();
            }
            out
        }
        Format::Json => {
            let v: Vec<Value> = results.iter().map(|r| result_json(r, precision)).collect();
            pretty(&json!({ "sweep": v }))
        }
        Format::Csv => csv_rows(&results.iter().collect::<Vec<_>>(), precision),
    }
}

pub fn checks(report: &Report, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "repro {}", report.fixture).unwrap();
            for c in &report.checks {
                writeln!(out, "{}  {}: {}", c.status, c.name, c.detail).unwrap();
            }
            let failed = report
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .count();
            let passed = report
                .checks
                .iter()
                .filter(|c| c.status == Status::Pass)
                .count();
            writeln!(out, "{passed} passed, {failed} failed").unwrap();
            out
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "status": c.status.to_string(), "detail": c.detail }))
                .collect();
            pretty(&json!({
                "fixture": report.fixture,
                "passed": report.passed(),
                "checks": rows,
            }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["status", "name", "detail"])
                .expect("in-memory CSV write");
            for c in &report.checks {
                w.write_record([c.status.to_string().as_str(), &c.name, &c.detail])
                    .expect("in-memory CSV write");
            }
            String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}
