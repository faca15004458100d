//! Text format for decision problems.
//!
//! TOML is the primary format; JSON with the same layout is accepted too
//! (detected by a leading `{`). A minimal file:
//!
//! ```toml
//! alternatives = ["x1", "x2"]
//! experts = ["e1"]
//! q = "auto"
//!
//! [[attributes]]
//! name = "C1"
//! kind = "benefit"
//!
//! [[attributes]]
//! name = "C2"
//! kind = "cost"
//!
//! [matrices]
//! e1 = [
//!     [[0.6, 0.7, 0.1, 0.2], [0.3, 0.4, 0.4, 0.5]],
//!     [[0.5, 0.6, 0.2, 0.3], [0.4, 0.5, 0.3, 0.4]],
//! ]
//!
//! [[attribute_measure]]
//! subset = ["C1"]
//! value = 0.6
//!
//! [[attribute_measure]]
//! subset = ["C2"]
//! value = 0.5
//! ```
//!
//! Each matrix entry is `[t_lo, t_hi, f_lo, f_hi]`. Measures list every
//! non-empty proper subset by name; the empty and full sets default to 0
//! and 1, so a one-element ground set needs no entries at all.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ivqrof::IvqRofn;
use crate::measure::{FuzzyMeasure, Subset, MAX_GROUND_SET};
use crate::pipeline::{AttributeSpec, DecisionProblem, QSetting};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alternatives: Vec<String>,
    pub experts: Vec<String>,
    #[serde(default, with = "q_field")]
    pub q: QSetting,
    pub attributes: Vec<AttributeSpec>,
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 4]>>>,
    #[serde(default)]
    pub attribute_measure: Vec<MeasureEntry>,
    #[serde(default)]
    pub expert_measure: Vec<MeasureEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureEntry {
    pub subset: Vec<String>,
    pub value: f64,
}

mod q_field {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::ivqrof::Rung;
    use crate::pipeline::QSetting;

    pub fn serialize<S: Serializer>(q: &QSetting, s: S) -> Result<S::Ok, S::Error> {
        match q {
            QSetting::Auto => s.serialize_str("auto"),
            QSetting::Fixed(r) => s.serialize_u32(r.get()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QSetting, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        let bad = |what: String| {
            serde::de::Error::custom(format!("q must be \"auto\" or an integer >= 1, got {what}"))
        };
        match Raw::deserialize(d)? {
            Raw::Int(n) => u32::try_from(n)
                .ok()
                .and_then(|n| Rung::new(n).ok())
                .map(QSetting::Fixed)
                .ok_or_else(|| bad(n.to_string())),
            Raw::Text(s) if s == "auto" => Ok(QSetting::Auto),
            Raw::Text(s) => Err(bad(format!("\"{s}\""))),
        }
    }
}

/// Parses TOML or JSON text into a validated problem.
pub fn parse_problem(text: &str) -> Result<DecisionProblem> {
    parse_file(text)?.to_problem()
}

pub fn parse_file(text: &str) -> Result<ProblemFile> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))
    } else {
        toml::from_str(text).map_err(|e| Error::Parse(format!("TOML: {e}")))
    }
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<DecisionProblem> {
        for (field, len) in [
            ("attributes", self.attributes.len()),
            ("experts", self.experts.len()),
        ] {
            if len == 0 {
                return Err(Error::Problem(format!(
                    "{field}: at least one name is required"
                )));
            }
        }
        let mut matrices = Vec::with_capacity(self.experts.len());
        for name in self.matrices.keys() {
            if !self.experts.contains(name) {
                return Err(Error::Problem(format!("matrices: unknown expert `{name}`")));
            }
        }
        for expert in &self.experts {
            let raw = self.matrices.get(expert).ok_or_else(|| {
                Error::Problem(format!("matrices: missing matrix for expert `{expert}`"))
            })?;
            let mut matrix = Vec::with_capacity(raw.len());
            for (i, row) in raw.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (j, &entry) in row.iter().enumerate() {
                    let value = IvqRofn::from_array(entry)
                        .map_err(|e| Error::Problem(format!("matrices.{expert}[{i}][{j}]: {e}")))?;
                    out.push(value);
                }
                matrix.push(out);
            }
            matrices.push(matrix);
        }
        let attribute_names: Vec<String> = self.attributes.iter().map(|a| a.name.clone()).collect();
        let attribute_measure = build_measure(
            "attribute_measure",
            &self.attribute_measure,
            &attribute_names,
        )?;
        let expert_measure = build_measure("expert_measure", &self.expert_measure, &self.experts)?;
        DecisionProblem::new(
            self.alternatives.clone(),
            self.attributes.clone(),
            self.experts.clone(),
            matrices,
            attribute_measure,
            expert_measure,
            self.q,
        )
    }

    pub fn from_problem(p: &DecisionProblem) -> Self {
        let attribute_names: Vec<String> = p.attributes().iter().map(|a| a.name.clone()).collect();
        let matrices = p
            .experts()
            .iter()
            .zip(p.matrices())
            .map(|(name, m)| {
                let rows = m
                    .iter()
                    .map(|row| row.iter().map(IvqRofn::to_array).collect())
                    .collect();
                (name.clone(), rows)
            })
            .collect();
        ProblemFile {
            alternatives: p.alternatives().to_vec(),
            experts: p.experts().to_vec(),
            q: p.q(),
            attributes: p.attributes().to_vec(),
            matrices,
            attribute_measure: measure_entries(p.attribute_measure(), &attribute_names),
            expert_measure: measure_entries(p.expert_measure(), p.experts()),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(format!("TOML: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(format!("JSON: {e}")))
    }
}

fn build_measure(field: &str, entries: &[MeasureEntry], names: &[String]) -> Result<FuzzyMeasure> {
    if names.len() > MAX_GROUND_SET {
        return Err(Error::GroundSetTooLarge(names.len()));
    }
    let mut table = BTreeMap::new();
    for (k, entry) in entries.iter().enumerate() {
        let mut subset = Subset::EMPTY;
        let mut seen = BTreeSet::new();
        for name in &entry.subset {
            let i = names.iter().position(|n| n == name).ok_or_else(|| {
                Error::Problem(format!("{field}[{k}].subset: unknown name `{name}`"))
            })?;
            if !seen.insert(i) {
                return Err(Error::Problem(format!(
                    "{field}[{k}].subset: `{name}` listed twice"
                )));
            }
            subset = subset.insert(i);
        }
        if table.insert(subset, entry.value).is_some() {
            return Err(Error::Problem(format!(
                "{field}[{k}]: subset {} listed more than once",
                display_subset(subset, names)
            )));
        }
    }
    FuzzyMeasure::from_table(names.len(), &table).map_err(|e| name_subsets(e, names))
}

fn measure_entries(m: &FuzzyMeasure, names: &[String]) -> Vec<MeasureEntry> {
    m.proper_entries()
        .map(|(subset, value)| MeasureEntry {
            subset: subset.indices().map(|i| names[i].clone()).collect(),
            value,
        })
        .collect()
}

fn display_subset(subset: Subset, names: &[String]) -> String {
    let parts: Vec<&str> = subset.indices().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Rewrites `{0,2}` subset labels in measure errors to element names.
pub(crate) fn name_subsets(err: Error, names: &[String]) -> Error {
    let rename = |label: String| -> String {
        let inner = label.trim_start_matches('{').trim_end_matches('}');
        if inner.is_empty() {
            return "{}".into();
        }
        let parsed: Option<Vec<usize>> = inner.split(',').map(|t| t.parse().ok()).collect();
        match parsed {
            Some(idx) if idx.iter().all(|&i| i < names.len()) => {
                display_subset(Subset::from_indices(idx), names)
            }
            _ => label,
        }
    };
    match err {
        Error::MissingSubset(s) => Error::MissingSubset(rename(s)),
        Error::BadSubset(s) => Error::BadSubset(rename(s)),
        Error::NotMonotone {
            smaller,
            smaller_value,
            larger,
            larger_value,
        } => Error::NotMonotone {
            smaller: rename(smaller),
            smaller_value,
            larger: rename(larger),
            larger_value,
        },
        Error::NotAdditive { subset, value, sum } => Error::NotAdditive {
            subset: rename(subset),
            value,
            sum,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivqrof::Rung;

    const SMALL: &str = r#"
alternatives = ["x1", "x2"]
experts = ["e1"]
q = "auto"

[[attributes]]
name = "C1"
kind = "benefit"

[[attributes]]
name = "C2"
kind = "cost"

[matrices]
e1 = [
    [[0.6, 0.7, 0.1, 0.2], [0.3, 0.4, 0.4, 0.5]],
    [[0.5, 0.6, 0.2, 0.3], [0.4, 0.5, 0.3, 0.4]],
]

[[attribute_measure]]
subset = ["C1"]
value = 0.6

[[attribute_measure]]
subset = ["C2"]
value = 0.5
"#;

    #[test]
    fn parses_small_file() {
        let p = parse_problem(SMALL).unwrap();
        assert_eq!(p.alternatives(), ["x1", "x2"]);
        assert_eq!(p.q(), QSetting::Auto);
        assert_eq!(
            p.matrices()[0][1][0],
            IvqRofn::new(0.5, 0.6, 0.2, 0.3).unwrap()
        );
        assert_eq!(
            p.attribute_measure().value(Subset::singleton(1)).unwrap(),
            0.5
        );
    }

    #[test]
    fn toml_and_json_roundtrip() {
        let p = parse_problem(SMALL).unwrap();
        let file = ProblemFile::from_problem(&p);
        assert_eq!(parse_problem(&file.to_toml().unwrap()).unwrap(), p);
        assert_eq!(parse_problem(&file.to_json().unwrap()).unwrap(), p);
        let fixed = p.with_q(QSetting::Fixed(Rung::new(4).unwrap()));
        let text = ProblemFile::from_problem(&fixed).to_json().unwrap();
        assert_eq!(parse_problem(&text).unwrap(), fixed);
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = SMALL.replace("q = \"auto\"", "q = \"auto\"\nrung = 3");
        assert!(matches!(parse_problem(&text), Err(Error::Parse(m)) if m.contains("rung")));
        let text = SMALL.replace("kind = \"cost\"", "kind = \"cost\"\nweight = 1");
        assert!(matches!(parse_problem(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_bad_q() {
        for q in ["0", "\"three\"", "-2"] {
            let text = SMALL.replace("q = \"auto\"", &format!("q = {q}"));
            assert!(
                matches!(parse_problem(&text), Err(Error::Parse(m)) if m.contains("q must be")),
                "{q}"
            );
        }
    }

    #[test]
    fn reports_structural_problems() {
        let text = SMALL.replace("[0.3, 0.4, 0.4, 0.5]],", "],");
        assert!(
            matches!(parse_problem(&text), Err(Error::Problem(m)) if m.contains("matrices.e1[0]"))
        );
        let text = SMALL.replace("[0.6, 0.7, 0.1, 0.2]", "[0.6, 1.7, 0.1, 0.2]");
        assert!(
            matches!(parse_problem(&text), Err(Error::Problem(m)) if m.contains("matrices.e1[0][0]"))
        );
        let text = SMALL.replace("subset = [\"C2\"]", "subset = [\"C9\"]");
        assert!(matches!(parse_problem(&text), Err(Error::Problem(m)) if m.contains("C9")));
        let text = SMALL.replace("e1 = [", "e2 = [");
        assert!(matches!(parse_problem(&text), Err(Error::Problem(_))));
    }

    #[test]
    fn measure_errors_use_names() {
        let text = SMALL.replace("value = 0.5", "value = 1.5");
        let err = parse_problem(&text).unwrap_err();
        match err {
            Error::NotMonotone {
                smaller, larger, ..
            } => {
                assert_eq!(smaller, "{C2}");
                assert_eq!(larger, "{C1,C2}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = SMALL.replace("subset = [\"C2\"]\nvalue = 0.5", "subset = []\nvalue = 0.0");
        assert_eq!(
            parse_problem(&text),
            Err(Error::MissingSubset("{C2}".into()))
        );
    }
}
