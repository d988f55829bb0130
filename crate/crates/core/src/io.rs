//! JSON documents for systems and metrics, and text renderings of results.
//!
//! A system document looks like
//!
//! ```json
//! {
//!   "states": ["s1", "s2"],
//!   "labels": ["a"],
//!   "transitions": [{"from": "s1", "label": "a", "to": {"s2": "0.9"}}],
//!   "distributions": {"mu": {"s1": "1", "s2": "1/3"}}
//! }
//! ```
//!
//! Degrees are strings (`"0.75"`, `"1/3"`) so that they are read exactly. Several records
//! with the same `from` and `label` are alternative moves; `"to": {}` is a move to the
//! empty distribution. `distributions` is optional and names distributions for `lift`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::Degree;
use crate::fixpoint::FixpointTrace;
use crate::metric::{validate_metric, MetricError, StateMetric};
use crate::partition::Partition;
use crate::system::{validate_system, Fts, ValidatedSystem, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub states: Vec<String>,
    pub labels: Vec<String>,
    #[serde(default)]
    pub transitions: Vec<TransitionRecord>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub distributions: IndexMap<String, IndexMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRecord {
    pub from: String,
    pub label: String,
    pub to: IndexMap<String, String>,
}

/// A metric file: `pairs` lists `[s, t, degree]` triples; unlisted pairs are 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDocument {
    pub states: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String, String)>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", .path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(#[from] ValidationError),
    #[error("metric: {0}")]
    MetricFile(String),
    #[error("metric: {0}")]
    Metric(#[from] MetricError),
}

impl IoError {
    /// Whether the input could not be read at all, as opposed to being invalid.
    pub fn is_read_error(&self) -> bool {
        matches!(self, IoError::Read { .. })
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

// serde_json appends " at line L column C"; we report the position separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn system_from_str(text: &str) -> Result<ValidatedSystem, IoError> {
    let doc: SystemDocument = from_json(text)?;
    Ok(validate_system(&doc)?)
}

pub fn parse_system(path: impl AsRef<Path>) -> Result<ValidatedSystem, IoError> {
    system_from_str(&read(path.as_ref())?)
}

/// The document describing `fts`; parsing it back gives an equal system.
pub fn to_document(fts: &Fts) -> SystemDocument {
    let transitions = fts
        .iter_transitions()
        .map(|(s, a, mu)| TransitionRecord {
            from: fts.states()[s].clone(),
            label: fts.labels()[a].clone(),
            to: mu
                .iter()
                .map(|(t, d)| (fts.states()[t].clone(), d.to_string()))
                .collect(),
        })
        .collect();
    SystemDocument {
        states: fts.states().to_vec(),
        labels: fts.labels().to_vec(),
        transitions,
        distributions: IndexMap::new(),
    }
}

/// Pretty-printed JSON for `fts`, with a trailing newline.
pub fn system_to_json(fts: &Fts) -> String {
    let mut out = serde_json::to_string_pretty(&to_document(fts)).expect("documents serialize");
    out.push('\n');
    out
}

/// Reads a metric over `states`. The file may list the states in any order but must
/// declare exactly the same set.
pub fn metric_from_str(text: &str, states: &[String]) -> Result<StateMetric, IoError> {
    let doc: MetricDocument = from_json(text)?;
    let bad = |msg: String| Err(IoError::MetricFile(msg));
    let mut declared = doc.states.clone();
    declared.sort();
    declared.dedup();
    if declared.len() != doc.states.len() {
        return bad("a state is declared more than once".into());
    }
    let mut expected = states.to_vec();
    expected.sort();
    if declared != expected {
        return bad(format!(
            "declares states [{}] but the system has [{}]",
            doc.states.join(", "),
            states.join(", ")
        ));
    }
    let index = |name: &str| states.iter().position(|s| s == name);
    let n = states.len();
    let mut matrix = vec![vec![Degree::ZERO; n]; n];
    let mut given = vec![vec![false; n]; n];
    for (i, (s, t, lit)) in doc.pairs.iter().enumerate() {
        let (Some(a), Some(b)) = (index(s), index(t)) else {
            let unknown = if index(s).is_none() { s } else { t };
            return bad(format!("pair #{i} mentions undeclared state `{unknown}`"));
        };
        let value: Degree = match lit.parse() {
            Ok(v) => v,
            Err(e) => return bad(format!("pair #{i} ({s}, {t}): {e}")),
        };
        if given[a][b] && matrix[a][b] != value {
            return bad(format!("pair #{i} gives ({s}, {t}) a second, different value"));
        }
        given[a][b] = true;
        given[b][a] = true;
        matrix[a][b] = value;
        matrix[b][a] = value;
    }
    Ok(validate_metric(&matrix, states)?)
}

pub fn parse_metric(path: impl AsRef<Path>, states: &[String]) -> Result<StateMetric, IoError> {
    metric_from_str(&read(path.as_ref())?, states)
}

/// Tab-separated full matrix with a header row and a leading state column.
pub fn render_matrix_tsv(states: &[String], matrix: &[Vec<Degree>]) -> String {
    let mut out = String::new();
    for s in states {
        out.push('\t');
        out.push_str(s);
    }
    out.push('\n');
    for (s, row) in states.iter().zip(matrix) {
        out.push_str(s);
        for v in row {
            let _ = write!(out, "\t{v}");
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    states: &'a [String],
    matrix: &'a [Vec<Degree>],
    #[serde(skip_serializing_if = "Option::is_none")]
    iterates: Option<Vec<Vec<Vec<Degree>>>>,
}

pub fn render_matrix_json(states: &[String], matrix: &[Vec<Degree>]) -> String {
    json_line(&MatrixJson {
        states,
        matrix,
        iterates: None,
    })
}

fn json_line(value: &impl Serialize) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("matrices serialize");
    out.push('\n');
    out
}

/// Every iterate `d0 = ⊤, d1, ...` as TSV blocks headed `# d<n>`, then the fixpoint.
pub fn render_trace_tsv(states: &[String], trace: &FixpointTrace) -> String {
    let mut out = String::new();
    for (i, d) in trace.iterates().iter().enumerate() {
        let _ = writeln!(out, "# d{i}");
        out.push_str(&render_matrix_tsv(states, &d.to_matrix()));
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "# fixpoint after {} applications (d{} = d{})",
        trace.applications(),
        trace.applications(),
        trace.applications().saturating_sub(1)
    );
    out.push_str(&render_matrix_tsv(states, &trace.distance().to_matrix()));
    out
}

pub fn render_trace_json(states: &[String], trace: &FixpointTrace) -> String {
    json_line(&MatrixJson {
        states,
        matrix: &trace.distance().to_matrix(),
        iterates: Some(trace.iterates().iter().map(StateMetric::to_matrix).collect()),
    })
}

/// One block per line, e.g. `{s2, s3}`.
pub fn render_partition(states: &[String], partition: &Partition) -> String {
    let mut out = String::new();
    for block in partition.blocks() {
        let names: Vec<&str> = block.iter().map(|&s| states[s].as_str()).collect();
        let _ = writeln!(out, "{{{}}}", names.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::deg;
    use crate::distribution::Distribution;

    const FOUR_STATE: &str = r#"{
        "states": ["s1", "s2", "s3", "s4"],
        "labels": ["a"],
        "transitions": [
            {"from": "s1", "label": "a", "to": {"s3": "0.9", "s4": "0.8"}},
            {"from": "s2", "label": "a", "to": {"s3": "0.6", "s4": "0.9"}},
            {"from": "s3", "label": "a", "to": {"s4": "0.9"}}
        ]
    }"#;

    #[test]
    fn parses_four_state() {
        let v = system_from_str(FOUR_STATE).unwrap();
        assert_eq!(v.system.num_states(), 4);
        assert_eq!(v.system.labels(), &["a"]);
    }

    #[test]
    fn empty_target_is_the_empty_distribution() {
        let v = system_from_str(
            r#"{"states": ["p"], "labels": ["a"], "transitions": [{"from": "p", "label": "a", "to": {}}]}"#,
        )
        .unwrap();
        assert_eq!(v.system.transitions(0, 0).collect::<Vec<_>>(), vec![&Distribution::empty()]);
    }

    #[test]
    fn malformed_degree_names_the_record() {
        let text = FOUR_STATE.replace("\"0.6\"", "\"abc\"");
        let err = system_from_str(&text).unwrap_err().to_string();
        assert!(err.contains("transition #1"), "{err}");
        assert!(err.contains("abc"), "{err}");
    }

    #[test]
    fn json_errors_carry_a_position() {
        let err = system_from_str("{\n  \"states\": [\"p\"],\n  \"labels\": 3\n}").unwrap_err();
        match err {
            IoError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = system_from_str(r#"{"states": [], "labels": [], "extra": 1}"#).unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn round_trip() {
        let fts = system_from_str(FOUR_STATE).unwrap().system;
        let again = system_from_str(&system_to_json(&fts)).unwrap().system;
        assert_eq!(fts, again);
    }

    #[test]
    fn metric_file() {
        let states: Vec<String> = ["s", "t", "u"].map(String::from).to_vec();
        let d = metric_from_str(
            r#"{"states": ["u", "t", "s"], "pairs": [["s", "t", "1"], ["s", "u", "1"]]}"#,
            &states,
        )
        .unwrap();
        assert_eq!(d.get(0, 1), Degree::ONE);
        assert_eq!(d.get(1, 2), Degree::ZERO);

        let err = metric_from_str(
            r#"{"states": ["s", "t", "u"], "pairs": [["s", "t", "0.2"], ["t", "u", "0.2"], ["s", "u", "0.5"]]}"#,
            &states,
        )
        .unwrap_err();
        assert!(matches!(err, IoError::Metric(MetricError::StrongTriangle { .. })));
        assert!(metric_from_str(r#"{"states": ["s", "t"]}"#, &states).is_err());
    }

    #[test]
    fn renderings() {
        let states: Vec<String> = ["x", "y"].map(String::from).to_vec();
        let m = vec![vec![Degree::ZERO, deg("1/3")], vec![deg("1/3"), Degree::ZERO]];
        assert_eq!(render_matrix_tsv(&states, &m), "\tx\ty\nx\t0\t1/3\ny\t1/3\t0\n");
        let json: serde_json::Value = serde_json::from_str(&render_matrix_json(&states, &m)).unwrap();
        assert_eq!(json["matrix"][0][1], "1/3");
        let p = Partition::from_keys(&[0, 0]);
        assert_eq!(render_partition(&states, &p), "{x, y}\n");
    }
}
