//! Finite nondeterministic fuzzy-transition systems.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::degree::{Degree, DegreeError};
use crate::distribution::{Distribution, StateId};
use crate::io::SystemDocument;

/// Index of a label in declaration order.
pub type LabelId = usize;

/// Index into a system's pool of distinct distributions.
///
/// Structurally equal distributions share one id, which lets callers cache per-pair work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistId(pub u32);

/// A finite fuzzy-transition system `(S, A, δ)` where `δ(s, a)` is a finite set of
/// possibility distributions over `S`.
///
/// A missing `(s, a)` entry means `δ(s, a) = ∅`; the set `{∅}` (a move to the empty
/// distribution) is a different thing and is represented explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fts {
    states: Vec<String>,
    labels: Vec<String>,
    pool: Vec<Distribution>,
    /// `delta[s * labels.len() + a]`, sorted by distribution order.
    delta: Vec<Vec<DistId>>,
}

/// One problem found while checking a system description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("the state list is empty")]
    NoStates,
    #[error("the label list is empty")]
    NoLabels,
    #[error("state `{0}` is declared more than once")]
    DuplicateState(String),
    #[error("label `{0}` is declared more than once")]
    DuplicateLabel(String),
    #[error("{record}: field `from` names undeclared state `{state}`")]
    UnknownSource { record: RecordRef, state: String },
    #[error("{record}: field `label` names undeclared label `{label}`")]
    UnknownLabel { record: RecordRef, label: String },
    #[error("{record}: field `to` mentions undeclared state `{state}`")]
    UnknownTarget { record: RecordRef, state: String },
    #[error("{record}: field `to.{state}`: {error}")]
    BadDegree {
        record: RecordRef,
        state: String,
        error: DegreeError,
    },
    #[error("state index {0} is out of range")]
    StateOutOfRange(StateId),
    #[error("label index {0} is out of range")]
    LabelOutOfRange(LabelId),
}

/// Non-fatal findings; the system is still built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Warning {
    #[error("{record}: duplicates {first}; δ(s, a) is a set, so the copy is ignored")]
    DuplicateAlternative { record: RecordRef, first: RecordRef },
}

/// Points at a transition record (or a named distribution) of a system document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordRef {
    Transition {
        index: usize,
        from: String,
        label: String,
    },
    Named(String),
}

impl fmt::Display for RecordRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordRef::Transition { index, from, label } => {
                write!(f, "transition #{index} ({from} --{label}-->)")
            }
            RecordRef::Named(name) => write!(f, "distribution `{name}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", render_diagnostics(.0))]
pub struct ValidationError(pub Vec<Diagnostic>);

fn render_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Result of [`validate_system`].
#[derive(Debug, Clone)]
pub struct ValidatedSystem {
    pub system: Fts,
    /// Named distributions from the document, in document order.
    pub distributions: IndexMap<String, Distribution>,
    pub warnings: Vec<Warning>,
}

impl Fts {
    /// Builds a system from index-based transitions. Duplicate alternatives are merged.
    pub fn new(
        states: Vec<String>,
        labels: Vec<String>,
        transitions: impl IntoIterator<Item = (StateId, LabelId, Distribution)>,
    ) -> Result<Fts, ValidationError> {
        let mut diags = check_names(&states, &labels);
        let (n, m) = (states.len(), labels.len());
        let mut rows: Vec<Vec<Distribution>> = vec![Vec::new(); n * m];
        for (s, a, mu) in transitions {
            if s >= n {
                diags.push(Diagnostic::StateOutOfRange(s));
                continue;
            }
            if a >= m {
                diags.push(Diagnostic::LabelOutOfRange(a));
                continue;
            }
            if let Some(bad) = mu.support().find(|&t| t >= n) {
                diags.push(Diagnostic::StateOutOfRange(bad));
                continue;
            }
            rows[s * m + a].push(mu);
        }
        if !diags.is_empty() {
            return Err(ValidationError(diags));
        }
        Ok(Self::from_rows(states, labels, rows))
    }

    /// `rows[s * labels.len() + a]` lists the alternatives of `δ(s, a)`.
    pub(crate) fn from_rows(
        states: Vec<String>,
        labels: Vec<String>,
        rows: Vec<Vec<Distribution>>,
    ) -> Fts {
        let mut pool: Vec<Distribution> = rows.iter().flatten().cloned().collect();
        pool.sort_unstable();
        pool.dedup();
        let id = |d: &Distribution| DistId(pool.binary_search(d).expect("pooled") as u32);
        let delta = rows
            .iter()
            .map(|row| {
                let mut v: Vec<DistId> = row.iter().map(id).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Fts {
            states,
            labels,
            pool,
            delta,
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn label_index(&self, name: &str) -> Option<LabelId> {
        self.labels.iter().position(|s| s == name)
    }

    /// Ids of the alternatives in `δ(s, a)`.
    pub fn transition_ids(&self, s: StateId, a: LabelId) -> &[DistId] {
        &self.delta[s * self.labels.len() + a]
    }

    /// The alternatives in `δ(s, a)`, in a fixed canonical order.
    pub fn transitions(&self, s: StateId, a: LabelId) -> impl Iterator<Item = &Distribution> + '_ {
        self.transition_ids(s, a).iter().map(|&id| &self.pool[id.0 as usize])
    }

    pub fn distribution(&self, id: DistId) -> &Distribution {
        &self.pool[id.0 as usize]
    }

    /// Every distinct distribution occurring in `δ`.
    pub fn distributions(&self) -> &[Distribution] {
        &self.pool
    }

    /// All `(s, a, μ)` with `μ ∈ δ(s, a)`, ordered by state, then label.
    pub fn iter_transitions(&self) -> impl Iterator<Item = (StateId, LabelId, &Distribution)> + '_ {
        let m = self.labels.len();
        self.delta.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .map(move |&id| (i / m, i % m, &self.pool[id.0 as usize]))
        })
    }

    /// Distinct degrees occurring in any transition, ascending.
    pub fn degrees(&self) -> Vec<Degree> {
        let set: BTreeSet<Degree> = self.pool.iter().flat_map(|d| d.iter().map(|e| e.1)).collect();
        set.into_iter().collect()
    }

    /// Whether states `s` and `t` have identical transition sets on every label.
    pub fn same_rows(&self, s: StateId, t: StateId) -> bool {
        (0..self.labels.len()).all(|a| self.transition_ids(s, a) == self.transition_ids(t, a))
    }
}

fn check_names(states: &[String], labels: &[String]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if states.is_empty() {
        diags.push(Diagnostic::NoStates);
    }
    if labels.is_empty() {
        diags.push(Diagnostic::NoLabels);
    }
    let mut seen = BTreeSet::new();
    for s in states {
        if !seen.insert(s.as_str()) {
            diags.push(Diagnostic::DuplicateState(s.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for a in labels {
        if !seen.insert(a.as_str()) {
            diags.push(Diagnostic::DuplicateLabel(a.clone()));
        }
    }
    diags
}

/// Checks a parsed system document and builds the system it describes.
///
/// Every problem is collected, not just the first one. Degrees are parsed exactly from
/// their decimal (or `p/q`) literals.
pub fn validate_system(doc: &SystemDocument) -> Result<ValidatedSystem, ValidationError> {
    let mut diags = check_names(&doc.states, &doc.labels);
    let state_ix: HashMap<&str, StateId> = doc
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .rev()
        .collect();
    let label_ix: HashMap<&str, LabelId> = doc
        .labels
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .rev()
        .collect();

    let parse_target = |record: &RecordRef,
                        to: &IndexMap<String, String>,
                        diags: &mut Vec<Diagnostic>|
     -> Option<Distribution> {
        let mut pairs = Vec::with_capacity(to.len());
        let mut ok = true;
        for (name, lit) in to {
            let target = state_ix.get(name.as_str()).copied();
            if target.is_none() {
                diags.push(Diagnostic::UnknownTarget {
                    record: record.clone(),
                    state: name.clone(),
                });
                ok = false;
            }
            match lit.parse::<Degree>() {
                Ok(d) => {
                    if let Some(t) = target {
                        pairs.push((t, d));
                    }
                }
                Err(error) => {
                    diags.push(Diagnostic::BadDegree {
                        record: record.clone(),
                        state: name.clone(),
                        error,
                    });
                    ok = false;
                }
            }
        }
        ok.then(|| Distribution::from_pairs(pairs))
    };

    let (n, m) = (doc.states.len(), doc.labels.len());
    let mut rows: Vec<Vec<Distribution>> = vec![Vec::new(); n * m];
    let mut first_seen: HashMap<(usize, Distribution), usize> = HashMap::new();
    let mut warnings = Vec::new();
    for (index, rec) in doc.transitions.iter().enumerate() {
        let record = RecordRef::Transition {
            index,
            from: rec.from.clone(),
            label: rec.label.clone(),
        };
        let from = state_ix.get(rec.from.as_str()).copied();
        if from.is_none() {
            diags.push(Diagnostic::UnknownSource {
                record: record.clone(),
                state: rec.from.clone(),
            });
        }
        let label = label_ix.get(rec.label.as_str()).copied();
        if label.is_none() {
            diags.push(Diagnostic::UnknownLabel {
                record: record.clone(),
                label: rec.label.clone(),
            });
        }
        let mu = parse_target(&record, &rec.to, &mut diags);
        if let (Some(s), Some(a), Some(mu)) = (from, label, mu) {
            let key = (s * m + a, mu);
            if let Some(&first) = first_seen.get(&key) {
                let prev = &doc.transitions[first];
                warnings.push(Warning::DuplicateAlternative {
                    record,
                    first: RecordRef::Transition {
                        index: first,
                        from: prev.from.clone(),
                        label: prev.label.clone(),
                    },
                });
            } else {
                rows[key.0].push(key.1.clone());
                first_seen.insert(key, index);
            }
        }
    }

    let mut distributions = IndexMap::new();
    for (name, to) in &doc.distributions {
        let record = RecordRef::Named(name.clone());
        if let Some(mu) = parse_target(&record, to, &mut diags) {
            distributions.insert(name.clone(), mu);
        }
    }

    if !diags.is_empty() {
        return Err(ValidationError(diags));
    }
    Ok(ValidatedSystem {
        system: Fts::from_rows(doc.states.clone(), doc.labels.clone(), rows),
        distributions,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::deg;
    use crate::io::TransitionRecord;

    fn record(from: &str, label: &str, to: &[(&str, &str)]) -> TransitionRecord {
        TransitionRecord {
            from: from.into(),
            label: label.into(),
            to: to.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    fn four_state_doc() -> SystemDocument {
        SystemDocument {
            states: ["s1", "s2", "s3", "s4"].map(String::from).to_vec(),
            labels: vec!["a".into()],
            transitions: vec![
                record("s1", "a", &[("s3", "0.9"), ("s4", "0.8")]),
                record("s2", "a", &[("s3", "0.6"), ("s4", "0.9")]),
                record("s3", "a", &[("s4", "0.9")]),
            ],
            distributions: IndexMap::new(),
        }
    }

    #[test]
    fn four_state_is_valid() {
        let v = validate_system(&four_state_doc()).unwrap();
        assert_eq!(v.system.num_states(), 4);
        assert_eq!(v.system.num_labels(), 1);
        assert!(v.warnings.is_empty());
        let mu: Vec<_> = v.system.transitions(0, 0).cloned().collect();
        assert_eq!(mu, vec![Distribution::from_pairs([(2, deg("0.9")), (3, deg("0.8"))])]);
        assert_eq!(v.system.transitions(3, 0).count(), 0);
        assert_eq!(v.system.degrees(), vec![deg("0.6"), deg("0.8"), deg("0.9")]);
    }

    #[test]
    fn undeclared_target_is_named() {
        let mut doc = four_state_doc();
        doc.transitions.push(record("s1", "a", &[("s9", "0.5")]));
        let err = validate_system(&doc).unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert!(matches!(&err.0[0], Diagnostic::UnknownTarget { state, .. } if state == "s9"));
        assert!(err.to_string().contains("s9"));
        assert!(err.to_string().contains("transition #3"));
    }

    #[test]
    fn degree_out_of_range_is_reported() {
        let mut doc = four_state_doc();
        doc.transitions[1] = record("s2", "a", &[("s3", "1.2")]);
        let err = validate_system(&doc).unwrap_err();
        assert!(matches!(
            &err.0[0],
            Diagnostic::BadDegree { error: DegreeError::OutOfRange(_), state, .. } if state == "s3"
        ));
    }

    #[test]
    fn collects_every_problem() {
        let doc = SystemDocument {
            states: vec!["p".into(), "p".into()],
            labels: vec![],
            transitions: vec![record("q", "b", &[("p", "abc")])],
            distributions: IndexMap::new(),
        };
        let err = validate_system(&doc).unwrap_err();
        assert!(err.0.contains(&Diagnostic::NoLabels));
        assert!(err.0.contains(&Diagnostic::DuplicateState("p".into())));
        assert!(err.0.iter().any(|d| matches!(d, Diagnostic::UnknownSource { .. })));
        assert!(err.0.iter().any(|d| matches!(d, Diagnostic::UnknownLabel { .. })));
        assert!(err
            .0
            .iter()
            .any(|d| matches!(d, Diagnostic::BadDegree { error: DegreeError::Malformed(_), .. })));
    }

    #[test]
    fn duplicate_alternatives_are_merged_with_a_warning() {
        let mut doc = four_state_doc();
        doc.transitions.push(record("s1", "a", &[("s4", "0.80"), ("s3", "0.9")]));
        let v = validate_system(&doc).unwrap();
        assert_eq!(v.system.transitions(0, 0).count(), 1);
        assert_eq!(v.warnings.len(), 1);
    }

    #[test]
    fn empty_distribution_differs_from_no_transition() {
        let mut doc = four_state_doc();
        doc.transitions.push(record("s4", "a", &[]));
        let v = validate_system(&doc).unwrap();
        let row: Vec<_> = v.system.transitions(3, 0).collect();
        assert_eq!(row.len(), 1);
        assert!(row[0].is_empty());
    }

    #[test]
    fn index_constructor_rejects_bad_indices() {
        let err = Fts::new(
            vec!["x".into()],
            vec!["a".into()],
            [(0, 0, Distribution::singleton(3))],
        )
        .unwrap_err();
        assert_eq!(err.0, vec![Diagnostic::StateOutOfRange(3)]);
    }
}
