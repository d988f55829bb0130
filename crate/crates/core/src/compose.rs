//! Parallel composition and product of a system with itself.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::distribution::{meet_product, Distribution, StateId};
use crate::system::{Diagnostic, Fts, LabelId, ValidationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionMode {
    /// Interleaving with synchronization on the shared active labels.
    Parallel,
    /// Strict lock-step synchronization.
    Product,
}

impl CompositionMode {
    pub fn separator(self) -> &'static str {
        match self {
            CompositionMode::Parallel => "|",
            CompositionMode::Product => "||",
        }
    }
}

impl fmt::Display for CompositionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionMode::Parallel => "parallel",
            CompositionMode::Product => "product",
        })
    }
}

/// A state `left|right` (or `left||right`) of a composed system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub left: StateId,
    pub right: StateId,
    pub mode: CompositionMode,
}

impl PartialOrd for CompositionMode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CompositionMode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

impl PairState {
    /// Name in the composed system. Component names containing `|`, `(` or `)` are
    /// parenthesized so that names of nested compositions stay unambiguous.
    pub fn name(&self, fts: &Fts) -> String {
        format!(
            "{}{}{}",
            mangle(&fts.states()[self.left]),
            self.mode.separator(),
            mangle(&fts.states()[self.right])
        )
    }
}

fn mangle(name: &str) -> String {
    if name.contains(['|', '(', ')']) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Whether `δ(s, a)` contains a non-empty distribution.
pub fn is_active(fts: &Fts, s: StateId, a: LabelId) -> bool {
    fts.transitions(s, a).any(|mu| !mu.is_empty())
}

/// `A_s`, the labels on which `s` has a move to a non-empty distribution.
pub fn active_labels(fts: &Fts, s: StateId) -> BTreeSet<LabelId> {
    (0..fts.num_labels()).filter(|&a| is_active(fts, s, a)).collect()
}

/// The alternatives of the composed state `s1|s2` (or `s1||s2`) on label `a`, with
/// pair states numbered by `pair`, which must be increasing in `(s1, s2)`.
pub fn composed_transitions(
    fts: &Fts,
    mode: CompositionMode,
    s1: StateId,
    s2: StateId,
    a: LabelId,
    mut pair: impl FnMut(StateId, StateId) -> StateId,
) -> Vec<Distribution> {
    let (left, right) = (is_active(fts, s1, a), is_active(fts, s2, a));
    let mut out = Vec::new();
    match (mode, left, right) {
        (_, true, true) => {
            for mu in fts.transitions(s1, a) {
                for eta in fts.transitions(s2, a) {
                    out.push(meet_product(mu, eta, &mut pair));
                }
            }
        }
        (CompositionMode::Parallel, true, false) => {
            let idle = Distribution::singleton(s2);
            out.extend(fts.transitions(s1, a).map(|mu| meet_product(mu, &idle, &mut pair)));
        }
        (CompositionMode::Parallel, false, true) => {
            let idle = Distribution::singleton(s1);
            out.extend(fts.transitions(s2, a).map(|eta| meet_product(&idle, eta, &mut pair)));
        }
        _ => {}
    }
    out
}

/// The full composition over `S × S`; `s1|s2` has index `s1 * |S| + s2`.
pub fn compose(fts: &Fts, mode: CompositionMode) -> Fts {
    let n = fts.num_states();
    let pairs: Vec<(StateId, StateId)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
    build(fts, mode, &pairs, |s, t| s * n + t)
}

pub fn parallel(fts: &Fts) -> Fts {
    compose(fts, CompositionMode::Parallel)
}

pub fn product(fts: &Fts) -> Fts {
    compose(fts, CompositionMode::Product)
}

/// Index of `s1|s2` in [`compose`]'s output.
pub fn pair_index(fts: &Fts, s1: StateId, s2: StateId) -> StateId {
    s1 * fts.num_states() + s2
}

/// The part of the composition reachable from `start`, states ordered by `(s1, s2)`.
pub fn compose_reachable(fts: &Fts, mode: CompositionMode, start: (StateId, StateId)) -> Fts {
    let n = fts.num_states();
    let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((s1, s2)) = queue.pop_front() {
        for a in 0..fts.num_labels() {
            for mu in composed_transitions(fts, mode, s1, s2, a, |s, t| s * n + t) {
                for p in mu.support() {
                    let next = (p / n, p % n);
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let pairs: Vec<(StateId, StateId)> = seen.into_iter().collect();
    let index: HashMap<(StateId, StateId), StateId> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    build(fts, mode, &pairs, |s, t| index[&(s, t)])
}

fn build(
    fts: &Fts,
    mode: CompositionMode,
    pairs: &[(StateId, StateId)],
    mut pair: impl FnMut(StateId, StateId) -> StateId,
) -> Fts {
    let m = fts.num_labels();
    let states = pairs
        .iter()
        .map(|&(left, right)| PairState { left, right, mode }.name(fts))
        .collect();
    let mut rows = Vec::with_capacity(pairs.len() * m);
    for &(s1, s2) in pairs {
        for a in 0..m {
            rows.push(composed_transitions(fts, mode, s1, s2, a, &mut pair));
        }
    }
    Fts::from_rows(states, fts.labels().to_vec(), rows)
}

/// Side-by-side union of two systems, so that composing the union with itself covers
/// pairs of states drawn from different systems.
///
/// States of `b` are numbered after those of `a`; labels are merged by name, `a`'s first.
/// State names must be distinct across the two systems.
pub fn disjoint_union(a: &Fts, b: &Fts) -> Result<Fts, ValidationError> {
    let states: Vec<String> = a.states().iter().chain(b.states()).cloned().collect();
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        if !labels.contains(l) {
            labels.push(l.clone());
        }
    }
    let clashes: Vec<Diagnostic> = b
        .states()
        .iter()
        .filter(|s| a.states().contains(s))
        .map(|s| Diagnostic::DuplicateState(s.clone()))
        .collect();
    if !clashes.is_empty() {
        return Err(ValidationError(clashes));
    }
    let offset = a.num_states();
    let left = a.iter_transitions().map(|(s, l, mu)| (s, l, mu.clone()));
    let right = b.iter_transitions().map(|(s, l, mu)| {
        let label = labels.iter().position(|x| x == &b.labels()[l]).expect("merged label");
        (s + offset, label, mu.map_states(|t| t + offset))
    });
    let transitions: Vec<_> = left.chain(right).collect();
    Fts::new(states, labels, transitions)
}
