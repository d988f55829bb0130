//! Behavioral distance as the greatest fixed point of the `Δ` operator, and exact
//! bisimilarity by partition refinement.

use std::collections::HashMap;

use smallvec::SmallVec;
use thiserror::Error;

use crate::degree::Degree;
use crate::distribution::StateId;
use crate::lifting::{hausdorff, lifted_distance_by, lifted_relation_contains};
use crate::metric::StateMetric;
use crate::partition::{Partition, Relation, RelationError};
use crate::system::{DistId, Fts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    /// The iteration ran past the bound derived from the system's degree set. The chain
    /// of iterates is monotone over a finite value set, so this indicates a bug.
    #[error("fixpoint iteration exceeded {bound} applications of Δ without converging")]
    BoundExceeded { bound: usize },
}

/// One application of `Δ`:
/// `Δ(d)(s, t) = max_a H_{d̂}(δ(s, a), δ(t, a))`.
pub fn delta(fts: &Fts, d: &StateMetric) -> StateMetric {
    assert_eq!(d.len(), fts.num_states(), "metric and system disagree on the state count");
    let mut cache = LiftCache::new(fts.distributions().len());
    let mut lifted = |x: &DistId, y: &DistId| {
        if x == y {
            return Degree::ZERO;
        }
        let key = if x <= y { (*x, *y) } else { (*y, *x) };
        cache.get_or_insert(key, || {
            lifted_distance_by(|s, t| d.get(s, t), fts.distribution(key.0), fts.distribution(key.1))
        })
    };
    StateMetric::from_fn(fts.num_states(), |s, t| {
        let mut worst = Degree::ZERO;
        for a in 0..fts.num_labels() {
            let (xs, ys) = (fts.transition_ids(s, a), fts.transition_ids(t, a));
            if xs == ys {
                continue;
            }
            let h = hausdorff(xs, ys, &mut lifted);
            worst = worst.max(h);
            if worst.is_one() {
                break;
            }
        }
        worst
    })
}

/// Memoizes `d̂` per pair of pooled distributions within one application of `Δ`.
enum LiftCache {
    Dense { width: usize, values: Vec<Option<Degree>> },
    Sparse(HashMap<(DistId, DistId), Degree>),
}

impl LiftCache {
    const DENSE_LIMIT: usize = 1 << 16;

    fn new(pool: usize) -> Self {
        if pool * pool <= Self::DENSE_LIMIT {
            LiftCache::Dense {
                width: pool,
                values: vec![None; pool * pool],
            }
        } else {
            LiftCache::Sparse(HashMap::new())
        }
    }

    fn get_or_insert(&mut self, key: (DistId, DistId), f: impl FnOnce() -> Degree) -> Degree {
        match self {
            LiftCache::Dense { width, values } => {
                let slot = &mut values[key.0 .0 as usize * *width + key.1 .0 as usize];
                *slot.get_or_insert_with(f)
            }
            LiftCache::Sparse(map) => *map.entry(key).or_insert_with(f),
        }
    }
}

/// The iterates `⊤ = d₀, d₁ = Δ(d₀), …, dₙ = dₙ₋₁` of a converged run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointTrace {
    iterates: Vec<StateMetric>,
}

impl FixpointTrace {
    /// The behavioral distance `d_f`.
    pub fn distance(&self) -> &StateMetric {
        self.iterates.last().expect("a trace holds at least ⊤")
    }

    pub fn into_distance(mut self) -> StateMetric {
        self.iterates.pop().expect("a trace holds at least ⊤")
    }

    /// Every iterate, starting with `⊤`; the last two are equal.
    pub fn iterates(&self) -> &[StateMetric] {
        &self.iterates
    }

    /// How many times `Δ` was applied, including the final one that confirmed the fixpoint.
    pub fn applications(&self) -> usize {
        self.iterates.len() - 1
    }

    /// Whether each iterate is pointwise no smaller than its predecessor.
    pub fn is_monotone(&self) -> bool {
        self.iterates.windows(2).all(|w| w[1].precedes(&w[0]))
    }
}

/// Upper bound on the number of `Δ` applications: `|S|² · (|V| + 2)`, `V` being the
/// distinct degrees of the system.
///
/// Every iterate takes values in `V ∪ {0, 1}` and the chain is pointwise non-decreasing,
/// so each of the `|S|²` entries can change at most `|V| + 1` times.
pub fn iteration_bound(fts: &Fts) -> usize {
    let n = fts.num_states();
    n * n * (fts.degrees().len() + 2)
}

/// Computes `d_f` by iterating `Δ` from `⊤` until two consecutive iterates coincide.
pub fn behavioral_distance(fts: &Fts) -> Result<FixpointTrace, FixpointError> {
    let bound = iteration_bound(fts);
    let mut iterates = vec![StateMetric::top(fts.num_states())];
    loop {
        let current = iterates.last().expect("nonempty");
        let next = delta(fts, current);
        let done = &next == current;
        iterates.push(next);
        if done {
            return Ok(FixpointTrace { iterates });
        }
        if iterates.len() > bound {
            return Err(FixpointError::BoundExceeded { bound });
        }
    }
}

/// Blocks of `R_λ = {(s, t) : d(s, t) ≤ λ}` for a pseudo-ultrametric `d`.
pub fn quotient_of(d: &StateMetric, lambda: Degree) -> Partition {
    let n = d.len();
    let mut leaders: Vec<StateId> = Vec::new();
    let keys: Vec<usize> = (0..n)
        .map(|s| match leaders.iter().position(|&r| d.get(r, s) <= lambda) {
            Some(b) => b,
            None => {
                leaders.push(s);
                leaders.len() - 1
            }
        })
        .collect();
    Partition::from_keys(&keys)
}

/// Threshold quotient of the behavioral distance.
pub fn quotient(fts: &Fts, lambda: Degree) -> Result<Partition, FixpointError> {
    Ok(quotient_of(behavioral_distance(fts)?.distance(), lambda))
}

/// The fuzzy similarity relation `1 - d_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Similarity(StateMetric);

impl Similarity {
    pub fn from_distance(d: StateMetric) -> Self {
        Similarity(d)
    }

    pub fn get(&self, s: StateId, t: StateId) -> Degree {
        self.0.get(s, t).complement()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_matrix(&self) -> Vec<Vec<Degree>> {
        let n = self.len();
        (0..n).map(|s| (0..n).map(|t| self.get(s, t)).collect()).collect()
    }
}

pub fn similarity(fts: &Fts) -> Result<Similarity, FixpointError> {
    Ok(Similarity(behavioral_distance(fts)?.into_distance()))
}

/// Bisimilarity `∼` as a partition, by naive refinement from the one-block partition.
///
/// Each round keys every state by its current block and, per label, the set of
/// class-height vectors of its alternatives. Two states stay together iff each one's
/// alternatives are matched by the other's under the current classes.
pub fn greatest_bisimulation(fts: &Fts) -> Partition {
    let n = fts.num_states();
    let mut current = Partition::single_block(n);
    loop {
        let keys: Vec<(usize, Signature)> = (0..n)
            .map(|s| (current.block_of(s), signature(fts, &current, s)))
            .collect();
        let next = Partition::from_keys(&keys);
        if next.num_blocks() == current.num_blocks() {
            return next;
        }
        current = next;
    }
}

/// Per label, the number of distinct class-height vectors, and all those vectors in
/// sorted order flattened. Each vector has one entry per block, so the pair determines
/// the per-label sets.
type Signature = (SmallVec<[usize; 4]>, SmallVec<[Degree; 16]>);

fn signature(fts: &Fts, p: &Partition, s: StateId) -> Signature {
    let mut counts = SmallVec::new();
    let mut out = SmallVec::new();
    let mut moves: SmallVec<[SmallVec<[Degree; 8]>; 4]> = SmallVec::new();
    for a in 0..fts.num_labels() {
        moves.clear();
        moves.extend(fts.transitions(s, a).map(|mu| {
            let mut h: SmallVec<[Degree; 8]> = SmallVec::from_elem(Degree::ZERO, p.num_blocks());
            for (t, d) in mu.iter() {
                let b = p.block_of(t);
                h[b] = h[b].max(d);
            }
            h
        }));
        moves.sort_unstable();
        moves.dedup();
        counts.push(moves.len());
        for m in &moves {
            out.extend_from_slice(m);
        }
    }
    (counts, out)
}

/// Checks the bisimulation conditions directly: for every `s ~ t`, label `a` and
/// `μ ∈ δ(s, a)` there is `η ∈ δ(t, a)` with `μ(C) = η(C)` for every class `C`.
pub fn is_bisimulation(fts: &Fts, classes: &Partition) -> bool {
    let n = fts.num_states();
    (0..n).all(|s| {
        (0..n).filter(|&t| classes.same_block(s, t)).all(|t| {
            (0..fts.num_labels()).all(|a| {
                fts.transitions(s, a).all(|mu| {
                    fts.transitions(t, a)
                        .any(|eta| lifted_relation_contains(classes, mu, eta))
                })
            })
        })
    })
}

/// `d_R(s, t) = 0` if `(s, t) ∈ R`, else 1. Fails unless `R` is an equivalence relation,
/// which is exactly when `d_R` is a pseudo-ultrametric.
pub fn metric_from_relation(relation: &Relation) -> Result<StateMetric, RelationError> {
    relation.check_equivalence()?;
    Ok(StateMetric::from_fn(relation.num_states(), |s, t| {
        if relation.contains(s, t) {
            Degree::ZERO
        } else {
            Degree::ONE
        }
    }))
}

/// `d_R` for the equivalence whose classes are `p`.
pub fn metric_from_partition(p: &Partition) -> StateMetric {
    StateMetric::from_fn(p.num_states(), |s, t| {
        if p.same_block(s, t) {
            Degree::ZERO
        } else {
            Degree::ONE
        }
    })
}

/// `d ⪯ Δ(d)`, i.e. `Δ(d)(s, t) ≤ d(s, t)` for all pairs.
pub fn is_post_fixed_point(fts: &Fts, d: &StateMetric) -> bool {
    d.precedes(&delta(fts, d))
}
