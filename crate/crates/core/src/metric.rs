//! Pseudo-ultrametrics on a finite state set.

use std::fmt;

use thiserror::Error;

use crate::degree::Degree;
use crate::distribution::StateId;

/// A `[0, 1]`-valued pseudo-ultrametric over states `0..n`.
///
/// Only the strict upper triangle is stored, so symmetry and the zero diagonal hold by
/// construction. The strong triangle inequality is checked by [`validate_metric`] and
/// [`StateMetric::check_ultrametric`]; the operators in this crate preserve it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateMetric {
    n: usize,
    upper: Vec<Degree>,
}

/// Which pseudo-ultrametric axiom a matrix breaks, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("matrix has {rows} rows but {states} states were given")]
    RowCount { rows: usize, states: usize },
    #[error("row `{state}` has {len} entries, expected {expected}")]
    RowLength {
        state: String,
        len: usize,
        expected: usize,
    },
    #[error("P1 fails: d({s}, {s}) = {value}, expected 0")]
    Reflexivity { s: String, value: Degree },
    #[error("P2 fails: d({s}, {t}) = {st} but d({t}, {s}) = {ts}")]
    Symmetry {
        s: String,
        t: String,
        st: Degree,
        ts: Degree,
    },
    #[error("P3 fails: d({s}, {u}) = {su} > max(d({s}, {t}), d({t}, {u})) = {bound}")]
    StrongTriangle {
        s: String,
        t: String,
        u: String,
        su: Degree,
        bound: Degree,
    },
}

impl StateMetric {
    /// The all-zero metric, the top element `⊤` of the order `⪯`.
    pub fn top(n: usize) -> Self {
        StateMetric {
            n,
            upper: vec![Degree::ZERO; n * n.saturating_sub(1) / 2],
        }
    }

    /// `d(s, t) = 1` for `s ≠ t`.
    pub fn discrete(n: usize) -> Self {
        StateMetric {
            n,
            upper: vec![Degree::ONE; n * n.saturating_sub(1) / 2],
        }
    }

    /// Fills `d(s, t)` for `s < t` from `f`; the result is not checked for P3.
    pub fn from_fn(n: usize, mut f: impl FnMut(StateId, StateId) -> Degree) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for s in 0..n {
            for t in s + 1..n {
                upper.push(f(s, t));
            }
        }
        StateMetric { n, upper }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn slot(&self, s: StateId, t: StateId) -> usize {
        debug_assert!(s < t && t < self.n);
        s * (2 * self.n - s - 1) / 2 + (t - s - 1)
    }

    #[inline]
    pub fn get(&self, s: StateId, t: StateId) -> Degree {
        match s.cmp(&t) {
            std::cmp::Ordering::Equal => Degree::ZERO,
            std::cmp::Ordering::Less => self.upper[self.slot(s, t)],
            std::cmp::Ordering::Greater => self.upper[self.slot(t, s)],
        }
    }

    /// Sets `d(s, t) = d(t, s)`. Diagonal writes are ignored unless they are zero.
    pub fn set(&mut self, s: StateId, t: StateId, value: Degree) {
        assert!(s != t || value.is_zero(), "diagonal of a pseudo-ultrametric is zero");
        if s != t {
            let i = self.slot(s.min(t), s.max(t));
            self.upper[i] = value;
        }
    }

    /// Iterates `(s, t, d(s, t))` over `s < t`.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId, Degree)> + '_ {
        (0..self.n).flat_map(move |s| (s + 1..self.n).map(move |t| (s, t, self.get(s, t))))
    }

    /// Full square matrix, rows in state order.
    pub fn to_matrix(&self) -> Vec<Vec<Degree>> {
        (0..self.n)
            .map(|s| (0..self.n).map(|t| self.get(s, t)).collect())
            .collect()
    }

    /// `self ⪯ other`, i.e. `self(s, t) ≥ other(s, t)` everywhere.
    pub fn precedes(&self, other: &StateMetric) -> bool {
        assert_eq!(self.n, other.n, "metrics over different state sets");
        self.upper.iter().zip(&other.upper).all(|(a, b)| a >= b)
    }

    /// First `(s, t, u)` in lexicographic order with `d(s, u) > d(s, t) ∨ d(t, u)`.
    pub fn strong_triangle_violation(&self) -> Option<(StateId, StateId, StateId)> {
        for s in 0..self.n {
            for t in 0..self.n {
                for u in 0..self.n {
                    if self.get(s, u) > self.get(s, t).max(self.get(t, u)) {
                        return Some((s, t, u));
                    }
                }
            }
        }
        None
    }

    /// Checks P3, naming states through `names`.
    pub fn check_ultrametric(&self, names: &[String]) -> Result<(), MetricError> {
        match self.strong_triangle_violation() {
            None => Ok(()),
            Some((s, t, u)) => Err(MetricError::StrongTriangle {
                s: names[s].clone(),
                t: names[t].clone(),
                u: names[u].clone(),
                su: self.get(s, u),
                bound: self.get(s, t).max(self.get(t, u)),
            }),
        }
    }
}

impl fmt::Debug for StateMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_matrix()).finish()
    }
}

/// Checks that a square matrix over `states` is a pseudo-ultrametric (P1, P2, P3 in that
/// order) and returns it, or the first violated axiom with witnesses.
pub fn validate_metric(matrix: &[Vec<Degree>], states: &[String]) -> Result<StateMetric, MetricError> {
    let n = states.len();
    if matrix.len() != n {
        return Err(MetricError::RowCount {
            rows: matrix.len(),
            states: n,
        });
    }
    for (s, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(MetricError::RowLength {
                state: states[s].clone(),
                len: row.len(),
                expected: n,
            });
        }
    }
    for s in 0..n {
        if !matrix[s][s].is_zero() {
            return Err(MetricError::Reflexivity {
                s: states[s].clone(),
                value: matrix[s][s],
            });
        }
    }
    for s in 0..n {
        for t in s + 1..n {
            if matrix[s][t] != matrix[t][s] {
                return Err(MetricError::Symmetry {
                    s: states[s].clone(),
                    t: states[t].clone(),
                    st: matrix[s][t],
                    ts: matrix[t][s],
                });
            }
        }
    }
    let metric = StateMetric::from_fn(n, |s, t| matrix[s][t]);
    metric.check_ultrametric(states)?;
    Ok(metric)
}
