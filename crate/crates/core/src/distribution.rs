//! Possibility distributions (fuzzy subsets of a finite state set).

use crate::degree::Degree;

/// Index of a state in its owning system's declaration order.
pub type StateId = usize;

/// A fuzzy subset of the states, stored as its support.
///
/// Entries are kept sorted by state and every stored degree is strictly positive, so two
/// distributions are equal exactly when their membership functions agree everywhere.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    entries: Vec<(StateId, Degree)>,
}

impl Distribution {
    /// The empty fuzzy set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// `1/state`.
    pub fn singleton(state: StateId) -> Self {
        Self {
            entries: vec![(state, Degree::ONE)],
        }
    }

    /// Builds a distribution from `(state, degree)` pairs. Zero degrees are dropped and
    /// repeated states keep their largest degree.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (StateId, Degree)>) -> Self {
        let mut entries: Vec<_> = pairs.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        entries.dedup_by_key(|e| e.0);
        Self { entries }
    }

    /// Caller guarantees the entries are sorted by state, unique and nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(StateId, Degree)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        Self { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of states in the support.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> impl Iterator<Item = StateId> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn entries(&self) -> &[(StateId, Degree)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, Degree)> + '_ {
        self.entries.iter().copied()
    }

    /// Membership degree of `state`, zero outside the support.
    pub fn get(&self, state: StateId) -> Degree {
        self.entries
            .binary_search_by_key(&state, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(Degree::ZERO)
    }

    /// The height `μ(S)`: the largest degree, zero for the empty set.
    pub fn height(&self) -> Degree {
        self.entries.iter().map(|e| e.1).max().unwrap_or(Degree::ZERO)
    }

    /// `μ(U)` for the states accepted by `over`.
    pub fn height_over(&self, mut over: impl FnMut(StateId) -> bool) -> Degree {
        self.entries
            .iter()
            .filter(|e| over(e.0))
            .map(|e| e.1)
            .max()
            .unwrap_or(Degree::ZERO)
    }

    /// Scale product `c · μ`, the pointwise minimum with `c`.
    pub fn scale(&self, c: Degree) -> Distribution {
        let entries = self
            .entries
            .iter()
            .map(|&(s, d)| (s, d.min(c)))
            .filter(|e| !e.1.is_zero())
            .collect();
        Self::from_sorted_unchecked(entries)
    }

    /// Pointwise maximum.
    pub fn union(&self, other: &Distribution) -> Distribution {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1.max(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted_unchecked(out)
    }

    /// Containment `μ ⊆ η`.
    pub fn is_subset_of(&self, other: &Distribution) -> bool {
        self.entries.iter().all(|&(s, d)| d <= other.get(s))
    }

    /// Renames states through `f`, which must be injective.
    pub fn map_states(&self, mut f: impl FnMut(StateId) -> StateId) -> Distribution {
        Distribution::from_pairs(self.entries.iter().map(|&(s, d)| (f(s), d)))
    }
}

/// `μ ∧ η` on the product space: `(μ ∧ η)(s, t) = μ(s) ∧ η(t)`.
///
/// `pair` maps a coordinate pair to a state of the product space and must be strictly
/// increasing in lexicographic order (for example `s * n + t`).
pub fn meet_product(
    mu: &Distribution,
    eta: &Distribution,
    mut pair: impl FnMut(StateId, StateId) -> StateId,
) -> Distribution {
    let mut entries = Vec::with_capacity(mu.support_len() * eta.support_len());
    for &(s, a) in &mu.entries {
        for &(t, b) in &eta.entries {
            entries.push((pair(s, t), a.min(b)));
        }
    }
    Distribution::from_sorted_unchecked(entries)
}
