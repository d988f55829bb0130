//! Lifting state-level distances and relations to possibility distributions.
//!
//! The lifted distance between `μ` and `η` is a max-min transport problem: among all
//! matrices `x` whose row suprema are `μ` and column suprema are `η`, minimize
//! `max_{s,t} min(d(s, t), x(s, t))`. When the heights of `μ` and `η` differ no such
//! matrix exists and the distance is 1.

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::degree::Degree;
use crate::distribution::{Distribution, StateId};
use crate::metric::StateMetric;
use crate::partition::{Partition, Relation};

/// A solution of the max-min transport constraints between `μ` (rows) and `η` (columns).
///
/// Stored densely over `supp(μ) × supp(η)`; every entry outside that rectangle is zero
/// (the constraints force it).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransportMatrix {
    rows: Vec<StateId>,
    cols: Vec<StateId>,
    cells: Vec<Degree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no transport exists: heights {left} and {right} differ")]
pub struct InfeasibleTransport {
    pub left: Degree,
    pub right: Degree,
}

impl TransportMatrix {
    fn zeros(mu: &Distribution, eta: &Distribution) -> Self {
        let rows: Vec<StateId> = mu.support().collect();
        let cols: Vec<StateId> = eta.support().collect();
        let cells = vec![Degree::ZERO; rows.len() * cols.len()];
        TransportMatrix { rows, cols, cells }
    }

    /// `supp(μ)`, indexing the rows of [`TransportMatrix::cells`].
    pub fn rows(&self) -> &[StateId] {
        &self.rows
    }

    /// `supp(η)`, indexing the columns of [`TransportMatrix::cells`].
    pub fn cols(&self) -> &[StateId] {
        &self.cols
    }

    /// Row-major entries over `supp(μ) × supp(η)`.
    pub fn cells(&self) -> &[Degree] {
        &self.cells
    }

    /// `x(s, t)`; zero outside `supp(μ) × supp(η)`.
    pub fn get(&self, s: StateId, t: StateId) -> Degree {
        match (self.rows.binary_search(&s), self.cols.binary_search(&t)) {
            (Ok(i), Ok(j)) => self.cells[i * self.cols.len() + j],
            _ => Degree::ZERO,
        }
    }

    /// Nonzero entries `(s, t, x(s, t))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (StateId, StateId, Degree)> + '_ {
        let k = self.cols.len();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, &x)| (self.rows[i / k], self.cols[i % k], x))
    }

    /// Whether every row supremum equals `μ(s)` and every column supremum equals `η(t)`.
    pub fn satisfies(&self, mu: &Distribution, eta: &Distribution) -> bool {
        let k = self.cols.len();
        let rows_ok = mu.support().eq(self.rows.iter().copied())
            && self.rows.iter().enumerate().all(|(i, &s)| {
                self.cells[i * k..(i + 1) * k].iter().max().copied().unwrap_or(Degree::ZERO)
                    == mu.get(s)
            });
        let cols_ok = eta.support().eq(self.cols.iter().copied())
            && self.cols.iter().enumerate().all(|(j, &t)| {
                (0..self.rows.len())
                    .map(|i| self.cells[i * k + j])
                    .max()
                    .unwrap_or(Degree::ZERO)
                    == eta.get(t)
            });
        rows_ok && cols_ok
    }

    /// `max_{s,t} min(d(s, t), x(s, t))`.
    pub fn objective(&self, mut dist: impl FnMut(StateId, StateId) -> Degree) -> Degree {
        let k = self.cols.len();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, &x)| dist(self.rows[i / k], self.cols[i % k]).min(x))
            .max()
            .unwrap_or(Degree::ZERO)
    }
}

impl fmt::Debug for TransportMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries().map(|(s, t, x)| ((s, t), x)))
            .finish()
    }
}

/// A transport matrix exists exactly when the heights agree.
pub fn transport_feasible(mu: &Distribution, eta: &Distribution) -> bool {
    mu.height() == eta.height()
}

/// The explicit solution: pick `s'` and `t'` attaining the common height (the first in
/// state order), put `x(s, t') = μ(s)` and `x(s', t) = η(t)`, and zero elsewhere.
///
/// Identical arguments get the identity transport `x(s, s) = μ(s)` instead.
pub fn canonical_transport(
    mu: &Distribution,
    eta: &Distribution,
) -> Result<TransportMatrix, InfeasibleTransport> {
    let (hm, he) = (mu.height(), eta.height());
    if hm != he {
        return Err(InfeasibleTransport { left: hm, right: he });
    }
    let mut x = TransportMatrix::zeros(mu, eta);
    let k = x.cols.len();
    if mu == eta {
        for (i, (_, d)) in mu.iter().enumerate() {
            x.cells[i * k + i] = d;
        }
        return Ok(x);
    }
    // first maximum in state order
    let argmax = |d: &Distribution| d.iter().position(|e| e.1 == hm);
    if let (Some(si), Some(tj)) = (argmax(mu), argmax(eta)) {
        for (i, (_, d)) in mu.iter().enumerate() {
            x.cells[i * k + tj] = d;
        }
        for (j, (_, d)) in eta.iter().enumerate() {
            x.cells[si * k + j] = d;
        }
    }
    Ok(x)
}

/// Lifted distance `d̂(μ, η)` under a state metric.
pub fn lifted_distance(d: &StateMetric, mu: &Distribution, eta: &Distribution) -> Degree {
    lifted_distance_by(|s, t| d.get(s, t), mu, eta)
}

/// Lifted distance under an arbitrary state distance function.
///
/// By [`threshold_feasible`], `d̂(μ, η) ≤ c` holds iff every row `s` has a cell `t` with
/// `η(t) ≥ μ(s)` and `c ≥ d(s, t) ∧ μ(s)`, and symmetrically for columns. Each of these
/// conditions is a lower bound on `c`, so the least feasible `c` is the largest of them.
pub fn lifted_distance_by(
    mut dist: impl FnMut(StateId, StateId) -> Degree,
    mu: &Distribution,
    eta: &Distribution,
) -> Degree {
    if mu.height() != eta.height() {
        return Degree::ONE;
    }
    let mut worst = Degree::ZERO;
    for (s, m) in mu.iter() {
        let best = eta
            .iter()
            .filter(|&(_, e)| e >= m)
            .map(|(t, _)| dist(s, t).min(m))
            .min()
            .expect("equal heights leave every row a column to reach");
        worst = worst.max(best);
    }
    for (t, e) in eta.iter() {
        let best = mu
            .iter()
            .filter(|&(_, m)| m >= e)
            .map(|(s, _)| dist(s, t).min(e))
            .min()
            .expect("equal heights leave every column a row to reach");
        worst = worst.max(best);
    }
    worst
}

/// Decides whether `d̂(μ, η) ≤ c` for equal-height `μ`, `η`.
///
/// The capped maximal matrix `x*(s, t) = μ(s) ∧ η(t)` where `d(s, t) ≤ c` and
/// `μ(s) ∧ η(t) ∧ c` elsewhere has objective at most `c` and dominates every other matrix
/// with that property, so it meets the row and column suprema iff some such matrix does.
pub fn threshold_feasible(
    mut dist: impl FnMut(StateId, StateId) -> Degree,
    mu: &Distribution,
    eta: &Distribution,
    c: Degree,
) -> bool {
    if mu.height() != eta.height() {
        return false;
    }
    Capped::new(&mut dist, mu, eta).feasible(c)
}

// Inline capacities cover supports of up to 8 states without touching the heap.
type Row = SmallVec<[Degree; 8]>;

struct Capped {
    mu: Row,
    eta: Row,
    /// row-major `d(s, t)` over the supports
    dist: SmallVec<[Degree; 16]>,
}

impl Capped {
    fn new(
        dist: &mut impl FnMut(StateId, StateId) -> Degree,
        mu: &Distribution,
        eta: &Distribution,
    ) -> Self {
        let mut d = SmallVec::with_capacity(mu.support_len() * eta.support_len());
        for s in mu.support() {
            for t in eta.support() {
                d.push(dist(s, t));
            }
        }
        Capped {
            mu: mu.iter().map(|e| e.1).collect(),
            eta: eta.iter().map(|e| e.1).collect(),
            dist: d,
        }
    }

    /// Row `i` reaches `μ_i` iff some cell has `η_j ≥ μ_i` and is either uncapped
    /// (`d ≤ c`) or capped no lower than `μ_i` (`c ≥ μ_i`); columns likewise.
    fn feasible(&self, c: Degree) -> bool {
        let k = self.eta.len();
        let reaches = |i: usize, j: usize, target: Degree| {
            self.mu[i].min(self.eta[j]) == target && (self.dist[i * k + j] <= c || c >= target)
        };
        (0..self.mu.len()).all(|i| (0..k).any(|j| reaches(i, j, self.mu[i])))
            && (0..k).all(|j| (0..self.mu.len()).any(|i| reaches(i, j, self.eta[j])))
    }
}

/// Hausdorff distance between finite sets under `dist`, with the conventions
/// `H(∅, ∅) = 0` and distance 1 from a point to the empty set.
///
/// `dist` is evaluated once per pair `(a, b)` with `a ∈ A`, `b ∈ B` and is assumed symmetric.
pub fn hausdorff<T>(a: &[T], b: &[T], mut dist: impl FnMut(&T, &T) -> Degree) -> Degree {
    if a.is_empty() && b.is_empty() {
        return Degree::ZERO;
    }
    if a.is_empty() || b.is_empty() {
        return Degree::ONE;
    }
    let k = b.len();
    let mut m: SmallVec<[Degree; 16]> = SmallVec::with_capacity(a.len() * k);
    for x in a {
        for y in b {
            m.push(dist(x, y));
        }
    }
    let row_side = (0..a.len())
        .map(|i| m[i * k..(i + 1) * k].iter().min().copied().unwrap_or(Degree::ONE))
        .max()
        .unwrap_or(Degree::ZERO);
    let col_side = (0..k)
        .map(|j| (0..a.len()).map(|i| m[i * k + j]).min().unwrap_or(Degree::ONE))
        .max()
        .unwrap_or(Degree::ZERO);
    row_side.max(col_side)
}

/// `(μ, η)` is in the lifting of the equivalence whose classes are `partition`:
/// `μ(C) = η(C)` for every block `C`.
pub fn lifted_relation_contains(partition: &Partition, mu: &Distribution, eta: &Distribution) -> bool {
    class_heights(partition, mu) == class_heights(partition, eta)
}

/// `μ(C)` for every block `C`, in block order.
pub fn class_heights(partition: &Partition, mu: &Distribution) -> Vec<Degree> {
    let mut h = vec![Degree::ZERO; partition.num_blocks()];
    for (s, d) in mu.iter() {
        let b = partition.block_of(s);
        h[b] = h[b].max(d);
    }
    h
}

/// Whether a weight function exists whose row suprema are `μ`, column suprema are `η`,
/// and whose support lies inside `relation`.
///
/// The candidate `w(s, t) = μ(s) ∧ η(t)` on `relation` (0 elsewhere) dominates every
/// admissible weight function, so it suffices to test it.
pub fn weight_function_exists(relation: &Relation, mu: &Distribution, eta: &Distribution) -> bool {
    let rows_ok = mu.iter().all(|(s, ms)| {
        eta.iter()
            .any(|(t, et)| relation.contains(s, t) && ms.min(et) == ms)
    });
    let cols_ok = eta.iter().all(|(t, et)| {
        mu.iter()
            .any(|(s, ms)| relation.contains(s, t) && ms.min(et) == et)
    });
    rows_ok && cols_ok
}

/// Exhaustive search over transport matrices, for cross-checking [`lifted_distance`].
pub mod oracle {
    use super::*;

    /// Largest `|supp(μ) ∪ supp(η)|` the oracle accepts.
    pub const MAX_COMBINED_SUPPORT: usize = 5;

    #[derive(Debug, Clone, PartialEq, Eq, Error)]
    #[error("combined support of {0} states exceeds the oracle limit of {MAX_COMBINED_SUPPORT}")]
    pub struct InstanceTooLarge(pub usize);

    /// All transport matrices between `μ` and `η` with entries drawn from
    /// `{0} ∪ {μ(s)} ∪ {η(t)}`, which contains an optimal solution whenever one exists.
    ///
    /// Cells outside `supp(μ) × supp(η)` are forced to zero by the constraints, and a cell
    /// above `μ(s) ∧ η(t)` would break them, so only values below that bound are tried.
    pub struct TransportEnumeration {
        rows: Vec<StateId>,
        cols: Vec<StateId>,
        eta: Vec<Degree>,
        /// every row vector (over `supp(η)`) whose supremum is `μ(s)`
        row_options: Vec<Vec<Vec<Degree>>>,
    }

    impl TransportEnumeration {
        pub fn new(mu: &Distribution, eta: &Distribution) -> Result<Self, InstanceTooLarge> {
            let combined = mu.support().chain(eta.support()).collect::<std::collections::BTreeSet<_>>();
            if combined.len() > MAX_COMBINED_SUPPORT {
                return Err(InstanceTooLarge(combined.len()));
            }
            let mut values: Vec<Degree> = std::iter::once(Degree::ZERO)
                .chain(mu.iter().map(|e| e.1))
                .chain(eta.iter().map(|e| e.1))
                .collect();
            values.sort_unstable();
            values.dedup();

            let eta_vals: Vec<Degree> = eta.iter().map(|e| e.1).collect();
            let row_options = mu
                .iter()
                .map(|(_, ms)| {
                    let mut out = Vec::new();
                    let mut current = Vec::with_capacity(eta_vals.len());
                    row_vectors(&values, ms, &eta_vals, &mut current, &mut out);
                    out
                })
                .collect();
            Ok(TransportEnumeration {
                rows: mu.support().collect(),
                cols: eta.support().collect(),
                eta: eta_vals,
                row_options,
            })
        }

        /// Visits every feasible matrix (row-major cells over the supports).
        fn search(&self, visit: &mut dyn FnMut(&[Degree])) {
            let k = self.cols.len();
            let mut cells = Vec::with_capacity(self.rows.len() * k);
            self.descend(0, &mut cells, visit);
        }

        fn descend(&self, row: usize, cells: &mut Vec<Degree>, visit: &mut dyn FnMut(&[Degree])) {
            let k = self.cols.len();
            if row == self.rows.len() {
                let cols_ok = (0..k).all(|j| {
                    (0..self.rows.len())
                        .map(|i| cells[i * k + j])
                        .max()
                        .unwrap_or(Degree::ZERO)
                        == self.eta[j]
                });
                if cols_ok {
                    visit(cells);
                }
                return;
            }
            for option in &self.row_options[row] {
                cells.extend_from_slice(option);
                self.descend(row + 1, cells, visit);
                cells.truncate(row * k);
            }
        }

        /// Every feasible matrix.
        pub fn feasible_matrices(&self) -> Vec<TransportMatrix> {
            let mut out = Vec::new();
            self.search(&mut |cells| {
                out.push(TransportMatrix {
                    rows: self.rows.clone(),
                    cols: self.cols.clone(),
                    cells: cells.to_vec(),
                })
            });
            out
        }

        pub fn has_feasible(&self) -> bool {
            let mut found = false;
            self.search(&mut |_| found = true);
            found
        }

        /// Minimum objective over all feasible matrices, `None` when there are none.
        pub fn min_objective(&self, mut dist: impl FnMut(StateId, StateId) -> Degree) -> Option<Degree> {
            let d: Vec<Degree> = self
                .rows
                .iter()
                .flat_map(|&s| self.cols.iter().map(move |&t| (s, t)))
                .map(|(s, t)| dist(s, t))
                .collect();
            let mut best: Option<Degree> = None;
            self.search(&mut |cells| {
                let value = cells
                    .iter()
                    .zip(&d)
                    .map(|(x, dd)| x.min(dd))
                    .max()
                    .copied()
                    .unwrap_or(Degree::ZERO);
                if best.is_none_or(|b| value < b) {
                    best = Some(value);
                }
            });
            best
        }
    }

    fn row_vectors(
        values: &[Degree],
        row_sup: Degree,
        eta: &[Degree],
        current: &mut Vec<Degree>,
        out: &mut Vec<Vec<Degree>>,
    ) {
        let j = current.len();
        if j == eta.len() {
            if current.iter().max().copied().unwrap_or(Degree::ZERO) == row_sup {
                out.push(current.clone());
            }
            return;
        }
        let cap = row_sup.min(eta[j]);
        for &v in values.iter().take_while(|&&v| v <= cap) {
            current.push(v);
            row_vectors(values, row_sup, eta, current, out);
            current.pop();
        }
    }

    /// `d̂(μ, η)` by exhaustive enumeration; 1 on a height mismatch.
    pub fn lifted_distance_bruteforce(
        d: &StateMetric,
        mu: &Distribution,
        eta: &Distribution,
    ) -> Result<Degree, InstanceTooLarge> {
        lifted_distance_bruteforce_by(|s, t| d.get(s, t), mu, eta)
    }

    pub fn lifted_distance_bruteforce_by(
        dist: impl FnMut(StateId, StateId) -> Degree,
        mu: &Distribution,
        eta: &Distribution,
    ) -> Result<Degree, InstanceTooLarge> {
        let search = TransportEnumeration::new(mu, eta)?;
        if mu.height() != eta.height() {
            return Ok(Degree::ONE);
        }
        Ok(search.min_objective(dist).unwrap_or(Degree::ONE))
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::degree::deg;
    use proptest::prelude::*;

    // Example universe S = {s, t} with s = 0, t = 1.
    fn mu() -> Distribution {
        Distribution::from_pairs([(0, deg("0.9")), (1, deg("0.3"))])
    }
    fn eta() -> Distribution {
        Distribution::from_pairs([(0, deg("1")), (1, deg("0.5"))])
    }
    fn theta() -> Distribution {
        Distribution::from_pairs([(0, deg("0.9")), (1, deg("0.5"))])
    }

    #[test]
    fn feasibility_follows_heights() {
        assert!(!transport_feasible(&mu(), &eta()));
        assert!(transport_feasible(&mu(), &theta()));
        assert!(transport_feasible(&Distribution::empty(), &Distribution::empty()));
        assert!(canonical_transport(&mu(), &eta()).is_err());
    }

    #[test]
    fn canonical_transport_examples() {
        let x = canonical_transport(&mu(), &theta()).unwrap();
        assert_eq!(
            [x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1)],
            [deg("0.9"), deg("0.5"), deg("0.3"), Degree::ZERO]
        );
        assert!(x.satisfies(&mu(), &theta()));

        let id = canonical_transport(&mu(), &mu()).unwrap();
        assert_eq!(
            id.entries().collect::<Vec<_>>(),
            vec![(0, 0, deg("0.9")), (1, 1, deg("0.3"))]
        );

        let empty = canonical_transport(&Distribution::empty(), &Distribution::empty()).unwrap();
        assert_eq!(empty.entries().count(), 0);
        assert!(empty.satisfies(&Distribution::empty(), &Distribution::empty()));
    }

    #[test]
    fn lifted_distance_examples_under_discrete_metric() {
        let d = StateMetric::discrete(2);
        assert_eq!(lifted_distance(&d, &mu(), &eta()), Degree::ONE);
        assert_eq!(lifted_distance(&d, &mu(), &theta()), deg("0.5"));
        assert_eq!(lifted_distance(&d, &theta(), &mu()), deg("0.5"));
        assert_eq!(lifted_distance(&d, &eta(), &theta()), Degree::ONE);
        for x in [mu(), eta(), theta()] {
            assert_eq!(lifted_distance(&d, &x, &x), Degree::ZERO);
        }
        assert_eq!(lifted_distance(&StateMetric::top(2), &mu(), &theta()), Degree::ZERO);
    }

    #[test]
    fn bruteforce_examples() {
        let d = StateMetric::discrete(2);
        assert_eq!(lifted_distance_bruteforce(&d, &mu(), &theta()), Ok(deg("0.5")));
        assert_eq!(lifted_distance_bruteforce(&d, &mu(), &mu()), Ok(Degree::ZERO));
        assert_eq!(lifted_distance_bruteforce(&d, &mu(), &eta()), Ok(Degree::ONE));
        let wide = Distribution::from_pairs((0..6).map(|s| (s, Degree::ONE)));
        assert_eq!(
            lifted_distance_bruteforce(&StateMetric::discrete(6), &wide, &wide),
            Err(InstanceTooLarge(6))
        );
    }

    #[test]
    fn hausdorff_conventions() {
        let d = |a: &Distribution, b: &Distribution| lifted_distance(&StateMetric::discrete(2), a, b);
        assert_eq!(hausdorff::<Distribution>(&[], &[], d), Degree::ZERO);
        assert_eq!(hausdorff(&[mu()], &[], d), Degree::ONE);
        assert_eq!(hausdorff(&[], &[mu()], d), Degree::ONE);
        assert_eq!(hausdorff(&[mu()], &[theta()], d), deg("0.5"));
        // {μ, θ} vs {θ}: μ's nearest is θ at 0.5
        assert_eq!(hausdorff(&[mu(), theta()], &[theta()], d), deg("0.5"));
    }

    #[test]
    fn relation_lifting_examples() {
        let one = Partition::single_block(2);
        let all = Partition::singletons(2);
        assert!(lifted_relation_contains(&all, &mu(), &mu()));
        assert!(!lifted_relation_contains(&all, &mu(), &theta()));
        assert!(lifted_relation_contains(&one, &mu(), &theta()));

        assert!(weight_function_exists(&Relation::identity(2), &mu(), &mu()));
        assert!(!weight_function_exists(&Relation::new(2), &mu(), &theta()));
        assert!(weight_function_exists(&Relation::new(2), &Distribution::empty(), &Distribution::empty()));
    }

    fn grid() -> impl Strategy<Value = Degree> {
        (0i64..=4).prop_map(|k| Degree::new(k, 4).unwrap())
    }

    fn dist(n: usize) -> impl Strategy<Value = Distribution> {
        proptest::collection::vec(grid(), n)
            .prop_map(|v| Distribution::from_pairs(v.into_iter().enumerate()))
    }

    /// Random 3-state ultrametric: minimax closure of random edge weights.
    fn ultrametric() -> impl Strategy<Value = StateMetric> {
        proptest::collection::vec(grid(), 3).prop_map(|w| {
            let mut d = StateMetric::from_fn(3, |s, t| w[s + t - 1]);
            for k in 0..3 {
                for s in 0..3 {
                    for t in 0..3 {
                        let via = d.get(s, k).max(d.get(k, t));
                        if s != t && via < d.get(s, t) {
                            d.set(s, t, via);
                        }
                    }
                }
            }
            d
        })
    }

    proptest! {
        #[test]
        fn canonical_transport_is_feasible(m in dist(3), e in dist(3)) {
            match canonical_transport(&m, &e) {
                Ok(x) => prop_assert!(x.satisfies(&m, &e)),
                Err(_) => prop_assert!(!transport_feasible(&m, &e)),
            }
            let search = TransportEnumeration::new(&m, &e).unwrap();
            prop_assert_eq!(search.has_feasible(), transport_feasible(&m, &e));
        }

        #[test]
        fn threshold_test_matches_bruteforce(d in ultrametric(), m in dist(3), e in dist(3)) {
            prop_assume!(m.height() == e.height());
            let opt = lifted_distance_bruteforce(&d, &m, &e).unwrap();
            for k in 0..=4 {
                let c = Degree::new(k, 4).unwrap();
                prop_assert_eq!(threshold_feasible(|s, t| d.get(s, t), &m, &e, c), opt <= c);
            }
            prop_assert_eq!(lifted_distance(&d, &m, &e), opt);
        }

        #[test]
        fn anti_monotone_in_the_metric(d in ultrametric(), m in dist(3), e in dist(3)) {
            // d ⪯ ⊤ and d ⪯ discrete-with-d; compare against ⊤
            prop_assert!(lifted_distance(&d, &m, &e) >= lifted_distance(&StateMetric::top(3), &m, &e));
            prop_assert!(lifted_distance(&StateMetric::discrete(3), &m, &e) >= lifted_distance(&d, &m, &e));
        }

        #[test]
        fn weight_function_matches_class_heights(keys in proptest::collection::vec(0usize..3, 3), m in dist(3), e in dist(3)) {
            let p = Partition::from_keys(&keys);
            prop_assert_eq!(
                weight_function_exists(&p.to_relation(), &m, &e),
                lifted_relation_contains(&p, &m, &e)
            );
        }
    }
}
