//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use ftsdist_core::{Degree, Distribution, Fts, StateMetric};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{0, 1/k, ..., 1}`.
pub fn grid(k: i64) -> Vec<Degree> {
    (0..=k).map(|i| Degree::new(i, k).unwrap()).collect()
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

pub fn random_distribution(rng: &mut impl Rng, n: usize, degrees: &[Degree]) -> Distribution {
    Distribution::from_pairs((0..n).map(|s| (s, *degrees.choose(rng).unwrap())))
}

/// Like [`random_distribution`] but with a nonempty support.
pub fn random_nonempty(rng: &mut impl Rng, n: usize, degrees: &[Degree]) -> Distribution {
    loop {
        let mu = random_distribution(rng, n, degrees);
        if !mu.is_empty() {
            return mu;
        }
    }
}

/// Up to `max_alts` alternatives per (state, label); sparse supports keep the systems
/// varied enough that bisimilar pairs show up regularly.
pub fn random_fts(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    degrees: &[Degree],
    max_alts: usize,
) -> Fts {
    let mut transitions = Vec::new();
    for s in 0..n {
        for a in 0..m {
            for _ in 0..rng.random_range(0..=max_alts) {
                let mu = Distribution::from_pairs((0..n).map(|t| {
                    if rng.random_bool(0.5) {
                        (t, *degrees.choose(rng).unwrap())
                    } else {
                        (t, Degree::ZERO)
                    }
                }));
                transitions.push((s, a, mu));
            }
        }
    }
    let labels = (0..m).map(|a| ((b'a' + a as u8) as char).to_string()).collect();
    Fts::new(names(n), labels, transitions).unwrap()
}

/// Largest pseudo-ultrametric below the symmetric matrix `w`: `d(s, t)` is the least
/// over paths from `s` to `t` of the largest step (Floyd-Warshall in the (min, max)
/// semiring).
pub fn subdominant_ultrametric(w: &[Vec<Degree>]) -> StateMetric {
    let n = w.len();
    let mut d = w.to_vec();
    for (s, row) in d.iter_mut().enumerate() {
        row[s] = Degree::ZERO;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].max(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    StateMetric::from_fn(n, |s, t| d[s][t])
}

pub fn random_ultrametric(rng: &mut impl Rng, n: usize, degrees: &[Degree]) -> StateMetric {
    let mut w = vec![vec![Degree::ZERO; n]; n];
    for s in 0..n {
        for t in s + 1..n {
            let v = *degrees.choose(rng).unwrap();
            w[s][t] = v;
            w[t][s] = v;
        }
    }
    subdominant_ultrametric(&w)
}

/// A pseudo-ultrametric `d1` with `d1 ⪯ d`, i.e. `d1 ≥ d` pointwise.
pub fn random_ultrametric_below(rng: &mut impl Rng, d: &StateMetric, degrees: &[Degree]) -> StateMetric {
    let n = d.len();
    let mut w = vec![vec![Degree::ZERO; n]; n];
    for s in 0..n {
        for t in s + 1..n {
            let v = d.get(s, t).max(*degrees.choose(rng).unwrap());
            w[s][t] = v;
            w[t][s] = v;
        }
    }
    subdominant_ultrametric(&w)
}
