//! Partitions of the state set and binary relations on it.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use thiserror::Error;

use crate::distribution::StateId;

const SMALL: usize = 16;

/// Disjoint nonempty blocks covering `0..n`.
///
/// Always in canonical form: members ascend within a block and blocks are ordered by
/// their least member, so structural equality is equality of equivalence relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<StateId>>,
    block_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("state {0} appears in more than one block")]
    Overlap(StateId),
    #[error("state {0} is not covered by any block")]
    Uncovered(StateId),
    #[error("state {0} is out of range")]
    OutOfRange(StateId),
    #[error("blocks must be nonempty")]
    EmptyBlock,
}

impl Partition {
    /// `{S}`.
    pub fn single_block(n: usize) -> Self {
        Self::from_keys(&vec![(); n])
    }

    /// `{{s} : s ∈ S}`.
    pub fn singletons(n: usize) -> Self {
        Self::from_keys(&(0..n).collect::<Vec<_>>())
    }

    /// Groups states with equal keys: `keys[s]` is the key of state `s`.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut ids: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        let mut block_of = Vec::with_capacity(keys.len());
        for (s, k) in keys.iter().enumerate() {
            // a linear scan over block leaders beats hashing for small state sets
            let b = if keys.len() <= SMALL {
                blocks.iter().position(|b| &keys[b[0]] == k).unwrap_or(blocks.len())
            } else {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            };
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(s);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    /// Checks disjointness and coverage of `0..n`, then canonicalizes.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<StateId>>) -> Result<Self, PartitionError> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &s in block {
                if s >= n {
                    return Err(PartitionError::OutOfRange(s));
                }
                if owner[s] != usize::MAX {
                    return Err(PartitionError::Overlap(s));
                }
                owner[s] = b;
            }
        }
        if let Some(s) = owner.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Uncovered(s));
        }
        Ok(Self::from_keys(&owner))
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    /// Index of the block containing `s`.
    pub fn block_of(&self, s: StateId) -> usize {
        self.block_of[s]
    }

    pub fn same_block(&self, s: StateId, t: StateId) -> bool {
        self.block_of[s] == self.block_of[t]
    }

    /// Per-state block index; `block_ids()[s] == block_of(s)`.
    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    /// The equivalence relation whose classes are the blocks.
    pub fn to_relation(&self) -> Relation {
        let mut r = Relation::new(self.num_states());
        for block in &self.blocks {
            for &s in block {
                for &t in block {
                    r.insert(s, t);
                }
            }
        }
        r
    }

    /// Every partition of `0..n` (restricted growth strings), in a fixed order.
    pub fn enumerate_all(n: usize) -> Vec<Partition> {
        fn go(n: usize, prefix: &mut Vec<usize>, max: usize, out: &mut Vec<Partition>) {
            if prefix.len() == n {
                out.push(Partition::from_keys(prefix));
                return;
            }
            let limit = if prefix.is_empty() { 0 } else { max + 1 };
            for b in 0..=limit {
                prefix.push(b);
                go(n, prefix, max.max(b), out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::with_capacity(n), 0, &mut out);
        out
    }
}

/// A binary relation on states `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    pairs: BTreeSet<(StateId, StateId)>,
}

/// Which equivalence axiom a relation breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("not reflexive: ({0}, {0}) is missing")]
    Reflexivity(StateId),
    #[error("not symmetric: ({0}, {1}) is present but ({1}, {0}) is not")]
    Symmetry(StateId, StateId),
    #[error("not transitive: ({0}, {1}) and ({1}, {2}) are present but ({0}, {2}) is not")]
    Transitivity(StateId, StateId, StateId),
    #[error("pair mentions state {0}, outside 0..{1}")]
    OutOfRange(StateId, usize),
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::new(n);
        for s in 0..n {
            r.insert(s, s);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut r = Self::new(n);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    pub fn insert(&mut self, s: StateId, t: StateId) {
        self.pairs.insert((s, t));
    }

    pub fn contains(&self, s: StateId, t: StateId) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.pairs.iter().copied()
    }

    /// Checks reflexivity, symmetry and transitivity, in that order.
    pub fn check_equivalence(&self) -> Result<(), RelationError> {
        if let Some(&(s, t)) = self.pairs.iter().find(|p| p.0 >= self.n || p.1 >= self.n) {
            return Err(RelationError::OutOfRange(s.max(t), self.n));
        }
        if let Some(s) = (0..self.n).find(|&s| !self.contains(s, s)) {
            return Err(RelationError::Reflexivity(s));
        }
        if let Some(&(s, t)) = self.pairs.iter().find(|p| !self.contains(p.1, p.0)) {
            return Err(RelationError::Symmetry(s, t));
        }
        for &(s, t) in &self.pairs {
            for u in 0..self.n {
                if self.contains(t, u) && !self.contains(s, u) {
                    return Err(RelationError::Transitivity(s, t, u));
                }
            }
        }
        Ok(())
    }

    /// The classes `S/R` of an equivalence relation.
    pub fn classes(&self) -> Result<Partition, RelationError> {
        self.check_equivalence()?;
        let keys: Vec<StateId> = (0..self.n)
            .map(|s| (0..self.n).find(|&t| self.contains(s, t)).unwrap_or(s))
            .collect();
        Ok(Partition::from_keys(&keys))
    }
}
