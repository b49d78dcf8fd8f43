//! Equivalence relations on `0..n` in least-representative form.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// A partition of `0..n` stored as `labels[q]` = least state of the block of `q`.
///
/// Two partitions are equal exactly when their label vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling: states with equal labels share a block.
    pub fn from_labels<L: Eq + std::hash::Hash>(raw: Vec<L>) -> Self {
        let mut first: HashMap<L, usize> = HashMap::with_capacity(raw.len());
        let labels = raw
            .into_iter()
            .enumerate()
            .map(|(q, l)| *first.entry(l).or_insert(q))
            .collect();
        Self { labels }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &q in block {
                if q >= n {
                    return Err(Error::InvalidAutomaton(format!(
                        "state {q} out of range for {n} states"
                    )));
                }
                if owner[q] != usize::MAX {
                    return Err(Error::InvalidAutomaton(format!(
                        "state {q} listed in two blocks"
                    )));
                }
                owner[q] = i;
            }
        }
        // unlisted states become singletons
        let raw = owner
            .iter()
            .enumerate()
            .map(|(q, &o)| if o == usize::MAX { blocks.len() + q } else { o })
            .collect();
        Ok(Self::from_labels(raw))
    }

    pub(crate) fn from_union_find(n: usize, uf: &mut UnionFind<usize>) -> Self {
        Self::from_labels((0..n).map(|q| uf.find_mut(q)).collect())
    }

    /// The identity relation.
    pub fn discrete(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
        }
    }

    /// The universal relation.
    pub fn full(n: usize) -> Self {
        Self { labels: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, q: usize) -> usize {
        self.labels[q]
    }

    #[inline]
    pub fn related(&self, p: usize, q: usize) -> bool {
        self.labels[p] == self.labels[q]
    }

    pub fn is_discrete(&self) -> bool {
        self.labels.iter().enumerate().all(|(q, &l)| q == l)
    }

    pub fn is_full(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// Least representatives of the blocks, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(q, &l)| q == l)
            .map(|(q, _)| q)
            .collect()
    }

    pub fn block_count(&self) -> usize {
        self.representatives().len()
    }

    /// Blocks ordered by least representative, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let index = self.block_index();
        let mut blocks = vec![Vec::new(); self.block_count()];
        for q in 0..self.len() {
            blocks[index[q]].push(q);
        }
        blocks
    }

    /// Maps each state to the position of its block in [`Partition::blocks`].
    pub fn block_index(&self) -> Vec<usize> {
        let mut position = vec![usize::MAX; self.len()];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.labels {
            if position[l] == usize::MAX {
                position[l] = next;
                next += 1;
            }
            out.push(position[l]);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks().iter().map(Vec::len).collect()
    }

    /// `self ⊆ other` as relations, i.e. `self` refines `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.labels
            .iter()
            .enumerate()
            .all(|(q, &l)| other.labels[q] == other.labels[l])
    }

    fn check_size(&self, other: &Partition) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Common refinement (intersection of relations).
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        Ok(Self::from_labels(
            self.labels.iter().copied().zip(other.labels.iter().copied()).collect(),
        ))
    }

    /// Least equivalence containing both relations. Not action-closed.
    pub fn equivalence_join(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for q in 0..n {
            uf.union(q, self.labels[q]);
            uf.union(q, other.labels[q]);
        }
        Ok(Self::from_union_find(n, &mut uf))
    }
}

impl fmt::Display for Partition {
    /// `{0,1}{2}{3}` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{{")?;
            for (i, q) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{q}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels_use_least_representative() {
        let p = Partition::from_labels(vec!['x', 'y', 'x', 'z']);
        assert_eq!(p.labels(), &[0, 1, 0, 3]);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.block_index(), vec![0, 1, 0, 2]);
        assert_eq!(p.to_string(), "{0,2}{1}{3}");
    }

    #[test]
    fn from_blocks_fills_singletons() {
        let p = Partition::from_blocks(4, &[vec![1, 3]]).unwrap();
        assert_eq!(p.labels(), &[0, 1, 2, 1]);
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn meet_and_join_of_partitions() {
        let a = Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Partition::from_blocks(4, &[vec![1, 2]]).unwrap();
        assert!(a.meet(&b).unwrap().is_discrete());
        assert!(a.equivalence_join(&b).unwrap().is_full());
        assert!(Partition::discrete(4).refines(&a));
        assert!(a.refines(&Partition::full(4)));
        assert!(!a.refines(&b));
        assert!(a.meet(&Partition::full(3)).is_err());
    }
}
