//! Total maps on a finite state set.
//!
//! Composition follows the right-action convention used throughout the crate:
//! `s.then(&t)` applies `s` first, so the transformation of a word `uv` is
//! `pi(u).then(&pi(v))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Box<[u32]>);

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&q| q >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "image {bad} out of range for {n} states"
            )));
        }
        Ok(Self(images.into_iter().map(|q| q as u32).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    pub fn constant(n: usize, target: usize) -> Self {
        assert!(target < n, "constant target out of range");
        Self(vec![target as u32; n].into_boxed_slice())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn image(&self, q: usize) -> usize {
        self.0[q] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&q| q as usize)
    }

    /// `self` followed by `other`: `q -> other(self(q))`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().map(|&q| other.0[q as usize]).collect())
    }

    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.then(other))
    }

    /// Number of distinct images, `|Q . u|`.
    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut rank = 0;
        for &q in self.0.iter() {
            if !std::mem::replace(&mut seen[q as usize], true) {
                rank += 1;
            }
        }
        rank
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.iter().all(|&q| self.0[q as usize] == q)
    }

    /// The kernel `{(p, q) : p.u = q.u}` as a canonical partition.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(self.images().collect())
    }

    /// Whether every block of `partition` is mapped to a single state.
    pub fn collapses(&self, partition: &Partition) -> bool {
        let mut target = vec![u32::MAX; self.len()];
        for (q, &img) in self.0.iter().enumerate() {
            let block = partition.label(q);
            if target[block] == u32::MAX {
                target[block] = img;
            } else if target[block] != img {
                return false;
            }
        }
        true
    }

    /// Whether the image `Q . u` lies inside a single block of `partition`.
    pub fn image_within_block(&self, partition: &Partition) -> bool {
        let first = partition.label(self.0[0] as usize);
        self.0.iter().all(|&q| partition.label(q as usize) == first)
    }

    /// Bit mask of the image set; only meaningful for at most 64 states.
    pub fn image_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &q| acc | 1 << q)
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
