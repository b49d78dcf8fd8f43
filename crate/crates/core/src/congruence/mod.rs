//! Action-stable partitions of the state set.

mod lattice;
mod pairs;

pub use lattice::{congruence_lattice, lattice_height, CongruenceLattice};
pub use pairs::{atoms, PairsDigraph};

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

use petgraph::unionfind::UnionFind;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sync::pair_slot;

/// A partition of the states that is stable under every letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence(Partition);

impl Congruence {
    /// Validates `partition` against `a`.
    pub fn new(a: &Automaton, partition: Partition) -> Result<Self> {
        if partition.len() != a.states() {
            return Err(Error::SizeMismatch {
                expected: a.states(),
                found: partition.len(),
            });
        }
        if !is_congruence(a, &partition) {
            return Err(Error::NotACongruence);
        }
        Ok(Self(partition))
    }

    /// For partitions already known to be action-stable.
    pub(crate) fn new_unchecked(partition: Partition) -> Self {
        Self(partition)
    }

    pub fn identity(n: usize) -> Self {
        Self(Partition::discrete(n))
    }

    pub fn universal(n: usize) -> Self {
        Self(Partition::full(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    /// Neither the identity nor the universal relation.
    pub fn is_nontrivial(&self) -> bool {
        !self.is_discrete() && !self.is_full()
    }

    pub fn min_block_size(&self) -> usize {
        self.block_sizes().into_iter().min().unwrap_or(0)
    }

    /// Intersection; always a congruence.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        Ok(Self(self.0.meet(&other.0)?))
    }

    /// Least congruence of `a` containing both.
    pub fn join(&self, a: &Automaton, other: &Congruence) -> Result<Congruence> {
        if self.len() != a.states() || other.len() != a.states() {
            return Err(Error::SizeMismatch {
                expected: a.states(),
                found: if self.len() != a.states() {
                    self.len()
                } else {
                    other.len()
                },
            });
        }
        let pairs = (0..a.states())
            .flat_map(|q| [(q, self.label(q)), (q, other.label(q))])
            .filter(|(p, q)| p != q);
        Ok(congruence_closure(a, pairs))
    }
}

impl Deref for Congruence {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence({})", self.0)
    }
}

/// Whether related states stay related under every letter.
pub fn is_congruence(a: &Automaton, partition: &Partition) -> bool {
    if partition.len() != a.states() {
        return false;
    }
    // comparing each state with its block representative suffices
    a.letter_transformations().iter().all(|t| {
        (0..a.states()).all(|q| partition.related(t.image(q), t.image(partition.label(q))))
    })
}

/// Least congruence containing the given pairs (union-find with action propagation).
pub fn congruence_closure(
    a: &Automaton,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Congruence {
    let n = a.states();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for (p, q) in pairs {
        if uf.union(p, q) {
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        for t in a.letter_transformations() {
            let (s, r) = (t.image(p), t.image(q));
            if uf.union(s, r) {
                queue.push_back((s, r));
            }
        }
    }
    Congruence(Partition::from_union_find(n, &mut uf))
}

/// Least congruence relating `p` and `q`.
///
/// Collects every 2-set image `{p, q} . w`, then takes the equivalence closure.
pub fn principal_congruence(a: &Automaton, p: usize, q: usize) -> Result<Congruence> {
    let n = a.states();
    if p >= n || q >= n {
        return Err(Error::Precondition(format!("state out of range for {n} states")));
    }
    if p == q {
        return Err(Error::DegeneratePair(p));
    }
    let mut seen = vec![false; n * n];
    seen[pair_slot(n, p, q)] = true;
    let mut queue = VecDeque::from([(p, q)]);
    let mut uf = UnionFind::new(n);
    while let Some((s, t)) = queue.pop_front() {
        uf.union(s, t);
        for x in 0..a.num_letters() {
            let (s2, t2) = (a.step(s, x), a.step(t, x));
            if s2 != t2 && !std::mem::replace(&mut seen[pair_slot(n, s2, t2)], true) {
                queue.push_back((s2, t2));
            }
        }
    }
    Ok(Congruence(Partition::from_union_find(n, &mut uf)))
}

/// The quotient `a / s`: states are the blocks of `s` ordered by least representative.
///
/// Also returns the map from states of `a` to states of the quotient.
pub fn quotient(a: &Automaton, s: &Congruence) -> Result<(Automaton, Vec<usize>)> {
    if s.len() != a.states() {
        return Err(Error::SizeMismatch {
            expected: a.states(),
            found: s.len(),
        });
    }
    if !is_congruence(a, s) {
        return Err(Error::NotACongruence);
    }
    let class = s.block_index();
    let reps = s.representatives();
    let rows = a
        .letter_transformations()
        .iter()
        .map(|t| reps.iter().map(|&r| class[t.image(r)]).collect())
        .collect();
    let q = Automaton::new(reps.len(), a.letter_names().to_vec(), rows)?;
    Ok((q, class))
}

/// Lifts a congruence `r` of `a / s` back to `a`: `p ~ q` iff their blocks are `r`-related.
pub fn lift_congruence(a: &Automaton, s: &Congruence, r: &Congruence) -> Result<Congruence> {
    if s.len() != a.states() {
        return Err(Error::SizeMismatch {
            expected: a.states(),
            found: s.len(),
        });
    }
    if r.len() != s.block_count() {
        return Err(Error::SizeMismatch {
            expected: s.block_count(),
            found: r.len(),
        });
    }
    let class = s.block_index();
    let labels = (0..a.states()).map(|q| r.label(class[q])).collect();
    Congruence::new(a, Partition::from_labels(labels))
}
