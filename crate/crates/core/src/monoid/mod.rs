//! Transition monoids, their ideals and Rees-quotient arithmetic.
//!
//! Elements are numbered in breadth-first discovery order from the identity,
//! trying letters in alphabet order. Element `0` is the identity and every
//! element's witness is its shortest, then least, word.

mod ideal;
mod jclass;

pub use ideal::{
    induced_morphism, is_nilpotent_mod, principal_ideal, syn_ideal, syn_quotient_ideal,
    zero_minimal_ideals, ElementSet, InducedMorphism, MonoidIdeal,
};
pub use jclass::JClasses;

use std::collections::VecDeque;
use std::sync::OnceLock;

use indexmap::IndexSet;

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::transformation::Transformation;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug)]
pub struct TransitionMonoid {
    n: usize,
    generators: Vec<Transformation>,
    elements: IndexSet<Transformation>,
    parent: Vec<(u32, u32)>,
    depth: Vec<u32>,
    right: Vec<u32>,
    left: OnceLock<Vec<u32>>,
    jclasses: OnceLock<JClasses>,
}

/// Enumerates `M(a)` with the default cap.
pub fn enumerate_monoid(a: &Automaton) -> Result<TransitionMonoid> {
    TransitionMonoid::enumerate(a, crate::Limits::default().max_monoid)
}

impl TransitionMonoid {
    pub fn enumerate(a: &Automaton, max_elements: usize) -> Result<Self> {
        let n = a.states();
        let k = a.num_letters();
        let generators = a.letter_transformations().to_vec();
        let mut elements = IndexSet::new();
        elements.insert(Transformation::identity(n));
        let mut parent = vec![(NO_PARENT, NO_PARENT)];
        let mut depth = vec![0u32];
        let mut right = Vec::new();
        let mut cursor = 0;
        while cursor < elements.len() {
            for (x, g) in generators.iter().enumerate() {
                let next = elements[cursor].then(g);
                let (id, fresh) = elements.insert_full(next);
                if fresh {
                    if elements.len() > max_elements {
                        return Err(Error::CapExceeded {
                            what: "transition monoid",
                            cap: max_elements,
                        });
                    }
                    parent.push((cursor as u32, x as u32));
                    depth.push(depth[cursor] + 1);
                }
                right.push(id as u32);
            }
            cursor += 1;
        }
        debug_assert_eq!(right.len(), elements.len() * k);
        Ok(Self {
            n,
            generators,
            elements,
            parent,
            depth,
            right,
            left: OnceLock::new(),
            jclasses: OnceLock::new(),
        })
    }

    /// Number of states of the underlying automaton.
    pub fn states(&self) -> usize {
        self.n
    }

    pub fn num_letters(&self) -> usize {
        self.generators.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, id: usize) -> &Transformation {
        &self.elements[id]
    }

    pub fn elements(&self) -> impl Iterator<Item = &Transformation> {
        self.elements.iter()
    }

    pub fn id_of(&self, t: &Transformation) -> Option<usize> {
        self.elements.get_index_of(t)
    }

    pub fn rank(&self, id: usize) -> usize {
        self.elements[id].rank()
    }

    /// `id . x`
    #[inline]
    pub fn right(&self, id: usize, x: usize) -> usize {
        self.right[id * self.generators.len() + x] as usize
    }

    /// `x . id`
    #[inline]
    pub fn left(&self, x: usize, id: usize) -> usize {
        self.left_table()[id * self.generators.len() + x] as usize
    }

    fn left_table(&self) -> &[u32] {
        self.left.get_or_init(|| {
            let mut table = Vec::with_capacity(self.right.len());
            for e in self.elements.iter() {
                for g in &self.generators {
                    let id = self
                        .id_of(&g.then(e))
                        .expect("monoid closed under left multiplication");
                    table.push(id as u32);
                }
            }
            table
        })
    }

    /// Product `i . j` (apply `i` first).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.id_of(&self.elements[i].then(&self.elements[j]))
            .expect("monoid closed under multiplication")
    }

    /// `id . w`, by walking the right Cayley table.
    pub fn mul_word(&self, id: usize, w: &Word) -> usize {
        w.letters().iter().fold(id, |e, &x| self.right(e, x))
    }

    /// Element induced by a word.
    pub fn element_of(&self, w: &Word) -> Result<usize> {
        let mut id = 0;
        for &x in w.letters() {
            if x >= self.num_letters() {
                return Err(Error::InvalidWord {
                    index: x,
                    letters: self.num_letters(),
                });
            }
            id = self.right(id, x);
        }
        Ok(id)
    }

    /// Shortest (then least) word inducing the element.
    pub fn witness(&self, id: usize) -> Word {
        let mut letters = Vec::with_capacity(self.depth[id] as usize);
        let mut cur = id;
        while self.parent[cur].0 != NO_PARENT {
            let (p, x) = self.parent[cur];
            letters.push(x as usize);
            cur = p as usize;
        }
        letters.reverse();
        Word::new(letters)
    }

    pub fn witness_len(&self, id: usize) -> usize {
        self.depth[id] as usize
    }

    /// J-classes (strongly connected components of the two-sided Cayley graph).
    pub fn jclasses(&self) -> &JClasses {
        self.jclasses.get_or_init(|| JClasses::compute(self))
    }

    /// Two-sided closure of a set of elements under multiplication by letters.
    pub fn ideal_closure(&self, seeds: impl IntoIterator<Item = usize>) -> ElementSet {
        self.closure(seeds, true)
    }

    /// Closure under right multiplication only.
    pub fn right_closure(&self, seeds: impl IntoIterator<Item = usize>) -> ElementSet {
        self.closure(seeds, false)
    }

    fn closure(&self, seeds: impl IntoIterator<Item = usize>, two_sided: bool) -> ElementSet {
        let mut set = ElementSet::empty(self.len());
        let mut queue = VecDeque::new();
        for s in seeds {
            if set.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(e) = queue.pop_front() {
            for x in 0..self.num_letters() {
                let r = self.right(e, x);
                if set.insert(r) {
                    queue.push_back(r);
                }
                if two_sided {
                    let l = self.left(x, e);
                    if set.insert(l) {
                        queue.push_back(l);
                    }
                }
            }
        }
        set
    }

    /// Whether the set is closed under left and right multiplication.
    pub fn is_ideal(&self, set: &ElementSet) -> bool {
        set.iter().all(|e| {
            (0..self.num_letters())
                .all(|x| set.contains(self.right(e, x)) && set.contains(self.left(x, e)))
        })
    }

    pub fn is_left_ideal(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|e| (0..self.num_letters()).all(|x| set.contains(self.left(x, e))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quasi3() -> Automaton {
        Automaton::from_table(&["a", "b"], &[&[0, 0, 0], &[0, 2, 1]]).unwrap()
    }

    #[test]
    fn quasi3_has_three_elements() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.element(0), &Transformation::identity(3));
        assert!(m.id_of(&Transformation::constant(3, 0)).is_some());
        assert!(m.id_of(&Transformation::new(vec![0, 2, 1]).unwrap()).is_some());
    }

    #[test]
    fn chain_monoid_is_cyclic() {
        let ch = Automaton::from_table(&["a"], &[&[0, 0, 1, 2]]).unwrap();
        let m = enumerate_monoid(&ch).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.witness(3).len(), 3);
        assert!(m.element(3).is_constant());
        assert_eq!(m.mul(1, 1), 2);
        assert_eq!(m.right(3, 0), 3);
    }

    #[test]
    fn identity_only_monoid() {
        let id = Automaton::from_table(&["a"], &[&[0, 1, 2]]).unwrap();
        assert_eq!(enumerate_monoid(&id).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let c = Automaton::from_table(&["a", "b"], &[&[1, 2, 3, 0], &[1, 1, 2, 3]]).unwrap();
        assert!(matches!(
            TransitionMonoid::enumerate(&c, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn left_table_matches_composition() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        for e in 0..m.len() {
            for x in 0..m.num_letters() {
                let expected = m.generators[x].then(m.element(e));
                assert_eq!(m.element(m.left(x, e)), &expected);
            }
        }
    }
}
