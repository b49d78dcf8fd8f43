//! Synchronization tests and reset-word search.

use std::collections::VecDeque;

use crate::automaton::{Automaton, StateSet, Word};
use crate::error::{Error, Result};

/// Index of the unordered pair `{p, q}` in an `n * n` table (`p < q`).
#[inline]
pub(crate) fn pair_slot(n: usize, p: usize, q: usize) -> usize {
    if p < q {
        p * n + q
    } else {
        q * n + p
    }
}

/// Pair criterion: every 2-set of states can be merged by some word.
pub fn is_synchronizing(a: &Automaton) -> bool {
    let n = a.states();
    if n == 1 {
        return true;
    }
    // reverse edges of the pair digraph, then propagate backwards from merging pairs
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let mut mergeable = vec![false; n * n];
    let mut queue = VecDeque::new();
    for p in 0..n {
        for q in p + 1..n {
            let slot = pair_slot(n, p, q);
            for x in 0..a.num_letters() {
                let (s, t) = (a.step(p, x), a.step(q, x));
                if s == t {
                    if !mergeable[slot] {
                        mergeable[slot] = true;
                        queue.push_back(slot);
                    }
                } else {
                    preds[pair_slot(n, s, t)].push(slot);
                }
            }
        }
    }
    while let Some(slot) = queue.pop_front() {
        for &prev in &preds[slot] {
            if !mergeable[prev] {
                mergeable[prev] = true;
                queue.push_back(prev);
            }
        }
    }
    (0..n).all(|p| (p + 1..n).all(|q| mergeable[pair_slot(n, p, q)]))
}

struct SubsetSpace {
    n: usize,
    images: Vec<Vec<u64>>,
}

impl SubsetSpace {
    fn new(a: &Automaton, max_subsets: usize) -> Result<Self> {
        let n = a.states();
        if n >= 64 || (1usize << n) > max_subsets {
            return Err(Error::CapExceeded {
                what: "subset search",
                cap: max_subsets,
            });
        }
        let images = (0..a.num_letters())
            .map(|x| (0..n).map(|q| 1u64 << a.step(q, x)).collect())
            .collect();
        Ok(Self { n, images })
    }

    #[inline]
    fn step(&self, mask: u64, x: usize) -> u64 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            out |= self.images[x][q];
            rest &= rest - 1;
        }
        out
    }

    /// Breadth-first search in the power automaton from the full set.
    ///
    /// Returns the first singleton reached, with its parent links.
    fn search(&self) -> (Option<u64>, Vec<u32>, Vec<u8>) {
        let size = 1usize << self.n;
        let full = (size - 1) as u64;
        let mut parent = vec![u32::MAX; size];
        let mut via = vec![0u8; size];
        parent[full as usize] = full as u32;
        let mut queue = VecDeque::from([full]);
        while let Some(mask) = queue.pop_front() {
            if mask.count_ones() == 1 {
                return (Some(mask), parent, via);
            }
            for x in 0..self.images.len() {
                let next = self.step(mask, x);
                if parent[next as usize] == u32::MAX {
                    parent[next as usize] = mask as u32;
                    via[next as usize] = x as u8;
                    queue.push_back(next);
                }
            }
        }
        (None, parent, via)
    }
}

/// Exhaustive power-automaton test; independent of the pair criterion.
pub fn is_synchronizing_by_subsets(a: &Automaton, max_subsets: usize) -> Result<bool> {
    let space = SubsetSpace::new(a, max_subsets)?;
    Ok(space.search().0.is_some())
}

/// Shortest reset word; among those of minimum length, the least in letter order.
pub fn shortest_reset_word(a: &Automaton, max_subsets: usize) -> Result<Word> {
    if a.num_letters() > u8::MAX as usize + 1 {
        return Err(Error::CapExceeded {
            what: "alphabet size for subset search",
            cap: u8::MAX as usize + 1,
        });
    }
    let space = SubsetSpace::new(a, max_subsets)?;
    let (found, parent, via) = space.search();
    let mut mask = found.ok_or(Error::NotSynchronizing)?;
    let full = (1u64 << a.states()) - 1;
    let mut letters = Vec::new();
    while mask != full {
        letters.push(via[mask as usize] as usize);
        mask = parent[mask as usize] as u64;
    }
    letters.reverse();
    Ok(Word::new(letters))
}

/// Shortest word merging some pair of `set`, found by a multi-source BFS over pairs.
///
/// Returns `None` when no pair of `set` can be merged.
pub fn shortest_merging_word(a: &Automaton, set: &StateSet) -> Option<Word> {
    let n = a.states();
    let states: Vec<usize> = set.iter().collect();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    for (i, &p) in states.iter().enumerate() {
        for &q in &states[i + 1..] {
            let slot = pair_slot(n, p, q);
            seen[slot] = true;
            queue.push_back((p, q));
        }
    }
    let trace = |parent: &[Option<(usize, usize)>], mut slot: usize, last: usize| {
        let mut letters = vec![last];
        while let Some((prev, x)) = parent[slot] {
            letters.push(x);
            slot = prev;
        }
        letters.reverse();
        Word::new(letters)
    };
    while let Some((p, q)) = queue.pop_front() {
        let slot = pair_slot(n, p, q);
        for x in 0..a.num_letters() {
            let (s, t) = (a.step(p, x), a.step(q, x));
            if s == t {
                return Some(trace(&parent, slot, x));
            }
            let next = pair_slot(n, s, t);
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((slot, x));
                queue.push_back((s.min(t), s.max(t)));
            }
        }
    }
    None
}

/// Greedy pair-merging reset word starting from `start`.
pub fn greedy_collapse(a: &Automaton, start: &StateSet) -> Result<Word> {
    let mut word = Word::empty();
    let mut current = start.clone();
    while current.len() > 1 {
        let step = shortest_merging_word(a, &current).ok_or(Error::NotSynchronizing)?;
        current = a.apply(&current, &step)?;
        word.extend(&step);
    }
    Ok(word)
}

/// Greedy reset word: repeatedly append the shortest word merging some pair of the image.
pub fn greedy_reset_word(a: &Automaton) -> Result<Word> {
    if !is_synchronizing(a) {
        return Err(Error::NotSynchronizing);
    }
    greedy_collapse(a, &StateSet::full(a.states()))
}

/// `(n^3 - n) / 6`, the length bound met by the greedy construction.
pub fn greedy_bound(n: usize) -> usize {
    (n * n * n - n) / 6
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cerny(n: usize) -> Automaton {
        let a: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let b: Vec<usize> = (0..n).map(|i| if i == 0 { 1 } else { i }).collect();
        Automaton::from_table(&["a", "b"], &[&a, &b]).unwrap()
    }

    #[test]
    fn pair_criterion_on_small_cases() {
        assert!(is_synchronizing(&cerny(5)));
        let loops = Automaton::from_table(&["a"], &[&[0, 1]]).unwrap();
        assert!(!is_synchronizing(&loops));
        let single = Automaton::from_table(&["a"], &[&[0]]).unwrap();
        assert!(is_synchronizing(&single));
    }

    #[test]
    fn shortest_reset_of_small_cerny() {
        let w = shortest_reset_word(&cerny(3), 1 << 20).unwrap();
        assert_eq!(w.len(), 4);
        assert!(cerny(3).is_reset_word(&w).unwrap());
        let single = Automaton::from_table(&["a"], &[&[0]]).unwrap();
        assert!(shortest_reset_word(&single, 16).unwrap().is_empty());
    }

    #[test]
    fn shortest_reset_errors() {
        let loops = Automaton::from_table(&["a"], &[&[0, 1]]).unwrap();
        assert_eq!(shortest_reset_word(&loops, 16), Err(Error::NotSynchronizing));
        assert!(matches!(
            shortest_reset_word(&cerny(5), 16),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn greedy_on_constant_letter() {
        let a = Automaton::from_table(&["a", "b"], &[&[1, 2, 0], &[2, 2, 2]]).unwrap();
        let w = greedy_reset_word(&a).unwrap();
        assert_eq!(w.letters(), &[1]);
    }

    #[test]
    fn greedy_bound_values() {
        assert_eq!(greedy_bound(3), 4);
        assert_eq!(greedy_bound(4), 10);
        assert_eq!(greedy_bound(2), 1);
    }
}
