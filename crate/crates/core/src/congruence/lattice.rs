use std::collections::{HashMap, HashSet};

use super::{principal_congruence, Congruence};
use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// All congruences of an automaton with their cover relation.
///
/// Elements are ordered by decreasing block count, then by labelling, so the
/// identity relation comes first and the universal relation last.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    elements: Vec<Congruence>,
    index: HashMap<Congruence, usize>,
    covers: Vec<Vec<usize>>,
}

/// Enumerates every congruence as a join of principal congruences.
pub fn congruence_lattice(a: &Automaton, max_congruences: usize) -> Result<CongruenceLattice> {
    let n = a.states();
    let cap_error = Error::CapExceeded {
        what: "congruence lattice",
        cap: max_congruences,
    };
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut elements = Vec::new();
    let mut push = |c: Congruence, elements: &mut Vec<Congruence>| -> Result<bool> {
        if seen.contains(&c) {
            return Ok(false);
        }
        if seen.len() >= max_congruences {
            return Err(cap_error.clone());
        }
        seen.insert(c.clone());
        elements.push(c);
        Ok(true)
    };
    push(Congruence::identity(n), &mut elements)?;
    let mut generators = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let c = principal_congruence(a, p, q)?;
            if !generators.contains(&c) {
                generators.push(c.clone());
            }
            push(c, &mut elements)?;
        }
    }
    // joining every element with every principal congruence reaches all joins
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        for g in &generators {
            if g.refines(&current) {
                continue;
            }
            let j = current.join(a, g)?;
            push(j, &mut elements)?;
        }
        cursor += 1;
    }
    Ok(CongruenceLattice::from_elements(elements))
}

impl CongruenceLattice {
    fn from_elements(mut elements: Vec<Congruence>) -> Self {
        elements.sort_by(|x, y| {
            y.block_count()
                .cmp(&x.block_count())
                .then_with(|| x.labels().cmp(y.labels()))
        });
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let m = elements.len();
        let mut covers = vec![Vec::new(); m];
        for i in 0..m {
            let above: Vec<usize> = (i + 1..m)
                .filter(|&j| elements[i].refines(&elements[j]) && elements[i] != elements[j])
                .collect();
            for &j in &above {
                let between = above
                    .iter()
                    .any(|&k| k != j && elements[k].refines(&elements[j]));
                if !between {
                    covers[i].push(j);
                }
            }
        }
        Self {
            elements,
            index,
            covers,
        }
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &Congruence {
        &self.elements[0]
    }

    pub fn top(&self) -> &Congruence {
        &self.elements[self.elements.len() - 1]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.index.contains_key(c)
    }

    /// Upper covers of element `i` in the Hasse diagram.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// All Hasse edges `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, up)| up.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        // index order is a topological order of the Hasse DAG
        let mut longest = vec![1usize; self.len()];
        for i in 0..self.len() {
            for &j in &self.covers[i] {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// Minimal elements above the identity (the upper covers of the bottom).
    pub fn atoms(&self) -> Vec<Congruence> {
        let mut out: Vec<Congruence> = self.covers[0]
            .iter()
            .map(|&j| self.elements[j].clone())
            .collect();
        out.sort();
        out
    }

    /// The least non-identity congruence, when one exists and differs from the top.
    pub fn nontrivial_minimum(&self) -> Option<&Congruence> {
        if self.len() < 3 || self.covers[0].len() != 1 {
            return None;
        }
        let candidate = &self.elements[self.covers[0][0]];
        let below_all = self.elements[1..].iter().all(|c| candidate.refines(c));
        below_all.then_some(candidate)
    }

    pub fn is_simple(&self) -> bool {
        self.len() <= 2
    }
}

/// Longest chain, counted in elements.
pub fn lattice_height(l: &CongruenceLattice) -> usize {
    l.height()
}
