use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

use super::Congruence;
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Digraph on the 2-subsets of states: `{p,q} -> {p.x, q.x}` whenever the image is still a pair.
#[derive(Clone, Debug)]
pub struct PairsDigraph {
    n: usize,
    pairs: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    collapsing: Vec<bool>,
    component: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl PairsDigraph {
    pub fn new(a: &Automaton) -> Self {
        let n = a.states();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .collect();
        let index_of = |p: usize, q: usize| {
            let (p, q) = (p.min(q), p.max(q));
            // offset of row p in the lexicographic pair list
            p * n - p * (p + 1) / 2 + (q - p - 1)
        };
        let mut edges = BTreeSet::new();
        let mut collapsing = vec![false; pairs.len()];
        for (v, &(p, q)) in pairs.iter().enumerate() {
            for x in 0..a.num_letters() {
                let (s, t) = (a.step(p, x), a.step(q, x));
                if s == t {
                    collapsing[v] = true;
                } else {
                    edges.insert((v, index_of(s, t)));
                }
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();

        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(pairs.len(), edges.len());
        for _ in &pairs {
            graph.add_node(());
        }
        for &(u, v) in &edges {
            graph.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
        }
        let mut components: Vec<Vec<usize>> = tarjan_scc(&graph)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
                c.sort_unstable();
                c
            })
            .collect();
        components.sort();
        let mut component = vec![0; pairs.len()];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                component[v] = i;
            }
        }
        Self {
            n,
            pairs,
            edges,
            collapsing,
            component,
            components,
        }
    }

    pub fn states(&self) -> usize {
        self.n
    }

    /// Vertices in lexicographic order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Sorted, deduplicated edges between vertex indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether some letter merges the pair.
    pub fn is_collapsing(&self, v: usize) -> bool {
        self.collapsing[v]
    }

    /// Strongly connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Edges of the condensation, sorted and without self-loops.
    pub fn condensation_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (self.component[u], self.component[v]))
            .filter(|(c, d)| c != d)
            .collect();
        set.into_iter().collect()
    }

    /// Components with no outgoing edge in the condensation.
    pub fn sink_components(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.components.len()];
        for (c, _) in self.condensation_edges() {
            has_out[c] = true;
        }
        (0..self.components.len()).filter(|&c| !has_out[c]).collect()
    }

    /// Equivalence closure of the pairs in a component.
    pub fn closure_of_component(&self, c: usize) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for &v in &self.components[c] {
            let (p, q) = self.pairs[v];
            uf.union(p, q);
        }
        Partition::from_union_find(self.n, &mut uf)
    }
}

/// Atoms of the congruence lattice, from the sink components of the pairs digraph.
///
/// Sorted by canonical labelling; a simple automaton yields the universal relation alone.
pub fn atoms(a: &Automaton) -> Result<Vec<Congruence>> {
    if a.states() < 2 {
        return Err(Error::TrivialAutomaton);
    }
    let graph = PairsDigraph::new(a);
    let found: BTreeSet<Congruence> = graph
        .sink_components()
        .into_iter()
        // a sink component is closed under 2-set images, so its closure is action-stable
        .map(|c| Congruence::new_unchecked(graph.closure_of_component(c)))
        .collect();
    debug_assert!(found.iter().all(|c| super::is_congruence(a, c)));
    // one sink closure can contain another, so keep only the minimal ones
    Ok(found
        .iter()
        .filter(|c| !found.iter().any(|d| d != *c && d.refines(c)))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_lexicographic() {
        let a = Automaton::from_table(&["a"], &[&[1, 2, 3, 0]]).unwrap();
        let g = PairsDigraph::new(&a);
        assert_eq!(g.pairs().len(), 6);
        // {0,1} -> {1,2}, {2,3} -> {0,3}
        assert!(g.edges().contains(&(0, 3)));
        assert!(g.edges().contains(&(5, 2)));
    }

    #[test]
    fn chain_has_single_atom() {
        let ch = Automaton::from_table(&["a"], &[&[0, 0, 1, 2]]).unwrap();
        let found = atoms(&ch).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].labels(), &[0, 0, 2, 3]);
    }

    #[test]
    fn non_minimal_sink_closure_is_dropped() {
        // {0,1} <-> {1,2} is a sink cycle whose closure is everything, {0,2} is fixed
        let a = Automaton::from_table(&["a"], &[&[2, 1, 0]]).unwrap();
        let found = atoms(&a).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].labels(), &[0, 1, 0]);
    }

    #[test]
    fn trivial_automaton_has_no_atoms() {
        let one = Automaton::from_table(&["a"], &[&[0]]).unwrap();
        assert_eq!(atoms(&one), Err(Error::TrivialAutomaton));
    }
}
