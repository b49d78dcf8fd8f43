use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::TransitionMonoid;

/// Two-sided ideal structure: `e` and `f` share a class when `MeM = MfM`.
///
/// Classes are numbered by their least element, so class `0` holds the identity.
#[derive(Clone, Debug)]
pub struct JClasses {
    class_of: Vec<u32>,
    members: Vec<Vec<usize>>,
    /// classes reachable by one multiplication, i.e. immediately below
    below: Vec<Vec<usize>>,
    /// classes with an edge into this one
    above: Vec<Vec<usize>>,
}

impl JClasses {
    pub(crate) fn compute(m: &TransitionMonoid) -> Self {
        let size = m.len();
        let k = m.num_letters();
        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(size, 2 * k * size);
        for _ in 0..size {
            graph.add_node(());
        }
        for e in 0..size {
            for x in 0..k {
                for f in [m.right(e, x), m.left(x, e)] {
                    if f != e {
                        graph.add_edge(NodeIndex::new(e), NodeIndex::new(f), ());
                    }
                }
            }
        }
        let mut components: Vec<Vec<usize>> = kosaraju_scc(&graph)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
                c.sort_unstable();
                c
            })
            .collect();
        drop(graph);
        components.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![0u32; size];
        for (i, c) in components.iter().enumerate() {
            for &e in c {
                class_of[e] = i as u32;
            }
        }
        let count = components.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); count];
        for e in 0..size {
            let c = class_of[e] as usize;
            for x in 0..k {
                for f in [m.right(e, x), m.left(x, e)] {
                    let d = class_of[f] as usize;
                    if d != c {
                        below[c].push(d);
                    }
                }
            }
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (c, list) in below.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &d in list.iter() {
                above[d].push(c);
            }
        }
        Self {
            class_of,
            members: components,
            below,
            above,
        }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e] as usize
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// Least element of the class.
    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0]
    }

    pub fn below(&self, c: usize) -> &[usize] {
        &self.below[c]
    }

    pub fn above(&self, c: usize) -> &[usize] {
        &self.above[c]
    }
}
