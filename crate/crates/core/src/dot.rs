//! Graphviz output with sorted nodes and edges.

use std::fmt::Write as _;

use crate::congruence::{CongruenceLattice, PairsDigraph};

/// Condensation of the pairs digraph: one node per strongly connected component.
///
/// Sink components are drawn doubled; components containing a pair merged by
/// some letter are filled.
pub fn pairs_condensation_dot(g: &PairsDigraph) -> String {
    let sinks = g.sink_components();
    let mut out = String::from("digraph pairs {\n  node [shape=box];\n");
    for (c, members) in g.components().iter().enumerate() {
        let label = members
            .iter()
            .map(|&v| {
                let (p, q) = g.pairs()[v];
                format!("{{{p},{q}}}")
            })
            .collect::<Vec<_>>()
            .join(" ");
        let mut attrs = format!("label=\"{label}\"");
        if sinks.binary_search(&c).is_ok() {
            attrs.push_str(", peripheries=2");
        }
        if members.iter().any(|&v| g.is_collapsing(v)) {
            attrs.push_str(", style=filled");
        }
        writeln!(out, "  c{c} [{attrs}];").unwrap();
    }
    for (c, d) in g.condensation_edges() {
        writeln!(out, "  c{c} -> c{d};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram, bottom to top.
pub fn lattice_dot(l: &CongruenceLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, c) in l.elements().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{c}\"];").unwrap();
    }
    for (i, j) in l.hasse_edges() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::congruence_lattice;
    use crate::corpus::{chain, quasi3};

    #[test]
    fn chain_lattice_dot() {
        let l = congruence_lattice(&chain(3).unwrap(), 100).unwrap();
        assert_eq!(
            lattice_dot(&l),
            "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n  \
             n0 [label=\"{0}{1}{2}\"];\n  n1 [label=\"{0,1}{2}\"];\n  n2 [label=\"{0,1,2}\"];\n  \
             n0 -> n1;\n  n1 -> n2;\n}\n"
        );
    }

    #[test]
    fn quasi3_pairs_dot() {
        let g = PairsDigraph::new(&quasi3());
        let dot = pairs_condensation_dot(&g);
        assert!(dot.contains("label=\"{1,2}\", peripheries=2, style=filled"));
        assert!(dot.starts_with("digraph pairs {"));
        assert_eq!(dot, pairs_condensation_dot(&PairsDigraph::new(&quasi3())));
    }
}
