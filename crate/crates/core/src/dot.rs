//! Graphviz DOT rendering. All exports declare every node before any
//! edge, so isolated authors stay visible and output is byte-stable for
//! a given graph. Weights are printed with four decimals.

use std::fmt::Write;

use crate::clustering::Dendrogram;
use crate::evaluation::CountryGraph;
use crate::netmodel::{Graph, WeightedDigraph};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Binary graph as an undirected DOT document, nodes labeled by
/// canonical author name.
pub fn undirected_dot(g: &Graph, names: &[String]) -> String {
    let mut out = String::from("graph coauthors {\n");
    for name in names.iter().take(g.n()) {
        let _ = writeln!(out, "  {};", quoted(name));
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quoted(&names[a]), quoted(&names[b]));
    }
    out.push_str("}\n");
    out
}

/// Weighted digraph as DOT, arcs labeled with their weight. Arcs below
/// `min_weight` are omitted; the node set is kept whole either way.
pub fn weighted_dot(w: &WeightedDigraph, names: &[String], min_weight: f64) -> String {
    let mut out = String::from("digraph coauthors {\n");
    for name in names.iter().take(w.n()) {
        let _ = writeln!(out, "  {};", quoted(name));
    }
    for i in 0..w.n() {
        for &(j, weight) in w.out_arcs(i) {
            if weight >= min_weight {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={:.4}];",
                    quoted(&names[i]),
                    quoted(&names[j]),
                    weight
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Country collaboration graph: nodes are countries sized by author
/// count, edges labeled with cross-country pair counts.
pub fn country_dot(cg: &CountryGraph) -> String {
    let mut out = String::from("graph countries {\n");
    for (country, authors) in &cg.author_counts {
        let _ = writeln!(
            out,
            "  {} [label=\"{} ({})\"];",
            quoted(country),
            escape(country),
            authors
        );
    }
    for ((a, b), count) in &cg.edges {
        let _ = writeln!(out, "  {} -- {} [label={}];", quoted(a), quoted(b), count);
    }
    out.push_str("}\n");
    out
}

/// Dendrogram as a rooted DOT tree: leaves carry author names, internal
/// nodes carry their merge level, edges point parent to child.
pub fn dendrogram_dot(d: &Dendrogram, names: &[String]) -> String {
    assert_eq!(d.leaves, names.len(), "dendrogram and names disagree");
    let child = |id: usize| -> String {
        if id < d.leaves {
            quoted(&names[id])
        } else {
            format!("\"c{id}\"")
        }
    };
    let mut out = String::from("digraph dendrogram {\n");
    for name in names {
        let _ = writeln!(out, "  {};", quoted(name));
    }
    for m in &d.merges {
        let _ = writeln!(out, "  \"c{}\" [label=\"{:.4}\"];", m.id, m.similarity);
        let _ = writeln!(out, "  \"c{}\" -> {};", m.id, child(m.a));
        let _ = writeln!(out, "  \"c{}\" -> {};", m.id, child(m.b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::Merge;
    use crate::corpus::AuthorTable;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn undirected_export_lists_nodes_then_edges() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let dot = undirected_dot(&g, &names(&["Alice", "Bob", "Carol"]));
        assert_eq!(
            dot,
            "graph coauthors {\n  \"Alice\";\n  \"Bob\";\n  \"Carol\";\n  \"Alice\" -- \"Bob\";\n}\n"
        );
    }

    #[test]
    fn weighted_export_labels_and_filters_arcs() {
        let pubs = vec![crate::corpus::Publication {
            pub_id: "p".into(),
            year: 2000,
            venue: "v".into(),
            authors: vec![0, 1, 2],
        }, crate::corpus::Publication {
            pub_id: "q".into(),
            year: 2000,
            venue: "v".into(),
            authors: vec![0, 1],
        }];
        let w = WeightedDigraph::from_publications(3, &pubs);
        let dot = weighted_dot(&w, &names(&["a", "b", "c"]), 0.0);
        assert!(dot.starts_with("digraph coauthors {\n"));
        assert!(dot.contains("  \"a\" -> \"b\" [label=0.7500];\n"));
        assert!(dot.contains("  \"a\" -> \"c\" [label=0.2500];\n"));
        assert!(dot.contains("  \"c\" -> \"a\" [label=0.5000];\n"));

        let filtered = weighted_dot(&w, &names(&["a", "b", "c"]), 0.4);
        assert!(!filtered.contains("label=0.2500"));
        assert!(filtered.contains("label=0.7500"));
        assert!(filtered.contains("  \"c\";\n"));
    }

    #[test]
    fn quotes_and_backslashes_are_escaped() {
        let g = Graph::from_edges(2, [(0, 1)]);
        let dot = undirected_dot(&g, &names(&["A \"quoted\" name", "back\\slash"]));
        assert!(dot.contains("\"A \\\"quoted\\\" name\""));
        assert!(dot.contains("\"back\\\\slash\""));
    }

    #[test]
    fn country_export_shows_sizes_and_cross_edges() {
        let mut table = AuthorTable::new();
        for n in ["A", "B", "C"] {
            table.intern(n);
        }
        table.set_country(0, "us");
        table.set_country(1, "us");
        table.set_country(2, "de");
        let pubs = vec![crate::corpus::Publication {
            pub_id: "p".into(),
            year: 2000,
            venue: "v".into(),
            authors: vec![0, 1, 2],
        }];
        let cg = crate::evaluation::country_network(&pubs, &table);
        let dot = country_dot(&cg);
        assert!(dot.contains("  \"us\" [label=\"us (2)\"];\n"));
        assert!(dot.contains("  \"de\" [label=\"de (1)\"];\n"));
        assert!(dot.contains("  \"de\" -- \"us\" [label=2];\n"));
        assert!(!dot.contains("\"us\" -- \"us\""));
    }

    #[test]
    fn dendrogram_export_wires_parents_to_children() {
        let d = Dendrogram {
            leaves: 3,
            merges: vec![
                Merge { a: 0, b: 1, id: 3, similarity: 0.9, size: 2 },
                Merge { a: 2, b: 3, id: 4, similarity: 0.3, size: 3 },
            ],
        };
        let dot = dendrogram_dot(&d, &names(&["Alice", "Bob", "Carol"]));
        assert!(dot.contains("  \"c3\" [label=\"0.9000\"];\n"));
        assert!(dot.contains("  \"c3\" -> \"Alice\";\n"));
        assert!(dot.contains("  \"c3\" -> \"Bob\";\n"));
        assert!(dot.contains("  \"c4\" [label=\"0.3000\"];\n"));
        assert!(dot.contains("  \"c4\" -> \"c3\";\n"));
        assert!(dot.contains("  \"c4\" -> \"Carol\";\n"));
    }
}
