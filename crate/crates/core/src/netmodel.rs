//! Network models built from a bibliography.
//!
//! Three views of the same collaboration data, in increasing order of
//! information retained:
//!
//! * [`Graph`]: binary undirected, an edge per author pair that shared at
//!   least one byline.
//! * the binary directed view: every edge oriented both ways with uniform
//!   out-weights, obtained via [`WeightedDigraph::uniform_from_graph`].
//! * [`WeightedDigraph`]: arcs weighted by normalized co-frequency, so
//!   each non-isolated row is a probability distribution over co-authors.
//!
//! Co-frequency of a pair is the sum over shared publications of the
//! exclusivity `1/(f-1)` where `f` is that publication's author count.
//! Single-author publications carry no exclusivity and contribute
//! nothing. Node ids are positions in the corpus [`AuthorTable`]
//! (crate::corpus::AuthorTable); subgraph views carry a back-map instead
//! of renaming authors.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::Publication;
use crate::NodeId;

/// Binary undirected co-authorship graph in CSR form.
///
/// Neighbor lists are sorted and self-loop free; `row_ptr` has length
/// `n + 1` and `col` length `2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Graph {
    /// Build from an edge list over nodes `0..n`. Duplicate edges, either
    /// orientation, and self-loops are discarded.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for (a, b) in edges {
            assert!(a < n && b < n, "edge endpoint out of range");
            if a == b {
                continue;
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(NodeId, NodeId)> = set.into_iter().collect();

        let mut degree = vec![0usize; n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        for d in &degree {
            row_ptr.push(row_ptr.last().unwrap() + d);
        }
        let mut col = vec![0usize; 2 * edges.len()];
        let mut cursor = row_ptr[..n].to_vec();
        for &(a, b) in &edges {
            col[cursor[a]] = b;
            cursor[a] += 1;
            col[cursor[b]] = a;
            cursor[b] += 1;
        }
        // Sorted because edges are visited in ascending order and each
        // endpoint receives its neighbors in that order.
        Graph {
            n,
            row_ptr,
            col,
            edges,
        }
    }

    /// Build from bylines: one edge per unordered author pair that shares
    /// a publication. `n` is the author-table size, so isolated authors
    /// stay in the vertex set.
    pub fn from_publications(n: usize, pubs: &[Publication]) -> Self {
        let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for p in pubs {
            for (i, &a) in p.authors.iter().enumerate() {
                for &b in &p.authors[i + 1..] {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        Self::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Arcs in the symmetric directed view, always `2m`.
    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.row_ptr[v + 1] - self.row_ptr[v]
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.col[self.row_ptr[v]..self.row_ptr[v + 1]]
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Subgraph induced by `nodes` (must be sorted and duplicate free).
    /// Returns the subgraph over ids `0..nodes.len()` and the back-map
    /// from new id to original id.
    pub fn induced(&self, nodes: &[NodeId]) -> (Graph, Vec<NodeId>) {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        let mut to_new = vec![usize::MAX; self.n];
        for (new, &old) in nodes.iter().enumerate() {
            to_new[old] = new;
        }
        let mut edges = Vec::new();
        for &(a, b) in &self.edges {
            if to_new[a] != usize::MAX && to_new[b] != usize::MAX {
                edges.push((to_new[a], to_new[b]));
            }
        }
        (Graph::from_edges(nodes.len(), edges), nodes.to_vec())
    }
}

/// Exclusivity of the pair `(i, j)` on one byline: `1/(f - 1)` for a
/// publication with `f` authors. A two-author paper gives the whole unit
/// to its single pair; larger bylines dilute it. Callers must skip
/// single-author publications, where the notion is undefined.
pub fn exclusivity(p: &Publication, i: NodeId, j: NodeId) -> f64 {
    debug_assert!(i != j);
    debug_assert!(p.authors.contains(&i) && p.authors.contains(&j));
    debug_assert!(p.author_count() >= 2);
    1.0 / (p.author_count() as f64 - 1.0)
}

/// Sparse co-frequency matrix. Symmetric nonnegative, zero diagonal;
/// `rows[i]` is sorted by neighbor id.
#[derive(Debug, Clone, PartialEq)]
pub struct Cofrequency {
    n: usize,
    rows: Vec<Vec<(NodeId, f64)>>,
}

impl Cofrequency {
    /// Accumulate exclusivity over publications. `n` is the author-table
    /// size; authors never co-publishing get empty rows.
    pub fn from_publications(n: usize, pubs: &[Publication]) -> Self {
        let mut cells: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for p in pubs {
            if p.author_count() < 2 {
                continue;
            }
            for (i, &a) in p.authors.iter().enumerate() {
                for &b in &p.authors[i + 1..] {
                    *cells.entry((a.min(b), a.max(b))).or_insert(0.0) += exclusivity(p, a, b);
                }
            }
        }
        let mut rows: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        for (&(a, b), &c) in &cells {
            rows[a].push((b, c));
            rows[b].push((a, c));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|&(j, _)| j);
        }
        Cofrequency { n, rows }
    }

    /// Build directly from symmetric entries, for tests and synthetic
    /// inputs. Panics on self-loops or asymmetric input.
    pub fn from_entries(n: usize, entries: &[(NodeId, NodeId, f64)]) -> Self {
        let mut cells: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for &(a, b, c) in entries {
            assert!(a < n && b < n && a != b, "bad cofrequency entry");
            assert!(c > 0.0, "cofrequency must be positive");
            *cells.entry((a.min(b), a.max(b))).or_insert(0.0) += c;
        }
        let mut rows: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        for (&(a, b), &c) in &cells {
            rows[a].push((b, c));
            rows[b].push((a, c));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|&(j, _)| j);
        }
        Cofrequency { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|idx| self.rows[i][idx].1)
            .unwrap_or(0.0)
    }

    pub fn row(&self, i: NodeId) -> &[(NodeId, f64)] {
        &self.rows[i]
    }

    pub fn row_sum(&self, i: NodeId) -> f64 {
        self.rows[i].iter().map(|&(_, c)| c).sum()
    }
}

/// Row-stochastic weighted digraph. `rows[i]` holds out-arcs sorted by
/// target; each non-empty row sums to 1 up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    rows: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedDigraph {
    /// Normalize each co-frequency row by its sum. Rows with no support
    /// stay empty, leaving the matrix sub-stochastic on isolated authors.
    pub fn from_cofrequency(c: &Cofrequency) -> Self {
        let rows = c
            .rows
            .iter()
            .map(|row| {
                let s: f64 = row.iter().map(|&(_, v)| v).sum();
                row.iter().map(|&(j, v)| (j, v / s)).collect()
            })
            .collect();
        WeightedDigraph { n: c.n, rows }
    }

    /// The binary directed model: every arc of the symmetric orientation
    /// weighted `1/degree`. This is the transition matrix ordinary
    /// PageRank walks on.
    pub fn uniform_from_graph(g: &Graph) -> Self {
        let rows = (0..g.n())
            .map(|v| {
                let d = g.degree(v) as f64;
                g.neighbors(v).iter().map(|&u| (u, 1.0 / d)).collect()
            })
            .collect();
        WeightedDigraph { n: g.n(), rows }
    }

    /// Convenience: co-frequency then normalization in one step.
    pub fn from_publications(n: usize, pubs: &[Publication]) -> Self {
        Self::from_cofrequency(&Cofrequency::from_publications(n, pubs))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn out_arcs(&self, i: NodeId) -> &[(NodeId, f64)] {
        &self.rows[i]
    }

    pub fn weight(&self, i: NodeId, j: NodeId) -> f64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|idx| self.rows[i][idx].1)
            .unwrap_or(0.0)
    }

    /// Incoming arcs per node: `transpose()[i]` lists `(j, w_ji)` sorted
    /// by source. Prestige propagation gathers over these.
    pub fn transpose(&self) -> Vec<Vec<(NodeId, f64)>> {
        let mut t: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                t[j].push((i, w));
            }
        }
        // Sources arrive in ascending i, so each list is already sorted.
        t
    }

    /// Restriction to `nodes` (sorted, duplicate free), dropping arcs that
    /// leave the set and keeping weights as they are. Restricting to a
    /// union of connected components loses no arcs, so rows stay
    /// stochastic; restricting to anything smaller deliberately does not
    /// renormalize.
    pub fn restrict(&self, nodes: &[NodeId]) -> (WeightedDigraph, Vec<NodeId>) {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        let mut to_new = vec![usize::MAX; self.n];
        for (new, &old) in nodes.iter().enumerate() {
            to_new[old] = new;
        }
        let rows = nodes
            .iter()
            .map(|&old| {
                self.rows[old]
                    .iter()
                    .filter(|&&(j, _)| to_new[j] != usize::MAX)
                    .map(|&(j, w)| (to_new[j], w))
                    .collect()
            })
            .collect();
        (
            WeightedDigraph {
                n: nodes.len(),
                rows,
            },
            nodes.to_vec(),
        )
    }
}
